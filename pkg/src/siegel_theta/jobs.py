"""Named, seeded verification jobs and canonical JSON reports."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .characteristics import census, enumerate_characteristics
from .cocycles import (
    IllConditionedError,
    cocycle_residual,
    second_order_monomial,
    second_order_residual,
    theta_monomial,
    translation_closed_form,
    verify_transformation_batch,
)
from .symplectic import group, random_elements, symmetric_basis
from .theta import DEFAULT_TOL, SiegelPoint, theta_many

SCHEMA_VERSION = 1
PRNG = "PCG64"
JOB_NAMES = ("census", "transformation", "riemann", "quotients", "gmodule", "fricke",
             "fibers", "classify", "r16", "q-invariance")


class UnknownJobError(KeyError):
    pass


def prng_reference(seed: int = 0) -> list[int]:
    """First four 64-bit outputs of numpy's PCG64 seeded via SeedSequence(seed)."""
    return [int(x) for x in np.random.Generator(np.random.PCG64(seed)).integers(0, 2**63, 4, dtype=np.int64)]


@dataclass
class JobConfig:
    job: str
    seed: int = 0
    tol: float = DEFAULT_TOL
    samples: int | None = None
    genus: int = 2
    out: str | None = None

    def n(self, default: int) -> int:
        return default if self.samples is None else self.samples


@dataclass
class Check:
    name: str
    status: str
    details: dict = field(default_factory=dict)


@dataclass
class Report:
    job: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION
    package_version: str = __version__
    prng: dict = field(default_factory=lambda: {"name": PRNG, "seed_0_reference": prng_reference(0)})

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.passed else "fail"
        return d

    def dumps(self) -> str:
        return canonical_json(self.to_json())


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_plain(x.real), _plain(x.imag)]
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, str):
        return x
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return str(x)


def canonical_json(data) -> str:
    return json.dumps(_plain(data), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _check(name: str, details: dict, ok: bool | None = None) -> Check:
    ok = details.get("ok") if ok is None else ok
    return Check(name, "pass" if ok else "fail", details)


# -- jobs -------------------------------------------------------------------------------

def job_census(cfg: JobConfig) -> list[Check]:
    rows = {}
    ok = True
    for g in range(1, 5):
        even, odd = census(g)
        want = (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1))
        rows[f"g{g}"] = {"even": even, "odd": odd}
        ok &= (even, odd) == want
    return [_check("census", rows, ok)]


def job_transformation(cfg: JobConfig) -> list[Check]:
    g, n = cfg.genus, cfg.n(100)
    rng = np.random.default_rng(cfg.seed)
    out = [_check("transformation_formula", verify_transformation_batch(cfg.seed, n, 12, g, cfg.tol))]

    odd_max = 0.0
    for gg in (2, 3):
        odd = enumerate_characteristics(gg, "odd")
        for _ in range(10):
            odd_max = max(odd_max, float(np.abs(theta_many(odd, SiegelPoint.random(rng, gg), None, cfg.tol)).max()))
    out.append(_check("odd_vanishing", {"max_abs": odd_max}, odd_max < 1e-10))

    G = random_elements(group("Gamma", g), cfg.seed + 2, 2 * min(n, 100), 8)
    worst = 0.0
    for a, b in zip(G[::2], G[1::2]):
        worst = max(worst, cocycle_residual(a, b, SiegelPoint.random(rng, g), cfg.tol))
    out.append(_check("cocycle", {"pairs": len(G) // 2, "max_residual": worst}, worst < 1e-6))

    worst = 0.0
    for gamma in random_elements(group("Gamma_0(2)", g), cfg.seed + 3, min(n, 20), 8):
        worst = max(worst, second_order_residual(gamma, SiegelPoint.random(rng, g), cfg.tol))
    out.append(_check("second_order_transformation", {"max_residual": worst}, worst < 1e-8))

    worst = 0.0
    for S in symmetric_basis(g):
        for m in enumerate_characteristics(g, "even"):
            lhs, rhs = translation_closed_form(m, S, SiegelPoint.random(rng, g), cfg.tol)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    out.append(_check("translation_closed_form", {"max_residual": worst}, worst < 1e-8))
    return out


def job_riemann(cfg: JobConfig) -> list[Check]:
    from .riemann import verify_addition, verify_relations

    n = cfg.n(10)
    return [
        _check("riemann_relations", verify_relations(cfg.seed, n, (2, 3), cfg.tol)),
        _check("addition_formula", verify_addition(cfg.seed, n, 2, cfg.tol)),
    ]


def job_quotients(cfg: JobConfig) -> list[Check]:
    from .genus3 import coset_representatives
    from .quotients import (
        enumerate_quotient, genus2_G, genus2_G00, genus3_quotient, match_subgroups, standard_generator_families,
        H_generators, phi_iso, shuffle_independent, structure_report,
    )

    G, G00, Q3 = genus2_G(), genus2_G00(), genus3_quotient()
    F = enumerate_quotient(group("Gamma^2(2,4)", 2), group("Gamma(2,4)", 2))
    words = len(coset_representatives())
    rep = structure_report(G)
    rep.pop("normal_subgroup", None)
    f_desc = structure_report(F)["description"]
    orders = {"index_96": G.order, "f2cubed": F.order, "f2cubed_structure": f_desc,
              "genus3_quotient": Q3.order, "genus3_word_classes": words, "G_structure": rep["description"]}
    out = [
        _check("orders", orders, G.order == 96 and F.order == 8 and f_desc == "F2^3"
               and Q3.order == 64 and words == 64),
        _check("G_structure", rep, rep["description"] == "F2^4 x| S3" and rep["complement_order"] == 6),
    ]
    ind = shuffle_independent(group("Gamma_0(2)", 2), group("Gamma^2(2,4)", 2), cfg.seed)
    out.append(_check("bfs_shuffle_independent", {"independent": ind}, ind))

    phi = phi_iso(G, G00)
    fams = standard_generator_families(2)
    cod = phi.codomain
    gen_classes = [phi(G.locate(x)) for fam in fams.values() for x in fam]
    generates = len(cod.closure(gen_classes)) == cod.order
    phi_info = {"homomorphism": phi.is_homomorphism(), "bijective": phi.is_bijective(),
                "representative_independent": phi.representative_independent,
                "families_generate_codomain": generates}
    out.append(_check("phi", phi_info, all(phi_info.values())))

    m = match_subgroups(phi, H_generators(G00), side="codomain")
    match = m.to_json()
    ok = ("Gamma(2)" in m.gamma_names and "Gamma_1(2)" in m.gamma_prime_names
          and m.fingerprints_agree and m.induced_map_iso)
    out.append(_check("H_match", match, ok))
    return out


def job_gmodule(cfg: JobConfig) -> list[Check]:
    from .genus2 import (
        subgroup_witness, slash_table_check, verify_G_module_iso, verify_integer_weight_subring, verify_signs,
    )
    from .quotients import genus2_G, genus2_G00, match_subgroups, H_generators, phi_iso

    n = cfg.n(3)
    G, G00 = genus2_G(), genus2_G00()
    phi = phi_iso(G, G00)
    H = match_subgroups(phi, H_generators(G00), side="codomain").H
    return [
        _check("signs", verify_signs(cfg.seed, n, cfg.tol)),
        _check("integer_weight_subring", verify_integer_weight_subring(cfg.seed, n, cfg.tol)),
        _check("module_isomorphism", verify_G_module_iso(seed=cfg.seed, samples=n, phi=phi)),
        _check("slash_table", slash_table_check()),
        _check("subgroup_witness", subgroup_witness(phi, H, cfg.seed, n)),
    ]


def job_fricke(cfg: JobConfig) -> list[Check]:
    from .genus2 import verify_fricke_groups, verify_fricke_identities, verify_G04_module
    from .quotients import fricke_iso

    f = fricke_iso()
    iso = {"homomorphism": f.is_homomorphism(), "bijective": f.is_bijective(),
           "representative_independent": f.representative_independent}
    return [
        _check("fricke_identities", verify_fricke_identities(cfg.seed, cfg.n(5), cfg.tol)),
        _check("fricke_groups", verify_fricke_groups(cfg.seed, cfg.n(100))),
        _check("phi_prime", iso, all(iso.values())),
        _check("G04_module", verify_G04_module()),
    ]


def job_fibers(cfg: JobConfig) -> list[Check]:
    from .genus2 import fiber_check

    r = fiber_check(cfg.seed, cfg.n(100))
    return [_check("fibers", r, r["all_eight"])]


def job_classify(cfg: JobConfig) -> list[Check]:
    from .genus3 import classify_all, worked_example

    ex = worked_example()
    r = classify_all(cfg.seed, numeric_points=3, numeric_per_class=cfg.n(5), tol=cfg.tol)
    return [_check("worked_example", ex, ex["matches"]), _check("classification", r)]


def job_r16(cfg: JobConfig) -> list[Check]:
    from .genus3 import verify_r16

    return [_check("r16", verify_r16(cfg.seed, cfg.n(10), cfg.tol))]


def job_q_invariance(cfg: JobConfig) -> list[Check]:
    from .genus3 import verify_q_invariance

    return [_check("q_invariance", verify_q_invariance(cfg.seed, cfg.n(5), cfg.tol))]


JOBS: dict[str, Callable[[JobConfig], list[Check]]] = {
    "census": job_census,
    "transformation": job_transformation,
    "riemann": job_riemann,
    "quotients": job_quotients,
    "gmodule": job_gmodule,
    "fricke": job_fricke,
    "fibers": job_fibers,
    "classify": job_classify,
    "r16": job_r16,
    "q-invariance": job_q_invariance,
}


def run(cfg: JobConfig) -> Report:
    if cfg.job != "all" and cfg.job not in JOBS:
        raise UnknownJobError(cfg.job)
    config = {k: v for k, v in asdict(cfg).items() if k != "out"}
    report = Report(job=cfg.job, config=config)
    names = JOB_NAMES if cfg.job == "all" else (cfg.job,)
    for name in names:
        try:
            checks = JOBS[name](cfg)
        except IllConditionedError as exc:
            checks = [Check(name, "ill-conditioned", {"error": str(exc)})]
        if cfg.job == "all":
            for c in checks:
                c.name = f"{name}.{c.name}"
        report.checks.extend(checks)
    return report


# -- goldens ----------------------------------------------------------------------------

def goldens() -> dict[str, dict]:
    from .genus2 import M, sign_table
    from .genus3 import EXAMPLE_M, EXAMPLE_N, all_pairs, worked_example, symmetrize
    from .quotients import enumerate_quotient, genus2_G, genus2_G00, genus2_G04, genus3_quotient

    mono = {}
    for name, gamma in (("M1", M(1)), ("M2", M(2)), ("M3", M(3))):
        chars, P = theta_monomial(gamma)
        mono[name] = {"even_characteristics": [str(c) for c in chars], "theta": P.to_json(),
                      "second_order": second_order_monomial(gamma).to_json()}
    nonvanishing = [[str(m) for m in p.columns] for p in all_pairs() if not symmetrize(p).is_zero()]
    return {
        "monomial_matrices.json": mono,
        "genus3_nonvanishing.json": {"count": len(nonvanishing), "pairs": nonvanishing},
        "genus3_example.json": {
            "M": [str(m) for m in EXAMPLE_M.columns],
            "N": [[str(m) for m in n.columns] for n in EXAMPLE_N],
            "coefficients": worked_example()["coefficients"],
        },
        "sign_table.json": sign_table(),
        "group_orders.json": {
            "Gamma_0(2)/Gamma^2(2,4)": genus2_G().order,
            "Gamma_0^0(2)/Gamma(2,4)": genus2_G00().order,
            "Gamma^2(2,4)/Gamma(2,4)": enumerate_quotient(group("Gamma^2(2,4)", 2), group("Gamma(2,4)", 2)).order,
            "Gamma_0(4)/Gamma(2,4)^J2": genus2_G04().order,
            "Gamma_3^2(2,4)/Gamma_3(2,4)": genus3_quotient().order,
        },
    }


def emit_goldens(path) -> list[Path]:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in goldens().items():
        p = path / name
        p.write_text(canonical_json(data))
        written.append(p)
    return written
