"""Command line driver.  Exit codes: 0 all checks pass, 1 some check failed, 2 bad input."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .jobs import JOB_NAMES, JobConfig, canonical_json, emit_goldens, run
from .theta import DEFAULT_TOL

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _common(p: argparse.ArgumentParser, samples: bool = True, genus: bool = False) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", help="write JSON here instead of stdout")
    if samples:
        p.add_argument("--samples", type=int, default=None)
    if genus:
        p.add_argument("--genus", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="siegel-theta", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="run a named verification job")
    p.add_argument("--job", required=True, choices=JOB_NAMES + ("all",))
    _common(p, genus=True)

    p = sub.add_parser("theta", help="theta evaluation")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("eval", help="JSON {characteristic, tau, z, tol} -> {value, radius, tail_bound}")
    q.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
    q.add_argument("--out")

    p = sub.add_parser("verify", help="transformation formula batch")
    vsub = p.add_subparsers(dest="action", required=True)
    q = vsub.add_parser("transformation")
    _common(q, genus=True)

    p = sub.add_parser("quotient", help="finite quotients of congruence subgroups")
    qsub = p.add_subparsers(dest="action", required=True)
    for action in ("enumerate", "structure"):
        q = qsub.add_parser(action)
        q.add_argument("--big", default="Gamma_0(2)")
        q.add_argument("--small", default="Gamma^2(2,4)")
        q.add_argument("--genus", type=int, default=2)
        q.add_argument("--out")
    q = qsub.add_parser("match", help="the subgroup pair attached to H = <M1, M2, M1^T, M2^T>")
    q.add_argument("--out")

    p = sub.add_parser("genus2", help="genus-2 module checks")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("verify")
    q.add_argument("--check", required=True, choices=("signs", "gmodule", "fricke", "fibers"))
    _common(q)

    p = sub.add_parser("genus3", help="genus-3 checks")
    gsub = p.add_subparsers(dest="action", required=True)
    for action in ("classify", "r16", "q-invariance"):
        _common(gsub.add_parser(action))

    p = sub.add_parser("emit-goldens", help="write canonical JSON goldens")
    p.add_argument("--out", required=True, help="output directory")
    return ap


def _emit(data, out: str | None) -> None:
    text = canonical_json(data)
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc


def _report(job: str, args, checks_job: str | None = None) -> int:
    cfg = JobConfig(job=checks_job or job, seed=args.seed, tol=args.tol,
                    samples=getattr(args, "samples", None), genus=getattr(args, "genus", 2), out=args.out)
    if not cfg.tol > 0:
        raise ConfigError("--tol must be positive")
    if cfg.samples is not None and cfg.samples < 1:
        raise ConfigError("--samples must be positive")
    if args.out is not None and not Path(args.out).resolve().parent.is_dir():
        raise ConfigError(f"cannot write {args.out}: no such directory")
    report = run(cfg)
    _emit(report.to_json(), args.out)
    if args.out is not None:
        for c in report.checks:
            print(f"{c.status:16s} {c.name}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _theta_eval(args) -> int:
    from .characteristics import ThetaCharacteristic
    from .theta import SiegelPoint, theta

    try:
        raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        data = json.loads(raw)
        m = data["characteristic"]
        m = ThetaCharacteristic.parse(m) if isinstance(m, str) else m
        tau = SiegelPoint.from_json(data["tau"])
        z = data.get("z")
        if z is not None:
            z = np.array([complex(*v) if isinstance(v, list) else complex(v) for v in z])
        tol = float(data.get("tol", DEFAULT_TOL))
        val = theta(m, tau, z, tol)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad theta input: {exc}") from exc
    _emit({"value": val.value, "radius": val.radius, "tail_bound": val.tail_bound}, args.out)
    return EXIT_PASS


def _quotient(args) -> int:
    from .quotients import (
        enumerate_quotient, genus2_G, genus2_G00, match_subgroups, H_generators, phi_iso, structure_report,
    )
    from .symplectic import group

    if args.action == "match":
        G00 = genus2_G00()
        m = match_subgroups(phi_iso(genus2_G(), G00), H_generators(G00), side="codomain")
        _emit(m.to_json(), args.out)
        return EXIT_PASS if m.fingerprints_agree and m.induced_map_iso else EXIT_FAIL
    try:
        Q = enumerate_quotient(group(args.big, args.genus), group(args.small, args.genus))
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if args.action == "enumerate":
        _emit(Q.to_json(), args.out)
    else:
        rep = structure_report(Q)
        rep.pop("normal_subgroup", None)
        _emit(rep, args.out)
    return EXIT_PASS


def _genus2(args) -> int:
    job = {"signs": "gmodule", "gmodule": "gmodule", "fricke": "fricke", "fibers": "fibers"}[args.check]
    if args.check == "signs":
        from .genus2 import verify_signs

        r = verify_signs(args.seed, args.samples or 5, args.tol)
        _emit(r, args.out)
        return EXIT_PASS if r["ok"] else EXIT_FAIL
    return _report(job, args)


def _verify(args) -> int:
    from .cocycles import verify_transformation_batch

    if not args.tol > 0:
        raise ConfigError("--tol must be positive")
    r = verify_transformation_batch(args.seed, args.samples or 100, 12, args.genus, args.tol)
    _emit(r, args.out)
    return EXIT_PASS if r["ok"] else EXIT_FAIL


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    try:
        if args.cmd == "run":
            return _report(args.job, args)
        if args.cmd == "theta":
            return _theta_eval(args)
        if args.cmd == "verify":
            return _verify(args)
        if args.cmd == "quotient":
            return _quotient(args)
        if args.cmd == "genus2":
            return _genus2(args)
        if args.cmd == "genus3":
            return _report(args.action, args)
        if args.cmd == "emit-goldens":
            try:
                for p in emit_goldens(args.out):
                    print(p)
            except OSError as exc:
                raise ConfigError(str(exc)) from exc
            return EXIT_PASS
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
