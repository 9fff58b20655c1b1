"""Command-line entry point: ``ggptheta <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from ggptheta.dsl import parse_rep
from ggptheta.errors import NonGenericError, UsageError
from ggptheta.lfactors import adjoint, epsilon_half, generic_pole, pole_locus
from ggptheta.localfield import PAdicField, hilbert_symbol, square_class, valuation
from ggptheta.packets import (
    ComponentGroup,
    EnhancedParam,
    central_sign,
    eta_c,
    eta_domain,
)
from ggptheta.sweep import CHECKS, SweepConfig, run_sweep
from ggptheta.thetaggp import (
    bessel_recipe,
    fj_recipe,
    mp_theta_odd,
    prasad_p1,
    prasad_p2,
    verify_adjoint_factorization,
    verify_fj_seesaw,
)
from ggptheta.wdalg import Family, Kind

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _prime(args) -> int:
    if args.p is None:
        raise UsageError("--p is required")
    return PAdicField(args.p).p


def _signs(text: str | None) -> list[int] | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--eta expects comma-separated +1/-1 values, got {text!r}") from None
    return vals


def _enhanced(args, phi, kind) -> EnhancedParam:
    return EnhancedParam.make(phi, kind, _signs(args.eta))


def cmd_hilbert(args) -> int:
    p = _prime(args)
    a, b = square_class(p, args.a), square_class(p, args.b)
    val = hilbert_symbol(a, b)
    if args.json:
        _emit({"p": p, "a": a.label, "b": b.label, "value": val})
    else:
        print(val)
    return EXIT_OK


def cmd_sqclass(args) -> int:
    p = _prime(args)
    c = square_class(p, args.n)
    info = {
        "p": p,
        "input": args.n,
        "class": c.label,
        "odd_valuation": valuation(c.label, p) % 2 == 1,
        "conductor_exponent": c.conductor_exponent,
        "ramified": c.is_ramified,
    }
    if args.json:
        _emit(info)
    else:
        print(c.label)
    return EXIT_OK


def cmd_epsilon(args) -> int:
    p = _prime(args)
    phi = parse_rep(args.rep, p)
    val = epsilon_half(phi, args.c)
    if args.json:
        _emit({"rep": phi.to_dsl(), "c": args.c, "epsilon": val.to_json()})
    else:
        print(val)
    return EXIT_OK


def cmd_generic(args) -> int:
    p = _prime(args)
    kind = Kind.parse(args.group, p)
    phi = parse_rep(args.rep, p)
    pole = generic_pole(phi, kind)
    ad = adjoint(phi, kind)
    if args.json:
        _emit({"rep": phi.to_dsl(), "group": str(kind), "adjoint": ad.to_dsl(), "generic": pole is None,
               "pole": None if pole is None else str(pole),
               "poles": [[str(s), k] for s, k in pole_locus(ad).poles]})
    elif pole is None:
        print("true")
    else:
        print(f"false (L(s, Ad) has a pole at s = {pole}; Ad = {ad.to_dsl()})")
    return EXIT_OK


def cmd_packet(args) -> int:
    p = _prime(args)
    kind = Kind.parse(args.group, p)
    phi = parse_rep(args.rep, p)
    e = _enhanced(args, phi, kind)
    group = ComponentGroup.of(phi, kind)
    out = {
        "rep": phi.to_dsl(),
        "group": str(kind),
        "component_group": group.to_json(),
        "eta_domain": eta_domain(kind),
        "eta": e.eta.to_json(),
    }
    if args.c is not None:
        out["eta_c"] = {"c": square_class(p, args.c).label, **eta_c(phi, kind, args.c).to_json()}
    if kind.family in (Family.SO_ODD, Family.SO_EVEN):
        out["central_sign"] = central_sign(e)
    _emit(out)
    return EXIT_OK


def cmd_recipe(args) -> int:
    p = _prime(args)
    phi_m = parse_rep(args.repM, p)
    phi_n = parse_rep(args.repN, p)
    pair = bessel_recipe(phi_m, phi_n) if args.which == "bessel" else fj_recipe(phi_m, phi_n)
    _emit({"recipe": args.which, "repM": phi_m.to_dsl(), "repN": phi_n.to_dsl(), **pair.to_json()})
    return EXIT_OK


def cmd_theta(args) -> int:
    p = _prime(args)
    phi = parse_rep(args.rep, p)
    if args.which == "p1":
        if args.chiV is None:
            raise UsageError("theta p1 needs --chiV")
        e = _enhanced(args, phi, Kind(Family.SP))
        part = prasad_p1(e, args.chiV)
        out = part.to_json()
        if args.variant is not None:
            chosen = part.select(args.variant)
            out["selected"] = None if chosen is None else chosen.eta.to_json()
    elif args.which == "p2":
        kind = Kind.parse(args.group or "so-even", p)
        if kind.family is not Family.SO_EVEN:
            raise UsageError("theta p2 starts from an so-even parameter")
        part = prasad_p2(_enhanced(args, phi, kind))
        out = part.to_json()
    else:
        if args.c is None:
            raise UsageError("theta mp needs --c")
        e = _enhanced(args, phi, Kind(Family.MP))
        out = mp_theta_odd(e, args.c, dual_side=args.dual).to_json()
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _prime(args)
    if args.which == "adjoint":
        if args.rep is not None:
            phi = parse_rep(args.rep, p)
            ok = verify_adjoint_factorization(phi, args.chiV or 1)
            _emit({"rep": phi.to_dsl(), "chi_V": square_class(p, args.chiV or 1).label,
                   "verdict": "pass" if ok else "fail"})
            return EXIT_OK if ok else EXIT_FAIL
        return run_sweep(_sweep_config(args, ("adjoint",), (p,)))
    if args.repM is not None or args.repN is not None:
        if args.repM is None or args.repN is None or args.d is None:
            raise UsageError("a single see-saw check needs --repM, --repN and --d")
        report = verify_fj_seesaw(parse_rep(args.repM, p), parse_rep(args.repN, p), args.d,
                                  allow_nontempered=args.allow_nontempered)
        _emit(report.to_json())
        return EXIT_OK if report.passed else EXIT_FAIL
    return run_sweep(_sweep_config(args, ("seesaw",), (p,)))


def _sweep_config(args, checks, primes) -> SweepConfig:
    return SweepConfig(primes=tuple(primes), max_dim=args.max_dim, count=args.count,
                       seed=args.seed if args.seed is not None else 0, checks=tuple(checks), output=args.out)


def cmd_sweep(args) -> int:
    if args.p is None:
        primes = (3, 5)
    else:
        primes = tuple(PAdicField(int(x)).p for x in str(args.p).split(","))
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    return run_sweep(_sweep_config(args, checks, primes))


def _common(parser: argparse.ArgumentParser, p_type=int) -> None:
    parser.add_argument("--p", type=p_type, help="the prime of Q_p")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=None, help="random seed for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ggptheta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hilbert", help="Hilbert symbol (a, b) of Q_p")
    _common(sp)
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("sqclass", help="canonical square class of an integer")
    _common(sp)
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_sqclass)

    sp = sub.add_parser("epsilon", help="epsilon(1/2, rep, psi_c)")
    _common(sp)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--c", type=int, default=1)
    sp.set_defaults(func=cmd_epsilon)

    sp = sub.add_parser("generic", help="whether L(s, Ad) is regular at s = 1")
    _common(sp)
    sp.add_argument("--group", required=True)
    sp.add_argument("--rep", required=True)
    sp.set_defaults(func=cmd_generic)

    sp = sub.add_parser("packet", help="component group and eta data of a parameter")
    _common(sp)
    sp.add_argument("--group", required=True)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--eta", help="comma-separated signs on the generators; write --eta=-1,1 when the first is negative")
    sp.add_argument("--c", type=int, help="also print eta_c for this class")
    sp.set_defaults(func=cmd_packet)

    sp = sub.add_parser("recipe", help="Bessel or Fourier-Jacobi recipe characters")
    _common(sp)
    sp.add_argument("which", choices=("bessel", "fj"))
    sp.add_argument("--repM", required=True)
    sp.add_argument("--repN", required=True)
    sp.set_defaults(func=cmd_recipe)

    sp = sub.add_parser("theta", help="parameter side of theta lifts")
    _common(sp)
    sp.add_argument("which", choices=("p1", "p2", "mp"))
    sp.add_argument("--rep", required=True)
    sp.add_argument("--eta", help="comma-separated signs on the generators (use --eta=-1,...)")
    sp.add_argument("--chiV", type=int, help="discriminant class of V (p1)")
    sp.add_argument("--group", help="so-even:d (p2)")
    sp.add_argument("--c", type=int, help="target discriminant (mp)")
    sp.add_argument("--dual", action="store_true", help="use the -c variant (mp)")
    sp.add_argument("--variant", type=int, choices=(1, -1), help="pick the extension with this central sign (p1)")
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("verify", help="see-saw and adjoint consistency checks")
    _common(sp)
    sp.add_argument("which", choices=("seesaw", "adjoint"))
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-dim", type=int, default=8)
    sp.add_argument("--out", help="JSONL output path (default stdout)")
    sp.add_argument("--repM")
    sp.add_argument("--repN")
    sp.add_argument("--rep")
    sp.add_argument("--d", type=int)
    sp.add_argument("--chiV", type=int)
    sp.add_argument("--allow-nontempered", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="seeded sweep of consistency checks")
    _common(sp, p_type=str)
    sp.add_argument("--checks", default=",".join(CHECKS), help=f"comma-separated subset of {', '.join(CHECKS)}")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-dim", type=int, default=8)
    sp.add_argument("--out", help="JSONL output path (default stdout)")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NonGenericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
