"""Seeded sweeps over random parameters, reported as JSON lines."""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, TextIO

from ggptheta.corpus import random_parameter
from ggptheta.errors import InconsistentValueError, UsageError
from ggptheta.lfactors import epsilon_half, root_number
from ggptheta.localfield import all_classes, square_class
from ggptheta.packets import ComponentGroup, EnhancedParam, SignCharacter, eta_domain
from ggptheta.thetaggp import (
    admissible_twist,
    bessel_recipe,
    fj_recipe,
    mp_change_psi,
    prasad_p1,
    prasad_p2,
    verify_adjoint_factorization,
    verify_fj_seesaw,
)
from ggptheta.wdalg import MP, SO_EVEN, SP, Family, Kind, WDRep, character, is_epsilon_invariant

DEFAULT_PRIMES = (3, 5)


@dataclass
class SweepConfig:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    max_dim: int = 8
    count: int = 100
    seed: int = 0
    checks: tuple[str, ...] = ("seesaw",)
    output: str | None = None


@dataclass
class Outcome:
    passed: bool
    inputs: dict
    witness: object = None
    details: dict = field(default_factory=dict)


def random_eta(rng: random.Random, phi: WDRep, kind: Kind) -> EnhancedParam:
    group = ComponentGroup.of(phi, kind)
    domain = eta_domain(kind)
    values = [rng.choice((1, -1)) for _ in group.generators(domain)]
    return EnhancedParam(kind, phi, SignCharacter.from_generator_values(group, domain, values),
                         square_class(phi.p, 1))


def check_root_number(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi = random_parameter(rng, p, MP, max_dim, tempered=rng.random() < 0.7)
    base = epsilon_half(phi)
    inputs = {"rep": phi.to_dsl()}
    if not base.is_sign():
        return Outcome(False, inputs, str(base))
    for c in all_classes(p):
        if root_number(phi, c.label) != base.to_sign():
            return Outcome(False, inputs, {"c": c.label, "value": str(epsilon_half(phi, c.label))})
    return Outcome(True, inputs, details={"root_number": base.to_sign()})


def check_adjoint(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi = random_parameter(rng, p, SP, max_dim, tempered=rng.random() < 0.5)
    d = rng.choice(all_classes(p))
    ok = verify_adjoint_factorization(phi, d)
    return Outcome(ok, {"rep": phi.to_dsl(), "chi_V": d.label})


def _two_twists(rng: random.Random, phi_n: WDRep) -> list:
    good = [d for d in all_classes(phi_n.p) if admissible_twist(phi_n, d)]
    return sorted(rng.sample(good, 2))


def check_seesaw(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi_m = random_parameter(rng, p, MP, max_dim)
    phi_n = random_parameter(rng, p, SP, max_dim - 1)
    d1, d2 = _two_twists(rng, phi_n)
    r1 = verify_fj_seesaw(phi_m, phi_n, d1)
    r2 = verify_fj_seesaw(phi_m, phi_n, d2)
    inputs = {"repM": phi_m.to_dsl(), "repN": phi_n.to_dsl(), "d": [d1.label, d2.label]}
    same = r1.table() == r2.table()
    witness = r1.witness or r2.witness
    if not same and witness is None:
        witness = "tables differ between the two twists"
    return Outcome(r1.passed and r2.passed and same, inputs, witness, {"elements": len(r1.rows)})


def check_mp_cocycle(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi = random_parameter(rng, p, MP, max_dim)
    e = random_eta(rng, phi, MP)
    inputs = {"rep": phi.to_dsl(), "eta": list(e.eta.values())}
    for c1 in all_classes(p):
        once = mp_change_psi(e, c1)
        for c2 in all_classes(p):
            if mp_change_psi(once, c2) != mp_change_psi(e, c1 * c2):
                return Outcome(False, inputs, {"c1": c1.label, "c2": c2.label})
    return Outcome(True, inputs)


def check_recipe(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi_m = random_parameter(rng, p, MP, max_dim)
    if rng.random() < 0.5:
        phi_n = random_parameter(rng, p, SO_EVEN, max_dim)
        pair, name = bessel_recipe(phi_m, phi_n), "bessel"
    else:
        phi_n = random_parameter(rng, p, SP, max_dim - 1)
        pair, name = fj_recipe(phi_m, phi_n), "fj"
    inputs = {"recipe": name, "repM": phi_m.to_dsl(), "repN": phi_n.to_dsl()}
    return Outcome(True, inputs, details={"chi_on_M": list(pair.chi_on_M.values()),
                                          "chi_on_N": list(pair.chi_on_N.values())})


def check_prasad(rng: random.Random, p: int, max_dim: int) -> Outcome:
    phi = random_parameter(rng, p, SP, max_dim - 1)
    d = rng.choice(all_classes(p))
    e = random_eta(rng, phi, SP)
    ext1 = prasad_p1(e, d)
    expect1 = 1 if character(p, d) in phi else 2
    phi2 = random_parameter(rng, p, Kind(Family.SO_EVEN, d), max_dim - 1)
    e2 = random_eta(rng, phi2, Kind(Family.SO_EVEN, d))
    ext2 = prasad_p2(e2)
    expect2 = 2 if is_epsilon_invariant(phi2) and character(p) not in phi2 else 1
    inputs = {"rep": phi.to_dsl(), "chi_V": d.label, "rep2": phi2.to_dsl()}
    ok = ext1.count == expect1 and ext2.count == expect2
    witness = None if ok else {"p1": [ext1.count, expect1], "p2": [ext2.count, expect2]}
    return Outcome(ok, inputs, witness)


CHECKS: dict[str, Callable[[random.Random, int, int], Outcome]] = {
    "root-number": check_root_number,
    "adjoint": check_adjoint,
    "seesaw": check_seesaw,
    "mp-cocycle": check_mp_cocycle,
    "recipe": check_recipe,
    "prasad": check_prasad,
}


def run_sweep(config: SweepConfig, out: TextIO | None = None) -> int:
    """Write one JSON line per (item, check) plus a summary line; return the exit code."""
    unknown = [c for c in config.checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    if config.count < 0:
        raise UsageError("count must be non-negative")
    if config.max_dim < 2:
        raise UsageError("max-dim must be at least 2")
    close = False
    if out is None:
        if config.output and config.output != "-":
            out = open(config.output, "w", encoding="utf-8")
            close = True
        else:
            out = sys.stdout
    rng = random.Random(config.seed)
    passed = failed = 0
    try:
        for index in range(config.count):
            for name in config.checks:
                p = rng.choice(config.primes)
                try:
                    outcome = CHECKS[name](rng, p, config.max_dim)
                except InconsistentValueError as exc:
                    outcome = Outcome(False, {}, str(exc))
                passed += outcome.passed
                failed += not outcome.passed
                line = {
                    "index": index,
                    "check": name,
                    "p": p,
                    "inputs": outcome.inputs,
                    "verdict": "pass" if outcome.passed else "fail",
                    "witness": outcome.witness,
                }
                if outcome.details:
                    line["details"] = outcome.details
                out.write(json.dumps(line, sort_keys=True) + "\n")
        summary = {"summary": {"seed": config.seed, "count": config.count, "checks": list(config.checks),
                               "primes": list(config.primes), "max_dim": config.max_dim,
                               "passed": passed, "failed": failed}}
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    finally:
        if close:
            out.close()
    return 0 if failed == 0 else 1
