"""Recipes for the distinguished members of generic packets, parameter maps of
theta lifts, and the see-saw consistency check tying the two recipes together.

Throughout, for a symplectic pair (phi_M, phi_N):

* chi_N(a) = eps(M^a (x) N) det(M^a)(-1)^{dim N/2} det(N)(-1)^{dim M^a/2}, a in A_M;
* chi_M(b) = eps(M (x) N^b) det(M)(-1)^{dim N^b/2} det(N^b)(-1)^{dim M/2}, b in A_N^+.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ggptheta.errors import InconsistentValueError, NonGenericError, UsageError
from ggptheta.lfactors import epsilon_half, epsilon_tensor, l_regular_at, require_generic
from ggptheta.localfield import OrthSpaceLabel, SquareClass, hilbert_symbol, square_class
from ggptheta.packets import (
    FULL,
    PLUS,
    ComponentGroup,
    EnhancedParam,
    SignCharacter,
    dual_enhanced,
    whittaker_change,
)
from ggptheta.wdalg import (
    MP,
    SP,
    Family,
    Kind,
    WDRep,
    character,
    det,
    ext_square,
    is_tempered,
    rep,
    sign_of,
)


def det_at(a: WDRep, c) -> int:
    """det(a)(c) for a with quadratic determinant."""
    dt = det(a)
    if not dt.is_self_dual:
        raise UsageError(f"det({a}) is not quadratic")
    return hilbert_symbol(square_class(a.p, c), dt.d)


def _sign(value) -> int:
    if not value.is_sign():
        raise InconsistentValueError(f"recipe value {value} is not +1 or -1")
    return value.to_sign()


def _half(n: int) -> int:
    if n % 2:
        raise UsageError("odd dimension where an even one is required")
    return n // 2


@lru_cache(maxsize=1 << 18)
def recipe_value(m_part: WDRep, n_part: WDRep) -> int:
    """eps(m_part (x) n_part) det(m_part)(-1)^{dim n_part/2} det(n_part)(-1)^{dim m_part/2}."""
    eps = _sign(epsilon_tensor(m_part, n_part))
    return eps * det_at(m_part, -1) ** _half(n_part.dim) * det_at(n_part, -1) ** _half(m_part.dim)


def chi_n_value(phi_m: WDRep, phi_n: WDRep, group_m: ComponentGroup, a: int) -> int:
    return recipe_value(group_m.minus_eigenspace(a), phi_n)


def chi_m_value(phi_m: WDRep, phi_n: WDRep, group_n: ComponentGroup, b: int) -> int:
    return recipe_value(phi_m, group_n.minus_eigenspace(b))


@dataclass(frozen=True)
class RecipePair:
    """chi_on_M is the character of A_M (chi_N or chi_{N_1}); chi_on_N is chi_M on A_N^+."""

    chi_on_M: SignCharacter
    chi_on_N: SignCharacter

    def to_json(self) -> dict:
        return {"chi_on_M": self.chi_on_M.to_json(), "chi_on_N": self.chi_on_N.to_json()}


def _check_symplectic(phi_m: WDRep) -> None:
    if phi_m.dim % 2 or not sign_of(phi_m).admits(-1):
        raise UsageError(f"{phi_m} is not symplectic")


def _check_orthogonal(phi_n: WDRep, parity: int) -> None:
    if phi_n.dim % 2 != parity or not sign_of(phi_n).admits(1):
        kind = "odd" if parity else "even"
        raise UsageError(f"{phi_n} is not {kind}-dimensional orthogonal")


def bessel_recipe(phi_m: WDRep, phi_n: WDRep) -> RecipePair:
    _check_symplectic(phi_m)
    _check_orthogonal(phi_n, 0)
    if phi_m.p != phi_n.p:
        raise UsageError("parameters over different fields")
    gm = ComponentGroup.for_sign(phi_m, -1)
    gn = ComponentGroup.for_sign(phi_n, 1)
    chi_n = SignCharacter.from_function(gm, FULL, lambda a: chi_n_value(phi_m, phi_n, gm, a))
    chi_m = SignCharacter.from_function(gn, PLUS, lambda b: chi_m_value(phi_m, phi_n, gn, b))
    return RecipePair(chi_n, chi_m)


def embed_twisted(src: ComponentGroup, dst: ComponentGroup, d: SquareClass) -> Callable[[int], int]:
    """The map a_i -> a_{M_i (x) chi_d} from src into dst."""
    images = [dst.element([irr.twist(d)]) for irr, _ in src.basis]

    def embed(v: int) -> int:
        out = 0
        for k, img in enumerate(images):
            if v >> k & 1:
                out ^= img
        return out

    return embed


def add_trivial(phi: WDRep) -> WDRep:
    return phi + rep(phi.p, character(phi.p))


def fj_recipe(phi_m: WDRep, phi_n: WDRep) -> RecipePair:
    """chi_{N_1} on A_M and chi_M on A_N^+ (inside A_{N_1}^+), with N_1 = N + 1."""
    _check_symplectic(phi_m)
    _check_orthogonal(phi_n, 1)
    if not det(phi_n).is_trivial:
        raise UsageError(f"det({phi_n}) must be trivial")
    n1 = add_trivial(phi_n)
    pair = bessel_recipe(phi_m, n1)
    gn = ComponentGroup.for_sign(phi_n, 1)
    embed = embed_twisted(gn, pair.chi_on_N.group, square_class(phi_n.p, 1))
    return RecipePair(pair.chi_on_M, pair.chi_on_N.pullback(gn, PLUS, embed))


def _require_kind(e: EnhancedParam, family: Family, op: str) -> None:
    if e.kind.family is not family:
        raise UsageError(f"{op} needs a {family.value} parameter, got {e.kind}")


def mp_shift(group: ComponentGroup, c: SquareClass) -> Callable[[int], int]:
    """a -> eps(M^a) eps(M^a (x) chi_c) chi_c(-1)^{dim M^a/2}."""
    minus_one = square_class(group.p, -1)

    def value(v: int) -> int:
        ma = group.minus_eigenspace(v)
        e = _sign(epsilon_half(ma) * epsilon_half(ma.twist(c)))
        return e * hilbert_symbol(minus_one, c) ** _half(ma.dim)

    return value


def mp_change_psi(e: EnhancedParam, c) -> EnhancedParam:
    """Metaplectic parameter attached to psi_c: (phi (x) chi_c, eta * shift), label multiplied by c."""
    _require_kind(e, Family.MP, "mp_change_psi")
    c = square_class(e.phi.p, c)
    return _mp_twist(e, c, MP, e.label * c)


def _mp_twist(e: EnhancedParam, c: SquareClass, kind: Kind, label: SquareClass) -> EnhancedParam:
    src = e.group
    phi_c = e.phi.twist(c)
    dst = ComponentGroup.of(phi_c, kind)
    # Inverse of the twisting identification A_phi -> A_{phi_c}.
    back = embed_twisted(dst, src, c)
    shift = mp_shift(src, c)
    eta = SignCharacter.from_function(dst, FULL, lambda v: e.eta(back(v)) * shift(back(v)))
    return EnhancedParam(kind, phi_c, eta, label)


def mp_theta_odd(e: EnhancedParam, c, dual_side: bool = False) -> EnhancedParam:
    """Theta lift to SO(V_{2n+1}) of discriminant c; the dual side uses -c in the twist."""
    _require_kind(e, Family.MP, "mp_theta_odd")
    c = square_class(e.phi.p, c)
    twist_by = -c if dual_side else c
    return _mp_twist(e, twist_by, Kind(Family.SO_ODD, c), e.label)


def mp_from_theta_odd(e: EnhancedParam, c, dual_side: bool = False) -> EnhancedParam:
    """Inverse of mp_theta_odd."""
    _require_kind(e, Family.SO_ODD, "mp_from_theta_odd")
    c = square_class(e.phi.p, c)
    twist_by = -c if dual_side else c
    as_mp = EnhancedParam(MP, e.phi, SignCharacter(ComponentGroup.of(e.phi, MP), FULL, e.eta.bits), e.label)
    return _mp_twist(as_mp, twist_by, MP, e.label)


@dataclass(frozen=True)
class PartialCharacter:
    """A character of a subgroup together with every extension to the ambient A^+."""

    base: SignCharacter
    ambient: ComponentGroup
    extensions: tuple[SignCharacter, ...]
    kind: Kind
    phi: WDRep
    label: SquareClass

    @property
    def count(self) -> int:
        return len(self.extensions)

    def enhanced(self, index: int = 0) -> EnhancedParam:
        return EnhancedParam(self.kind, self.phi, self.extensions[index], self.label)

    def select(self, variant: int) -> EnhancedParam | None:
        """The extension whose central sign is the given form variant, if any."""
        if self.kind.family is not Family.SO_EVEN:
            raise UsageError("variant selection applies to even orthogonal targets")
        z = self.ambient.central_element()
        hits = [x for x in self.extensions if x(z) == variant]
        if len(hits) > 1:
            raise InconsistentValueError("both extensions have the same central sign")
        return EnhancedParam(self.kind, self.phi, hits[0], self.label) if hits else None

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_dsl(),
            "kind": str(self.kind),
            "base": self.base.to_json(),
            "count": self.count,
            "extensions": [x.to_json() for x in self.extensions],
        }


def extensions_along(base: SignCharacter, target: ComponentGroup, domain: str,
                     embed: Callable[[int], int]) -> tuple[SignCharacter, ...]:
    """All characters x of target (on domain) with x(embed(g)) = base(g) for g in base's generators."""
    rows = []
    for g in base.group.generators(base.domain):
        img = embed(g)
        if not target.contains(img, domain):
            raise InconsistentValueError(f"{base.group.label(g)} lands outside the {domain} target")
        rows.append((img, 0 if base(g) == 1 else 1))
    solutions = _solve_f2(rows, target.rank)
    seen = {}
    for bits in solutions:
        chi = SignCharacter(target, domain, bits)
        seen.setdefault(chi.bits, chi)
    return tuple(seen[k] for k in sorted(seen))


def _solve_f2(rows: list[tuple[int, int]], nvars: int) -> list[int]:
    """All x in F_2^nvars with popcount(x & r) = rhs mod 2 for each row."""
    pivots: list[tuple[int, int, int]] = []
    for r, rhs in rows:
        for bit, pr, prhs in pivots:
            if r >> bit & 1:
                r ^= pr
                rhs ^= prhs
        if r == 0:
            if rhs:
                return []
            continue
        bit = r.bit_length() - 1
        new = []
        for b, pr, prhs in pivots:
            if pr >> bit & 1:
                pr ^= r
                prhs ^= rhs
            new.append((b, pr, prhs))
        pivots = new + [(bit, r, rhs)]
    pivot_bits = {b for b, _, _ in pivots}
    free = [k for k in range(nvars) if k not in pivot_bits]
    out = []
    for choice in range(1 << len(free)):
        x = 0
        for i, k in enumerate(free):
            if choice >> i & 1:
                x |= 1 << k
        for b, pr, prhs in pivots:
            rest = bin(x & pr & ~(1 << b)).count("1") % 2
            if rest ^ prhs:
                x |= 1 << b
        out.append(x)
    return out


def prasad_p1(e: EnhancedParam, v) -> PartialCharacter:
    """phi' = (phi (x) chi_V) + 1 for the theta lift from Sp(W_2n) to O(V_2n+2)."""
    _require_kind(e, Family.SP, "prasad_p1")
    if isinstance(v, OrthSpaceLabel):
        if v.dim != e.phi.dim + 1:
            raise UsageError(f"V must have dimension {e.phi.dim + 1}, not {v.dim}")
        d = v.disc
    else:
        d = square_class(e.phi.p, v)
    phi2 = add_trivial(e.phi.twist(d))
    kind2 = Kind(Family.SO_EVEN, d)
    target = ComponentGroup.of(phi2, kind2)
    embed = embed_twisted(e.group, target, d)
    exts = extensions_along(e.eta, target, PLUS, embed)
    return PartialCharacter(e.eta, target, exts, kind2, phi2, e.label)


def prasad_p2(e: EnhancedParam) -> PartialCharacter:
    """phi = (phi' (x) chi_V) + chi_V for the theta lift from O(V_2n) to Sp(W_2n)."""
    _require_kind(e, Family.SO_EVEN, "prasad_p2")
    d = e.kind.disc if e.kind.disc is not None else det(e.phi).d
    phi = e.phi.twist(d) + rep(e.phi.p, character(e.phi.p, d))
    target = ComponentGroup.of(phi, SP)
    embed = embed_twisted(e.group, target, d)
    exts = extensions_along(e.eta, target, PLUS, embed)
    return PartialCharacter(e.eta, target, exts, SP, phi, e.label)


def verify_adjoint_factorization(phi: WDRep, chi_v) -> bool:
    """Lambda^2((phi (x) chi_V) + 1) == Lambda^2(phi) + phi (x) chi_V."""
    d = square_class(phi.p, chi_v)
    lhs = ext_square(add_trivial(phi.twist(d)))
    rhs = ext_square(phi) + phi.twist(d)
    return lhs == rhs


@dataclass(frozen=True)
class SeesawReport:
    passed: bool
    d: SquareClass
    rows: tuple[tuple[str, str, int, int], ...]
    witness: tuple[str, str, int, int] | None = None

    def table(self) -> dict[tuple[str, str], tuple[int, int]]:
        return {(a, b): (x, y) for a, b, x, y in self.rows}

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "d": self.d.label,
            "rows": [list(r) for r in self.rows],
            "witness": list(self.witness) if self.witness else None,
        }


def admissible_twist(phi_n: WDRep, d) -> bool:
    """Whether L(s, phi_N (x) chi_d) is regular at s = 1."""
    return l_regular_at(phi_n.twist(square_class(phi_n.p, d)), 1)


def verify_fj_seesaw(phi_m: WDRep, phi_n: WDRep, d, allow_nontempered: bool = False) -> SeesawReport:
    """Replay the see-saw identity chain and compare with the direct Fourier-Jacobi recipe."""
    p = phi_m.p
    d = square_class(p, d)
    require_generic(phi_m, MP)
    require_generic(phi_n, SP)
    if not allow_nontempered and not (is_tempered(phi_m) and is_tempered(phi_n)):
        raise UsageError("non-tempered parameters need allow_nontempered")
    if not admissible_twist(phi_n, d):
        raise NonGenericError(f"L(s, {phi_n} (x) chi_{d.label}) has a pole at s = 1", 1)

    direct = fj_recipe(phi_m, phi_n)

    m_tau = phi_m.twist(d)
    n_sigma = add_trivial(phi_n.twist(d))
    bessel = bessel_recipe(m_tau, n_sigma)

    # a-side: eta_tau = chi_{N_sigma}; undo the theta twist to reach eta of pi-bar.
    tau = EnhancedParam(Kind(Family.SO_ODD, d), m_tau, bessel.chi_on_M, square_class(p, 1))
    pi_bar = mp_from_theta_odd(tau, d)

    # b-side: iota_{w_-1}([sigma]) = chi_{M_tau}; move to w_1, restrict along
    # the (P1) embedding, then pass to the contragredient.
    sigma = EnhancedParam(Kind(Family.SO_EVEN, d), n_sigma, bessel.chi_on_N, square_class(p, -1))
    sigma = whittaker_change(sigma, 1)
    gn = ComponentGroup.of(phi_n, SP)
    pi_dual = EnhancedParam(SP, phi_n, sigma.eta.pullback(gn, PLUS, embed_twisted(gn, sigma.group, d)),
                            square_class(p, 1))
    pi = dual_enhanced(pi_dual)

    if pi_bar.phi != phi_m:
        raise InconsistentValueError("untwisting did not recover phi_M")
    rows = []
    witness = None
    gm = pi_bar.group
    for a in gm.elements(FULL):
        for b in gn.elements(PLUS):
            expected = direct.chi_on_M(a) * direct.chi_on_N(b)
            got = pi_bar.eta(a) * pi.eta(b)
            row = (gm.label(a), gn.label(b), expected, got)
            rows.append(row)
            if expected != got and witness is None:
                witness = row
    return SeesawReport(witness is None, d, tuple(rows), witness)
