"""L-factor poles, epsilon factors at s = 1/2, root numbers, and genericity.

The additive character is psi(x) = exp(2 pi i {x}_p), trivial on Z_p and
nontrivial on p^-1 Z_p.  Other characters psi_c(x) = psi(cx) are handled by
passing ``c``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ggptheta.errors import FieldMismatchError, InconsistentValueError, NonGenericError, UnsupportedConstituentError, UsageError
from ggptheta.exact import ExactNumber
from ggptheta.localfield import QuadChar, SquareClass, hilbert_symbol, square_class, valuation
from ggptheta.wdalg import (
    Family,
    Kind,
    SelfDualSign,
    WDIrred,
    WDRep,
    _tensor_irreds,
    ext_square,
    require_parameter,
    sign_of,
    sym_square,
)


@dataclass(frozen=True)
class PoleLocus:
    """Real poles of L(s, A), as a multiset of rationals."""

    poles: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def of(cls, a: WDRep) -> "PoleLocus":
        acc: Counter = Counter()
        for irr, m in a.items:
            s0 = _pole_of(irr)
            if s0 is not None:
                acc[s0] += m
        return cls(tuple(sorted(acc.items())))

    def __add__(self, other: "PoleLocus") -> "PoleLocus":
        acc = Counter(dict(self.poles))
        acc.update(dict(other.poles))
        return PoleLocus(tuple(sorted(acc.items())))

    def __contains__(self, s0) -> bool:
        s0 = Fraction(s0)
        return any(s == s0 for s, _ in self.poles)

    def order_at(self, s0) -> int:
        return dict(self.poles).get(Fraction(s0), 0)


def _pole_of(irr: WDIrred) -> Fraction | None:
    ch = irr.char
    # An opaque label is unitary and not quadratic, so its value at a
    # uniformizer is never +1.
    if ch.opaque or ch.d.label != 1:
        return None
    return -ch.exponent - Fraction(irr.n - 1, 2)


def pole_locus(a: WDRep) -> PoleLocus:
    return PoleLocus.of(a)


def l_regular_at(a: WDRep, s0) -> bool:
    return Fraction(s0) not in PoleLocus.of(a)


def _zeta8_from_2adic(coeffs: list[int]) -> tuple[int, int]:
    """Identify sum c_j zeta8^j with zeta8^k * 2^(m/2); returns (k, m)."""
    # Coefficients in the basis 1, z, z^2, z^3 with z^4 = -1.
    for k in range(8):
        for m in range(8):
            if _candidate(k, m) == tuple(coeffs):
                return k, m
    raise InconsistentValueError(f"2-adic Gauss sum {coeffs} is not of the expected shape")


def _candidate(k: int, m: int) -> tuple[int, ...]:
    # 2^(1/2) = z + z^7 = z - z^3
    base = [1, 0, 0, 0]
    for _ in range(m // 2):
        base = [2 * c for c in base]
    if m % 2:
        base = _mul4(base, [0, 1, 0, -1])
    return tuple(_mul4(base, _zeta_vec(k)))


def _zeta_vec(k: int) -> list[int]:
    k %= 8
    v = [0, 0, 0, 0]
    v[k % 4] = 1 if k < 4 else -1
    return v


def _mul4(a: list[int], b: list[int]) -> list[int]:
    out = [0] * 4
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            e = i + j
            if e >= 4:
                out[e - 4] -= x * y
            else:
                out[e] += x * y
    return out


@lru_cache(maxsize=None)
def _gauss_sum_cached(p: int, label: int) -> ExactNumber:
    d = SquareClass(p, label)
    k = d.conductor_exponent
    if k == 0:
        return ExactNumber.one(p)
    if p != 2:
        # Quadratic Gauss sum sum_x (x/p) e^{2 pi i x/p}.
        return ExactNumber(p, 0 if p % 4 == 1 else 2, Fraction(1, 2))
    step = 8 // 2**k
    acc = [0, 0, 0, 0]
    for x in range(1, 2**k, 2):
        s = hilbert_symbol(square_class(2, x), d)
        acc = [a + s * b for a, b in zip(acc, _zeta_vec(step * x))]
    kk, m = _zeta8_from_2adic(acc)
    return ExactNumber(2, kk, Fraction(m, 2))


def gauss_sum(chi: QuadChar | SquareClass, k: int | None = None) -> ExactNumber:
    """sum over x mod p^k of chi(x) psi(x / p^k), for chi primitive of conductor p^k."""
    d = chi.d if isinstance(chi, QuadChar) else chi
    if k is not None and k != d.conductor_exponent:
        raise UsageError(f"chi_{d.label} is not primitive modulo {d.p}^{k}")
    return _gauss_sum_cached(d.p, d.label)


def _char_epsilon(d: SquareClass, y: Fraction) -> ExactNumber:
    """epsilon(1/2, chi_d |.|^y, psi)."""
    a = d.conductor_exponent
    p = d.p
    if a == 0:
        return ExactNumber.one(p)
    chi_p = hilbert_symbol(square_class(p, p), d)
    return ExactNumber.sign(p, chi_p**a) * gauss_sum(d) * ExactNumber.p_power(p, Fraction(-a, 2) - a * y)


@lru_cache(maxsize=1 << 16)
def _irred_epsilon(irr: WDIrred, c_label: int, vc: int) -> ExactNumber:
    ch = irr.char
    if ch.opaque:
        raise UnsupportedConstituentError(f"epsilon factor of opaque constituent {irr}")
    p, n, x, d = ch.p, irr.n, ch.exponent, ch.d
    chi_c = hilbert_symbol(SquareClass(p, c_label), d)
    out = ExactNumber.one(p)
    for i in range(n):
        y = x + Fraction(n - 1, 2) - i
        # Change of additive character contributes chi(c) |c|^y.
        out = out * _char_epsilon(d, y) * chi_c * ExactNumber.p_power(p, -vc * y)
    if not d.is_ramified and n > 1:
        chi_p = character_value_at_p(d)
        out = out * (-chi_p) ** (n - 1) * ExactNumber.p_power(p, -(n - 1) * x)
    return out


def _c_data(p: int, c) -> tuple[int, int]:
    if isinstance(c, SquareClass):
        return c.label, valuation(c.label, p)
    c = Fraction(c)
    if c == 0:
        raise UsageError("psi_0 is trivial")
    v = valuation(c.numerator, p) - valuation(c.denominator, p)
    return square_class(p, c).label, v


def epsilon_half(a: WDRep, c=1) -> ExactNumber:
    """epsilon(1/2, a, psi_c), exact.  ``c`` may be a rational number or a square class."""
    c_label, vc = _c_data(a.p, c)
    out = ExactNumber.one(a.p)
    for irr, m in a.items:
        out = out * _irred_epsilon(irr, c_label, vc) ** m
    return out


@lru_cache(maxsize=1 << 18)
def _pair_epsilon(x: WDIrred, y: WDIrred) -> ExactNumber:
    out = ExactNumber.one(x.char.p)
    for z in _tensor_irreds(x, y):
        out = out * _irred_epsilon(z, 1, 0)
    return out


def epsilon_tensor(a: WDRep, b: WDRep) -> ExactNumber:
    """epsilon(1/2, a (x) b, psi) without expanding the tensor product."""
    if a.p != b.p:
        raise FieldMismatchError(f"representations over Q_{a.p} and Q_{b.p} mixed")
    out = ExactNumber.one(a.p)
    for x, m in a.items:
        for y, k in b.items:
            out = out * _pair_epsilon(x, y) ** (m * k)
    return out


def root_number(a: WDRep, c=1) -> int:
    if sign_of(a) not in (SelfDualSign.SYMPLECTIC, SelfDualSign.BOTH) or a.dim % 2:
        raise UsageError(f"{a} is not symplectic")
    val = epsilon_half(a, c)
    if not val.is_sign():
        raise InconsistentValueError(f"root number of {a} came out as {val}")
    return val.to_sign()


def lambda_factor(d: SquareClass) -> ExactNumber:
    """Langlands lambda-factor of Q_p(sqrt d)/Q_p for psi; equals epsilon(1/2, chi_d, psi)."""
    return _char_epsilon(d, Fraction(0))


def adjoint(a: WDRep, kind: Kind) -> WDRep:
    if kind.family in (Family.SO_ODD, Family.MP):
        return sym_square(a)
    return ext_square(a)


def generic_pole(a: WDRep, kind: Kind) -> Fraction | None:
    """The offending pole at s = 1 of L(s, Ad), or None when regular there."""
    require_parameter(a, kind)
    return Fraction(1) if not l_regular_at(adjoint(a, kind), 1) else None


def is_generic(a: WDRep, kind: Kind) -> bool:
    return generic_pole(a, kind) is None


def require_generic(a: WDRep, kind: Kind) -> None:
    if not is_generic(a, kind):
        bad = [str(i) for i in adjoint(a, kind).constituents if _pole_of(i) == 1]
        raise NonGenericError(f"L(s, {a}, Ad) has a pole at s = 1 from {', '.join(bad)}", Fraction(1))


def character_value_at_p(d: SquareClass) -> int:
    return hilbert_symbol(square_class(d.p, d.p), d)


__all__ = [
    "PoleLocus",
    "pole_locus",
    "l_regular_at",
    "gauss_sum",
    "epsilon_half",
    "epsilon_tensor",
    "root_number",
    "lambda_factor",
    "adjoint",
    "generic_pole",
    "is_generic",
    "require_generic",
]
