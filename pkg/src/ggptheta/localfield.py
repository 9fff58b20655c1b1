"""Square classes, Hilbert symbols and quadratic characters of Q_p.

Square classes are stored by a canonical integer representative:

* p odd: ``{1, u, p, u*p}`` with ``u`` the smallest positive quadratic non-residue mod p;
* p = 2: ``{1, -1, 2, -2, 5, -5, 10, -10}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ggptheta.errors import FieldMismatchError, UsageError

MAX_PRIME = 1 << 16

_TWO_ADIC_UNITS = {1: 1, 3: -5, 5: 5, 7: -1}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise UsageError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    if p == 2:
        raise UsageError("no odd non-residue convention at p = 2")
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise AssertionError("unreachable for odd primes")


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        raise UsageError(f"{a} is divisible by {p}")
    return 1 if r == 1 else -1


def _reduce(p: int, n: int) -> int:
    """Canonical square-class label of the nonzero integer n."""
    v = valuation(n, p)
    w = n // p**v
    if p == 2:
        label = _TWO_ADIC_UNITS[w % 8]
        return 2 * label if v % 2 else label
    unit = 1 if _legendre(w, p) == 1 else smallest_nonresidue(p)
    return unit * p if v % 2 else unit


@dataclass(frozen=True)
class PAdicField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        if self.p >= MAX_PRIME:
            raise UsageError(f"primes must be below {MAX_PRIME}")

    @property
    def q(self) -> int:
        return self.p

    @property
    def nonresidue(self) -> int:
        return 5 if self.p == 2 else smallest_nonresidue(self.p)

    def square_class(self, n) -> "SquareClass":
        return square_class(self.p, n)

    def classes(self) -> tuple["SquareClass", ...]:
        return all_classes(self.p)

    def unramified_class(self) -> "SquareClass":
        """The class whose square root generates the unramified quadratic extension."""
        return SquareClass(self.p, self.nonresidue)


@dataclass(frozen=True, order=True)
class SquareClass:
    """An element of Q_p^x / (Q_p^x)^2, identified by its canonical label."""

    p: int
    label: int

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        _same_field(self, other)
        return SquareClass(self.p, _reduce(self.p, self.label * other.label))

    def __truediv__(self, other: "SquareClass") -> "SquareClass":
        return self * other

    def __pow__(self, k: int) -> "SquareClass":
        return self if k % 2 else SquareClass(self.p, 1)

    def __neg__(self) -> "SquareClass":
        return SquareClass(self.p, _reduce(self.p, -self.label))

    @property
    def is_trivial(self) -> bool:
        return self.label == 1

    @property
    def odd_valuation(self) -> bool:
        return valuation(self.label, self.p) % 2 == 1

    @property
    def conductor_exponent(self) -> int:
        """Exponent a with p^a the conductor of the character (., self)."""
        if self.p != 2:
            return 1 if self.odd_valuation else 0
        if self.label in (1, 5):
            return 0
        if self.label in (-1, -5):
            return 2
        return 3

    @property
    def is_ramified(self) -> bool:
        return self.conductor_exponent > 0

    def __str__(self) -> str:
        return str(self.label)


def square_class(p: int, n) -> SquareClass:
    """Square class of a nonzero integer or Fraction n in Q_p."""
    if isinstance(n, SquareClass):
        if n.p != p:
            raise FieldMismatchError(f"class over Q_{n.p} used in Q_{p}")
        return n
    if isinstance(n, Fraction):
        n = n.numerator * n.denominator
    n = int(n)
    if n == 0:
        raise UsageError("0 has no square class")
    return SquareClass(p, _reduce(p, n))


@lru_cache(maxsize=None)
def all_classes(p: int) -> tuple[SquareClass, ...]:
    if p == 2:
        labels = (1, -1, 2, -2, 5, -5, 10, -10)
    else:
        u = smallest_nonresidue(p)
        labels = (1, u, p, u * p)
    return tuple(SquareClass(p, lab) for lab in labels)


def _same_field(a: SquareClass, b: SquareClass) -> None:
    if a.p != b.p:
        raise FieldMismatchError(f"square classes over Q_{a.p} and Q_{b.p} mixed")


def _split(n: int, p: int) -> tuple[int, int]:
    v = valuation(n, p)
    return v, n // p**v


@lru_cache(maxsize=None)
def _hilbert_labels(p: int, a: int, b: int) -> int:
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_v = ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(v, p)
    return sign


def hilbert_symbol(a: SquareClass, b: SquareClass) -> int:
    """The quadratic Hilbert symbol (a, b) of Q_p."""
    _same_field(a, b)
    return _hilbert_labels(a.p, a.label, b.label)


@dataclass(frozen=True)
class QuadChar:
    """chi_d = (., d)."""

    d: SquareClass

    def __call__(self, x) -> int:
        return quad_char_eval(self, x)

    @property
    def p(self) -> int:
        return self.d.p


def quad_char_eval(chi: QuadChar, x) -> int:
    if not isinstance(x, SquareClass):
        x = square_class(chi.d.p, x)
    return hilbert_symbol(x, chi.d)


def norm_group_contains(d: SquareClass, c: SquareClass) -> bool:
    """Whether c is a norm from Q_p(sqrt d); always true for d = 1."""
    return hilbert_symbol(c, d) == 1


def disc_direct_sum(m: int, d: SquareClass, m2: int, d2: SquareClass) -> SquareClass:
    """Discriminant of the orthogonal sum of spaces of dims m, m2 and discriminants d, d2."""
    if m < 0 or m2 < 0:
        raise UsageError("dimensions must be non-negative")
    _same_field(d, d2)
    out = d * d2
    return -out if (m * m2) % 2 else out


@dataclass(frozen=True)
class OrthSpaceLabel:
    """An orthogonal space up to isometry: dimension, discriminant, optional type (d, c), and which form."""

    dim: int
    disc: SquareClass
    type_pair: tuple[SquareClass, SquareClass] | None = None
    variant: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise UsageError("orthogonal spaces need positive dimension")
        if self.variant not in (1, -1):
            raise UsageError("variant must be +1 or -1")
        if self.type_pair is not None:
            d, c = self.type_pair
            _same_field(d, c)
            if d != self.disc:
                raise UsageError(f"type ({d}, {c}) disagrees with discriminant {self.disc}")

    @property
    def character(self) -> QuadChar:
        return QuadChar(self.disc)
