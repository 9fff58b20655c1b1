"""Weil-Deligne representations built from characters and SL2 factors.

An irreducible constituent is ``chi |.|^x (x) nu_n``: a one-dimensional
character of W_F (a quadratic character times a monomial in opaque unitary
labels, twisted by a rational power of the absolute value) tensored with the
n-dimensional irreducible representation of SL2(C).  Opaque labels stand for
unitary characters that are not self-dual; ``P^-1`` is the contragredient of ``P``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from ggptheta.errors import FieldMismatchError, MalformedParameterError, UsageError
from ggptheta.localfield import SquareClass, square_class


def _merge_opaque(a, b, scale=1):
    acc = Counter(dict(a))
    for name, k in b:
        acc[name] += scale * k
    return tuple(sorted((n, k) for n, k in acc.items() if k))


@dataclass(frozen=True)
class TwistedChar:
    """A character chi_d * prod(P^k) * |.|^exponent of W_F."""

    d: SquareClass
    exponent: Fraction = Fraction(0)
    opaque: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if type(self.exponent) is not Fraction:
            object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.opaque:
            object.__setattr__(self, "opaque", _merge_opaque((), self.opaque))
        object.__setattr__(self, "_hash", hash((self.d, self.exponent, self.opaque)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def p(self) -> int:
        return self.d.p

    def __mul__(self, other: "TwistedChar") -> "TwistedChar":
        opaque = _merge_opaque(self.opaque, other.opaque) if self.opaque or other.opaque else ()
        return TwistedChar(self.d * other.d, self.exponent + other.exponent, opaque)

    def __pow__(self, k: int) -> "TwistedChar":
        if k == 1:
            return self
        return TwistedChar(self.d**k, self.exponent * k, tuple((n, e * k) for n, e in self.opaque))

    def dual(self) -> "TwistedChar":
        return TwistedChar(self.d, -self.exponent, tuple((n, -e) for n, e in self.opaque))

    def untwisted(self) -> "TwistedChar":
        return TwistedChar(self.d, Fraction(0), self.opaque)

    @property
    def is_quadratic(self) -> bool:
        """True when the finite part is a quadratic character (no opaque labels)."""
        return not self.opaque

    @property
    def is_unitary(self) -> bool:
        return self.exponent == 0

    @property
    def is_self_dual(self) -> bool:
        return self.is_quadratic and self.exponent == 0

    @property
    def is_trivial(self) -> bool:
        return self.is_self_dual and self.d.is_trivial

    @property
    def is_ramified(self) -> bool:
        return self.d.is_ramified

    def __str__(self) -> str:
        parts = []
        if not self.d.is_trivial:
            parts.append(f"chi({self.d.label})")
        if self.exponent:
            parts.append(f"t({self.exponent})")
        for name, k in self.opaque:
            atom = f"op({name})" if k > 0 else f"op(~{name})"
            parts.extend([atom] * abs(k))
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class WDIrred:
    char: TwistedChar
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("SL2 dimension must be at least 1")
        object.__setattr__(self, "_hash", hash((self.char, self.n)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def dim(self) -> int:
        return self.n

    @property
    def is_self_dual(self) -> bool:
        return self.char.is_self_dual

    @property
    def sign(self) -> int | None:
        """+1 (orthogonal) or -1 (symplectic) for self-dual constituents, else None."""
        if not self.is_self_dual:
            return None
        return 1 if self.n % 2 else -1

    def dual(self) -> "WDIrred":
        return WDIrred(self.char.dual(), self.n)

    def twist(self, d: SquareClass) -> "WDIrred":
        return WDIrred(TwistedChar(self.char.d * d, self.char.exponent, self.char.opaque), self.n)

    def sort_key(self):
        rank = {1: 0, -1: 1, None: 2}[self.sign]
        return (rank, self.char.d.conductor_exponent, self.n, self.char.exponent,
                self.char.d.label, self.char.opaque)

    def __str__(self) -> str:
        c = str(self.char)
        if self.n == 1:
            return c
        return f"sp({self.n})" if c == "1" else f"{c}*sp({self.n})"


class SelfDualSign(enum.Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    BOTH = "orthogonal-and-symplectic"
    NONE = "none"

    def admits(self, sign: int) -> bool:
        if self is SelfDualSign.BOTH:
            return True
        if sign == 1:
            return self is SelfDualSign.ORTHOGONAL
        return self is SelfDualSign.SYMPLECTIC


@dataclass(frozen=True)
class WDRep:
    """A finite multiset of WDIrred constituents over Q_p, canonically ordered."""

    p: int
    items: tuple[tuple[WDIrred, int], ...] = ()

    def __post_init__(self):
        counts: Counter = Counter()
        for irr, mult in self.items:
            if irr.char.p != self.p:
                raise FieldMismatchError(f"constituent over Q_{irr.char.p} in a rep over Q_{self.p}")
            if mult < 0:
                raise UsageError("multiplicities must be non-negative")
            counts[irr] += mult
        canon = tuple(sorted(((i, m) for i, m in counts.items() if m), key=lambda im: im[0].sort_key()))
        object.__setattr__(self, "items", canon)
        object.__setattr__(self, "_hash", hash((self.p, canon)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def from_irreds(cls, p: int, irreds: Iterable[WDIrred]) -> "WDRep":
        return cls(p, tuple((i, 1) for i in irreds))

    @classmethod
    def zero(cls, p: int) -> "WDRep":
        return cls(p)

    @property
    def constituents(self) -> tuple[WDIrred, ...]:
        return tuple(i for i, _ in self.items)

    def multiplicity(self, irr: WDIrred) -> int:
        for i, m in self.items:
            if i == irr:
                return m
        return 0

    def __contains__(self, irr: WDIrred) -> bool:
        return self.multiplicity(irr) > 0

    @property
    def dim(self) -> int:
        return sum(i.n * m for i, m in self.items)

    def __add__(self, other: "WDRep") -> "WDRep":
        return direct_sum(self, other)

    def __mul__(self, other: "WDRep") -> "WDRep":
        return tensor(self, other)

    def scale(self, k: int) -> "WDRep":
        return WDRep(self.p, tuple((i, m * k) for i, m in self.items))

    def dual(self) -> "WDRep":
        return dual(self)

    def twist(self, d: SquareClass) -> "WDRep":
        return twist(self, d)

    def det(self) -> TwistedChar:
        return det(self)

    def __str__(self) -> str:
        return self.to_dsl()

    def to_dsl(self) -> str:
        if not self.items:
            return "0"
        terms = []
        for irr, m in self.items:
            terms.append(f"{m}*{irr}" if m > 1 else str(irr))
        return "+".join(terms)

    def to_json(self) -> dict:
        out = []
        for irr, m in self.items:
            ch = {"d": irr.char.d.label, "exp": str(irr.char.exponent)}
            if irr.char.opaque:
                ch["op"] = {name: k for name, k in irr.char.opaque}
            out.append({"char": ch, "n": irr.n, "mult": m})
        dt = det(self)
        return {
            "constituents": out,
            "dim": self.dim,
            "det": {"d": dt.d.label, "exp": str(dt.exponent), **({"op": dict(dt.opaque)} if dt.opaque else {})},
            "sign": sign_of(self).value,
            "dsl": self.to_dsl(),
        }


def character(p: int, d=1, exponent=0, n: int = 1, opaque=()) -> WDIrred:
    """Convenience constructor for chi_d |.|^exponent (x) nu_n."""
    return WDIrred(TwistedChar(square_class(p, d), Fraction(exponent), tuple(opaque)), n)


def rep(p: int, *irreds: WDIrred) -> WDRep:
    return WDRep.from_irreds(p, irreds)


def _check_field(a: WDRep, b: WDRep) -> None:
    if a.p != b.p:
        raise FieldMismatchError(f"representations over Q_{a.p} and Q_{b.p} mixed")


def direct_sum(a: WDRep, b: WDRep) -> WDRep:
    _check_field(a, b)
    return WDRep(a.p, a.items + b.items)


@lru_cache(maxsize=1 << 16)
def _tensor_irreds(x: WDIrred, y: WDIrred) -> tuple[WDIrred, ...]:
    ch = x.char * y.char
    return tuple(WDIrred(ch, x.n + y.n - 1 - 2 * k) for k in range(min(x.n, y.n)))


def tensor(a: WDRep, b: WDRep) -> WDRep:
    """Bilinear extension of Clebsch-Gordan on the SL2 factors."""
    _check_field(a, b)
    acc: Counter = Counter()
    for x, m in a.items:
        for y, k in b.items:
            for z in _tensor_irreds(x, y):
                acc[z] += m * k
    return WDRep(a.p, tuple(acc.items()))


def twist(a: WDRep, d: SquareClass) -> WDRep:
    """a (x) chi_d."""
    if d.p != a.p:
        raise FieldMismatchError("twisting character over a different field")
    return WDRep(a.p, tuple((i.twist(d), m) for i, m in a.items))


def dual(a: WDRep) -> WDRep:
    return WDRep(a.p, tuple((i.dual(), m) for i, m in a.items))


@lru_cache(maxsize=1 << 16)
def det(a: WDRep) -> TwistedChar:
    out = TwistedChar(square_class(a.p, 1))
    for irr, m in a.items:
        out = out * irr.char ** (irr.n * m)
    return out


def dim(a: WDRep) -> int:
    return a.dim


@lru_cache(maxsize=1 << 14)
def _sq_irred(x: WDIrred, alternating: bool) -> tuple[WDIrred, ...]:
    ch = x.char ** 2
    top = 2 * x.n - 3 if alternating else 2 * x.n - 1
    return tuple(WDIrred(ch, k) for k in range(top, 0, -4))


def _square(a: WDRep, alternating: bool) -> WDRep:
    acc: Counter = Counter()
    items = a.items
    for idx, (x, m) in enumerate(items):
        for z in _sq_irred(x, alternating):
            acc[z] += m
        pairs = m * (m - 1) // 2
        if pairs:
            for z in _tensor_irreds(x, x):
                acc[z] += pairs
        for y, k in items[idx + 1:]:
            for z in _tensor_irreds(x, y):
                acc[z] += m * k
    return WDRep(a.p, tuple(acc.items()))


def ext_square(a: WDRep) -> WDRep:
    return _square(a, alternating=True)


def sym_square(a: WDRep) -> WDRep:
    return _square(a, alternating=False)


def sign_of(a: WDRep) -> SelfDualSign:
    """Which non-degenerate invariant forms (symmetric / alternating) the representation admits."""
    if dual(a) != a:
        return SelfDualSign.NONE
    orth = sympl = True
    for irr, m in a.items:
        s = irr.sign
        if s is None or m % 2 == 0:
            continue
        if s == 1:
            sympl = False
        else:
            orth = False
    if orth and sympl:
        return SelfDualSign.BOTH
    if orth:
        return SelfDualSign.ORTHOGONAL
    if sympl:
        return SelfDualSign.SYMPLECTIC
    return SelfDualSign.NONE


class Family(enum.Enum):
    SP = "sp"
    SO_ODD = "so-odd"
    SO_EVEN = "so-even"
    MP = "mp"


@dataclass(frozen=True)
class Kind:
    """A group kind.  ``disc`` is the discriminant of the orthogonal space (SO kinds only)."""

    family: Family
    disc: SquareClass | None = None

    @property
    def parameter_sign(self) -> int:
        """Sign of the standard representation of the dual group."""
        return 1 if self.family in (Family.SP, Family.SO_EVEN) else -1

    @property
    def dimension_parity(self) -> int:
        return 1 if self.family is Family.SP else 0

    @property
    def uses_plus_subgroup(self) -> bool:
        return self.family in (Family.SP, Family.SO_EVEN)

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "Kind":
        name, _, disc = text.strip().lower().partition(":")
        name = name.replace("_", "-")
        aliases = {"sp": Family.SP, "so-odd": Family.SO_ODD, "so-even": Family.SO_EVEN,
                   "mp": Family.MP}
        if name not in aliases:
            raise UsageError(f"unknown group kind {text!r}; expected sp, so-odd, so-even[:d], mp")
        d = None
        if disc:
            if p is None:
                raise UsageError("a discriminant needs a prime")
            d = square_class(p, int(disc))
        return cls(aliases[name], d)

    def __str__(self) -> str:
        return self.family.value + (f":{self.disc.label}" if self.disc is not None else "")


SP = Kind(Family.SP)
SO_ODD = Kind(Family.SO_ODD)
SO_EVEN = Kind(Family.SO_EVEN)
MP = Kind(Family.MP)


class Classification(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def classify_parameter(a: WDRep, kind: Kind) -> Classification:
    """Check that a is the standard representation of an L-parameter of the given kind."""
    if a.dim % 2 != kind.dimension_parity:
        return Classification(False, "dimension-parity")
    if not sign_of(a).admits(kind.parameter_sign):
        return Classification(False, "sign")
    dt = det(a)
    if not dt.is_self_dual:
        return Classification(False, "determinant")
    if kind.family is Family.SO_EVEN:
        if kind.disc is not None and dt.d != kind.disc:
            return Classification(False, "determinant")
    elif not dt.d.is_trivial:
        return Classification(False, "determinant")
    return Classification(True)


def require_parameter(a: WDRep, kind: Kind) -> None:
    from ggptheta.errors import ClassificationError

    res = classify_parameter(a, kind)
    if not res:
        raise ClassificationError(f"{a} is not a parameter of kind {kind}: {res.reason}", res.reason)


def is_tempered(a: WDRep) -> bool:
    return all(i.char.exponent == 0 for i in a.constituents)


@dataclass(frozen=True)
class LanglandsData:
    pieces: tuple[tuple[WDRep, Fraction], ...]
    core: WDRep

    def reassemble(self) -> WDRep:
        out = self.core
        for tempered, s in self.pieces:
            shifted = WDRep(tempered.p, tuple(
                (WDIrred(TwistedChar(i.char.d, i.char.exponent + s, i.char.opaque), i.n), m)
                for i, m in tempered.items))
            out = out + shifted + dual(shifted)
        return out


def langlands_decompose(a: WDRep) -> LanglandsData:
    """Split a self-dual representation into phi_i |.|^{s_i} pieces (s_1 > ... > 0) and a tempered core."""
    if dual(a) != a:
        raise MalformedParameterError(f"{a} is not stable under duality")
    by_exp: dict[Fraction, list] = {}
    core = []
    for irr, m in a.items:
        x = irr.char.exponent
        if x == 0:
            core.append((irr, m))
        elif x > 0:
            by_exp.setdefault(x, []).append((WDIrred(irr.char.untwisted(), irr.n), m))
    pieces = tuple((WDRep(a.p, tuple(items)), s) for s, items in sorted(by_exp.items(), reverse=True))
    return LanglandsData(pieces, WDRep(a.p, tuple(core)))


def is_discrete(a: WDRep, kind: Kind) -> bool:
    if not classify_parameter(a, kind):
        return False
    return all(irr.sign == kind.parameter_sign and m == 1 for irr, m in a.items)


def is_epsilon_invariant(a: WDRep) -> bool:
    """For even-dimensional orthogonal a: some orthogonal constituent has odd dimension."""
    if a.dim % 2 or not sign_of(a).admits(1):
        raise UsageError(f"{a} is not an even-dimensional orthogonal representation")
    return any(irr.sign == 1 and irr.n % 2 == 1 for irr in a.constituents)
