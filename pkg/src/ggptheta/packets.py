"""Component groups, sign characters on them, and enhanced parameters.

Elements of A_phi are integer bitmasks over the basis constituents: bit i set
means a_i occurs.  A_phi^+ is the kernel of a -> (-1)^{dim M^a}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterator

from ggptheta.errors import DomainError, InconsistentValueError, UsageError
from ggptheta.localfield import SquareClass, hilbert_symbol, square_class
from ggptheta.wdalg import Family, Kind, WDIrred, WDRep, det, require_parameter

FULL = "full"
PLUS = "plus"

# Groups up to this rank are checked element by element when a character is
# built from a formula.
VERIFY_RANK = 12


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class ComponentGroup:
    """A_phi for a parameter phi of a given sign, with its basis constituents and multiplicities."""

    p: int
    basis: tuple[tuple[WDIrred, int], ...]

    @classmethod
    def of(cls, phi: WDRep, kind: Kind) -> "ComponentGroup":
        require_parameter(phi, kind)
        return cls.for_sign(phi, kind.parameter_sign)

    @classmethod
    def for_sign(cls, phi: WDRep, sign: int) -> "ComponentGroup":
        return _group_for(cls, phi, sign)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << self.rank

    @property
    def full_mask(self) -> int:
        return self.order - 1

    @cached_property
    def odd_mask(self) -> int:
        """Basis elements a_i with dim M_i odd."""
        return sum(1 << k for k, (irr, _) in enumerate(self.basis) if irr.n % 2)

    @property
    def pivot(self) -> int | None:
        """Index of the first odd-dimensional basis constituent."""
        m = self.odd_mask
        return (m & -m).bit_length() - 1 if m else None

    @property
    def plus_index(self) -> int:
        return 2 if self.odd_mask else 1

    def in_plus(self, v: int) -> bool:
        return _popcount(v & self.odd_mask) % 2 == 0

    def contains(self, v: int, domain: str = FULL) -> bool:
        if v < 0 or v > self.full_mask:
            return False
        return domain == FULL or self.in_plus(v)

    def generators(self, domain: str = FULL) -> tuple[int, ...]:
        """e_i for the full group; for A^+, e_i with dim even and e_i + e_pivot for odd i != pivot."""
        if domain == FULL:
            return tuple(1 << k for k in range(self.rank))
        j0 = self.pivot
        gens = []
        for k, (irr, _) in enumerate(self.basis):
            if k == j0:
                continue
            gens.append((1 << k) | (1 << j0) if irr.n % 2 else 1 << k)
        return tuple(gens)

    def elements(self, domain: str = FULL) -> Iterator[int]:
        for v in range(self.order):
            if domain == FULL or self.in_plus(v):
                yield v

    def index_of(self, irr: WDIrred) -> int | None:
        for k, (b, _) in enumerate(self.basis):
            if b == irr:
                return k
        return None

    def element(self, irreds) -> int:
        """The element sum of a_i over the given basis constituents."""
        v = 0
        for irr in irreds:
            k = self.index_of(irr)
            if k is None:
                raise DomainError(f"{irr} is not a basis constituent")
            v ^= 1 << k
        return v

    def support(self, v: int) -> tuple[WDIrred, ...]:
        return tuple(irr for k, (irr, _) in enumerate(self.basis) if v >> k & 1)

    def minus_eigenspace(self, v: int) -> WDRep:
        """M^a: one copy of each basis constituent in the support of a."""
        cache = self._eigenspaces
        if v not in cache:
            if not self.contains(v):
                raise DomainError(f"{v:b} is not an element of a group of rank {self.rank}")
            cache[v] = WDRep.from_irreds(self.p, self.support(v))
        return cache[v]

    @cached_property
    def _eigenspaces(self) -> dict[int, WDRep]:
        return {}

    def central_element(self) -> int:
        """Image of -1: the sum of a_i over constituents of odd multiplicity."""
        return sum(1 << k for k, (_, m) in enumerate(self.basis) if m % 2)

    def label(self, v: int) -> str:
        names = [f"a{k + 1}" for k in range(self.rank) if v >> k & 1]
        return "+".join(names) or "0"

    def to_json(self) -> dict:
        return {
            "basis": [{"constituent": str(i), "n": i.n, "mult": m} for i, m in self.basis],
            "rank": self.rank,
            "plus_generators": [self.label(g) for g in self.generators(PLUS)],
            "plus_index": self.plus_index,
        }


@lru_cache(maxsize=1 << 14)
def _group_for(cls, phi: WDRep, sign: int) -> ComponentGroup:
    return cls(phi.p, tuple((i, m) for i, m in phi.items if i.sign == sign))


@dataclass(frozen=True)
class SignCharacter:
    """A character of A_phi (domain "full") or of A_phi^+ (domain "plus").

    Stored as a bitmask x with chi(v) = (-1)^{popcount(x & v)}; on A^+ the mask
    is normalised so that the pivot bit is clear.
    """

    group: ComponentGroup
    domain: str
    bits: int = 0

    def __post_init__(self):
        if self.domain not in (FULL, PLUS):
            raise UsageError(f"unknown character domain {self.domain!r}")
        bits = self.bits & self.group.full_mask
        j0 = self.group.pivot
        if self.domain == PLUS and j0 is not None and bits >> j0 & 1:
            bits ^= self.group.odd_mask
        object.__setattr__(self, "bits", bits)

    @classmethod
    def trivial(cls, group: ComponentGroup, domain: str = FULL) -> "SignCharacter":
        return cls(group, domain, 0)

    @classmethod
    def from_generator_values(cls, group: ComponentGroup, domain: str, values) -> "SignCharacter":
        gens = group.generators(domain)
        values = list(values)
        if len(values) != len(gens):
            raise UsageError(f"expected {len(gens)} generator values, got {len(values)}")
        bits = 0
        for g, val in zip(gens, values):
            if val not in (1, -1):
                raise UsageError(f"character values must be +1 or -1, got {val}")
            if val == -1:
                # Each generator has exactly one non-pivot bit.
                low = g & ~(1 << group.pivot) if domain == PLUS and group.pivot is not None else g
                bits |= low
        return cls(group, domain, bits)

    @classmethod
    def from_function(cls, group: ComponentGroup, domain: str, fn: Callable[[int], int],
                      verify: bool = True) -> "SignCharacter":
        """The character agreeing with fn on generators; with verify, fn must be a character."""
        vals = []
        for g in group.generators(domain):
            val = fn(g)
            if val not in (1, -1):
                raise InconsistentValueError(f"value {val} at {group.label(g)} is not a sign")
            vals.append(val)
        chi = cls.from_generator_values(group, domain, vals)
        if verify and group.rank <= VERIFY_RANK:
            for v in group.elements(domain):
                if fn(v) != chi(v):
                    raise InconsistentValueError(f"not multiplicative: value at {group.label(v)} disagrees")
        return chi

    def __call__(self, v: int) -> int:
        if not self.group.contains(v, self.domain):
            raise DomainError(f"{self.group.label(v)} is outside the domain ({self.domain}) of this character")
        return -1 if _popcount(self.bits & v) % 2 else 1

    def __mul__(self, other: "SignCharacter") -> "SignCharacter":
        if other.group != self.group:
            raise UsageError("characters of different groups multiplied")
        domain = PLUS if PLUS in (self.domain, other.domain) else FULL
        return SignCharacter(self.group, domain, self.bits ^ other.bits)

    def restrict(self, domain: str = PLUS) -> "SignCharacter":
        if self.domain == PLUS and domain == FULL:
            raise DomainError("cannot extend a character of A^+ by restriction")
        return SignCharacter(self.group, domain, self.bits)

    def is_trivial(self) -> bool:
        return self.bits == 0

    def values(self) -> tuple[int, ...]:
        return tuple(self(g) for g in self.group.generators(self.domain))

    def table(self) -> list[tuple[int, int]]:
        return [(v, self(v)) for v in self.group.elements(self.domain)]

    def extensions(self) -> tuple["SignCharacter", ...]:
        """All characters of the full group restricting to this one."""
        if self.domain == FULL:
            return (self,)
        base = SignCharacter(self.group, FULL, self.bits)
        if self.group.pivot is None:
            return (base,)
        # The two extensions differ by the character of A / A^+.
        return (base, SignCharacter(self.group, FULL, self.bits ^ self.group.odd_mask))

    def pullback(self, source: ComponentGroup, domain: str, embed: Callable[[int], int]) -> "SignCharacter":
        """self composed with a homomorphism source -> self.group (checked on all elements when small)."""
        return SignCharacter.from_function(source, domain, lambda v: self(embed(v)))

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "generators": [self.group.label(g) for g in self.group.generators(self.domain)],
            "values": list(self.values()),
            "table": {self.group.label(v): s for v, s in self.table()},
        }


def component_group(phi: WDRep, kind: Kind) -> ComponentGroup:
    return ComponentGroup.of(phi, kind)


def minus_eigenspace(phi: WDRep, kind: Kind, v: int) -> WDRep:
    return ComponentGroup.of(phi, kind).minus_eigenspace(v)


def eta_domain(kind: Kind) -> str:
    return PLUS if kind.uses_plus_subgroup else FULL


def eta_c(phi: WDRep, kind: Kind, c) -> SignCharacter:
    """a -> det(M^a)(c), checked to be a character on the domain of the kind."""
    group = ComponentGroup.of(phi, kind)
    return eta_c_on(group, eta_domain(kind), c)


def eta_c_on(group: ComponentGroup, domain: str, c) -> SignCharacter:
    c = square_class(group.p, c)

    def value(v: int) -> int:
        return hilbert_symbol(c, det(group.minus_eigenspace(v)).d)

    return SignCharacter.from_function(group, domain, value)


@dataclass(frozen=True)
class EnhancedParam:
    """(phi, eta) for a group kind, with its Whittaker label (or psi label for Mp)."""

    kind: Kind
    phi: WDRep
    eta: SignCharacter
    label: SquareClass

    def __post_init__(self):
        require_parameter(self.phi, self.kind)
        expected = ComponentGroup.of(self.phi, self.kind)
        if self.eta.group != expected:
            raise UsageError("eta is a character of a different component group")
        if self.eta.domain != eta_domain(self.kind):
            raise UsageError(f"eta for kind {self.kind} must live on the {eta_domain(self.kind)} group")
        if self.label.p != self.phi.p:
            raise UsageError("label over a different field")

    @classmethod
    def make(cls, phi: WDRep, kind: Kind, values=None, label=1) -> "EnhancedParam":
        group = ComponentGroup.of(phi, kind)
        domain = eta_domain(kind)
        if values is None:
            eta = SignCharacter.trivial(group, domain)
        else:
            eta = SignCharacter.from_generator_values(group, domain, values)
        return cls(kind, phi, eta, square_class(phi.p, label))

    @property
    def group(self) -> ComponentGroup:
        return self.eta.group

    def to_json(self) -> dict:
        return {
            "kind": str(self.kind),
            "phi": self.phi.to_dsl(),
            "label": self.label.label,
            "eta": self.eta.to_json(),
        }


def whittaker_change(e: EnhancedParam, c2) -> EnhancedParam:
    if e.kind.family is Family.MP:
        raise UsageError("metaplectic parameters change psi through mp_change_psi")
    if e.kind.family not in (Family.SP, Family.SO_EVEN):
        raise UsageError(f"no Whittaker change for kind {e.kind}")
    c2 = square_class(e.phi.p, c2)
    shift = eta_c_on(e.group, e.eta.domain, c2 / e.label)
    return EnhancedParam(e.kind, e.phi, e.eta * shift, c2)


def dual_enhanced(e: EnhancedParam) -> EnhancedParam:
    """Enhanced parameter of the contragredient, for Sp only."""
    if e.kind.family is not Family.SP:
        raise UsageError(f"the contragredient rule is only available for sp, not {e.kind}")
    shift = eta_c_on(e.group, e.eta.domain, -1)
    return EnhancedParam(e.kind, e.phi, e.eta * shift, e.label)


def central_sign(e: EnhancedParam) -> int:
    """eta at the image of -1; +1 exactly for the quasi-split pure inner form."""
    if e.kind.family not in (Family.SO_ODD, Family.SO_EVEN):
        raise UsageError(f"central sign is defined for so kinds, not {e.kind}")
    z = e.group.central_element()
    if not e.group.contains(z, e.eta.domain):
        raise DomainError(f"image of -1 ({e.group.label(z)}) is not in the domain of eta")
    return e.eta(z)
