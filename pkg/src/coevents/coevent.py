"""Coevents: truth-valuation maps from the event algebra to Z2.

A coevent is stored by its support, the set of events it maps to 1.
Classical coevents are exactly the Boolean homomorphisms (evaluation
at a single history); multiplicative coevents preserve meets and are
dual to events via the principal element of their filter support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    CapExceeded,
    EmptyEventDual,
    MismatchedSpace,
    NotMultiplicative,
    ZeroCoevent,
)
from .eventalg import (
    Event,
    EventAlgebra,
    EventFamily,
    is_filter,
    iter_supermasks,
)
from .measure import Measure, null_sets

#: Brute-force enumeration of all maps EA -> Z2 walks 2**(2**n) supports;
#: n = 3 (256 maps) is the default cap, n = 4 (65536) the hard one.
BRUTE_FORCE_CAP = 3
BRUTE_FORCE_HARD_CAP = 4

#: Enumerating the duals alone only needs per-event work.
DUAL_ENUMERATION_CAP = 16


@dataclass(frozen=True)
class Coevent:
    """A map from the event algebra to {0, 1}, stored as its support."""

    algebra: EventAlgebra
    support: frozenset[int]

    def __post_init__(self) -> None:
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))
        bad = [m for m in self.support if not 0 <= m < self.algebra.size]
        if bad:
            raise ValueError(f"support masks {bad[:4]} outside the algebra")

    @property
    def support_key(self) -> tuple[int, ...]:
        """Canonical support encoding: member masks in ascending order."""
        return tuple(sorted(self.support))

    @property
    def is_zero(self) -> bool:
        return not self.support

    def support_family(self) -> EventFamily:
        return EventFamily.from_masks(self.algebra.space, self.support)

    def __call__(self, event: Event) -> int:
        if event.space != self.algebra.space:
            raise MismatchedSpace("event belongs to a different sample space")
        return 1 if event.mask in self.support else 0

    def __str__(self) -> str:
        ok, principal = is_filter(self.support_family())
        if ok:
            return f"{principal}*"
        return str(self.support_family())


def evaluate(phi: Coevent, event: Event) -> int:
    """phi(A): 1 iff A is in the support."""
    return phi(event)


@dataclass(frozen=True)
class CoeventSpace:
    """A finite set of coevents over one algebra, canonically ordered.

    The canonical order is lexicographic on the support encoding
    (ascending member masks), which for duals coincides with ascending
    principal-event masks.
    """

    algebra: EventAlgebra
    members: tuple[Coevent, ...]
    provenance: str = field(default="user-supplied", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {phi.support: i for i, phi in enumerate(self.members)}
        )

    @classmethod
    def build(
        cls, algebra: EventAlgebra, coevents: Iterable[Coevent], provenance: str
    ) -> "CoeventSpace":
        unique = {}
        for phi in coevents:
            if phi.algebra != algebra:
                raise MismatchedSpace("coevent belongs to a different algebra")
            unique[phi.support_key] = phi
        ordered = tuple(unique[k] for k in sorted(unique))
        return cls(algebra, ordered, provenance)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Coevent]:
        return iter(self.members)

    def __contains__(self, phi: Coevent) -> bool:
        return phi.algebra == self.algebra and phi.support in self._index

    def index_of(self, phi: Coevent) -> int:
        if phi.algebra != self.algebra:
            raise ValueError("coevent belongs to a different algebra")
        try:
            return self._index[phi.support]
        except KeyError:
            raise ValueError("coevent is not a member of the space")

    def __str__(self) -> str:
        return "[" + ", ".join(str(phi) for phi in self.members) + "]"


# ---------------------------------------------------------------------------
# Constructions


def classical_from_history(algebra: EventAlgebra, label: str) -> Coevent:
    """The evaluation map at one history: true on events containing it."""
    i = algebra.space.index(label)
    support = frozenset(m for m in range(algebra.size) if m >> i & 1)
    return Coevent(algebra, support)


def dual_of_event(a: Event, include_empty_dual: bool = False) -> Coevent:
    """The coevent true exactly on supersets of A.

    The empty event's dual is the constant-one map; by default it is
    rejected, since it asserts that the impossible event occurred and
    can never be preclusive.
    """
    if a.is_empty and not include_empty_dual:
        raise EmptyEventDual(
            "dual of the empty event requested; pass include_empty_dual=True"
        )
    algebra = EventAlgebra(a.space)
    support = frozenset(iter_supermasks(a.mask, a.space.full_mask))
    return Coevent(algebra, support)


def dual_of_coevent(phi: Coevent, include_empty_dual: bool = False) -> Event:
    """The principal event of a multiplicative coevent's support filter."""
    if phi.is_zero:
        raise ZeroCoevent("the zero coevent has no dual event")
    if not is_multiplicative(phi, include_empty_dual=True):
        raise NotMultiplicative("only multiplicative coevents have a dual event")
    principal = phi.algebra.space.full_mask
    for m in phi.support:
        principal &= m
    if principal == 0 and not include_empty_dual:
        raise NotMultiplicative(
            "constant-one coevent is excluded under the default convention; "
            "pass include_empty_dual=True"
        )
    return Event(phi.algebra.space, principal)


# ---------------------------------------------------------------------------
# Classification predicates


def is_classical(phi: Coevent) -> bool:
    """True iff phi is a Boolean-lattice homomorphism into Z2.

    Checked directly: preservation of meets and joins over all pairs
    and of complements over all events.  That this holds exactly for
    the single-history evaluation maps is a testable theorem, not an
    assumption of this predicate.
    """
    alg = phi.algebra
    full = alg.space.full_mask
    in_support = phi.support.__contains__
    for a in range(alg.size):
        va = 1 if in_support(a) else 0
        if (1 if in_support(a ^ full) else 0) != 1 - va:
            return False
        for b in range(a, alg.size):
            vb = 1 if in_support(b) else 0
            if (1 if in_support(a & b) else 0) != (va & vb):
                return False
            if (1 if in_support(a | b) else 0) != (va | vb):
                return False
    return True


def is_multiplicative(phi: Coevent, include_empty_dual: bool = False) -> bool:
    """True iff phi(A & B) = phi(A) * phi(B) for all pairs.

    The constant-one map satisfies the pointwise identity but asserts
    the impossible event; under the default convention it is rejected,
    matching the default exclusion of the empty event's dual.  Pass
    ``include_empty_dual=True`` for the literal pointwise reading.
    """
    alg = phi.algebra
    in_support = phi.support.__contains__
    for a in range(alg.size):
        va = 1 if in_support(a) else 0
        for b in range(a, alg.size):
            vb = 1 if in_support(b) else 0
            if (1 if in_support(a & b) else 0) != va * vb:
                return False
    if not include_empty_dual and 0 in phi.support:
        return False
    return True


def is_preclusive(phi: Coevent, m: Measure) -> bool:
    """True iff phi maps every measure-zero event to 0."""
    if phi.algebra != m.algebra:
        raise MismatchedSpace("coevent and measure live on different algebras")
    return all(mask not in phi.support for mask in null_sets(m).masks)


def check_modus_ponens(phi: Coevent) -> bool:
    """True iff A <= B and phi(A) = 1 imply phi(B) = 1.

    Equivalent to the support being upward closed.
    """
    full = phi.algebra.space.full_mask
    for m in phi.support:
        for s in iter_supermasks(m, full):
            if s not in phi.support:
                return False
    return True


# ---------------------------------------------------------------------------
# Coevent spaces


def enumerate_classical(algebra: EventAlgebra) -> CoeventSpace:
    """All single-history evaluation maps (all homomorphisms)."""
    return CoeventSpace.build(
        algebra,
        (classical_from_history(algebra, lab) for lab in algebra.space.labels),
        provenance="classical",
    )


def classical_preclusive_set(m: Measure) -> CoeventSpace:
    """The classical coevents that respect every null set.

    Empty exactly when the sample space is covered by null sets.
    """
    keep = [
        phi for phi in enumerate_classical(m.algebra) if is_preclusive(phi, m)
    ]
    return CoeventSpace.build(m.algebra, keep, provenance="classical")


def enumerate_multiplicative(
    algebra: EventAlgebra,
    include_empty_dual: bool = False,
    cap: int = DUAL_ENUMERATION_CAP,
) -> CoeventSpace:
    """The duals of all (by default, nonempty) events."""
    n = algebra.space.n
    if n > cap:
        raise CapExceeded("dual enumeration", cap, n)
    start = 0 if include_empty_dual else 1
    duals = (
        dual_of_event(algebra.event(mask), include_empty_dual=True)
        for mask in range(start, algebra.size)
    )
    return CoeventSpace.build(algebra, duals, provenance="multiplicative")


def enumerate_coevents(algebra: EventAlgebra, cap: int = BRUTE_FORCE_CAP) -> CoeventSpace:
    """Brute force: all 2**(2**n) maps from the event algebra to Z2.

    Deliberately capped; this is the oracle against which the
    constructive enumerations are checked on small instances.
    """
    n = algebra.space.n
    if n > min(cap, BRUTE_FORCE_HARD_CAP):
        raise CapExceeded(
            "brute-force coevent enumeration", min(cap, BRUTE_FORCE_HARD_CAP), n
        )
    size = algebra.size
    coevents = []
    for code in range(1 << size):
        support = frozenset(m for m in range(size) if code >> m & 1)
        coevents.append(Coevent(algebra, support))
    return CoeventSpace.build(algebra, coevents, provenance="all")


def preclusive_dual_events(m: Measure) -> EventFamily:
    """Nonempty events whose dual is preclusive.

    A dual A* is preclusive iff no null event contains A; the family
    is an up-set in the event algebra.
    """
    nulls = null_sets(m).masks
    keep = []
    for mask in range(1, m.algebra.size):
        if all(mask & e != mask for e in nulls):
            keep.append(mask)
    return EventFamily.from_masks(m.algebra.space, keep)


def multiplicative_scheme(m: Measure) -> CoeventSpace:
    """The primitive preclusive duals.

    A preclusive dual A* is primitive iff no nonempty proper subset of
    A also has a preclusive dual; the principal events are then
    pairwise incomparable, so the scheme is an anti-chain in the dual
    order.  Empty when the measure precludes every dual.
    """
    candidates = set(preclusive_dual_events(m).masks)
    primitives = []
    for mask in sorted(candidates):
        if any(
            sub in candidates
            for sub in _proper_nonempty_submasks(mask)
        ):
            continue
        primitives.append(mask)
    duals = (
        dual_of_event(m.algebra.event(mask), include_empty_dual=True)
        for mask in primitives
    )
    return CoeventSpace.build(m.algebra, duals, provenance="scheme")


def _proper_nonempty_submasks(mask: int) -> Iterator[int]:
    s = (mask - 1) & mask
    while s:
        yield s
        s = (s - 1) & mask


def coevent_render(phi: Coevent) -> str:
    """Canonical textual rendering (principal-event star form if it exists)."""
    return str(phi)


def principal_event(phi: Coevent) -> Event:
    """Principal event of a nonzero multiplicative coevent (any convention)."""
    return dual_of_coevent(phi, include_empty_dual=True)
