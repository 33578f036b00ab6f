"""Finite varying sets over a poset and their subobject classifier.

A varying set assigns a finite set to every poset element and a
transition map to every comparable pair, satisfying the identity and
composition laws.  Truth values are sieves (upper sets above an
anchor); the classifier bundles them with the restriction maps.  The
construction is then instantiated over the poset of multiplicative
coevents in their dual order, where the support selection is a genuine
subobject of the constant varying set of history events.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .coevent import (
    Coevent,
    CoeventSpace,
    enumerate_multiplicative,
    multiplicative_scheme,
    principal_event,
)
from .errors import CapExceeded, ConsistencyError, MismatchedSpace, NotASubobject
from .eventalg import Event, EventAlgebra
from .measure import Measure

#: Sieve enumeration walks all subsets of an up-set.
SIEVE_ENUMERATION_CAP = 12

#: The dual-ordered coevent poset has 2**n - 1 elements.
MCE_INSTANCE_CAP = 4


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order, validated at construction."""

    elements: tuple[Hashable, ...]
    matrix: tuple[tuple[bool, ...], ...]  # matrix[i][j] iff elements[i] <= elements[j]

    def __post_init__(self) -> None:
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("poset elements must be distinct")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("relation matrix must be square over the elements")
        for i in range(n):
            if not self.matrix[i][i]:
                raise ValueError(f"relation is not reflexive at {self.elements[i]}")
            for j in range(n):
                if i != j and self.matrix[i][j] and self.matrix[j][i]:
                    raise ValueError(
                        f"relation is not antisymmetric on "
                        f"({self.elements[i]}, {self.elements[j]})"
                    )
                if self.matrix[i][j]:
                    for k in range(n):
                        if self.matrix[j][k] and not self.matrix[i][k]:
                            raise ValueError(
                                f"relation is not transitive through "
                                f"({self.elements[i]}, {self.elements[j]}, "
                                f"{self.elements[k]})"
                            )

    @classmethod
    def from_leq(
        cls, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]
    ) -> "FinitePoset":
        elements = tuple(elements)
        matrix = tuple(
            tuple(bool(leq(a, b)) for b in elements) for a in elements
        )
        return cls(elements, matrix)

    @classmethod
    def from_pairs(
        cls, elements: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]
    ) -> "FinitePoset":
        """Reflexive-transitive closure of the given strict covers."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            rel[index[a]][index[b]] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(elements, tuple(tuple(row) for row in rel))

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: Hashable) -> int:
        try:
            return self.elements.index(x)
        except ValueError:
            raise MismatchedSpace(f"{x} is not an element of the poset")

    def leq(self, x: Hashable, y: Hashable) -> bool:
        return self.matrix[self.index(x)][self.index(y)]

    def up_bits(self, i: int) -> int:
        """Bitmask of the elements above elements[i] (inclusive)."""
        bits = 0
        for j in range(len(self.elements)):
            if self.matrix[i][j]:
                bits |= 1 << j
        return bits

    def is_antichain(self) -> bool:
        n = len(self.elements)
        return all(
            not self.matrix[i][j] for i in range(n) for j in range(n) if i != j
        )


@dataclass(frozen=True)
class Sieve:
    """An upper set of elements above an anchor: one local truth value."""

    poset: FinitePoset
    at: Hashable
    bits: int

    def __post_init__(self) -> None:
        i = self.poset.index(self.at)
        up = self.poset.up_bits(i)
        if self.bits & ~up:
            raise ValueError("sieve members must lie above the anchor")
        for j in range(len(self.poset)):
            if self.bits >> j & 1 and self.poset.up_bits(j) & self.bits != self.poset.up_bits(j):
                raise ValueError("sieve members must be upward closed")

    @property
    def members(self) -> tuple[Hashable, ...]:
        return tuple(
            e for j, e in enumerate(self.poset.elements) if self.bits >> j & 1
        )

    def __contains__(self, x: Hashable) -> bool:
        return bool(self.bits >> self.poset.index(x) & 1)

    def __str__(self) -> str:
        inner = ", ".join(str(e) for e in self.members)
        return f"@{self.at}: [{inner}]"


def sieves_at(
    poset: FinitePoset, p: Hashable, cap: int = SIEVE_ENUMERATION_CAP
) -> tuple[Sieve, ...]:
    """All sieves anchored at p, in ascending bitmask order."""
    if len(poset) > cap:
        raise CapExceeded("sieve enumeration", cap, len(poset))
    i = poset.index(p)
    up = poset.up_bits(i)
    up_indices = [j for j in range(len(poset)) if up >> j & 1]
    out = []
    for pick in range(1 << len(up_indices)):
        bits = 0
        for k, j in enumerate(up_indices):
            if pick >> k & 1:
                bits |= 1 << j
        if all(
            poset.up_bits(j) & bits == poset.up_bits(j)
            for j in range(len(poset))
            if bits >> j & 1
        ):
            out.append(bits)
    return tuple(Sieve(poset, p, bits) for bits in sorted(out))


def sieve_meet(a: Sieve, b: Sieve) -> Sieve:
    _require_same_anchor(a, b)
    return Sieve(a.poset, a.at, a.bits & b.bits)


def sieve_join(a: Sieve, b: Sieve) -> Sieve:
    _require_same_anchor(a, b)
    return Sieve(a.poset, a.at, a.bits | b.bits)


def sieve_implication(a: Sieve, b: Sieve) -> Sieve:
    """Heyting implication in the locale of sieves at a common anchor."""
    _require_same_anchor(a, b)
    poset = a.poset
    anchor_up = poset.up_bits(poset.index(a.at))
    bits = 0
    for j in range(len(poset)):
        if anchor_up >> j & 1 and poset.up_bits(j) & a.bits & ~b.bits == 0:
            bits |= 1 << j
    return Sieve(poset, a.at, bits)


def _require_same_anchor(a: Sieve, b: Sieve) -> None:
    if a.poset != b.poset or a.at != b.at:
        raise MismatchedSpace("sieves at different anchors")


@dataclass(frozen=True, eq=False)
class VaryingSet:
    """Fibers over a poset with identity/composition-checked transitions."""

    poset: FinitePoset
    fibers: tuple[frozenset, ...]
    transitions: Mapping[tuple[int, int], Mapping]

    def __post_init__(self) -> None:
        n = len(self.poset)
        expected = {
            (i, j) for i in range(n) for j in range(n) if self.poset.matrix[i][j]
        }
        if set(self.transitions.keys()) != expected:
            raise ValueError("transitions must be given exactly on comparable pairs")
        for (i, j), t in self.transitions.items():
            if set(t.keys()) != set(self.fibers[i]):
                raise ValueError(f"transition {i}->{j} is not total on its fiber")
            for x, y in t.items():
                if y not in self.fibers[j]:
                    raise ValueError(f"transition {i}->{j} leaves the target fiber")
        for i in range(n):
            for x, y in self.transitions[(i, i)].items():
                if x != y:
                    raise ValueError(f"transition at {self.poset.elements[i]} is not the identity")
        for i in range(n):
            for j in range(n):
                if not self.poset.matrix[i][j]:
                    continue
                for k in range(n):
                    if not self.poset.matrix[j][k]:
                        continue
                    via = {
                        x: self.transitions[(j, k)][self.transitions[(i, j)][x]]
                        for x in self.fibers[i]
                    }
                    if via != dict(self.transitions[(i, k)]):
                        raise ValueError(
                            "transitions violate the composition law through "
                            f"({self.poset.elements[i]}, {self.poset.elements[j]}, "
                            f"{self.poset.elements[k]})"
                        )

    def fiber(self, p: Hashable) -> frozenset:
        return self.fibers[self.poset.index(p)]


def constant_varying_set(poset: FinitePoset, ambient: Iterable) -> VaryingSet:
    """Every fiber is the same set; every transition the identity."""
    q = frozenset(ambient)
    n = len(poset)
    identity = {x: x for x in q}
    transitions = {
        (i, j): dict(identity)
        for i in range(n)
        for j in range(n)
        if poset.matrix[i][j]
    }
    return VaryingSet(poset, tuple(q for _ in range(n)), transitions)


@dataclass(frozen=True, eq=False)
class SubobjectOfConstant:
    """A candidate selection of a subset of the ambient set at each element."""

    poset: FinitePoset
    ambient: frozenset
    selections: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        if len(self.selections) != len(self.poset):
            raise ValueError("one selection per poset element required")
        for sel in self.selections:
            if not sel <= self.ambient:
                raise ValueError("selections must be subsets of the ambient set")

    def selection(self, p: Hashable) -> frozenset:
        return self.selections[self.poset.index(p)]


def is_subobject(s: SubobjectOfConstant) -> tuple[bool, tuple[tuple[Hashable, Hashable], ...]]:
    """Monotonicity of the selection; witnesses are the violating pairs."""
    witnesses = []
    n = len(s.poset)
    for i in range(n):
        for j in range(n):
            if i != j and s.poset.matrix[i][j] and not s.selections[i] <= s.selections[j]:
                witnesses.append((s.poset.elements[i], s.poset.elements[j]))
    return not witnesses, tuple(witnesses)


def characteristic_map(s: SubobjectOfConstant, p: Hashable, x: Hashable) -> Sieve:
    """The sieve of contexts above p at which x belongs to the selection."""
    ok, witnesses = is_subobject(s)
    if not ok:
        raise NotASubobject(f"selection is not monotone; witnesses {witnesses[:3]}")
    if x not in s.ambient:
        raise ValueError(f"{x} is not in the ambient set")
    i = s.poset.index(p)
    bits = 0
    for j in range(len(s.poset)):
        if s.poset.matrix[i][j] and x in s.selections[j]:
            bits |= 1 << j
    return Sieve(s.poset, p, bits)


def characteristic_naturality_failures(
    s: SubobjectOfConstant,
) -> tuple[tuple[Hashable, Hashable, Hashable], ...]:
    """Triples (p, q, x) where restriction does not commute with the map."""
    failures = []
    poset = s.poset
    for i in range(len(poset)):
        for j in range(len(poset)):
            if not poset.matrix[i][j]:
                continue
            for x in sorted(s.ambient, key=str):
                at_q = characteristic_map(s, poset.elements[j], x)
                restricted = characteristic_map(s, poset.elements[i], x).bits & poset.up_bits(j)
                if at_q.bits != restricted:
                    failures.append((poset.elements[i], poset.elements[j], x))
    return tuple(failures)


@dataclass(frozen=True, eq=False)
class SubobjectClassifier:
    """The varying set of sieves with restriction as transition."""

    poset: FinitePoset
    fibers: tuple[tuple[Sieve, ...], ...]

    def sieves(self, p: Hashable) -> tuple[Sieve, ...]:
        return self.fibers[self.poset.index(p)]

    def transition(self, sieve: Sieve, q: Hashable) -> Sieve:
        """Restriction to the contexts above q (requires anchor <= q)."""
        if sieve.poset != self.poset:
            raise MismatchedSpace("sieve over a different poset")
        if not self.poset.leq(sieve.at, q):
            raise ValueError("restriction target must be above the sieve's anchor")
        j = self.poset.index(q)
        return Sieve(self.poset, q, sieve.bits & self.poset.up_bits(j))


def classifier(poset: FinitePoset, cap: int = SIEVE_ENUMERATION_CAP) -> SubobjectClassifier:
    fibers = tuple(sieves_at(poset, p, cap) for p in poset.elements)
    return SubobjectClassifier(poset, fibers)


def classifier_functoriality_failures(
    omega: SubobjectClassifier,
) -> tuple[tuple[Hashable, Hashable, Hashable], ...]:
    """Triples (p, q, r) where restriction fails identity or composition."""
    failures = []
    poset = omega.poset
    n = len(poset)
    for i in range(n):
        p = poset.elements[i]
        for sieve in omega.sieves(p):
            if omega.transition(sieve, p) != sieve:
                failures.append((p, p, p))
    for i in range(n):
        for j in range(n):
            if not poset.matrix[i][j]:
                continue
            for k in range(n):
                if not poset.matrix[j][k]:
                    continue
                p, q, r = poset.elements[i], poset.elements[j], poset.elements[k]
                for sieve in omega.sieves(p):
                    two_step = omega.transition(omega.transition(sieve, q), r)
                    one_step = omega.transition(sieve, r)
                    if two_step != one_step:
                        failures.append((p, q, r))
    return tuple(failures)


# ---------------------------------------------------------------------------
# The instance over a dual-ordered coevent space


@dataclass(frozen=True, eq=False)
class CoeventToposInstance:
    """A coevent poset with the constant event set and the support subobject."""

    algebra: EventAlgebra
    space: CoeventSpace
    poset: FinitePoset
    constant_set: VaryingSet
    support_subobject: SubobjectOfConstant

    @property
    def is_antichain(self) -> bool:
        return self.poset.is_antichain()


def poset_of_coevents(space: CoeventSpace) -> FinitePoset:
    """The dual order on a space of nonzero multiplicative coevents.

    A dual sits below another exactly when its principal event contains
    the other's.
    """
    principals = [principal_event(phi).mask for phi in space.members]
    matrix = tuple(
        tuple(q & p == q for q in principals) for p in principals
    )
    return FinitePoset(tuple(space.members), matrix)


def _instance_from_space(algebra: EventAlgebra, space: CoeventSpace) -> CoeventToposInstance:
    poset = poset_of_coevents(space)
    ambient = frozenset(algebra.events())
    constant = constant_varying_set(poset, ambient)
    selections = tuple(
        frozenset(Event(algebra.space, m) for m in phi.support)
        for phi in space.members
    )
    vsupp = SubobjectOfConstant(poset, ambient, selections)
    ok, witnesses = is_subobject(vsupp)
    if not ok:
        raise ConsistencyError(
            f"support selection failed monotonicity at {witnesses[:3]}"
        )
    return CoeventToposInstance(algebra, space, poset, constant, vsupp)


def build_mce_instance(
    algebra: EventAlgebra,
    include_empty_dual: bool = False,
    cap: int = MCE_INSTANCE_CAP,
) -> CoeventToposInstance:
    """The instance over all duals in the dual order."""
    n = algebra.space.n
    if n > cap:
        raise CapExceeded("dual-poset topos instance", cap, n)
    space = enumerate_multiplicative(algebra, include_empty_dual=include_empty_dual)
    return _instance_from_space(algebra, space)


def build_scheme_instance(m: Measure, cap: int = MCE_INSTANCE_CAP) -> CoeventToposInstance:
    """The instance over the primitive preclusive duals.

    The base poset is an anti-chain, so each context's sieves collapse
    to the two classical truth values; callers should surface that
    degeneracy rather than hide the construction.
    """
    n = m.algebra.space.n
    if n > cap:
        raise CapExceeded("dual-poset topos instance", cap, n)
    return _instance_from_space(m.algebra, multiplicative_scheme(m))


def chi_vsupp(instance: CoeventToposInstance, phi: Coevent, a: Event) -> Sieve:
    """Characteristic map of the support subobject, computed two ways.

    Directly: the contexts above phi whose support contains A.
    Independently: tau of A meet phi's principal event, read as a sieve
    at phi.  The two must coincide; disagreement raises
    :class:`ConsistencyError`.
    """
    from .beables import tau  # local import to avoid a cycle

    if phi not in instance.space:
        raise MismatchedSpace("coevent is not in the instance's base poset")
    if a.space != instance.algebra.space:
        raise MismatchedSpace("event belongs to a different sample space")
    direct = characteristic_map(instance.support_subobject, phi, a)
    reduced = a & principal_event(phi)
    via_tau = tau(reduced, instance.space).bits
    if via_tau != direct.bits:
        raise ConsistencyError(
            f"characteristic map routes disagree at ({phi}, {a})"
        )
    return direct
