"""Valuation events: treating coevents themselves as the beables.

Fix a coevent space V.  Its powerset is the valuation event algebra;
a history event A embeds into it via tau(A) = the set of members of V
that map A to true.  This module compares the order structure pushed
forward along tau with the inclusion order, builds the union/meet and
Boolean completions of the image, and exposes the Heyting implication
on the former.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .coevent import Coevent, CoeventSpace, is_multiplicative, principal_event
from .errors import (
    CapExceeded,
    ConsistencyError,
    MismatchedSpace,
    NotMultiplicative,
    NotUpperMode,
)
from .eventalg import Event

#: The completions live inside 2**|V|, so closure is capped.
COMPLETION_CAP = 20


@dataclass(frozen=True)
class ValuationEvent:
    """A subset of a coevent space V, stored as a bitmask over its members."""

    space: CoeventSpace
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << len(self.space)):
            raise ValueError("bits out of range for the coevent space")

    @property
    def members(self) -> tuple[Coevent, ...]:
        return tuple(
            phi for i, phi in enumerate(self.space.members) if self.bits >> i & 1
        )

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, phi: Coevent) -> bool:
        try:
            i = self.space.index_of(phi)
        except ValueError:
            return False
        return bool(self.bits >> i & 1)

    def issubset(self, other: "ValuationEvent") -> bool:
        _require_same_valuation_space(self, other)
        return self.bits & other.bits == self.bits

    def __and__(self, other: "ValuationEvent") -> "ValuationEvent":
        _require_same_valuation_space(self, other)
        return ValuationEvent(self.space, self.bits & other.bits)

    def __or__(self, other: "ValuationEvent") -> "ValuationEvent":
        _require_same_valuation_space(self, other)
        return ValuationEvent(self.space, self.bits | other.bits)

    def __invert__(self) -> "ValuationEvent":
        full = (1 << len(self.space)) - 1
        return ValuationEvent(self.space, self.bits ^ full)

    def __str__(self) -> str:
        return "[" + ", ".join(str(phi) for phi in self.members) + "]"


def _require_same_valuation_space(a: ValuationEvent, b: ValuationEvent) -> None:
    if a.space != b.space:
        raise MismatchedSpace("valuation events over different coevent spaces")


def tau(a: Event, space: CoeventSpace) -> ValuationEvent:
    """The valuation event of all members of V mapping A to true.

    For the space of all duals this is the up-set of A's dual in the
    dual order: the duals of the nonempty subsets of A.
    """
    if a.space != space.algebra.space:
        raise MismatchedSpace("event belongs to a different sample space")
    bits = 0
    for i, phi in enumerate(space.members):
        if a.mask in phi.support:
            bits |= 1 << i
    return ValuationEvent(space, bits)


@dataclass(frozen=True)
class TruthFunction:
    """The Boolean homomorphism on valuation events pinned to one coevent."""

    space: CoeventSpace
    pivot: Coevent

    def __post_init__(self) -> None:
        if self.pivot not in self.space:
            raise MismatchedSpace("pivot coevent is not a member of the space")

    def __call__(self, alpha: ValuationEvent) -> int:
        return truth_evaluate(self, alpha)


def truth_evaluate(f: TruthFunction, alpha: ValuationEvent) -> int:
    """1 iff the pivot coevent belongs to the valuation event."""
    if alpha.space != f.space:
        raise MismatchedSpace("valuation event over a different coevent space")
    return 1 if f.pivot in alpha else 0


# ---------------------------------------------------------------------------
# The dual order on an all-multiplicative coevent space


def dual_up_masks(space: CoeventSpace) -> tuple[int, ...]:
    """For each member, the bitmask of members above it in the dual order.

    The dual order inverts inclusion of principal events; it exists
    only when every member is a nonzero multiplicative coevent.
    """
    principals = []
    for phi in space.members:
        if phi.is_zero or not is_multiplicative(phi, include_empty_dual=True):
            raise ValueError(
                "dual order requires every member to be a nonzero multiplicative coevent"
            )
        principals.append(principal_event(phi).mask)
    out = []
    for p in principals:
        bits = 0
        for j, q in enumerate(principals):
            if q & p == q:  # q subset of p: the dual is above
                bits |= 1 << j
        out.append(bits)
    return tuple(out)


# ---------------------------------------------------------------------------
# Order comparison


@dataclass
class OrderReport:
    """Exhaustive comparison of the pushed-forward and inclusion orders.

    Every false flag is backed by at least one witness pair under the
    corresponding key of ``witnesses``; pairs are listed in ascending
    mask order.
    """

    tau_injective: bool
    pushforward_well_defined: bool
    orders_agree: bool
    meet_agree: bool
    join_agree: bool
    witnesses: dict[str, tuple[tuple[Event, Event], ...]]
    notes: tuple[str, ...] = ()


def order_report(space: CoeventSpace) -> OrderReport:
    """Compare, over all pairs of history events, the two order structures.

    - injectivity of tau;
    - well-definedness of the pushed-forward order, i.e. monotonicity
      A <= B implies tau(A) <= tau(B) (pushing the order forward along
      a non-injective tau is consistent exactly when tau is monotone);
    - order agreement: A <= B iff tau(A) <= tau(B);
    - meet agreement: tau(A & B) = tau(A) & tau(B);
    - join agreement: tau(A | B) = tau(A) | tau(B).
    """
    alg = space.algebra
    size = alg.size
    images = [tau(alg.event(m), space).bits for m in range(size)]

    witnesses: dict[str, list[tuple[Event, Event]]] = {
        "injectivity": [],
        "pushforward": [],
        "orders": [],
        "meet": [],
        "join": [],
    }

    by_image: dict[int, list[int]] = {}
    for m in range(size):
        by_image.setdefault(images[m], []).append(m)
    for bits in sorted(by_image):
        cls = by_image[bits]
        for i in range(len(cls)):
            for j in range(i + 1, len(cls)):
                witnesses["injectivity"].append((alg.event(cls[i]), alg.event(cls[j])))

    for a in range(size):
        for b in range(size):
            a_le_b = a & b == a
            t_le = images[a] & images[b] == images[a]
            if a_le_b and not t_le:
                witnesses["pushforward"].append((alg.event(a), alg.event(b)))
            if a_le_b != t_le:
                witnesses["orders"].append((alg.event(a), alg.event(b)))

    for a in range(size):
        for b in range(a, size):
            if images[a & b] != images[a] & images[b]:
                witnesses["meet"].append((alg.event(a), alg.event(b)))
            if images[a | b] != images[a] | images[b]:
                witnesses["join"].append((alg.event(a), alg.event(b)))

    for key in witnesses:
        witnesses[key].sort(key=lambda pair: (pair[0].mask, pair[1].mask))

    notes = []
    if witnesses["pushforward"]:
        notes.append(
            "pushed-forward order is not well defined (tau is not monotone); "
            "no claims about it are made"
        )
    if witnesses["injectivity"] and not witnesses["pushforward"]:
        notes.append(
            "tau is not injective; the pushed-forward order is taken on the image"
        )

    return OrderReport(
        tau_injective=not witnesses["injectivity"],
        pushforward_well_defined=not witnesses["pushforward"],
        orders_agree=not witnesses["orders"],
        meet_agree=not witnesses["meet"],
        join_agree=not witnesses["join"],
        witnesses={k: tuple(v) for k, v in witnesses.items()},
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Completions


@dataclass(frozen=True)
class Completion:
    """Closure of the tau image inside the valuation event algebra.

    mode="upper": closure under union and intersection; over the space
    of all duals every member is an upper set of the dual order and the
    result is a Heyting algebra (a finite locale), not Boolean in
    general.  mode="boolean": additionally closed under complement.
    """

    mode: str
    space: CoeventSpace
    member_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.mode not in ("upper", "boolean"):
            raise ValueError(f"unknown completion mode {self.mode!r}")

    @property
    def members(self) -> tuple[ValuationEvent, ...]:
        return tuple(ValuationEvent(self.space, b) for b in self.member_bits)

    def __len__(self) -> int:
        return len(self.member_bits)

    def __iter__(self) -> Iterator[ValuationEvent]:
        return iter(self.members)

    def __contains__(self, alpha: ValuationEvent) -> bool:
        return alpha.space == self.space and alpha.bits in set(self.member_bits)


def complete(space: CoeventSpace, mode: str, cap: int = COMPLETION_CAP) -> Completion:
    """Closure of {tau(A)} under the mode's operations.

    Union/intersection closure runs a worklist to a fixed point.  The
    Boolean closure is built directly as all unions of the signature
    atoms (members of V indistinguishable by every generator), which is
    the same subalgebra without the quadratic worklist.
    """
    if mode not in ("upper", "boolean"):
        raise ValueError(f"unknown completion mode {mode!r}")
    if len(space) > cap:
        raise CapExceeded("completion closure", cap, len(space))
    alg = space.algebra
    generators = {tau(alg.event(m), space).bits for m in range(alg.size)}
    if mode == "upper":
        current = set(generators)
        while True:
            fresh = set()
            items = sorted(current)
            for i, x in enumerate(items):
                for y in items[i:]:
                    if (x & y) not in current:
                        fresh.add(x & y)
                    if (x | y) not in current:
                        fresh.add(x | y)
            if not fresh:
                break
            current |= fresh
    else:
        gens = sorted(generators)
        atoms: dict[tuple[int, ...], int] = {}
        for i in range(len(space)):
            signature = tuple(g >> i & 1 for g in gens)
            atoms[signature] = atoms.get(signature, 0) | (1 << i)
        atom_bits = sorted(atoms.values())
        current = set()
        for pick in range(1 << len(atom_bits)):
            bits = 0
            for k, a in enumerate(atom_bits):
                if pick >> k & 1:
                    bits |= a
            current.add(bits)
    completion = Completion(mode, space, tuple(sorted(current)))
    if mode == "upper":
        _verify_upper_members(completion)
    return completion


def _all_multiplicative(space: CoeventSpace) -> bool:
    return all(
        not phi.is_zero and is_multiplicative(phi, include_empty_dual=True)
        for phi in space.members
    )


def _verify_upper_members(completion: Completion) -> None:
    """Over a dual-ordered space, every closure member must be an upper set."""
    if not _all_multiplicative(completion.space):
        return
    ups = dual_up_masks(completion.space)
    for bits in completion.member_bits:
        for i in range(len(completion.space)):
            if bits >> i & 1 and ups[i] & bits != ups[i]:
                raise ConsistencyError(
                    "upper completion produced a member that is not an upper set"
                )


def heyting_implication(
    alpha: ValuationEvent, beta: ValuationEvent, completion: Completion
) -> ValuationEvent:
    """The largest member gamma of the completion with gamma & alpha <= beta.

    Computed pointwise via the dual order (a member belongs iff every
    member above it that lies in alpha also lies in beta) and
    cross-checked against a direct scan of the completion's members;
    disagreement raises :class:`ConsistencyError`.
    """
    if completion.mode != "upper":
        raise NotUpperMode("Heyting implication needs the union/intersection completion")
    _require_same_valuation_space(alpha, beta)
    if alpha.space != completion.space:
        raise MismatchedSpace("valuation events over a different coevent space")
    if alpha not in completion or beta not in completion:
        raise ValueError("operands must be members of the completion")

    ups = dual_up_masks(completion.space)
    bits = 0
    for i in range(len(completion.space)):
        if ups[i] & alpha.bits & ~beta.bits == 0:
            bits |= 1 << i

    best = 0
    for g in completion.member_bits:
        if g & alpha.bits & ~beta.bits == 0:
            best |= g
    if best != bits or bits not in set(completion.member_bits):
        raise ConsistencyError(
            "pointwise Heyting implication disagrees with the member scan"
        )
    return ValuationEvent(completion.space, bits)


# ---------------------------------------------------------------------------
# Truth-function audits


@dataclass(frozen=True)
class AuditRecord:
    """The six truth values comparing event-side and valuation-side logic.

    The AND identity (phi(A) * phi(B) = f(tau(A) & tau(B)) = phi(A & B))
    always holds for multiplicative coevents; the OR side may not, and
    ``or_discrepancy`` flags exactly that anhomomorphism.
    """

    pivot: Coevent
    a: Event
    b: Event
    phi_a: int
    phi_b: int
    phi_meet: int
    phi_join: int
    f_meet: int
    f_join: int

    @property
    def and_identity_holds(self) -> bool:
        return (self.phi_a & self.phi_b) == self.f_meet == self.phi_meet

    @property
    def or_discrepancy(self) -> bool:
        return self.f_join != self.phi_join


def and_or_audit(
    phi: Coevent, a: Event, b: Event, space: CoeventSpace
) -> AuditRecord:
    """Evaluate both routes for AND and OR at one coevent and event pair."""
    if phi not in space:
        raise MismatchedSpace("coevent is not a member of the space")
    if not is_multiplicative(phi, include_empty_dual=True) or phi.is_zero:
        raise NotMultiplicative("audit is defined for nonzero multiplicative coevents")
    f = TruthFunction(space, phi)
    ta, tb = tau(a, space), tau(b, space)
    record = AuditRecord(
        pivot=phi,
        a=a,
        b=b,
        phi_a=phi(a),
        phi_b=phi(b),
        phi_meet=phi(a & b),
        phi_join=phi(a | b),
        f_meet=f(ta & tb),
        f_join=f(ta | tb),
    )
    if not record.and_identity_holds:
        raise ConsistencyError("AND identity failed for a multiplicative coevent")
    return record
