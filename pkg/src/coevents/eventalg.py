"""Finite sample spaces and the full event algebra as a Boolean lattice.

Histories are the elements of a small finite sample space; events are
subsets, encoded as bitmasks over the fixed label order.  Everything
here is immutable and exact, and every other module builds on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import MismatchedSpace, UnknownHistory

#: Hard cap on the number of histories: the event algebra is the full
#: powerset and several callers enumerate it, so 2**16 events is the
#: largest size we allow anywhere.
MAX_HISTORIES = 16


@dataclass(frozen=True)
class SampleSpace:
    """An ordered tuple of distinct history labels.

    The label order is fixed at construction; it defines the canonical
    bitmask encoding of events (bit i = labels[i]).
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.labels, tuple):
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) == 0:
            raise ValueError("sample space needs at least one history")
        if len(self.labels) > MAX_HISTORIES:
            raise ValueError(
                f"sample space has {len(self.labels)} histories, cap is {MAX_HISTORIES}"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("history labels must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownHistory(f"history {label!r} not in sample space {self.labels}")


@dataclass(frozen=True)
class Event:
    """A subset of a sample space, stored as an n-bit characteristic mask."""

    space: SampleSpace
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.space.full_mask:
            raise ValueError(f"mask {self.mask} out of range for n={self.space.n}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(
            lab for i, lab in enumerate(self.space.labels) if self.mask >> i & 1
        )

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == self.space.full_mask

    def size(self) -> int:
        return self.mask.bit_count()

    def issubset(self, other: "Event") -> bool:
        _require_same_space(self, other)
        return self.mask & other.mask == self.mask

    def contains_history(self, label: str) -> bool:
        return bool(self.mask >> self.space.index(label) & 1)

    def __and__(self, other: "Event") -> "Event":
        _require_same_space(self, other)
        return Event(self.space, self.mask & other.mask)

    def __or__(self, other: "Event") -> "Event":
        _require_same_space(self, other)
        return Event(self.space, self.mask | other.mask)

    def __xor__(self, other: "Event") -> "Event":
        _require_same_space(self, other)
        return Event(self.space, self.mask ^ other.mask)

    def __invert__(self) -> "Event":
        return Event(self.space, self.mask ^ self.space.full_mask)

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def _require_same_space(a: Event, b: Event) -> None:
    if a.space != b.space:
        raise MismatchedSpace(
            f"events over different sample spaces: {a.space.labels} vs {b.space.labels}"
        )


@dataclass(frozen=True)
class EventAlgebra:
    """The full powerset 2^Omega of a sample space.

    Set inclusion is the partial order; meet/join/complement are the
    set operations, which makes the algebra a Boolean lattice (and,
    via AB = A&B and A+B = A^B, an algebra over Z2).
    """

    space: SampleSpace

    @property
    def size(self) -> int:
        return 1 << self.space.n

    @property
    def empty(self) -> Event:
        return Event(self.space, 0)

    @property
    def full(self) -> Event:
        return Event(self.space, self.space.full_mask)

    def event(self, mask: int) -> Event:
        return Event(self.space, mask)

    def event_from_labels(self, labels: Iterable[str]) -> Event:
        mask = 0
        for lab in labels:
            mask |= 1 << self.space.index(lab)
        return Event(self.space, mask)

    def events(self) -> Iterator[Event]:
        """All events in canonical (ascending mask) order."""
        for mask in range(self.size):
            yield Event(self.space, mask)


@dataclass(frozen=True)
class EventFamily:
    """A deduplicated, canonically ordered set of events over one space."""

    space: SampleSpace
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.masks) != sorted(set(self.masks)):
            object.__setattr__(self, "masks", tuple(sorted(set(self.masks))))

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> "EventFamily":
        events = list(events)
        if not events:
            raise ValueError("cannot infer a sample space from an empty iterable; "
                             "use from_masks")
        space = events[0].space
        for ev in events[1:]:
            _require_same_space(events[0], ev)
        return cls(space, tuple(sorted({ev.mask for ev in events})))

    @classmethod
    def from_masks(cls, space: SampleSpace, masks: Iterable[int]) -> "EventFamily":
        return cls(space, tuple(sorted(set(masks))))

    @property
    def events(self) -> tuple[Event, ...]:
        return tuple(Event(self.space, m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __contains__(self, event: Event) -> bool:
        _require_same_space(Event(self.space, 0), event)
        return event.mask in set(self.masks)

    def union_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    def __str__(self) -> str:
        return "[" + ", ".join(str(ev) for ev in self.events) + "]"


# ---------------------------------------------------------------------------
# Lattice operations


def meet(a: Event, b: Event) -> Event:
    """A AND B (set intersection)."""
    return a & b


def join(a: Event, b: Event) -> Event:
    """A OR B (set union)."""
    return a | b


def complement(a: Event) -> Event:
    """NOT A (set complement in Omega)."""
    return ~a


def sym_diff(a: Event, b: Event) -> Event:
    """Symmetric difference; addition in the Z2-algebra picture."""
    return a ^ b


def implies(a: Event, b: Event) -> Event:
    """Boolean-lattice implication, NOT A OR B.

    Equals the full event exactly when A is a subset of B.
    """
    return ~a | b


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order (includes 0 and mask)."""
    subs = []
    s = mask
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return iter(reversed(subs))


def iter_supermasks(mask: int, full: int) -> Iterator[int]:
    """All supermasks of ``mask`` within ``full``, in ascending order."""
    comp = full ^ mask
    for extra in iter_submasks(comp):
        yield mask | extra


def up_closure(a: Event) -> EventFamily:
    """All events containing A, in canonical order."""
    full = a.space.full_mask
    return EventFamily(a.space, tuple(iter_supermasks(a.mask, full)))


def down_closure(a: Event) -> EventFamily:
    """All events contained in A, in canonical order."""
    return EventFamily(a.space, tuple(iter_submasks(a.mask)))


def is_filter(family: EventFamily) -> tuple[bool, Optional[Event]]:
    """Decide whether a family of events is a filter.

    A filter is nonempty, upward closed, and closed under intersection.
    On the full powerset carrier this forces a principal (unique
    minimal) element, which is returned alongside ``True``.
    """
    if len(family) == 0:
        return False, None
    members = set(family.masks)
    full = family.space.full_mask
    for m in family.masks:
        for s in iter_supermasks(m, full):
            if s not in members:
                return False, None
    for m1 in family.masks:
        for m2 in family.masks:
            if m1 & m2 not in members:
                return False, None
    principal = full
    for m in family.masks:
        principal &= m
    return True, Event(family.space, principal)
