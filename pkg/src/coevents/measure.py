"""Exact-valued measures on a finite event algebra.

Classical (additive) validation, quantum (level-2 sum rule) validation,
derivation from a decoherence matrix, null-set analysis, and coarse
graining.  All arithmetic is over ``fractions.Fraction`` / Gaussian
rationals: preclusion hinges on exact zero tests, so there is no
floating-point mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InvalidPartition, MismatchedSpace, NonRealDiagonal
from .eventalg import Event, EventAlgebra, EventFamily, SampleSpace

Rational = Fraction


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @classmethod
    def real(cls, value: Fraction | int) -> "GaussianRational":
        return cls(Fraction(value), Fraction(0))

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


@dataclass(frozen=True)
class Violation:
    """One failed instance of a measure law, with its witness events."""

    rule: str  # "additivity" | "level2" | "nonnegativity" | "normalization"
    events: tuple[Event, ...]
    got: Fraction
    expected: Fraction

    def __str__(self) -> str:
        evs = " ".join(str(ev) for ev in self.events)
        return f"{self.rule} {evs}: got {self.got}, expected {self.expected}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a sum-rule validation; ok iff no violations."""

    rule: str  # "classical" | "quantum"
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Measure:
    """A total, exact-valued set function on the event algebra.

    A *valid* measure is nonnegative, has value 1 on the full event and
    0 on the empty event, and satisfies a sum rule; those conditions
    are checked by the validators below and reported as findings rather
    than enforced at construction, so that defective measures can be
    represented and analyzed.
    """

    algebra: EventAlgebra
    values: Mapping[int, Fraction]
    quantum_report: Optional[ValidationReport] = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        expected = set(range(self.algebra.size))
        got = set(self.values.keys())
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise ValueError(
                f"measure must be total on the algebra; missing masks {missing[:4]}, "
                f"extra masks {extra[:4]}"
            )

    def __call__(self, event: Event) -> Fraction:
        if event.space != self.algebra.space:
            raise MismatchedSpace("event belongs to a different sample space")
        return self.values[event.mask]

    def value_of_mask(self, mask: int) -> Fraction:
        return self.values[mask]

    @classmethod
    def from_table(
        cls, algebra: EventAlgebra, table: Mapping[int, Fraction | int]
    ) -> "Measure":
        return cls(algebra, {m: Fraction(v) for m, v in table.items()})

    @classmethod
    def from_atom_weights(
        cls, space: SampleSpace, weights: Mapping[str, Fraction | int]
    ) -> "Measure":
        """Additive measure from per-history weights (classical input)."""
        missing = [lab for lab in space.labels if lab not in weights]
        if missing:
            raise ValueError(f"missing weights for histories {missing}")
        extra = [lab for lab in weights if lab not in space.labels]
        if extra:
            raise ValueError(f"weights given for unknown histories {extra}")
        w = [Fraction(weights[lab]) for lab in space.labels]
        algebra = EventAlgebra(space)
        values = {}
        for mask in range(algebra.size):
            values[mask] = sum(
                (w[i] for i in range(space.n) if mask >> i & 1), Fraction(0)
            )
        return cls(algebra, values)

    @classmethod
    def from_amplitudes(
        cls, space: SampleSpace, amplitudes: Sequence[GaussianRational]
    ) -> "Measure":
        """Measure of A as |sum of the amplitudes in A|^2.

        Equivalent to the rank-one decoherence matrix D[i][j] =
        a_i * conj(a_j); the squared modulus is exact.
        """
        if len(amplitudes) != space.n:
            raise ValueError("need exactly one amplitude per history")
        algebra = EventAlgebra(space)
        values = {}
        for mask in range(algebra.size):
            total = GaussianRational()
            for i in range(space.n):
                if mask >> i & 1:
                    total = total + amplitudes[i]
            values[mask] = total.re * total.re + total.im * total.im
        return cls(algebra, values)


def _iter_disjoint_pairs(size: int):
    """Unordered pairs (a, b) of disjoint masks with a <= b, ascending."""
    for a in range(size):
        for b in range(a, size):
            if a & b == 0:
                yield a, b


def _iter_disjoint_triples(size: int):
    """Unordered triples (a, b, c) of pairwise-disjoint masks, a <= b <= c.

    Empty members are allowed (and are the only way a mask can repeat);
    the level-2 rule quantifies over disjoint events without requiring
    nonemptiness, and the empty cases force mu(empty) = 0.
    """
    for a in range(size):
        for b in range(a, size):
            if a & b:
                continue
            for c in range(b, size):
                if c & (a | b):
                    continue
                yield a, b, c


def validate_classical(m: Measure) -> ValidationReport:
    """Check the additive (Kolmogorov) sum rule on every disjoint pair."""
    violations = []
    alg = m.algebra
    for a, b in _iter_disjoint_pairs(alg.size):
        got = m.values[a | b]
        expected = m.values[a] + m.values[b]
        if got != expected:
            violations.append(
                Violation("additivity", (alg.event(a), alg.event(b)), got, expected)
            )
    return ValidationReport("classical", tuple(violations))


def validate_quantum(m: Measure) -> ValidationReport:
    """Check nonnegativity, normalization, and the level-2 sum rule.

    The level-2 rule is checked on every unordered pairwise-disjoint
    triple of (possibly empty) events:

        mu(A|B|C) = mu(A|B) + mu(B|C) + mu(C|A) - mu(A) - mu(B) - mu(C)
    """
    violations = []
    alg = m.algebra
    for mask in range(alg.size):
        if m.values[mask] < 0:
            violations.append(
                Violation("nonnegativity", (alg.event(mask),), m.values[mask], Fraction(0))
            )
    if m.values[alg.space.full_mask] != 1:
        violations.append(
            Violation("normalization", (alg.full,), m.values[alg.space.full_mask], Fraction(1))
        )
    for a, b, c in _iter_disjoint_triples(alg.size):
        got = m.values[a | b | c]
        expected = (
            m.values[a | b]
            + m.values[b | c]
            + m.values[c | a]
            - m.values[a]
            - m.values[b]
            - m.values[c]
        )
        if got != expected:
            violations.append(
                Violation(
                    "level2",
                    (alg.event(a), alg.event(b), alg.event(c)),
                    got,
                    expected,
                )
            )
    return ValidationReport("quantum", tuple(violations))


@dataclass(frozen=True)
class DecoherenceSpec:
    """A Hermitian, normalized matrix of pairwise history interferences.

    entries[i][j] is the value on the history pair (i, j); Hermiticity
    and total sum 1 are machine-checked at construction unless
    ``check=False`` is passed to :meth:`from_rows` (used to exercise
    the corrupted-input paths).
    """

    space: SampleSpace
    entries: tuple[tuple[GaussianRational, ...], ...]

    @classmethod
    def from_rows(
        cls,
        space: SampleSpace,
        rows: Sequence[Sequence[GaussianRational]],
        check: bool = True,
    ) -> "DecoherenceSpec":
        entries = tuple(tuple(row) for row in rows)
        if len(entries) != space.n or any(len(r) != space.n for r in entries):
            raise ValueError(f"decoherence matrix must be {space.n}x{space.n}")
        spec = cls(space, entries)
        if check:
            spec.check_invariants()
        return spec

    @classmethod
    def from_amplitudes(
        cls, space: SampleSpace, amplitudes: Sequence[GaussianRational]
    ) -> "DecoherenceSpec":
        """Rank-one matrix a_i * conj(a_j), rescaled so the total is 1.

        Requires the total |sum a_i|^2 to be nonzero.
        """
        if len(amplitudes) != space.n:
            raise ValueError("need exactly one amplitude per history")
        total = GaussianRational()
        for a in amplitudes:
            total = total + a
        norm = total.re * total.re + total.im * total.im
        if norm == 0:
            raise ValueError("amplitudes sum to zero; matrix cannot be normalized")
        scale = GaussianRational(Fraction(1, 1) / norm)
        rows = [
            [amplitudes[i] * amplitudes[j].conjugate() * scale for j in range(space.n)]
            for i in range(space.n)
        ]
        return cls.from_rows(space, rows)

    def check_invariants(self) -> None:
        n = self.space.n
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i].conjugate():
                    raise ValueError(
                        f"matrix is not Hermitian at ({self.space.labels[i]}, "
                        f"{self.space.labels[j]})"
                    )
        total = GaussianRational()
        for row in self.entries:
            for v in row:
                total = total + v
        if total != GaussianRational.real(1):
            raise ValueError(f"matrix entries sum to {total}, expected 1")


def measure_from_decoherence(d: DecoherenceSpec) -> Measure:
    """mu(A) = sum of the matrix over pairs of histories inside A.

    Each value must come out real (automatic for a Hermitian matrix);
    a nonzero imaginary part raises :class:`NonRealDiagonal`.  The
    level-2 validation report of the result is attached.
    """
    space = d.space
    algebra = EventAlgebra(space)
    totals: dict[int, GaussianRational] = {0: GaussianRational()}
    for mask in range(1, algebra.size):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        acc = totals[rest] + d.entries[i][i]
        for j in range(space.n):
            if rest >> j & 1:
                acc = acc + d.entries[i][j] + d.entries[j][i]
        totals[mask] = acc
    values: dict[int, Fraction] = {}
    for mask, tot in totals.items():
        if not tot.is_real:
            raise NonRealDiagonal(
                f"measure of {algebra.event(mask)} is {tot}; matrix is corrupted"
            )
        values[mask] = tot.re
    m = Measure(algebra, values)
    report = validate_quantum(m)
    return Measure(algebra, values, quantum_report=report)


def null_sets(m: Measure) -> EventFamily:
    """All events of exactly zero measure, in canonical order."""
    return EventFamily.from_masks(
        m.algebra.space, (mask for mask, v in m.values.items() if v == 0)
    )


def null_cover_exists(m: Measure) -> bool:
    """True iff the union of all null sets is the whole sample space."""
    return null_sets(m).union_mask() == m.algebra.space.full_mask


@dataclass(frozen=True)
class CoarseGraining:
    """A partition of the sample space into nonempty disjoint blocks."""

    blocks: EventFamily

    def __post_init__(self) -> None:
        seen = 0
        for mask in self.blocks.masks:
            if mask == 0:
                raise InvalidPartition("blocks must be nonempty")
            if mask & seen:
                raise InvalidPartition("blocks must be pairwise disjoint")
            seen |= mask
        if seen != self.blocks.space.full_mask:
            raise InvalidPartition("blocks must cover the sample space")

    @classmethod
    def from_label_blocks(
        cls, space: SampleSpace, blocks: Iterable[Iterable[str]]
    ) -> "CoarseGraining":
        algebra = EventAlgebra(space)
        return cls(EventFamily.from_events(
            [algebra.event_from_labels(b) for b in blocks]
        ))


@dataclass(frozen=True)
class CoarseGrainedMeasure:
    """The restriction of a measure to the subalgebra generated by a partition."""

    graining: CoarseGraining
    subalgebra: EventFamily  # all unions of blocks, canonical order
    values: Mapping[int, Fraction]


def coarse_grain(m: Measure, graining: CoarseGraining) -> CoarseGrainedMeasure:
    """Restrict the measure to all unions of the partition's blocks."""
    if graining.blocks.space != m.algebra.space:
        raise MismatchedSpace("partition belongs to a different sample space")
    blocks = graining.blocks.masks
    members = []
    for pick in range(1 << len(blocks)):
        union = 0
        for i, b in enumerate(blocks):
            if pick >> i & 1:
                union |= b
        members.append(union)
    family = EventFamily.from_masks(m.algebra.space, members)
    return CoarseGrainedMeasure(
        graining, family, {mask: m.values[mask] for mask in family.masks}
    )


def is_decoherent(m: Measure, graining: CoarseGraining) -> bool:
    """True iff the restriction to the generated subalgebra is additive."""
    cg = coarse_grain(m, graining)
    members = cg.subalgebra.masks
    present = set(members)
    for a in members:
        for b in members:
            if a <= b and a & b == 0:
                assert (a | b) in present
                if cg.values[a | b] != cg.values[a] + cg.values[b]:
                    return False
    return True
