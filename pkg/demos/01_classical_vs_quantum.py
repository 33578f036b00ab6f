"""A fair coin obeys the additive sum rule; a three-slit setup does not.

Walk through measure validation, null sets, and coarse graining on the
two smallest interesting theories in the catalog.
"""

from coevents import (
    CoarseGraining,
    coarse_grain,
    is_decoherent,
    null_cover_exists,
    null_sets,
    validate_classical,
    validate_quantum,
)
from coevents.catalog import fair_coin, three_slit


def show(measure, name):
    print(f"== {name} ==")
    alg = measure.algebra
    for mask in range(alg.size):
        print(f"  mu({alg.event(mask)}) = {measure.values[mask]}")
    classical = validate_classical(measure)
    print(f"  additive (Kolmogorov): {classical.ok}")
    for violation in classical.violations[:3]:
        print(f"    {violation}")
    quantum = validate_quantum(measure)
    print(f"  level-2 sum rule:      {quantum.ok}")
    print(f"  null sets: {[str(ev) for ev in null_sets(measure)]}")
    print(f"  null cover: {null_cover_exists(measure)}")
    print()


fc = fair_coin()
show(fc, "fair coin")

# Destructive interference: amplitudes (1, 1, -1).  Each slit alone has
# measure 1, yet {1,3} and {2,3} interfere to zero -- and together they
# cover the whole sample space.
ts = three_slit()
show(ts, "three slits, amplitudes (1, 1, -1)")

# The {1,2}|{3} coarse graining keeps the interference visible, so it is
# not decoherent; grouping everything into one block trivially is.
split = CoarseGraining.from_label_blocks(ts.algebra.space, [["1", "2"], ["3"]])
restricted = coarse_grain(ts, split)
print("coarse graining {1,2} | {3}:")
for mask in restricted.subalgebra.masks:
    print(f"  mu({ts.algebra.event(mask)}) = {restricted.values[mask]}")
print(f"  decoherent: {is_decoherent(ts, split)}")

whole = CoarseGraining.from_label_blocks(ts.algebra.space, [["1", "2", "3"]])
print(f"one-block graining decoherent: {is_decoherent(ts, whole)}")
