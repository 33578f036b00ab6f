"""Coevents on the three-slit theory: why anhomomorphic logic is needed.

Every history sits inside a null set, so no classical (homomorphic)
truth valuation respects preclusion.  The multiplicative coevents --
duals of events -- step in: {1,2}* is preclusive, and it is the unique
primitive one.
"""

from coevents import (
    check_modus_ponens,
    classical_from_history,
    classical_preclusive_set,
    dual_of_coevent,
    dual_of_event,
    enumerate_multiplicative,
    is_classical,
    is_multiplicative,
    is_preclusive,
    multiplicative_scheme,
    null_sets,
)
from coevents.catalog import three_slit

ts = three_slit()
alg = ts.algebra

print("null sets:", [str(ev) for ev in null_sets(ts)])
print()

# Classical coevents are evaluation at a single history.
for label in alg.space.labels:
    phi = classical_from_history(alg, label)
    print(
        f"{label}*: classical={is_classical(phi)}  "
        f"preclusive={is_preclusive(phi, ts)}"
    )
print("classical preclusive set:", str(classical_preclusive_set(ts)))
print()

# Every nonempty event A has a dual coevent A*, true exactly on the
# supersets of A; the two maps invert each other.
ab = alg.event_from_labels(["1", "2"])
phi = dual_of_event(ab)
print(f"dual of {ab} is {phi}; its principal event is {dual_of_coevent(phi)}")
print(f"{phi} evaluates {alg.full} -> {phi(alg.full)}, {ab} -> {phi(ab)}, "
      f"{alg.event_from_labels(['1'])} -> {phi(alg.event_from_labels(['1']))}")
print()

# All multiplicative coevents, classified.
print("all duals, with their classification:")
for psi in enumerate_multiplicative(alg):
    print(
        f"  {str(psi):12s} multiplicative={is_multiplicative(psi)} "
        f"classical={is_classical(psi)} preclusive={is_preclusive(psi, ts)} "
        f"modus-ponens={check_modus_ponens(psi)}"
    )
print()

# The scheme keeps only the preclusive duals with minimal support.
print("multiplicative scheme:", str(multiplicative_scheme(ts)))
