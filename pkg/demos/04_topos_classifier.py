"""Contextual truth: the subobject classifier over the poset of duals.

Order the duals inversely to their principal events, foliate the poset
with a constant copy of the event algebra, and select each coevent's
support.  The selection grows along the order, so it is a subobject,
and its characteristic map sends (context, event) to the sieve of
higher contexts at which the event is supported -- computed two ways
and checked to agree.
"""

from coevents import (
    build_mce_instance,
    build_scheme_instance,
    chi_vsupp,
    classifier,
    dual_of_event,
    sieves_at,
)
from coevents.catalog import fair_coin, three_slit
from coevents.topos import classifier_functoriality_failures

fc = fair_coin()
alg = fc.algebra
instance = build_mce_instance(alg)

print("base poset (dual order):", [str(p) for p in instance.poset.elements])
omega_star = dual_of_event(alg.full)
h_star = dual_of_event(alg.event_from_labels(["h"]))
print(f"  {omega_star} <= {h_star}:", instance.poset.leq(omega_star, h_star))
print()

print("support selection at each context:")
for phi in instance.poset.elements:
    events = sorted(instance.support_subobject.selection(phi), key=lambda e: e.mask)
    print(f"  {str(phi):8s} -> {[str(e) for e in events]}")
print()

print("sieves (local truth values) at each context:")
for phi in instance.poset.elements:
    members = [[str(e) for e in s.members] for s in sieves_at(instance.poset, phi)]
    print(f"  at {phi}: {members}")
omega = classifier(instance.poset)
print("classifier functorial:", classifier_functoriality_failures(omega) == ())
print()

print("characteristic map of the support selection:")
for phi in instance.poset.elements:
    for mask in range(alg.size):
        ev = alg.event(mask)
        sieve = chi_vsupp(instance, phi, ev)
        print(f"  chi[{str(phi):8s}]({str(ev):6s}) = {sieve}")
print()

# Over the scheme of the three-slit theory the base poset is a single
# point: the classifier collapses to the two classical truth values.
scheme_instance = build_scheme_instance(three_slit())
print("three-slit scheme poset:", [str(p) for p in scheme_instance.poset.elements])
print("antichain:", scheme_instance.is_antichain)
point = scheme_instance.poset.elements[0]
print("sieves there:", [[str(e) for e in s.members] for s in sieves_at(scheme_instance.poset, point)])
