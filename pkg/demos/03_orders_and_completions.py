"""Reading history events as statements about which coevent is real.

tau(A) collects the coevents that make A true.  Over the space of all
duals, tau preserves order and meets but not joins: saying "A or B
happened" about coevents needs valuation events beyond the image of
tau.  Closing the image under unions and intersections gives a Heyting
algebra that is not Boolean.
"""

from coevents import (
    and_or_audit,
    complete,
    dual_of_event,
    enumerate_multiplicative,
    heyting_implication,
    order_report,
    tau,
)
from coevents.catalog import fair_coin

fc = fair_coin()
alg = fc.algebra
space = enumerate_multiplicative(alg)
h = alg.event_from_labels(["h"])
t = alg.event_from_labels(["t"])

print("coevent space:", str(space))
for ev in (h, t, alg.full, alg.empty):
    print(f"  tau({ev}) = {tau(ev, space)}")
print()

report = order_report(space)
print(f"tau injective:        {report.tau_injective}")
print(f"orders agree:         {report.orders_agree}")
print(f"meets agree:          {report.meet_agree}")
print(f"joins agree:          {report.join_agree}")
for a, b in report.witnesses["join"]:
    lhs = tau(a, space) | tau(b, space)
    rhs = tau(a | b, space)
    print(f"  join witness {a},{b}: tau({a}) | tau({b}) = {lhs} but tau({a | b}) = {rhs}")
print()

# The union/intersection completion: five upper sets at n=2.
upper = complete(space, "upper")
print(f"upper completion ({len(upper)} members):")
for member in upper.members:
    print(f"  {member}")
boolean = complete(space, "boolean")
print(f"boolean completion has {len(boolean)} members")
print()

# Heyting implication on the completion; tau({h}) has no complement,
# only a pseudo-complement.
bottom = tau(alg.empty, space)
neg_h = heyting_implication(tau(h, space), bottom, upper)
print(f"tau({h}) -> bottom  =  {neg_h}")
print()

# The AND route always agrees; the OR route can disagree.
omega_star = dual_of_event(alg.full)
record = and_or_audit(omega_star, h, t, space)
print(f"audit at {omega_star} with A={h}, B={t}:")
print(f"  phi(A)={record.phi_a} phi(B)={record.phi_b} "
      f"phi(A&B)={record.phi_meet} phi(A|B)={record.phi_join}")
print(f"  f(tau(A) & tau(B)) = {record.f_meet}   f(tau(A) | tau(B)) = {record.f_join}")
print(f"  AND identity holds: {record.and_identity_holds}")
print(f"  OR discrepancy:     {record.or_discrepancy}")
