from __future__ import annotations

import pytest

from coevents import (
    CapExceeded,
    Coevent,
    CoeventSpace,
    MismatchedSpace,
    NotUpperMode,
    TruthFunction,
    ValuationEvent,
    and_or_audit,
    complete,
    dual_of_event,
    enumerate_multiplicative,
    heyting_implication,
    order_report,
    tau,
    truth_evaluate,
)
from coevents.beables import dual_up_masks
from coevents.catalog import three_slit
from coevents.coevent import multiplicative_scheme

from conftest import algebra_of_size


def mce(n: int, include_empty_dual: bool = False) -> CoeventSpace:
    return enumerate_multiplicative(algebra_of_size(n), include_empty_dual)


def all_upper_sets(space: CoeventSpace) -> set[int]:
    """Oracle: every upward-closed subset of the dual order, by brute force."""
    ups = dual_up_masks(space)
    out = set()
    for bits in range(1 << len(space)):
        if all(ups[i] & bits == ups[i] for i in range(len(space)) if bits >> i & 1):
            out.add(bits)
    return out


# ---------------------------------------------------------------------------
# tau


def test_tau_examples_n2():
    space = mce(2)
    alg = space.algebra
    a = alg.event_from_labels(["a"])
    assert [str(phi) for phi in tau(a, space).members] == ["{a}*"]
    assert len(tau(alg.full, space)) == 3
    assert len(tau(alg.empty, space)) == 0


def test_tau_empty_event_with_empty_dual():
    space = mce(2, include_empty_dual=True)
    members = tau(space.algebra.empty, space).members
    assert [str(phi) for phi in members] == ["{}*"]


def test_tau_is_the_up_set_of_the_dual(small_algebra):
    space = enumerate_multiplicative(small_algebra)
    ups = dual_up_masks(space)
    for mask in range(1, small_algebra.size):
        ev = small_algebra.event(mask)
        i = space.members.index(dual_of_event(ev))
        assert tau(ev, space).bits == ups[i]


def test_tau_rejects_foreign_events(coin_algebra, abc_algebra):
    space = enumerate_multiplicative(coin_algebra)
    with pytest.raises(MismatchedSpace):
        tau(abc_algebra.full, space)


# ---------------------------------------------------------------------------
# Order reports


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_order_report_over_all_duals(n):
    rep = order_report(mce(n))
    assert rep.tau_injective
    assert rep.pushforward_well_defined
    assert rep.orders_agree
    assert rep.meet_agree
    if n == 1:
        assert rep.join_agree
    else:
        assert not rep.join_agree
        assert len(rep.witnesses["join"]) >= 1


def test_join_witness_at_n2_is_the_two_singletons():
    rep = order_report(mce(2))
    first = rep.witnesses["join"][0]
    assert (str(first[0]), str(first[1])) == ("{a}", "{b}")


def test_scheme_report_for_three_slit():
    scheme = multiplicative_scheme(three_slit())
    rep = order_report(scheme)
    assert rep.pushforward_well_defined
    assert not rep.tau_injective
    # {1,2} and the full event have the same image
    pairs = {(a.mask, b.mask) for a, b in rep.witnesses["injectivity"]}
    assert (0b011, 0b111) in pairs


def test_zero_coevent_space_report(coin_algebra):
    zero = Coevent(coin_algebra, frozenset())
    rep = order_report(CoeventSpace.build(coin_algebra, [zero], "user-supplied"))
    assert not rep.tau_injective
    assert rep.witnesses["injectivity"]
    assert rep.pushforward_well_defined  # tau is constant, hence monotone


def test_non_monotone_space_report(coin_algebra):
    stuck = Coevent(coin_algebra, frozenset([1]))  # true only on {h}
    rep = order_report(CoeventSpace.build(coin_algebra, [stuck], "user-supplied"))
    assert not rep.pushforward_well_defined
    assert rep.witnesses["pushforward"]
    assert rep.notes


def test_filter_supports_give_well_defined_pushforward(theory_corpus):
    for m in theory_corpus.values():
        rep = order_report(multiplicative_scheme(m))
        assert rep.pushforward_well_defined


def test_meet_agreement_exhaustive(small_algebra):
    space = enumerate_multiplicative(small_algebra)
    alg = small_algebra
    for a in range(alg.size):
        for b in range(alg.size):
            ea, eb = alg.event(a), alg.event(b)
            assert tau(ea & eb, space).bits == (tau(ea, space) & tau(eb, space)).bits


def test_join_escapes_the_image_at_n2():
    space = mce(2)
    alg = space.algebra
    image = {tau(alg.event(m), space).bits for m in range(alg.size)}
    a = tau(alg.event_from_labels(["a"]), space)
    b = tau(alg.event_from_labels(["b"]), space)
    assert (a | b).bits not in image


# ---------------------------------------------------------------------------
# Completions


@pytest.mark.parametrize("n", [1, 2, 3])
def test_upper_completion_is_every_upper_set(n):
    space = mce(n)
    completion = complete(space, "upper")
    assert set(completion.member_bits) == all_upper_sets(space)


def test_upper_completion_sizes():
    # sizes cross-checked against the brute-force upper-set oracle above
    assert len(complete(mce(1), "upper")) == 2
    assert len(complete(mce(2), "upper")) == 5
    assert len(complete(mce(3), "upper")) == 19


def test_upper_completion_contains_a_new_member_at_n2():
    space = mce(2)
    alg = space.algebra
    image = {tau(alg.event(m), space).bits for m in range(alg.size)}
    a = tau(alg.event_from_labels(["a"]), space)
    b = tau(alg.event_from_labels(["b"]), space)
    union = (a | b).bits
    assert union in set(complete(space, "upper").member_bits)
    assert union not in image


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boolean_completion_is_the_full_powerset(n):
    # tau separates the duals, so the generated Boolean algebra is everything
    space = mce(n)
    completion = complete(space, "boolean")
    assert set(completion.member_bits) == set(range(1 << len(space)))


def test_boolean_completion_contains_upper(small_algebra):
    space = enumerate_multiplicative(small_algebra)
    upper = set(complete(space, "upper").member_bits)
    boolean = set(complete(space, "boolean").member_bits)
    assert upper <= boolean


def test_degenerate_completions_at_n1():
    space = mce(1)
    alg = space.algebra
    image = {tau(alg.event(m), space).bits for m in range(alg.size)}
    assert set(complete(space, "upper").member_bits) == image
    assert set(complete(space, "boolean").member_bits) == image


def test_completion_cap():
    space = enumerate_multiplicative(algebra_of_size(4))  # 15 members, fine
    complete(space, "upper")
    with pytest.raises(CapExceeded):
        complete(space, "upper", cap=10)


def test_non_boolean_witness_at_n2():
    space = mce(2)
    completion = complete(space, "upper")
    members = set(completion.member_bits)
    full = (1 << len(space)) - 1
    missing = [bits for bits in completion.member_bits if bits ^ full not in members]
    assert missing  # some member has no complement inside the completion
    a = tau(space.algebra.event_from_labels(["a"]), space)
    b = tau(space.algebra.event_from_labels(["b"]), space)
    assert (a | b).bits in missing


# ---------------------------------------------------------------------------
# Heyting implication


@pytest.mark.parametrize("n", [1, 2, 3])
def test_heyting_adjunction_exhaustive(n):
    space = mce(n)
    completion = complete(space, "upper")
    members = completion.members
    for alpha in members:
        for beta in members:
            imp = heyting_implication(alpha, beta, completion)
            assert imp in completion
            assert (imp & alpha).issubset(beta)
            for gamma in members:
                assert ((gamma & alpha).issubset(beta)) == gamma.issubset(imp)


def test_heyting_examples_n2():
    space = mce(2)
    completion = complete(space, "upper")
    alg = space.algebra
    top = tau(alg.full, space)
    a = tau(alg.event_from_labels(["a"]), space)
    bottom = tau(alg.empty, space)
    assert heyting_implication(a, top, completion) == top  # alpha <= beta
    assert heyting_implication(a, a, completion) == top
    assert str(heyting_implication(a, bottom, completion)) == "[{b}*]"


def test_heyting_requires_upper_mode():
    space = mce(2)
    boolean = complete(space, "boolean")
    alpha = ValuationEvent(space, 0)
    with pytest.raises(NotUpperMode):
        heyting_implication(alpha, alpha, boolean)


def test_heyting_requires_membership():
    space = mce(2)
    completion = complete(space, "upper")
    outside = ValuationEvent(space, 0b100)  # not an upper set member of U
    with pytest.raises(ValueError):
        heyting_implication(outside, outside, completion)


def test_general_spaces_support_reports_and_completions_only(coin_algebra):
    # a user-supplied space with a non-multiplicative member still gets
    # its order report and completions, but has no dual order to
    # compute implications with
    ragged = Coevent(coin_algebra, frozenset([1, 2]))
    space = CoeventSpace.build(coin_algebra, [ragged], "user-supplied")
    order_report(space)
    completion = complete(space, "upper")
    alpha = completion.members[0]
    with pytest.raises(ValueError, match="multiplicative"):
        heyting_implication(alpha, alpha, completion)


# ---------------------------------------------------------------------------
# Truth functions and audits


@pytest.mark.parametrize("n", [2, 3])
def test_truth_functions_are_boolean_homomorphisms(n):
    space = mce(n)
    size = 1 << len(space)
    assert len(space) <= 8
    for phi in space.members:
        f = TruthFunction(space, phi)
        for abits in range(size):
            alpha = ValuationEvent(space, abits)
            assert truth_evaluate(f, ~alpha) == 1 - truth_evaluate(f, alpha)
            for bbits in range(size):
                beta = ValuationEvent(space, bbits)
                assert truth_evaluate(f, alpha & beta) == (
                    truth_evaluate(f, alpha) & truth_evaluate(f, beta)
                )
                assert truth_evaluate(f, alpha | beta) == (
                    truth_evaluate(f, alpha) | truth_evaluate(f, beta)
                )


def test_truth_function_requires_member_pivot(coin_algebra):
    space = enumerate_multiplicative(coin_algebra)
    foreign = Coevent(coin_algebra, frozenset([1, 2]))
    with pytest.raises(MismatchedSpace):
        TruthFunction(space, foreign)


def test_audit_or_discrepancy_at_the_full_dual():
    space = mce(2)
    alg = space.algebra
    omega_star = dual_of_event(alg.full)
    record = and_or_audit(
        omega_star,
        alg.event_from_labels(["a"]),
        alg.event_from_labels(["b"]),
        space,
    )
    assert (record.phi_a, record.phi_b) == (0, 0)
    assert record.f_join == 0 and record.phi_join == 1
    assert record.or_discrepancy
    assert record.and_identity_holds


def test_audit_and_identity_values():
    space = mce(2)
    alg = space.algebra
    a_star = dual_of_event(alg.event_from_labels(["a"]))
    record = and_or_audit(a_star, alg.event_from_labels(["a"]), alg.full, space)
    assert (record.phi_a, record.phi_b, record.phi_meet) == (1, 1, 1)
    assert not record.or_discrepancy


@pytest.mark.parametrize("n", [1, 2, 3])
def test_audit_full_event_forces_identity(n):
    space = mce(n)
    alg = space.algebra
    for phi in space.members:
        for mask in range(alg.size):
            record = and_or_audit(phi, alg.event(mask), alg.full, space)
            assert record.and_identity_holds
            assert record.phi_meet == record.phi_a


@pytest.mark.parametrize("n", [2, 3])
def test_audit_finds_an_or_discrepancy(n):
    space = mce(n)
    alg = space.algebra
    found = False
    for phi in space.members:
        for a in range(alg.size):
            for b in range(a, alg.size):
                record = and_or_audit(phi, alg.event(a), alg.event(b), space)
                assert record.and_identity_holds
                found = found or record.or_discrepancy
    assert found


def test_valuation_event_rendering():
    from coevents import EventAlgebra, SampleSpace

    alg = EventAlgebra(SampleSpace(("1", "2", "3")))
    space = enumerate_multiplicative(alg)
    val = tau(alg.event_from_labels(["1", "2"]), space)
    assert str(val) == "[{1}*, {2}*, {1,2}*]"
    pair = ValuationEvent(
        space,
        (1 << space.members.index(dual_of_event(alg.event_from_labels(["1", "2"]))))
        | (1 << space.members.index(dual_of_event(alg.full))),
    )
    assert str(pair) == "[{1,2}*, {1,2,3}*]"
