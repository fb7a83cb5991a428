import itertools
import random

import pytest

from conebetti.betti import BettiTable, proj_dim, regularity
from conebetti.errors import CertificationError, DomainError, ResourceError
from conebetti.mapping_cone import (
    CertifiedOrder,
    Engine,
    FallbackPolicy,
    StepWitness,
    WitnessKind,
    betti_engine,
    check_step,
    find_decreasing_order,
)
from conebetti.monomial import MonomialIdeal, colon, contains, degree
from conebetti.oracle import oracle_betti

from conftest import random_ideal

TRIANGLE = MonomialIdeal(3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
CHAIN_EXAMPLE = MonomialIdeal(4, [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0), (0, 0, 1, 1)])
C5 = MonomialIdeal(5, [(1, 1, 0, 0, 0), (0, 1, 1, 0, 0), (0, 0, 1, 1, 0),
                       (0, 0, 0, 1, 1), (1, 0, 0, 0, 1)])


def shifted_sum(a, b, d):
    acc = a.as_dict()
    for (i, j), m in b.entries:
        acc[(i + 1, j + d)] = acc.get((i + 1, j + d), 0) + m
    return BettiTable(a.n, acc)


def test_check_step_dominance_examples():
    w = check_step(MonomialIdeal(3, [(1, 1, 0), (0, 1, 1)]), (0, 0, 2))
    assert w.kind is WitnessKind.DOMINANCE and w.variable == 2
    assert str(w) == "VariableDominance(x3)"
    w = check_step(MonomialIdeal(3, [(1, 1, 0)]), (1, 0, 1))
    assert w.kind is WitnessKind.DOMINANCE and w.variable == 2


def test_check_step_triangle_closing_edge():
    # no variable dominates, but (I:x1x3) = (x2) = (I:x3)
    I = MonomialIdeal(3, [(1, 1, 0), (0, 1, 1)])
    w = check_step(I, (1, 0, 1))
    assert w.kind is WitnessKind.COLON and w.variable == 0
    assert colon(I, (1, 0, 1)) == colon(I, (0, 0, 1)) == MonomialIdeal(3, [(0, 1, 0)])
    # and the cone is indeed minimal
    assert oracle_betti(TRIANGLE) == shifted_sum(oracle_betti(I), oracle_betti(colon(I, (1, 0, 1))), 2)


def test_check_step_none():
    I = MonomialIdeal(2, [(2, 0), (0, 2)])
    assert check_step(I, (1, 1)) is None
    # the cone has 8 free summands, the minimal resolution only 6
    cone_size = sum(oracle_betti(I).totals()) + sum(oracle_betti(colon(I, (1, 1))).totals())
    assert sum(oracle_betti(I + MonomialIdeal(2, [(1, 1)])).totals()) == cone_size - 2


def test_check_step_rejects_member():
    with pytest.raises(DomainError):
        check_step(MonomialIdeal(2, [(1, 0)]), (1, 1))


def exhaustive_decreasing(I):
    for perm in itertools.permutations(I.gens):
        if all(
            any(all(u[i] > v[i] for v in perm[:k]) for i in range(I.n))
            for k, u in enumerate(perm) if k
        ):
            return perm
    return None


def test_decreasing_order_examples():
    o = find_decreasing_order(CHAIN_EXAMPLE)
    assert o is not None and o.validate() and o.is_decreasing_type()
    assert set(o.order) == set(CHAIN_EXAMPLE.gens)
    o = find_decreasing_order(MonomialIdeal(3, [(1, 1, 1)]))
    assert o.order == ((1, 1, 1),) and o.witnesses == (None,)
    assert find_decreasing_order(TRIANGLE) is None
    assert exhaustive_decreasing(TRIANGLE) is None


def test_decreasing_order_agrees_with_permutation_search():
    rng = random.Random(31)
    for _ in range(150):
        I = random_ideal(rng, rng.randint(1, 4), max_gens=6, max_deg=4)
        if I.is_unit:
            continue
        o = find_decreasing_order(I)
        assert (o is None) == (exhaustive_decreasing(I) is None), I
        if o is not None:
            assert o.is_decreasing_type()


def test_decreasing_order_cap():
    I = MonomialIdeal(6, [tuple(1 if i in s else 0 for i in range(6))
                          for s in itertools.combinations(range(6), 3)])
    with pytest.raises(ResourceError):
        find_decreasing_order(I, cap=10)


def test_certified_order_validation_catches_bad_witness():
    I = MonomialIdeal(3, [(1, 1, 0), (1, 0, 1)])
    good = CertifiedOrder(3, ((1, 1, 0), (1, 0, 1)),
                          (None, StepWitness((1, 0, 1), WitnessKind.DOMINANCE, 2)))
    assert good.validate()
    bad = CertifiedOrder(3, ((1, 1, 0), (1, 0, 1)),
                         (None, StepWitness((1, 0, 1), WitnessKind.DOMINANCE, 0)))
    assert not bad.validate()
    assert find_decreasing_order(I).validate()


def test_engine_examples():
    r = betti_engine(MonomialIdeal(3, [(1, 1, 0), (1, 0, 1)]))
    assert r.table == BettiTable(3, {(0, 0): 1, (1, 2): 2, (2, 3): 1})
    assert r.fully_certified and r.kind == "fully-certified"
    assert betti_engine(MonomialIdeal(1, [(1,)])).table == BettiTable(1, {(0, 0): 1, (1, 1): 1})
    r = betti_engine(MonomialIdeal(2, [(1, 1), (2, 0), (0, 2)]))
    assert r.table == BettiTable(2, {(0, 0): 1, (1, 2): 3, (2, 3): 2})


def test_engine_unit_ideal():
    with pytest.raises(DomainError):
        betti_engine(MonomialIdeal.unit(2))


def test_engine_strict_reports_stuck_subideal():
    with pytest.raises(CertificationError) as exc:
        betti_engine(C5, FallbackPolicy.STRICT)
    stuck = exc.value.ideal
    assert isinstance(stuck, MonomialIdeal) and not stuck.is_zero
    r = betti_engine(C5, FallbackPolicy.ORACLE)
    assert not r.fully_certified and r.kind == "oracle-assisted"
    assert r.table == oracle_betti(C5)


@pytest.mark.parametrize("policy", list(FallbackPolicy))
def test_engine_matches_oracle(policy):
    rng = random.Random(37)
    engine = Engine(policy)
    checked = 0
    for _ in range(150):
        I = random_ideal(rng, rng.randint(1, 6), max_gens=8, max_deg=4)
        if I.is_unit:
            continue
        try:
            r = engine.run(I)
        except CertificationError:
            assert policy is FallbackPolicy.STRICT
            continue
        assert r.table == oracle_betti(I), I
        checked += 1
    assert checked > 50


def test_certificate_nodes_are_consistent():
    rng = random.Random(41)
    for _ in range(50):
        I = random_ideal(rng, rng.randint(2, 5), max_gens=6)
        if I.is_unit:
            continue
        r = betti_engine(I)
        for node in r.certificate.walk():
            if node.rule == "cone":
                rest, col = (c.ideal for c in node.children)
                u = node.witness.generator
                assert not contains(rest, u)
                assert rest.with_generator(u) == node.ideal
                assert col == colon(rest, u)


def test_engine_is_deterministic():
    rng = random.Random(43)
    ideals = [random_ideal(rng, 5, max_gens=7) for _ in range(20)]
    first = [betti_engine(I).certificate.render() for I in ideals if not I.is_unit]
    second = [betti_engine(I).certificate.render() for I in ideals if not I.is_unit]
    assert first == second


def test_additivity_with_reg_and_pd():
    rng = random.Random(47)
    hits = 0
    for _ in range(400):
        n = rng.randint(1, 4)
        I = random_ideal(rng, n, max_gens=4, max_deg=3)
        u = random_ideal(rng, n, max_gens=1, max_deg=3).gens[0]
        if I.is_unit or contains(I, u) or check_step(I, u) is None:
            continue
        J, K = I.with_generator(u), colon(I, u)
        lhs, a, b = oracle_betti(J), oracle_betti(I), oracle_betti(K)
        assert lhs == shifted_sum(a, b, degree(u))
        assert regularity(lhs) == max(regularity(a), regularity(b) + degree(u) - 1)
        assert proj_dim(lhs) == max(proj_dim(a), proj_dim(b) + 1)
        hits += 1
    assert hits > 50
