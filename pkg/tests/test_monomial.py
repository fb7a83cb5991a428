import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conebetti.errors import DomainError, InputError
from conebetti.monomial import (
    MonomialIdeal,
    alexander_dual,
    colon,
    contains,
    disjoint_components,
    minimalize,
    multiply,
    polarize,
    unused_variables,
)

from conftest import monomials_up_to


def ideal(n, *gens):
    return MonomialIdeal(n, gens)


def test_minimalize_drops_multiples():
    assert minimalize([(1, 0), (1, 1)], 2).gens == ((1, 0),)


def test_minimalize_keeps_antichain():
    gens = [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0), (0, 0, 1, 1)]
    assert set(minimalize(gens, 4).gens) == set(gens)


def test_minimalize_empty_is_zero_ideal():
    I = minimalize([], 3)
    assert I.is_zero and not I.is_unit


def test_length_mismatch_rejected():
    with pytest.raises(InputError):
        minimalize([(1, 0, 0)], 2)


def test_canonical_order_is_lexicographic():
    I = MonomialIdeal(3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    assert list(I.gens) == sorted(I.gens)
    assert I == MonomialIdeal(3, [(0, 1, 1), (1, 0, 1), (1, 1, 0)])


def test_unit_ideal_representation():
    I = MonomialIdeal(2, [(0, 0), (1, 0)])
    assert I.is_unit and I.gens == ((0, 0),)


def test_colon_strip_common_variable():
    assert colon(ideal(3, (1, 1, 0), (1, 0, 1)), (1, 0, 0)) == ideal(3, (0, 1, 0), (0, 0, 1))


def test_colon_monomial_part_of_worked_example():
    # (x^3y^5, xy^5z^6) : z^7 = (xy^5)
    I = ideal(3, (3, 5, 0), (1, 5, 6))
    assert colon(I, (0, 0, 7)) == ideal(3, (1, 5, 0))


def _brute_colon_members(I, u, bound):
    return {w for w in monomials_up_to(I.n, bound) if contains(I, multiply(w, u))}


def test_colon_against_brute_force_membership():
    I = ideal(3, (1, 1, 0), (0, 1, 1))
    u = (1, 0, 1)
    expected = ideal(3, (0, 1, 0))
    members = _brute_colon_members(I, u, 4)
    assert members == {w for w in monomials_up_to(3, 4) if contains(expected, w)}
    assert colon(I, u) == expected


def test_contains():
    assert contains(ideal(3, (1, 1, 0)), (1, 1, 1))
    assert not contains(ideal(3, (1, 1, 0)), (1, 0, 0))
    assert not contains(ideal(3, (2, 0, 0), (0, 1, 1)), (1, 1, 0))


def _brute_dual(I):
    # squarefree monomials meeting every generator support, then minimal ones
    n = I.n
    covers = [
        s for s in itertools.product((0, 1), repeat=n)
        if all(any(s[i] and g[i] for i in range(n)) for g in I.gens)
    ]
    return MonomialIdeal(n, covers)


def test_alexander_dual_examples():
    I = ideal(3, (1, 1, 0), (1, 0, 1))
    assert alexander_dual(I) == ideal(3, (1, 0, 0), (0, 1, 1)) == _brute_dual(I)
    assert alexander_dual(ideal(1, (1,))) == ideal(1, (1,))
    assert alexander_dual(ideal(2, (1, 1))) == ideal(2, (1, 0), (0, 1))


def test_alexander_dual_rejects_bad_input():
    with pytest.raises(DomainError):
        alexander_dual(ideal(2, (2, 0)))
    with pytest.raises(DomainError):
        alexander_dual(MonomialIdeal.zero(2))
    with pytest.raises(DomainError):
        alexander_dual(MonomialIdeal.unit(2))


def test_disjoint_components_examples():
    blocks = disjoint_components(ideal(4, (1, 1, 0, 0), (0, 0, 1, 1)))
    assert [sorted(v) for v, _ in blocks] == [[0, 1], [2, 3]]
    assert len(disjoint_components(ideal(3, (1, 1, 0), (0, 1, 1)))) == 1


def _bfs_blocks(I):
    gens = list(I.gens)
    seen, out = set(), []
    for k in range(len(gens)):
        if k in seen:
            continue
        comp, stack = {k}, [k]
        while stack:
            a = stack.pop()
            for b in range(len(gens)):
                if b not in comp and any(x and y for x, y in zip(gens[a], gens[b])):
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        out.append({gens[c] for c in comp})
    return sorted(out, key=lambda c: min(c))


def test_disjoint_components_seven_variables():
    I = ideal(7, (1, 1, 0, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0, 0), (0, 0, 0, 2, 0, 0, 0),
              (0, 0, 0, 0, 1, 1, 0), (0, 0, 0, 0, 0, 1, 1))
    got = [set(b.gens) for _, b in disjoint_components(I)]
    assert sorted(got, key=lambda c: min(c)) == _bfs_blocks(I)
    assert len(got) == 3
    assert unused_variables(ideal(4, (1, 1, 0, 0))) == {2, 3}


def test_polarize_examples():
    assert polarize(ideal(1, (2,))) == ideal(2, (1, 1))
    assert polarize(ideal(2, (1, 1), (2, 0))) == ideal(3, (1, 1, 0), (1, 0, 1))
    assert polarize(ideal(1, (3,))) == ideal(3, (1, 1, 1))
    assert polarize(ideal(2, (1, 1))) == ideal(2, (1, 1))


def test_polarize_variable_order():
    # y's for x1 come before y's for x2
    P = polarize(ideal(2, (2, 0), (0, 3)))
    assert P.n == 5
    assert set(P.gens) == {(1, 0, 1, 0, 0), (0, 1, 0, 1, 1)}


# -- properties ------------------------------------------------------------

N = 3
exps = st.tuples(*[st.integers(0, 3)] * N)
ideals = st.lists(exps.filter(any), min_size=1, max_size=5).map(lambda g: MonomialIdeal(N, g))


@settings(max_examples=200, deadline=None)
@given(ideals, exps)
def test_colon_is_unit_iff_member(I, u):
    assert colon(I, u).is_unit == contains(I, u)


@settings(max_examples=200, deadline=None)
@given(ideals, exps, exps)
def test_iterated_colon(I, u, v):
    assert colon(colon(I, u), v) == colon(I, multiply(u, v))


sf = st.tuples(*[st.integers(0, 1)] * 4).filter(any)


@settings(max_examples=200, deadline=None)
@given(st.lists(sf, min_size=1, max_size=5))
def test_alexander_dual_is_involution(gens):
    I = MonomialIdeal(4, gens)
    assert alexander_dual(alexander_dual(I)) == I
    assert alexander_dual(I) == _brute_dual(I)


@settings(max_examples=100, deadline=None)
@given(ideals)
def test_components_regenerate_ideal(I):
    blocks = disjoint_components(I)
    assert sorted(g for _, b in blocks for g in b.gens) == sorted(I.gens)
    for (va, _), (vb, _) in itertools.combinations(blocks, 2):
        assert not va & vb
