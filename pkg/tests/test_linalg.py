import itertools
import random

import pytest

from conebetti.errors import InputError
from conebetti.linalg import is_prime, rank_mod_p


def brute_rank(rows, ncols, p):
    """log_p of the size of the row space, by enumerating all combinations."""
    vecs = [tuple(r.get(c, 0) % p for c in range(ncols)) for r in rows]
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(vecs)):
        span.add(tuple(sum(a * v[c] for a, v in zip(coeffs, vecs)) % p for c in range(ncols)))
    size, r = len(span), 0
    while size > 1:
        size //= p
        r += 1
    return r


def random_matrix(rng, nrows, ncols, p, density=0.5):
    return [{c: rng.randrange(1, p) for c in range(ncols) if rng.random() < density} for _ in range(nrows)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_all_methods_match_brute_force(p):
    rng = random.Random(p)
    methods = ["dense", "sparse"] + (["bitset"] if p == 2 else [])
    for _ in range(40):
        ncols = rng.randint(1, 5)
        rows = random_matrix(rng, rng.randint(1, 5), ncols, p)
        expected = brute_rank(rows, ncols, p)
        for m in methods:
            assert rank_mod_p(rows, ncols, p, method=m) == expected, (m, rows)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_methods_agree_on_larger_sparse(p):
    rng = random.Random(100 + p)
    for _ in range(10):
        rows = random_matrix(rng, 60, 50, p, density=0.08)
        ranks = {m: rank_mod_p(rows, 50, p, method=m) for m in ["dense", "sparse"]}
        if p == 2:
            ranks["bitset"] = rank_mod_p(rows, 50, p, method="bitset")
        assert len(set(ranks.values())) == 1, ranks


def test_characteristic_matters():
    rows = [{0: 1, 1: 1}, {0: 1, 1: 2}]
    assert rank_mod_p(rows, 2, 3) == 2
    rows = [{0: 2}, {1: 2}]
    assert rank_mod_p(rows, 2, 2) == 0


def test_prime_validation():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(InputError):
        rank_mod_p([{0: 1}], 1, 4)
    with pytest.raises(InputError):
        rank_mod_p([{0: 1}], 1, 3, method="bitset")
