import itertools
import random

import pytest

from conebetti.hypergraph import Hypergraph
from conebetti.monomial import MonomialIdeal, variable

SEED = 20241016


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_ideal(rng, n, max_gens=6, max_deg=4, max_exp=None):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        g = [0] * n
        for _ in range(rng.randint(1, max_deg)):
            g[rng.randrange(n)] += 1
        if max_exp is not None:
            g = [min(e, max_exp) for e in g]
        gens.append(tuple(g))
    return MonomialIdeal(n, gens)


def random_squarefree_ideal(rng, n, max_gens=5):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        chosen = set(rng.sample(range(n), rng.randint(1, n)))
        gens.append(tuple(1 if i in chosen else 0 for i in range(n)))
    return MonomialIdeal(n, gens)


def all_graphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Hypergraph(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


def with_powers(J, spec):
    return MonomialIdeal(J.n, J.gens + tuple(variable(v - 1, J.n, a) for v, a in spec.items()))


def monomials_up_to(n, d):
    """Every exponent vector of total degree <= d."""
    return [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]
