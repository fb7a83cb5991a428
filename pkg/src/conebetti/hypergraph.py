"""Simple hypergraphs, their edge ideals, and Betti numbers of J + (powers)."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, NamedTuple

from .betti import BettiTable, convolve, is_level, koszul_pure_powers, proj_dim, regularity
from .errors import ConeBettiError, DomainError, InputError
from .mapping_cone import Engine
from .monomial import MonomialIdeal, colon, from_support, support, variable
from .oracle import SimplicialComplex, oracle_betti


@dataclass(frozen=True, init=False)
class Hypergraph:
    """Simple hypergraph: edges of size >= 2, none containing another.

    Vertices are a subset of ``1..n`` (all of them by default); ``n`` fixes
    the polynomial ring of the edge ideal.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    vertices: tuple[int, ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = (), vertices: Iterable[int] | None = None):
        verts = tuple(range(1, n + 1)) if vertices is None else tuple(sorted(set(vertices)))
        if any(not 1 <= v <= n for v in verts):
            raise InputError(f"vertices must lie in 1..{n}")
        vset = set(verts)
        es = []
        for e in edges:
            e = tuple(sorted(set(e)))
            if len(e) < 2:
                raise InputError(f"edge {e} has fewer than two vertices")
            if not set(e) <= vset:
                raise InputError(f"edge {e} uses a vertex outside the vertex set")
            es.append(e)
        es = sorted(set(es))
        for a in es:
            for b in es:
                if a != b and set(a) < set(b):
                    raise InputError(f"edge {a} is contained in edge {b}; hypergraph is not simple")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "vertices", verts)

    @property
    def is_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    def _masks(self) -> list[int]:
        return [sum(1 << (v - 1) for v in e) for e in self.edges]


def complete_multipartite(parts: list[int]) -> Hypergraph:
    """K_{n_1,...,n_t} with parts on consecutive vertex blocks."""
    blocks, start = [], 1
    for size in parts:
        blocks.append(range(start, start + size))
        start += size
    edges = [(a, b) for x, y in combinations(blocks, 2) for a in x for b in y]
    return Hypergraph(start - 1, edges)


def random_hypergraph(n: int, rng: random.Random, max_edges: int | None = None) -> Hypergraph:
    """Random simple hypergraph: random subsets of size >= 2, reduced to an antichain."""
    if n < 2:
        return Hypergraph(n)
    k = rng.randint(0, max_edges if max_edges is not None else n + 2)
    cands = []
    for _ in range(k):
        size = rng.randint(2, min(n, 4))
        cands.append(frozenset(rng.sample(range(1, n + 1), size)))
    edges = {e for e in cands if not any(o < e for o in cands)}
    return Hypergraph(n, edges)


def hypergraph_of(J: MonomialIdeal) -> Hypergraph:
    """The hypergraph whose edge ideal is ``J`` (squarefree, generators of degree >= 2)."""
    if not J.is_squarefree or any(sum(g) < 2 for g in J.gens):
        raise DomainError(f"{J} is not the edge ideal of a simple hypergraph")
    return Hypergraph(J.n, [[i + 1 for i in support(g)] for g in J.gens])


def edge_ideal(H: Hypergraph) -> MonomialIdeal:
    return MonomialIdeal(H.n, [from_support([v - 1 for v in e], H.n) for e in H.edges])


# -- independence ----------------------------------------------------------


def _is_independent(mask: int, edge_masks: list[int]) -> bool:
    return not any(e & mask == e for e in edge_masks)


def _to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _vertex_mask(H: Hypergraph) -> int:
    return sum(1 << (v - 1) for v in H.vertices)


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def independent_sets(H: Hypergraph) -> list[frozenset[int]]:
    em = H._masks()
    out = [_to_set(s) for s in _subsets(_vertex_mask(H)) if _is_independent(s, em)]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def maximal_independent_sets(H: Hypergraph) -> list[frozenset[int]]:
    em = H._masks()
    full = _vertex_mask(H)
    indep = {s for s in _subsets(full) if _is_independent(s, em)}
    bits = [1 << (v - 1) for v in H.vertices]
    out = [_to_set(s) for s in indep if all(s & b or (s | b) not in indep for b in bits)]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def alpha(H: Hypergraph) -> int:
    """Independence number."""
    return max(len(s) for s in maximal_independent_sets(H))


def independence_complex(H: Hypergraph) -> SimplicialComplex:
    return SimplicialComplex(maximal_independent_sets(H), vertices=H.vertices)


def is_independent(H: Hypergraph, sigma: Iterable[int]) -> bool:
    mask = sum(1 << (v - 1) for v in sigma)
    return _is_independent(mask, H._masks())


def neighborhood(H: Hypergraph, sigma: Iterable[int]) -> frozenset[int]:
    """Vertices ``i`` outside ``sigma`` for which ``sigma + {i}`` contains an edge."""
    sigma = frozenset(sigma)
    if not is_independent(H, sigma):
        raise DomainError(f"{sorted(sigma)} is not independent")
    em = H._masks()
    base = sum(1 << (v - 1) for v in sigma)
    return frozenset(
        i for i in H.vertices if i not in sigma and not _is_independent(base | 1 << (i - 1), em)
    )


def restricted_hypergraph(H: Hypergraph, sigma: Iterable[int]) -> Hypergraph:
    """Hypergraph on ``V minus (sigma ∪ N(sigma))`` with edges ``E - sigma`` lying inside it."""
    sigma = frozenset(sigma)
    nbhd = neighborhood(H, sigma)
    verts = [v for v in H.vertices if v not in sigma and v not in nbhd]
    vset = set(verts)
    raw = {frozenset(e) - sigma for e in H.edges}
    raw = {e for e in raw if e <= vset}
    if any(len(e) < 2 for e in raw):
        raise ConeBettiError(f"restriction to {sorted(sigma)} produced an edge of size < 2")
    edges = [e for e in raw if not any(o < e for o in raw)]
    return Hypergraph(H.n, edges, vertices=verts)


# -- Betti numbers with powers of variables --------------------------------


def _check_power_spec(spec: Mapping[int, int], n: int) -> dict[int, int]:
    out = {}
    for v, a in dict(spec).items():
        if not 1 <= v <= n:
            raise InputError(f"power on vertex {v} outside 1..{n}")
        if a < 2:
            raise InputError(f"exponent {a} on x{v} must be at least 2")
        out[int(v)] = int(a)
    return out


def _sub_table(I: MonomialIdeal, p: int, engine: Engine | None) -> BettiTable:
    if engine is not None:
        return engine.run(I).table
    return oracle_betti(I, p)


def betti_with_powers(
    J: MonomialIdeal,
    spec: Mapping[int, int],
    p: int = 2,
    *,
    use_engine: bool = False,
) -> BettiTable:
    """Betti table of ``R/(J + (x_v^a : (v, a) in spec))`` by summing over subsets of ``spec``.

    Each subset ``sigma`` contributes the table of R/(J : prod x_v^a),
    shifted by ``|sigma|`` homologically and by the sum of its exponents in
    degree.  When ``J`` is a hypergraph edge ideal the colon is split as the
    neighbourhood variables tensored with the restricted hypergraph's edge
    ideal; otherwise the colon is computed and resolved directly.
    """
    n = J.n
    spec = _check_power_spec(spec, n)
    powers = [variable(v - 1, n, a) for v, a in sorted(spec.items())]
    I = MonomialIdeal(n, J.gens + tuple(powers))
    if set(I.gens) != set(J.gens) | set(powers):
        raise DomainError("G(J + powers) must be G(J) together with the powers")

    engine = Engine(p=p) if use_engine else None
    try:
        H = hypergraph_of(J)
    except DomainError:
        H = None

    cache: dict[MonomialIdeal, BettiTable] = {}

    def table_of(ideal: MonomialIdeal) -> BettiTable:
        if ideal not in cache:
            cache[ideal] = _sub_table(ideal, p, engine)
        return cache[ideal]

    acc: dict[tuple[int, int], int] = defaultdict(int)
    verts = sorted(spec)
    for r in range(len(verts) + 1):
        for sigma in combinations(verts, r):
            shift = sum(spec[v] for v in sigma)
            if H is not None:
                if not is_independent(H, sigma):
                    continue
                nbhd = neighborhood(H, sigma)
                rest = edge_ideal(restricted_hypergraph(H, sigma))
                t = convolve(koszul_pure_powers([1] * len(nbhd)), table_of(rest))
            else:
                u = [0] * n
                for v in sigma:
                    u[v - 1] = spec[v]
                c = colon(J, tuple(u))
                if c.is_unit:
                    continue
                t = table_of(c)
            for (i, j), m in t.entries:
                acc[(i + r, j + shift)] += m
    return BettiTable(n, acc)


def squares_spec(vertices: Iterable[int]) -> dict[int, int]:
    return {v: 2 for v in vertices}


def last_betti(H: Hypergraph, squared: Iterable[int]) -> dict[int, int]:
    """``j -> beta_{n,j}`` for ``J_H + (x_v^2 : v in squared)``, from maximal independent sets."""
    sq = set(squared)
    counts: dict[int, int] = defaultdict(int)
    for s in maximal_independent_sets(H):
        if s <= sq:
            counts[H.n + len(s)] += 1
    return dict(sorted(counts.items()))


def has_depth_zero(H: Hypergraph, squared: Iterable[int]) -> bool:
    """depth R/I = 0 iff the squared vertices contain a maximal independent set."""
    sq = set(squared)
    return any(s <= sq for s in maximal_independent_sets(H))


class AllSquares(NamedTuple):
    table: BettiTable
    reg: int
    level: bool
    beta_n: int


def plus_all_squares_invariants(H: Hypergraph, p: int = 2) -> AllSquares:
    """Table and invariants of ``R/(J_H + (x_1^2, ..., x_n^2))``, cross-checked against ``H``."""
    if H.vertices != tuple(range(1, H.n + 1)):
        raise DomainError("all-squares invariants need a hypergraph on the full vertex set")
    t = betti_with_powers(edge_ideal(H), squares_spec(H.vertices), p)
    reg = regularity(t)
    level = is_level(t)
    beta_n = t.total(H.n) if proj_dim(t) == H.n else 0
    mis = maximal_independent_sets(H)
    if reg != alpha(H):
        raise ConeBettiError(f"reg {reg} differs from the independence number {alpha(H)}")
    if beta_n != len(mis):
        raise ConeBettiError(f"beta_n = {beta_n} but there are {len(mis)} maximal independent sets")
    if level != independence_complex(H).is_pure():
        raise ConeBettiError("levelness disagrees with purity of the independence complex")
    return AllSquares(t, reg, level, beta_n)


def _linear_strand_multipartite(parts: list[int]) -> dict[int, int]:
    """``i -> beta_{i,i+1}(R/J_G)`` for G complete multipartite.

    For each choice of ``l >= 2`` parts, counts vertex sets meeting exactly
    those parts, weighted by ``l - 1``.
    """
    out: dict[int, int] = defaultdict(int)
    t = len(parts)
    for l in range(2, t + 1):
        for chosen in combinations(parts, l):
            # coefficients of prod ((1+z)^{n_j} - 1)
            poly = [1]
            for nj in chosen:
                factor = [0] + [comb(nj, a) for a in range(1, nj + 1)]
                new = [0] * (len(poly) + len(factor) - 1)
                for x, cx in enumerate(poly):
                    for y, cy in enumerate(factor):
                        new[x + y] += cx * cy
                poly = new
            for size, c in enumerate(poly):
                if c and size >= 2:
                    out[size - 1] += (l - 1) * c
    return dict(out)


def complete_multipartite_betti(parts: list[int], p: int = 2) -> BettiTable:
    """Closed-form table of ``R/(J_G + all squares)`` for ``G = K_{n_1,...,n_t}``.

    The answer does not depend on the field; ``p`` is accepted for interface
    uniformity and validated only.
    """
    from .linalg import check_prime

    check_prime(p)
    if len(parts) < 2 or any(k < 1 for k in parts):
        raise InputError("need at least two parts, each nonempty")
    n = sum(parts)
    acc: dict[tuple[int, int], int] = defaultdict(int)
    acc[(0, 0)] = 1
    for i, m in _linear_strand_multipartite(parts).items():
        acc[(i, i + 1)] += m
    for i in range(1, n + 1):
        for j in range(i + 1, 2 * i + 1):
            acc[(i, j)] += sum(comb(nl, j - i) * comb(n - nl, 2 * i - j) for nl in parts)
    return BettiTable(n, acc)


class MultipartiteCheck(NamedTuple):
    by_betti: bool
    by_structure: bool
    beta_n: int
    parts: int

    @property
    def agree(self) -> bool:
        if self.by_betti != self.by_structure:
            return False
        return not self.by_structure or self.beta_n == self.parts


def multipartite_check(G: Hypergraph) -> MultipartiteCheck:
    """Both sides of the last-Betti characterization of complete multipartite graphs."""
    if not G.is_graph:
        raise DomainError("the characterization is stated for graphs")
    if G.vertices != tuple(range(1, G.n + 1)):
        raise DomainError("graph must use the full vertex set")
    n = G.n
    last = last_betti(G, G.vertices)
    weighted = sum((j - n) * c for j, c in last.items())
    beta_n = sum(last.values())

    # complement is a disjoint union of cliques iff non-adjacency is transitive
    adj = {v: set() for v in G.vertices}
    for a, b in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    classes: list[set[int]] = []
    for v in G.vertices:
        for c in classes:
            if v not in adj[next(iter(c))]:
                c.add(v)
                break
        else:
            classes.append({v})
    structural = all(
        (b in adj[a]) == (ca is not cb)
        for ca in classes
        for cb in classes
        for a in ca
        for b in cb
        if a != b
    )
    return MultipartiteCheck(weighted == n, structural, beta_n, len(classes))


def multipartite_characterization(G: Hypergraph) -> bool:
    """True when the Betti-number test and the structural test agree on ``G``."""
    return multipartite_check(G).agree
