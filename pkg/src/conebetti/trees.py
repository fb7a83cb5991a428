"""Rooted trees and their max-path ideals."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping

from .betti import proj_dim, regularity
from .errors import InputError, ResourceError
from .mapping_cone import CertifiedOrder, StepWitness, WitnessKind
from .monomial import MonomialIdeal, alexander_dual, from_support
from .oracle import SimplicialComplex, oracle_betti


@dataclass(frozen=True, init=False)
class RootedTree:
    """Tree on vertices ``1..n`` given by a parent map, directed away from ``root``."""

    n: int
    root: int
    parent: tuple[tuple[int, int], ...]

    def __init__(self, n: int, root: int, parent: Mapping[int, int]):
        if n < 1:
            raise InputError("a rooted tree needs at least one vertex")
        if not 1 <= root <= n:
            raise InputError(f"root {root} is not a vertex of 1..{n}")
        par = {int(c): int(p) for c, p in dict(parent).items()}
        expected = set(range(1, n + 1)) - {root}
        if set(par) != expected:
            missing = sorted(expected - set(par))
            extra = sorted(set(par) - expected)
            raise InputError(f"parent map must cover every non-root vertex (missing {missing}, unexpected {extra})")
        for c, p in par.items():
            if not 1 <= p <= n:
                raise InputError(f"parent {p} of {c} is not a vertex")
        for v in par:
            seen = {v}
            while v != root:
                v = par[v]
                if v in seen:
                    raise InputError(f"parent map has a cycle through vertex {v}")
                seen.add(v)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "parent", tuple(sorted(par.items())))

    @classmethod
    def from_parent_list(cls, parents: list[int | None]) -> RootedTree:
        """``parents[k]`` is the parent of vertex ``k+1``; the root has ``None``."""
        roots = [k + 1 for k, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise InputError("exactly one vertex must have no parent")
        return cls(len(parents), roots[0], {k + 1: p for k, p in enumerate(parents) if p is not None})

    @classmethod
    def path(cls, n: int) -> RootedTree:
        return cls(n, 1, {v: v - 1 for v in range(2, n + 1)})

    @classmethod
    def star(cls, leaves: int) -> RootedTree:
        return cls(leaves + 1, 1, {v: 1 for v in range(2, leaves + 2)})

    def parent_map(self) -> dict[int, int]:
        return dict(self.parent)

    def children(self, v: int) -> list[int]:
        return sorted(c for c, p in self.parent if p == v)

    def leaves(self) -> list[int]:
        parents = {p for _, p in self.parent}
        return [v for v in range(1, self.n + 1) if v not in parents]


def random_tree(n: int, rng: random.Random) -> RootedTree:
    """Uniformly random recursive tree on a random labelling of ``1..n``."""
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    parent = {labels[k]: labels[rng.randrange(k)] for k in range(1, n)}
    return RootedTree(n, labels[0], parent)


def max_paths(T: RootedTree) -> list[list[int]]:
    """Root-to-leaf paths, one per leaf, ordered by leaf."""
    par = T.parent_map()
    out = []
    for leaf in T.leaves():
        path = [leaf]
        while path[-1] != T.root:
            path.append(par[path[-1]])
        out.append(path[::-1])
    return out


def path_ideal(T: RootedTree) -> MonomialIdeal:
    return MonomialIdeal(T.n, [from_support([v - 1 for v in p], T.n) for p in max_paths(T)])


@dataclass(frozen=True)
class TreeInvariants:
    n: int
    m: int
    dim: int
    total_betti: tuple[int, ...]
    pd: int
    depth: int
    reg: int
    is_cm: bool


def closed_invariants(T: RootedTree) -> TreeInvariants:
    """Invariants of R/PI(T) from the vertex count ``n`` and leaf count ``m`` alone."""
    n, m = T.n, len(T.leaves())
    return TreeInvariants(
        n=n,
        m=m,
        dim=n - 1,
        total_betti=tuple(comb(m, i) for i in range(m + 1)),
        pd=m,
        depth=n - m,
        reg=n - m,
        is_cm=m == 1,
    )


def find_tree_order(T: RootedTree) -> CertifiedOrder:
    """Generators by leaf; each path dominates the earlier ones in its leaf variable."""
    paths = max_paths(T)
    order = tuple(from_support([v - 1 for v in p], T.n) for p in paths)
    wits = [None] + [
        StepWitness(u, WitnessKind.DOMINANCE, p[-1] - 1) for u, p in zip(order[1:], paths[1:])
    ]
    return CertifiedOrder(T.n, order, tuple(wits))


def facet_complex(T: RootedTree) -> SimplicialComplex:
    return SimplicialComplex(max_paths(T), vertices=range(1, T.n + 1))


def _is_leaf(k: int, chosen: list[int], masks: list[int]) -> bool:
    if len(chosen) == 1:
        return True
    f = masks[k]
    union = 0
    for o in chosen:
        if o != k:
            union |= f & masks[o]
    # F ∩ G ⊆ union always holds, so "union ⊆ F ∩ G" means equality
    return any(o != k and f & masks[o] == union for o in chosen)


def _facets_connected(masks: list[int]) -> bool:
    if not masks:
        return False
    seen = {0}
    stack = [0]
    while stack:
        k = stack.pop()
        for o in range(len(masks)):
            if o not in seen and masks[k] & masks[o]:
                seen.add(o)
                stack.append(o)
    return len(seen) == len(masks)


def is_simplicial_tree(K: SimplicialComplex, cap: int = 15) -> bool:
    """Connected, and every nonempty subcollection of facets has a leaf.

    Brute force over all ``2^q - 1`` facet subcollections.
    """
    q = len(K.facets)
    if q > cap:
        raise ResourceError(f"{q} facets exceed the simplicial-tree cap of {cap}")
    pos = {v: k for k, v in enumerate(K.vertices)}
    masks = [sum(1 << pos[v] for v in f) for f in K.facets]
    if not _facets_connected(masks):
        return False
    for size in range(1, q + 1):
        for chosen in combinations(range(q), size):
            chosen = list(chosen)
            if not any(_is_leaf(k, chosen, masks) for k in chosen):
                return False
    return True


def dual_invariants(T: RootedTree, p: int = 2) -> tuple[int, int]:
    """``(reg, pd)`` of the ideal PI(T)^∨, read off the oracle table of R/PI(T)^∨.

    Ideal conventions: reg(J) = reg(R/J) + 1 and pd(J) = pd(R/J) - 1.
    """
    t = oracle_betti(alexander_dual(path_ideal(T)), p)
    return regularity(t) + 1, proj_dim(t) - 1
