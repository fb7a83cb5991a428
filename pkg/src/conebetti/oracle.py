"""Ground-truth Betti numbers from simplicial homology.

For a monomial ideal I and a multidegree a, the upper Koszul simplicial
complex is

    K^a(I) = { tau subset of supp(a) : x^(a - tau) in I },

and beta_{i,a}(R/I) = dim H~_{i-2}(K^a(I); GF(p)) for i >= 1.  Only
multidegrees in the lcm-lattice of G(I) can contribute: at any other a the
complex is a cone.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .betti import BettiTable
from .errors import DomainError, InputError
from .linalg import check_prime, rank_bitset, rank_mod_p
from .monomial import Monomial, MonomialIdeal, divides, lcm, lcm_all


@dataclass(frozen=True, init=False)
class SimplicialComplex:
    """A simplicial complex given by its facets.

    ``facets == ()`` is the void complex; ``facets == (frozenset(),)`` is the
    irrelevant complex ``{∅}``.
    """

    vertices: tuple[int, ...]
    facets: tuple[frozenset[int], ...]

    def __init__(self, facets: Iterable[Iterable[int]], vertices: Iterable[int] | None = None):
        fs = {frozenset(f) for f in facets}
        maximal = [f for f in fs if not any(f < g for g in fs)]
        maximal.sort(key=lambda f: (len(f), sorted(f)))
        verts = set().union(*maximal) if maximal else set()
        if vertices is not None:
            vertices = set(vertices)
            if not verts <= vertices:
                raise InputError("facets use vertices outside the vertex set")
            verts = vertices
        object.__setattr__(self, "vertices", tuple(sorted(verts)))
        object.__setattr__(self, "facets", tuple(maximal))

    @classmethod
    def void(cls) -> SimplicialComplex:
        return cls(())

    @classmethod
    def irrelevant(cls) -> SimplicialComplex:
        return cls([()])

    @property
    def is_void(self) -> bool:
        return not self.facets

    def dim(self) -> int:
        if self.is_void:
            raise DomainError("the void complex has no dimension")
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> set[frozenset[int]]:
        out: set[frozenset[int]] = set()
        for f in self.facets:
            items = sorted(f)
            for mask in range(1 << len(items)):
                out.add(frozenset(v for k, v in enumerate(items) if mask >> k & 1))
        return out

    def __str__(self) -> str:
        if self.is_void:
            return "<void>"
        return "<" + ", ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in self.facets) + ">"


# -- homology --------------------------------------------------------------


def _faces_by_size(faces: Iterable[int]) -> list[list[int]]:
    by: dict[int, list[int]] = defaultdict(list)
    for f in faces:
        by[f.bit_count()].append(f)
    if not by:
        return []
    top = max(by)
    return [sorted(by.get(s, [])) for s in range(top + 1)]


def _boundary_rank(upper: list[int], lower: list[int], p: int) -> int:
    if not upper or not lower:
        return 0
    index = {f: k for k, f in enumerate(lower)}
    if p == 2:
        rows = []
        for f in upper:
            r = 0
            g = f
            while g:
                low = g & -g
                r |= 1 << index[f ^ low]
                g ^= low
            rows.append(r)
        return rank_bitset(rows)
    rows = []
    for f in upper:
        row = {}
        g = f
        pos = 0
        while g:
            low = g & -g
            row[index[f ^ low]] = 1 if pos % 2 == 0 else p - 1
            g ^= low
            pos += 1
        rows.append(row)
    return rank_mod_p(rows, len(lower), p)


def reduced_homology_from_faces(faces: Iterable[int], p: int = 2) -> list[int]:
    """Reduced Betti numbers ``[H~_{-1}, H~_0, ...]`` of a complex given as face bitmasks.

    ``faces`` must be closed under taking subsets.  The void complex gives ``[0]``.
    """
    by = _faces_by_size(faces)
    if not by:
        return [0]
    ranks = [0] * (len(by) + 1)
    for s in range(1, len(by)):
        ranks[s] = _boundary_rank(by[s], by[s - 1], p)
    return [len(by[s]) - ranks[s] - ranks[s + 1] for s in range(len(by))]


def homology_ranks(K: SimplicialComplex, p: int = 2) -> list[int]:
    """Reduced homology dimensions ``[H~_{-1}, H~_0, H~_1, ...]`` of ``K`` over GF(p)."""
    check_prime(p)
    pos = {v: k for k, v in enumerate(K.vertices)}
    masks = {sum(1 << pos[v] for v in f) for f in K.faces()}
    return reduced_homology_from_faces(masks, p)


# -- upper Koszul complexes ----------------------------------------------


def _koszul_faces(gens: Iterable[Monomial], a: Monomial) -> set[int]:
    """Face bitmasks (bit i = variable i) of the upper Koszul complex at ``a``."""
    tops = set()
    for g in gens:
        if divides(g, a):
            tops.add(sum(1 << i for i, (gi, ai) in enumerate(zip(g, a)) if gi < ai))
    faces: set[int] = set()
    for top in tops:
        sub = top
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & top
    return faces


def upper_koszul(I: MonomialIdeal, a: Iterable[int]) -> SimplicialComplex:
    """Upper Koszul complex of ``I`` at ``a`` on the vertices ``supp(a)`` (1-based labels)."""
    a = tuple(a)
    if len(a) != I.n:
        raise InputError(f"multidegree length {len(a)} does not match {I.n} variables")
    faces = _koszul_faces(I.gens, a)
    facets = [[i + 1 for i in range(I.n) if f >> i & 1] for f in faces]
    return SimplicialComplex(facets, vertices=[i + 1 for i, e in enumerate(a) if e])


# -- multigraded Betti numbers ---------------------------------------------


@dataclass(frozen=True)
class MultigradedBetti:
    """Entries ``(i, a) -> beta_{i,a}(R/I)`` for a fine-graded module."""

    n: int
    entries: tuple[tuple[tuple[int, Monomial], int], ...]

    def as_dict(self) -> dict[tuple[int, Monomial], int]:
        return dict(self.entries)

    def __getitem__(self, key: tuple[int, Monomial]) -> int:
        i, a = key
        return self.as_dict().get((i, tuple(a)), 0)

    def coarsen(self) -> BettiTable:
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (i, a), m in self.entries:
            acc[(i, sum(a))] += m
        return BettiTable(self.n, acc)


def lcm_lattice(I: MonomialIdeal) -> list[Monomial]:
    """All lcms of subsets of G(I), including the empty lcm ``1``."""
    seen = {(0,) * I.n}
    for g in I.gens:
        seen |= {lcm(x, g) for x in seen}
    return sorted(seen, key=lambda m: (sum(m), m))


def _all_divisors(top: Monomial) -> list[Monomial]:
    return [tuple(a) for a in product(*(range(e + 1) for e in top))]


def _betti_at(args: tuple[tuple[Monomial, ...], Monomial, int]) -> list[tuple[int, int]]:
    gens, a, p = args
    if not any(a):
        return [(0, 1)]
    ranks = reduced_homology_from_faces(_koszul_faces(gens, a), p)
    return [(k + 1, r) for k, r in enumerate(ranks) if r]


def multigraded_betti(
    I: MonomialIdeal, p: int = 2, *, multidegrees: str = "lattice", workers: int = 1
) -> MultigradedBetti:
    """Fine-graded Betti numbers of ``R/I`` over GF(p).

    ``multidegrees="lattice"`` visits only the lcm-lattice of G(I);
    ``"divisors"`` visits every divisor of lcm(G(I)), which is slower but
    makes no use of the cone argument.
    """
    check_prime(p)
    if I.is_unit:
        raise DomainError("R/I is zero for the unit ideal")
    if multidegrees == "lattice":
        points = lcm_lattice(I)
    elif multidegrees == "divisors":
        points = _all_divisors(lcm_all(I.gens, I.n))
    else:
        raise InputError(f"unknown multidegree strategy {multidegrees!r}")
    tasks = [(I.gens, a, p) for a in points]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_betti_at, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_betti_at(t) for t in tasks]
    entries = {}
    for a, res in zip(points, results):
        for i, m in res:
            entries[(i, a)] = m
    return MultigradedBetti(I.n, tuple(sorted(entries.items())))


def oracle_betti(I: MonomialIdeal, p: int = 2, *, workers: int = 1) -> BettiTable:
    """Coarse (total degree) Betti table of ``R/I`` over GF(p)."""
    return multigraded_betti(I, p, workers=workers).coarsen()
