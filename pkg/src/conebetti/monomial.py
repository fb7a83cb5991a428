"""Monomials and monomial ideals.

A monomial in ``n`` variables is a tuple of ``n`` nonnegative exponents; the
zero tuple is the unit monomial ``1``.  A :class:`MonomialIdeal` always stores
its minimal generating set G(I), sorted lexicographically, so two ideals are
equal exactly when their generator tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InputError

Monomial = tuple[int, ...]


def one(n: int) -> Monomial:
    return (0,) * n


def variable(i: int, n: int, power: int = 1) -> Monomial:
    """The monomial ``x_{i+1}^power`` (``i`` is a 0-based index)."""
    if not 0 <= i < n:
        raise InputError(f"variable index {i} out of range for {n} variables")
    exps = [0] * n
    exps[i] = power
    return tuple(exps)


def from_support(support: Iterable[int], n: int) -> Monomial:
    """Squarefree monomial with the given 0-based support."""
    exps = [0] * n
    for i in support:
        exps[i] = 1
    return tuple(exps)


def degree(u: Monomial) -> int:
    return sum(u)


def support(u: Monomial) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(u) if e)


def divides(u: Monomial, v: Monomial) -> bool:
    return all(a <= b for a, b in zip(u, v))


def lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def lcm_all(monomials: Iterable[Monomial], n: int) -> Monomial:
    out = [0] * n
    for u in monomials:
        for i, e in enumerate(u):
            if e > out[i]:
                out[i] = e
    return tuple(out)


def multiply(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def quotient(u: Monomial, v: Monomial) -> Monomial:
    """``u / v``; requires ``v | u``."""
    if not divides(v, u):
        raise DomainError(f"{format_monomial(v)} does not divide {format_monomial(u)}")
    return tuple(a - b for a, b in zip(u, v))


def colon_monomial(v: Monomial, u: Monomial) -> Monomial:
    """``lcm(v, u) / u``."""
    return tuple(a - b if a > b else 0 for a, b in zip(v, u))


def is_squarefree_monomial(u: Monomial) -> bool:
    return all(e <= 1 for e in u)


def format_monomial(u: Monomial) -> str:
    parts = []
    for i, e in enumerate(u):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _check_lengths(gens: Iterable[Sequence[int]], n: int) -> list[Monomial]:
    out = []
    for g in gens:
        g = tuple(int(e) for e in g)
        if len(g) != n:
            raise InputError(f"monomial {g} has length {len(g)}, expected {n}")
        if any(e < 0 for e in g):
            raise InputError(f"monomial {g} has a negative exponent")
        out.append(g)
    return out


def _antichain(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # Sorting by degree first means a divisor is always seen before its multiples.
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True, init=False)
class MonomialIdeal:
    """Monomial ideal in ``n`` variables, stored by its minimal generators."""

    n: int
    gens: tuple[Monomial, ...]

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InputError("variable count must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gens", _antichain(_check_lengths(gens, n)))

    @classmethod
    def _trusted(cls, n: int, gens: tuple[Monomial, ...]) -> MonomialIdeal:
        # gens must already be a lex-sorted antichain
        obj = cls.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "gens", gens)
        return obj

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls._trusted(n, (one(n),))

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls._trusted(n, ())

    @classmethod
    def variables(cls, indices: Iterable[int], n: int) -> MonomialIdeal:
        return cls(n, [variable(i, n) for i in indices])

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_squarefree(self) -> bool:
        return all(is_squarefree_monomial(g) for g in self.gens)

    def lcm(self) -> Monomial:
        return lcm_all(self.gens, self.n)

    def support(self) -> tuple[int, ...]:
        """0-based indices of variables used by some generator."""
        return support(self.lcm())

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, u: Monomial) -> bool:
        return contains(self, u)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.n != self.n:
            raise InputError("ideals live in different polynomial rings")
        return MonomialIdeal(self.n, self.gens + other.gens)

    def with_generator(self, u: Monomial) -> MonomialIdeal:
        return MonomialIdeal(self.n, self.gens + (tuple(u),))

    def without(self, u: Monomial) -> MonomialIdeal:
        """Drop a minimal generator; the rest is still an antichain."""
        return MonomialIdeal._trusted(self.n, tuple(g for g in self.gens if g != u))

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")"


def minimalize(gens: Iterable[Sequence[int]], n: int) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``gens``."""
    return MonomialIdeal(n, gens)


def contains(I: MonomialIdeal, u: Monomial) -> bool:
    return any(divides(g, u) for g in I.gens)


def colon(I: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    """The colon ideal ``(I : u)``; the unit ideal iff ``u`` lies in ``I``."""
    if len(u) != I.n:
        raise InputError(f"monomial length {len(u)} does not match {I.n} variables")
    return MonomialIdeal(I.n, [colon_monomial(g, u) for g in I.gens])


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    """Intersection of the primes generated by the supports of the generators.

    The generators of the result correspond to the minimal vertex covers
    (transversals) of the generator supports.
    """
    if not I.is_squarefree:
        raise DomainError("Alexander duality requires a squarefree ideal")
    if I.is_zero or I.is_unit:
        raise DomainError("Alexander duality requires a proper nonzero ideal")
    n = I.n
    current = MonomialIdeal.unit(n)
    for g in I.gens:
        # J ∩ (x_i : i in supp g) is generated by lcm(h, x_i)
        current = MonomialIdeal(
            n, [lcm(h, variable(i, n)) for h in current.gens for i in support(g)]
        )
    return current


def disjoint_components(I: MonomialIdeal) -> list[tuple[frozenset[int], MonomialIdeal]]:
    """Split the generators into blocks connected through shared variables.

    Each block is returned with its (0-based) variable set, as an ideal in the
    same ambient ring.  Blocks are ordered by their smallest variable.  Unused
    variables are reported by :func:`unused_variables`.
    """
    n = I.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in I.gens:
        s = support(g)
        for i in s[1:]:
            ri, r0 = find(i), find(s[0])
            if ri != r0:
                parent[max(ri, r0)] = min(ri, r0)

    blocks: dict[int, list[Monomial]] = {}
    for g in I.gens:
        s = support(g)
        if not s:
            raise DomainError("disjoint_components requires a proper ideal")
        blocks.setdefault(find(s[0]), []).append(g)
    out = []
    for _, gens in sorted(blocks.items()):
        vars_ = frozenset(i for g in gens for i in support(g))
        out.append((vars_, MonomialIdeal._trusted(n, tuple(gens))))
    out.sort(key=lambda b: min(b[0]))
    return out


def unused_variables(I: MonomialIdeal) -> frozenset[int]:
    used = set(I.support())
    return frozenset(i for i in range(I.n) if i not in used)


def polarize(I: MonomialIdeal) -> MonomialIdeal:
    """Standard polarization.

    ``x_i^k`` becomes ``x_i * y_{i,1} * ... * y_{i,k-1}``.  The new variables
    for ``x_i`` are appended after the original ``n``, grouped by ``i`` in
    increasing order.
    """
    n = I.n
    top = I.lcm() if not I.is_zero else one(n)
    offsets = []
    nxt = n
    for e in top:
        offsets.append(nxt)
        nxt += max(e - 1, 0)
    total = nxt
    out = []
    for g in I.gens:
        exps = [0] * total
        for i, e in enumerate(g):
            if e:
                exps[i] = 1
                for k in range(e - 1):
                    exps[offsets[i] + k] = 1
        out.append(tuple(exps))
    return MonomialIdeal(total, out)
