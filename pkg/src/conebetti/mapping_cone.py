"""Betti tables by certified iterated mapping cones.

Adding a monomial ``u`` to an ideal ``I`` gives the exact sequence

    0 -> R/(I:u)(-deg u) -> R/I -> R/(I + (u)) -> 0,

and the mapping cone of the comparison map is a *minimal* resolution of
R/(I + (u)) whenever u = h1 * x_i with (I:u) = (I:h1).  Then

    beta_{i,j}(R/(I+(u))) = beta_{i,j}(R/I) + beta_{i-1, j-deg u}(R/(I:u)).

The cheap sufficient test for this is variable dominance: some x_i in
supp(u) occurs in u to a higher power than in every generator of I.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .betti import BettiTable, convolve, koszul_pure_powers
from .errors import CertificationError, DomainError, ResourceError
from .monomial import (
    Monomial,
    MonomialIdeal,
    colon,
    contains,
    degree,
    disjoint_components,
    format_monomial,
    support,
)
from .oracle import oracle_betti

log = logging.getLogger(__name__)

DEFAULT_GEN_CAP = 22
DEFAULT_BUDGET = 1000


class WitnessKind(enum.Enum):
    DOMINANCE = "VariableDominance"
    COLON = "ColonEquality"


@dataclass(frozen=True)
class StepWitness:
    """Why adding ``generator`` to the previous ideal is a minimal cone step.

    ``variable`` is a 0-based index into the exponent vector.
    """

    generator: Monomial
    kind: WitnessKind
    variable: int

    def __str__(self) -> str:
        return f"{self.kind.value}(x{self.variable + 1})"


def _dominates(I: MonomialIdeal, u: Monomial, i: int) -> bool:
    return all(u[i] > v[i] for v in I.gens)


def _colon_equal(I: MonomialIdeal, u: Monomial, i: int) -> bool:
    h1 = list(u)
    h1[i] -= 1
    return colon(I, u) == colon(I, tuple(h1))


def witness_holds(I: MonomialIdeal, w: StepWitness) -> bool:
    u, i = w.generator, w.variable
    if not u[i]:
        return False
    if w.kind is WitnessKind.DOMINANCE:
        return _dominates(I, u, i)
    return _colon_equal(I, u, i)


def check_step(I: MonomialIdeal, u: Monomial) -> Optional[StepWitness]:
    """Find a witness that the cone for ``I + (u)`` is minimal, or ``None``.

    Dominance is tried on every variable of ``supp(u)`` before colon
    equality, since it is cheaper and implies it.
    """
    u = tuple(u)
    if contains(I, u):
        raise DomainError(f"{format_monomial(u)} already lies in {I}")
    supp = support(u)
    for i in supp:
        if _dominates(I, u, i):
            return StepWitness(u, WitnessKind.DOMINANCE, i)
    for i in supp:
        if _colon_equal(I, u, i):
            return StepWitness(u, WitnessKind.COLON, i)
    return None


@dataclass(frozen=True)
class CertifiedOrder:
    """An ordering of G(I) with one witness per step (``None`` for the first)."""

    n: int
    order: tuple[Monomial, ...]
    witnesses: tuple[Optional[StepWitness], ...]

    def validate(self) -> bool:
        if len(self.order) != len(self.witnesses) or len(set(self.order)) != len(self.order):
            return False
        for k, (u, w) in enumerate(zip(self.order, self.witnesses)):
            if k == 0:
                continue
            prefix = MonomialIdeal(self.n, self.order[:k])
            if w is None or w.generator != u or contains(prefix, u) or not witness_holds(prefix, w):
                return False
        return True

    def is_decreasing_type(self) -> bool:
        return self.validate() and all(
            w.kind is WitnessKind.DOMINANCE for w in self.witnesses[1:]
        )

    def __str__(self) -> str:
        lines = []
        for k, (u, w) in enumerate(zip(self.order, self.witnesses)):
            lines.append(f"{k + 1}. {format_monomial(u)}  {w if w else '(first)'}")
        return "\n".join(lines)


def find_decreasing_order(I: MonomialIdeal, cap: int = DEFAULT_GEN_CAP) -> Optional[CertifiedOrder]:
    """A decreasing-type ordering of G(I), found by DP over generator subsets.

    A set S is orderable iff some u in S dominates S minus u in one of its
    variables and S minus u is orderable.  Candidates for the last position
    are tried in canonical generator order.
    """
    if I.is_zero or I.is_unit:
        raise DomainError("decreasing-type orders need a proper nonzero ideal")
    gens = I.gens
    m = len(gens)
    if m > cap:
        raise ResourceError(f"{m} generators exceed the order-search cap of {cap}")
    # blockers[k]: for each variable of supp(gens[k]), the generators that are
    # at least as large there; k dominates S via that variable iff none is in S
    blockers = []
    for j, u in enumerate(gens):
        per_var = []
        for i in support(u):
            mask = 0
            for k, v in enumerate(gens):
                if k != j and v[i] >= u[i]:
                    mask |= 1 << k
            per_var.append((i, mask))
        blockers.append(per_var)

    @lru_cache(maxsize=None)
    def last(S: int) -> Optional[tuple[int, int]]:
        # returns (generator index, variable) for the last element of an order of S
        for k in range(m):
            if not S >> k & 1:
                continue
            rest = S & ~(1 << k)
            for i, mask in blockers[k]:
                if not mask & rest:
                    if rest == 0 or last(rest) is not None:
                        return k, i
                    break
        return None

    full = (1 << m) - 1
    if last(full) is None:
        return None
    order: list[Monomial] = []
    wits: list[Optional[StepWitness]] = []
    S = full
    while S:
        k, i = last(S)
        order.append(gens[k])
        wits.append(StepWitness(gens[k], WitnessKind.DOMINANCE, i))
        S &= ~(1 << k)
    order.reverse()
    wits.reverse()
    wits[0] = None
    return CertifiedOrder(I.n, tuple(order), tuple(wits))


# -- the engine ------------------------------------------------------------


class FallbackPolicy(enum.Enum):
    STRICT = "strict"
    ORACLE = "oracle-fallback"


@dataclass(frozen=True)
class CertNode:
    """One node of a resolution certificate.

    ``rule`` is one of ``zero``, ``principal``, ``koszul``, ``split``,
    ``cone`` or ``oracle``.  A ``cone`` node has children ``(rest, colon)``
    and the witness for adding ``witness.generator`` to ``rest``.
    """

    ideal: MonomialIdeal
    rule: str
    witness: Optional[StepWitness] = None
    children: tuple["CertNode", ...] = ()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def render(self, indent: int = 0) -> str:
        head = f"{'  ' * indent}{self.rule} {self.ideal}"
        if self.witness is not None:
            head += f"  add {format_monomial(self.witness.generator)} by {self.witness}"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])


@dataclass(frozen=True)
class EngineResult:
    table: BettiTable
    certificate: CertNode
    oracle_ideals: tuple[MonomialIdeal, ...] = field(default=())

    @property
    def fully_certified(self) -> bool:
        return not self.oracle_ideals

    @property
    def kind(self) -> str:
        return "fully-certified" if self.fully_certified else "oracle-assisted"


def _base_case(I: MonomialIdeal) -> Optional[tuple[BettiTable, CertNode]]:
    n = I.n
    if I.is_zero:
        return BettiTable.point(n), CertNode(I, "zero")
    if len(I.gens) == 1:
        return BettiTable(n, {(0, 0): 1, (1, degree(I.gens[0])): 1}), CertNode(I, "principal")
    if all(len(support(g)) == 1 for g in I.gens):
        return koszul_pure_powers([degree(g) for g in I.gens], n), CertNode(I, "koszul")
    return None


def _cone_sum(n: int, rest: BettiTable, col: BettiTable, d: int) -> BettiTable:
    acc = dict(rest.entries)
    for (i, j), m in col.entries:
        acc[(i + 1, j + d)] = acc.get((i + 1, j + d), 0) + m
    return BettiTable(n, acc)


class Engine:
    """A computation session: configuration plus the memo shared by all runs."""

    def __init__(
        self,
        policy: FallbackPolicy = FallbackPolicy.ORACLE,
        p: int = 2,
        gen_cap: int = DEFAULT_GEN_CAP,
        budget: int = DEFAULT_BUDGET,
    ):
        self.policy = FallbackPolicy(policy)
        self.p = p
        self.gen_cap = gen_cap
        self.budget = budget
        self.backtracks = 0
        self._certified: dict[MonomialIdeal, tuple[BettiTable, CertNode]] = {}
        self._blocked: dict[MonomialIdeal, MonomialIdeal] = {}
        self._solved: dict[MonomialIdeal, EngineResult] = {}

    # Fully certified search; None when no certificate is found.
    def _certify(self, I: MonomialIdeal) -> Optional[tuple[BettiTable, CertNode]]:
        hit = self._certified.get(I)
        if hit is not None:
            return hit
        if I in self._blocked:
            return None
        res = _base_case(I)
        if res is None:
            blocks = disjoint_components(I)
            if len(blocks) > 1:
                res = self._certify_split(I, [b for _, b in blocks])
            else:
                res = self._certify_cone(I)
        if res is not None:
            self._certified[I] = res
        return res

    def _certify_split(self, I, blocks):
        parts = []
        for b in blocks:
            r = self._certify(b)
            if r is None:
                self._blocked[I] = self._blocked[b]
                return None
            parts.append(r)
        table = BettiTable.point(0)
        for t, _ in parts:
            table = convolve(table, t)
        return BettiTable(I.n, table.entries), CertNode(I, "split", children=tuple(c for _, c in parts))

    def _certify_cone(self, I):
        limited = len(I.gens) > self.gen_cap
        blocker = None
        for u in I.gens:
            rest = I.without(u)
            w = check_step(rest, u)
            if w is None:
                continue
            if limited and self.backtracks >= self.budget:
                break
            a = self._certify(rest)
            b = self._certify(colon(rest, u)) if a is not None else None
            if a is None or b is None:
                if blocker is None:
                    blocker = self._blocked.get(rest)
                    if blocker is None:
                        blocker = self._blocked.get(colon(rest, u))
                if limited:
                    self.backtracks += 1
                continue
            table = _cone_sum(I.n, a[0], b[0], degree(u))
            return table, CertNode(I, "cone", w, (a[1], b[1]))
        self._blocked[I] = blocker if blocker is not None else I
        return None

    # Certified where possible, oracle for the rest.
    def _solve(self, I: MonomialIdeal) -> EngineResult:
        hit = self._solved.get(I)
        if hit is not None:
            return hit
        r = self._certify(I)
        if r is not None:
            res = EngineResult(r[0], r[1])
        else:
            blocks = disjoint_components(I)
            if len(blocks) > 1:
                subs = [self._solve(b) for _, b in blocks]
                table = BettiTable.point(0)
                for s in subs:
                    table = convolve(table, s.table)
                res = EngineResult(
                    BettiTable(I.n, table.entries),
                    CertNode(I, "split", children=tuple(s.certificate for s in subs)),
                    tuple(x for s in subs for x in s.oracle_ideals),
                )
            else:
                res = self._solve_cone(I)
        self._solved[I] = res
        return res

    def _solve_cone(self, I: MonomialIdeal) -> EngineResult:
        for u in I.gens:
            rest = I.without(u)
            w = check_step(rest, u)
            if w is None:
                continue
            a = self._solve(rest)
            b = self._solve(colon(rest, u))
            return EngineResult(
                _cone_sum(I.n, a.table, b.table, degree(u)),
                CertNode(I, "cone", w, (a.certificate, b.certificate)),
                a.oracle_ideals + b.oracle_ideals,
            )
        log.debug("no certified step for %s; using the oracle", I)
        return EngineResult(oracle_betti(I, self.p), CertNode(I, "oracle"), (I,))

    def run(self, I: MonomialIdeal) -> EngineResult:
        if I.is_unit:
            raise DomainError("R/I is zero for the unit ideal")
        if self.policy is FallbackPolicy.STRICT:
            r = self._certify(I)
            if r is None:
                raise CertificationError(self._blocked.get(I, I))
            return EngineResult(r[0], r[1])
        return self._solve(I)


def betti_engine(
    I: MonomialIdeal,
    policy: FallbackPolicy | str = FallbackPolicy.ORACLE,
    p: int = 2,
    *,
    engine: Engine | None = None,
) -> EngineResult:
    """Betti table of ``R/I`` by certified iterated mapping cones.

    Pass an :class:`Engine` to share the memo across calls; otherwise a
    fresh session is used.
    """
    if engine is None:
        engine = Engine(FallbackPolicy(policy), p)
    return engine.run(I)
