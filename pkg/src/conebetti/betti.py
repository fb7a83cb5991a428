"""Graded Betti tables of cyclic modules R/I and the invariants read off them."""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DomainError, InputError


@dataclass(frozen=True, init=False)
class BettiTable:
    """Map ``(i, j) -> beta_{i,j}`` for a module over a ring in ``n`` variables.

    ``i`` is the homological degree and ``j`` the total internal degree.
    Zero entries are never stored.
    """

    n: int
    entries: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, n: int, entries: Mapping[tuple[int, int], int] | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (i, j), mult in items:
            acc[(int(i), int(j))] += int(mult)
        clean = []
        for (i, j), mult in sorted(acc.items()):
            if mult < 0 or i < 0 or j < 0:
                raise InputError(f"invalid Betti entry ({i},{j}) -> {mult}")
            if mult == 0:
                continue
            if i > n:
                raise InputError(f"homological degree {i} exceeds variable count {n}")
            clean.append(((i, j), mult))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def point(cls, n: int = 0) -> BettiTable:
        """Table of the ring itself, ``R/(0)``."""
        return cls(n, {(0, 0): 1})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.as_dict().get(key, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return iter(self.entries)

    def total(self, i: int) -> int:
        """beta_i = sum_j beta_{i,j}."""
        return sum(m for (a, _), m in self.entries if a == i)

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        return [self.total(i) for i in range(proj_dim(self) + 1)]

    def row(self, i: int) -> dict[int, int]:
        return {j: m for (a, j), m in self.entries if a == i}

    def with_n(self, n: int) -> BettiTable:
        return BettiTable(n, self.entries)

    def shift(self, di: int, dj: int) -> BettiTable:
        return BettiTable(self.n, {(i + di, j + dj): m for (i, j), m in self.entries})

    def __add__(self, other: BettiTable) -> BettiTable:
        if other.n != self.n:
            raise InputError("cannot add tables over different rings")
        return BettiTable(self.n, list(self.entries) + list(other.entries))

    def __str__(self) -> str:
        return render_diagram(self)


def _require_nonempty(t: BettiTable) -> None:
    if not t.entries:
        raise DomainError("empty Betti table")


def regularity(t: BettiTable) -> int:
    _require_nonempty(t)
    return max(j - i for (i, j), _ in t.entries)


def proj_dim(t: BettiTable) -> int:
    _require_nonempty(t)
    return max(i for (i, _), _m in t.entries)


def depth(t: BettiTable) -> int:
    """Auslander-Buchsbaum: ``n - pd``."""
    return t.n - proj_dim(t)


def is_level(t: BettiTable) -> bool:
    pd = proj_dim(t)
    return len({j for (i, j), _ in t.entries if i == pd}) == 1


def convolve(t1: BettiTable, t2: BettiTable) -> BettiTable:
    """Betti table of a tensor product over disjoint sets of variables."""
    acc: dict[tuple[int, int], int] = defaultdict(int)
    for (i1, j1), m1 in t1.entries:
        for (i2, j2), m2 in t2.entries:
            acc[(i1 + i2, j1 + j2)] += m1 * m2
    return BettiTable(t1.n + t2.n, acc)


def koszul_pure_powers(exponents: Iterable[int], n: int | None = None) -> BettiTable:
    """Table of ``R/(x_1^{a_1}, ..., x_m^{a_m})``, resolved by the Koszul complex."""
    exps = list(exponents)
    if any(a <= 0 for a in exps):
        raise InputError("pure power exponents must be positive")
    acc: dict[tuple[int, int], int] = defaultdict(int)
    for r in range(len(exps) + 1):
        for sub in combinations(exps, r):
            acc[(r, sum(sub))] += 1
    return BettiTable(len(exps) if n is None else n, acc)


def render_diagram(t: BettiTable) -> str:
    """Macaulay2-style diagram: columns are ``i``, rows are ``j - i``."""
    if not t.entries:
        return "(empty table)"
    pd = proj_dim(t)
    lo = min(j - i for (i, j), _ in t.entries)
    hi = regularity(t)
    d = t.as_dict()
    cols = list(range(pd + 1))
    header = [str(i) for i in cols]
    totals = [str(t.total(i)) for i in cols]
    rows = []
    for r in range(lo, hi + 1):
        rows.append((f"{r}:", [str(d[(i, i + r)]) if (i, i + r) in d else "." for i in cols]))
    widths = [max(len(header[k]), len(totals[k]), *(len(row[1][k]) for row in rows)) for k in cols]
    label_w = max(len("total:"), *(len(label) for label, _ in rows))

    def line(label: str, cells: list[str]) -> str:
        return " ".join([label.rjust(label_w)] + [c.rjust(w) for c, w in zip(cells, widths)])

    out = [line("", header), line("total:", totals)]
    out.extend(line(label, cells) for label, cells in rows)
    return "\n".join(out)


def to_json(t: BettiTable) -> str:
    return json.dumps({"n": t.n, "entries": [[i, j, m] for (i, j), m in t.entries]}, sort_keys=True)


def from_json(text: str) -> BettiTable:
    data = json.loads(text)
    return BettiTable(data["n"], {(i, j): m for i, j, m in data["entries"]})


def to_csv(t: BettiTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "betti"])
    for (i, j), m in t.entries:
        w.writerow([i, j, m])
    return buf.getvalue()
