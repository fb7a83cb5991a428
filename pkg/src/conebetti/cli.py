"""Command-line front end.

Exit codes: 0 success or agreement, 1 verified disagreement, 2 input error,
3 resource cap exceeded or certification impossible under ``--policy strict``.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import betti as bt
from .errors import CertificationError, ConeBettiError, InputError, ResourceError
from .formats import parse_hypergraph, parse_ideal, parse_tree, render_ideal
from .hypergraph import (
    alpha,
    betti_with_powers,
    edge_ideal,
    has_depth_zero,
    independence_complex,
    last_betti,
    maximal_independent_sets,
    multipartite_check,
)
from .linalg import check_prime
from .mapping_cone import (
    DEFAULT_BUDGET,
    DEFAULT_GEN_CAP,
    Engine,
    FallbackPolicy,
    find_decreasing_order,
)
from .monomial import MonomialIdeal, alexander_dual, format_monomial
from .oracle import multigraded_betti, oracle_betti
from .trees import (
    closed_invariants,
    dual_invariants,
    facet_complex,
    find_tree_order,
    is_simplicial_tree,
    path_ideal,
)

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

FORMATS_HELP = """\
file formats:
  ideal       line 1 'vars n', then one generator per line as x<i>[^<e>] tokens
                vars 4
                x1 x2
                x3^2
  tree        line 1 'tree n root', then 'child parent' pairs
                tree 3 1
                2 1
                3 1
  hypergraph  line 1 'hypergraph n', then one edge per line as vertex indices
                hypergraph 3
                1 2
                2 3
  blank lines and '#' comments are ignored
"""


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    policy: FallbackPolicy = FallbackPolicy.ORACLE
    output: str = "diagram"
    gen_cap: int = DEFAULT_GEN_CAP
    facet_cap: int = 15
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        check_prime(self.p)
        if min(self.gen_cap, self.facet_cap, self.budget, self.threads) < 1:
            raise InputError("caps, budget and thread count must be positive")

    def engine(self) -> Engine:
        return Engine(self.policy, self.p, gen_cap=self.gen_cap, budget=self.budget)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=2, metavar="P", help="prime characteristic (default 2)")
    common.add_argument("--policy", choices=[p.value for p in FallbackPolicy], default="oracle-fallback")
    common.add_argument("--format", dest="output", choices=["diagram", "json", "csv"], default="diagram")
    common.add_argument("--gen-cap", type=int, default=DEFAULT_GEN_CAP, help="generator cap for order search")
    common.add_argument("--facet-cap", type=int, default=15, help="facet cap for the simplicial-tree check")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="backtrack budget beyond the cap")
    common.add_argument("--threads", type=int, default=1, help="worker processes for the oracle")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="conebetti",
        description="Betti tables of monomial ideals by certified iterated mapping cones.",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(
            name, parents=[common], help=help_, epilog=FORMATS_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = add("betti", "Betti table via the mapping-cone engine")
    p.add_argument("file")
    p.add_argument("--certificate", action="store_true", help="also print the certificate tree")

    p = add("order", "decreasing-type order with witnesses")
    p.add_argument("file")

    p = add("oracle", "Betti table via simplicial homology")
    p.add_argument("file")
    p.add_argument("--multigraded", action="store_true")

    p = add("verify", "compare engine and oracle tables")
    p.add_argument("file")

    p = add("dual", "Alexander dual of a squarefree ideal")
    p.add_argument("file")

    p = add("tree", "max-path ideal of a rooted tree")
    p.add_argument("file")
    p.add_argument("action", choices=["invariants", "ideal", "order", "simplicial-check", "dual"])

    p = add("hyper", "hypergraph edge ideals with powers of variables")
    p.add_argument("file")
    p.add_argument("action", choices=["betti", "alpha", "mis", "complex", "multipartite-check"])
    p.add_argument("--squares", default=None, help="'all' or comma-separated vertices")
    p.add_argument("--powers", default=None, help="comma-separated v:a pairs, a >= 2")

    p = add("selfcheck", "engine vs oracle on seeded random ideals")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--vars", type=int, default=5)
    return parser


def _emit_table(t: bt.BettiTable, fmt: str) -> None:
    if fmt == "json":
        print(bt.to_json(t))
    elif fmt == "csv":
        print(bt.to_csv(t), end="")
    else:
        print(bt.render_diagram(t))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e


def _table_diff(a: bt.BettiTable, b: bt.BettiTable) -> list[str]:
    da, db = a.as_dict(), b.as_dict()
    return [
        f"  beta[{i},{j}]: engine {da.get((i, j), 0)}, oracle {db.get((i, j), 0)}"
        for i, j in sorted(set(da) | set(db))
        if da.get((i, j), 0) != db.get((i, j), 0)
    ]


def _power_spec(args, n: int) -> dict[int, int]:
    spec: dict[int, int] = {}
    if args.squares:
        if args.squares == "all":
            spec.update({v: 2 for v in range(1, n + 1)})
        else:
            try:
                spec.update({int(v): 2 for v in args.squares.split(",") if v.strip()})
            except ValueError:
                raise InputError(f"bad --squares value {args.squares!r}") from None
    if args.powers:
        for item in args.powers.split(","):
            try:
                v, a = item.split(":")
                spec[int(v)] = int(a)
            except ValueError:
                raise InputError(f"bad --powers item {item!r}; expected v:a") from None
    return spec


def _random_ideal(rng: random.Random, n: int) -> MonomialIdeal:
    gens = []
    for _ in range(rng.randint(1, 8)):
        g = [0] * n
        for _ in range(rng.randint(1, 4)):
            g[rng.randrange(n)] += 1
        gens.append(tuple(g))
    return MonomialIdeal(n, gens)


def _dispatch(args, cfg: RunConfig) -> int:
    cmd = args.command
    if cmd == "selfcheck":
        rng = random.Random(cfg.seed)
        engine = cfg.engine()
        bad = 0
        for k in range(args.count):
            I = _random_ideal(rng, args.vars)
            if engine.run(I).table != oracle_betti(I, cfg.p):
                bad += 1
                print(f"mismatch on {I}")
        print(f"{args.count - bad}/{args.count} agree (seed {cfg.seed})")
        return EXIT_OK if not bad else EXIT_DISAGREE

    text = _read(args.file)

    if cmd in ("betti", "order", "oracle", "verify", "dual"):
        I = parse_ideal(text)
        if cmd == "betti":
            res = cfg.engine().run(I)
            _emit_table(res.table, cfg.output)
            if args.certificate:
                print(res.certificate.render())
            print(f"certificate: {res.kind}", file=sys.stderr)
            for sub in res.oracle_ideals:
                print(f"  oracle used for {sub}", file=sys.stderr)
        elif cmd == "order":
            order = find_decreasing_order(I, cap=cfg.gen_cap)
            print(order if order is not None else "no decreasing-type order")
        elif cmd == "oracle":
            if args.multigraded:
                mb = multigraded_betti(I, cfg.p, workers=cfg.threads)
                for (i, a), m in mb.entries:
                    print(f"{i} {format_monomial(a)} {m}")
            else:
                _emit_table(oracle_betti(I, cfg.p, workers=cfg.threads), cfg.output)
        elif cmd == "verify":
            res = cfg.engine().run(I)
            ref = oracle_betti(I, cfg.p, workers=cfg.threads)
            if res.table == ref:
                print(f"agree ({res.kind}, field {cfg.p})")
                return EXIT_OK
            print(f"DISAGREE (field {cfg.p})")
            print("\n".join(_table_diff(res.table, ref)))
            return EXIT_DISAGREE
        else:
            print(render_ideal(alexander_dual(I)), end="")
        return EXIT_OK

    if cmd == "tree":
        T = parse_tree(text)
        act = args.action
        if act == "invariants":
            inv = closed_invariants(T)
            for name in ("n", "m", "dim", "total_betti", "pd", "depth", "reg", "is_cm"):
                val = getattr(inv, name)
                print(f"{name}: {' '.join(map(str, val)) if name == 'total_betti' else val}")
        elif act == "ideal":
            print(render_ideal(path_ideal(T)), end="")
        elif act == "order":
            print(find_tree_order(T))
        elif act == "simplicial-check":
            ok = is_simplicial_tree(facet_complex(T), cap=cfg.facet_cap)
            print("simplicial tree" if ok else "not a simplicial tree")
            return EXIT_OK if ok else EXIT_DISAGREE
        else:
            reg, pd = dual_invariants(T, cfg.p)
            print(f"reg(dual): {reg}\npd(dual): {pd}")
        return EXIT_OK

    H = parse_hypergraph(text)
    act = args.action
    if act == "betti":
        spec = _power_spec(args, H.n)
        _emit_table(betti_with_powers(edge_ideal(H), spec, cfg.p), cfg.output)
        if spec and all(a == 2 for a in spec.values()):
            last = last_betti(H, spec)
            print(f"last Betti numbers (j: count): {last or '{}'}", file=sys.stderr)
            print(f"depth zero: {has_depth_zero(H, spec)}", file=sys.stderr)
    elif act == "alpha":
        print(alpha(H))
    elif act == "mis":
        for s in maximal_independent_sets(H):
            print(" ".join(map(str, sorted(s))))
    elif act == "complex":
        print(independence_complex(H))
    else:
        chk = multipartite_check(H)
        print(f"betti test: {chk.by_betti}")
        print(f"structure test: {chk.by_structure}")
        print(f"beta_n: {chk.beta_n}")
        if chk.by_structure:
            print(f"parts: {chk.parts}")
        print("agree" if chk.agree else "DISAGREE")
        return EXIT_OK if chk.agree else EXIT_DISAGREE
    return EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        cfg = RunConfig(
            p=args.field,
            policy=FallbackPolicy(args.policy),
            output=args.output,
            gen_cap=args.gen_cap,
            facet_cap=args.facet_cap,
            budget=args.budget,
            threads=args.threads,
            seed=args.seed,
        )
        return _dispatch(args, cfg)
    except (ResourceError, CertificationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, ConeBettiError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
