"""Command-line interface: ``polyflower {chain,flower,sweep,snf}``.

Exit codes: 0 ok, 2 bad input, 3 oracle mismatch, 4 invalid prime partition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from . import flower as fl
from .chain import chain_invariants, edge_coefficients, edge_order
from .errors import InvalidPartition, PolyflowerError
from .graph import ChainSpec, FlowerSpec, build_chain, build_flower
from .linalg import AbelianGroup, parse_matrix, smith_normal_form
from .oracle import (
    edge_generator_oracle,
    element_order_oracle,
    sandpile_group_cycle_cut,
    sandpile_group_laplacian,
    tau_matrix_tree,
)
from .sweep import enumerate_flowers, run_sweep

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_PARTITION = 0, 2, 3, 4

REPORT_KEYS = ("kind", "spec", "tau", "group", "group_factors", "mu", "cyclic",
               "taus", "edges", "generating_edge_exists", "partitions", "oracle")


class InputError(Exception):
    pass


def parse_ks(text: str) -> ChainSpec:
    text = text.strip()
    if not text:
        return ChainSpec()
    try:
        return ChainSpec(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise InputError(f"bad --ks value {text!r}: {exc}") from None


def spec_from_json(data: Any) -> ChainSpec | FlowerSpec:
    """Decode ``{"ks": [...]}`` or ``{"center": t, "petals": [{"ks": [...]}, ...]}``."""
    def chain(obj) -> ChainSpec:
        if not isinstance(obj, dict) or not isinstance(obj.get("ks"), list):
            raise InputError(f"expected {{'ks': [...]}}, got {obj!r}")
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in obj["ks"]):
            raise InputError(f"side counts must be integers: {obj['ks']!r}")
        return ChainSpec(tuple(obj["ks"]))

    try:
        if isinstance(data, dict) and "center" in data:
            petals = data.get("petals")
            if not isinstance(petals, list) or not isinstance(data["center"], int):
                raise InputError("flower spec needs integer 'center' and list 'petals'")
            return FlowerSpec(data["center"], tuple(chain(p) for p in petals))
        return chain(data)
    except PolyflowerError as exc:
        raise InputError(str(exc)) from None


def spec_to_json(spec: ChainSpec | FlowerSpec) -> dict:
    if isinstance(spec, ChainSpec):
        return {"ks": list(spec.ks)}
    return {"center": spec.t, "petals": [{"ks": list(p.ks)} for p in spec.petals]}


def load_spec(path: str) -> ChainSpec | FlowerSpec:
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read spec {path!r}: {exc}") from None
    return spec_from_json(data)


def _report(kind: str, spec, tau: int, group: AbelianGroup) -> dict:
    rep = dict.fromkeys(REPORT_KEYS)
    rep.update(kind=kind, spec=spec_to_json(spec), tau=tau, group=str(group),
               group_factors=list(group.factors), mu=group.rank, cyclic=group.is_cyclic)
    return rep


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _table(rows: list[Sequence[Any]], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def cmd_chain(args) -> tuple[dict, int]:
    spec = load_spec(args.spec) if args.spec else parse_ks(args.ks or "")
    if not isinstance(spec, ChainSpec):
        raise InputError("chain command needs a chain spec")
    inv = chain_invariants(spec)
    group = AbelianGroup.from_diagonal([inv.tau])
    rep = _report("chain", spec, inv.tau, group)
    rep["taus"] = list(inv.taus)
    code = EXIT_OK
    g = build_chain(spec) if (args.edges or args.verify) else None
    if args.edges:
        rows = []
        for lab, c in edge_coefficients(spec).items():
            order = edge_order(spec, lab)
            rows.append({"edge": str(lab), "coefficient": c, "order": order,
                         "generator": order == inv.tau})
        rep["edges"] = rows
    if args.verify:
        checks = {
            "tau_matrix_tree": tau_matrix_tree(g) == inv.tau,
            "laplacian_group": sandpile_group_laplacian(g) == group,
            "cycle_cut_group": sandpile_group_cycle_cut(g) == group,
            "edge_orders": all(element_order_oracle(g, lab) == edge_order(spec, lab)
                               for lab in g.labels()),
        }
        rep["oracle"] = checks
        if not all(checks.values()):
            code = EXIT_MISMATCH
    return rep, code


def _parse_partition(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError:
        raise InputError(f"bad partition {text!r}; use e.g. '1,3;2,4'") from None


def cmd_flower(args) -> tuple[dict, int]:
    spec = load_spec(args.spec)
    if isinstance(spec, ChainSpec):
        raise InputError("flower command needs a flower spec")
    inv = fl.flower_invariants(spec)
    group = fl.group_structure(spec)
    rep = _report("flower", spec, inv.tau, group)
    rep["mu"] = fl.min_generators(spec)
    rep["cyclic"] = fl.is_cyclic(spec)
    code = EXIT_OK
    if args.generators:
        rep["edges"] = [{"edge": str(c.label), "petal": c.petal, "coefficient": c.coefficient,
                         "order": c.order, "generator": c.generator}
                        for c in fl.classify_edges(spec)]
        rep["generating_edge_exists"] = fl.exists_generating_edge(spec)
    if args.partition is not None:
        if args.partition:
            chosen = [_parse_partition(args.partition)]
        else:
            chosen = [pp.parts for pp in fl.prime_partitions(inv.p)]
        rep["partitions"] = [{
            "parts": [list(p) for p in parts],
            "reduced_matrix": fl.reduced_relation_matrix(spec, parts),
            "group": str(fl.group_via_partition(spec, parts)),
            "mu": fl.mu_via_partition(spec, parts),
        } for parts in chosen]
    if args.verify:
        g = build_flower(spec)
        checks = {
            "tau_matrix_tree": tau_matrix_tree(g) == inv.tau,
            "laplacian_group": sandpile_group_laplacian(g) == group,
            "cycle_cut_group": sandpile_group_cycle_cut(g) == group,
            "mu": rep["mu"] == group.rank,
            "generating_edge": fl.exists_generating_edge(spec)
            == any(edge_generator_oracle(g, lab) for lab in g.labels()),
        }
        rep["oracle"] = checks
        if not all(checks.values()):
            code = EXIT_MISMATCH
    return rep, code


def _print_report(rep: dict) -> None:
    if rep["kind"] == "chain":
        print(f"chain {ChainSpec(tuple(rep['spec']['ks']))}")
        print("tau sequence: " + " ".join(map(str, rep["taus"])))
        print(f"tau = {rep['tau']}")
        print(f"group: {rep['group']}")
    else:
        spec = spec_from_json(rep["spec"])
        print(f"flower {spec}")
        print(f"tau = {rep['tau']}")
        print(f"{rep['group']}, mu={rep['mu']}, cyclic={_yes(rep['cyclic'])}")
    if rep["edges"] is not None:
        keys = [k for k in ("edge", "petal", "coefficient", "order", "generator") if k in rep["edges"][0]]
        rows = [[_yes(r[k]) if isinstance(r[k], bool) else r[k] for k in keys] for r in rep["edges"]]
        print(_table(rows, keys))
    if rep["generating_edge_exists"] is not None:
        print(f"generating edge exists: {_yes(rep['generating_edge_exists'])}")
    for part in rep["partitions"] or []:
        blocks = " ∪ ".join("{" + ",".join(map(str, p)) + "}" for p in part["parts"])
        print(f"prime partition {blocks}: {part['group']}, mu={part['mu']}")
        for row in part["reduced_matrix"]:
            print("  " + " ".join(f"{x:>6}" for x in row))
    if rep["oracle"] is not None:
        bad = [k for k, ok in rep["oracle"].items() if not ok]
        print("oracle: OK" if not bad else "oracle: MISMATCH (" + ", ".join(bad) + ")")


def cmd_sweep(args) -> int:
    specs = enumerate_flowers(args.max_t, args.max_polys, args.max_k, args.min_t)
    result = run_sweep(specs, jobs=args.jobs, orders=not args.no_orders)
    if args.json:
        print(json.dumps({"total": result.total, "failures": [
            {"spec": spec_to_json(s), "problems": probs} for s, probs in result.failures]}))
    elif result.ok:
        print(f"all {result.total} instances OK")
    else:
        print(f"{len(result.failures)} of {result.total} instances FAILED")
        spec, probs = result.minimal_failure()
        print(f"minimal failing spec: {json.dumps(spec_to_json(spec))}")
        for p in probs:
            print(f"  {p}")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def cmd_snf(args) -> int:
    try:
        with (sys.stdin if args.matrix == "-" else open(args.matrix, encoding="utf-8")) as fh:
            mat = parse_matrix(fh.read())
    except (OSError, ValueError) as exc:
        raise InputError(f"malformed matrix: {exc}") from None
    diag, rank = smith_normal_form(mat)
    if args.json:
        print(json.dumps({"diagonal": diag, "rank": rank}))
    else:
        print(" ".join(map(str, diag)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyflower",
                                     description="Sandpile groups of polygon chains and flowers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chain", help="tau, group and edge orders of a polygon chain")
    p.add_argument("--ks", help="comma-separated side counts, e.g. 4,4,4,4 ('' = single edge)")
    p.add_argument("--spec", help="JSON chain spec file ('-' for stdin)")
    p.add_argument("--edges", action="store_true", help="edge coefficient / order table")
    p.add_argument("--verify", action="store_true", help="compare against graph oracles")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("flower", help="group, mu and generating edges of a polygon flower")
    p.add_argument("--spec", required=True, help="JSON flower spec file ('-' for stdin)")
    p.add_argument("--mu", action="store_true", help="accepted for symmetry; mu is always printed")
    p.add_argument("--generators", action="store_true", help="per-edge generator classification")
    p.add_argument("--partition", nargs="?", const="", default=None, metavar="PARTS",
                   help="minimum prime partitions, or a given one like '1,3;2,4'")
    p.add_argument("--verify", action="store_true", help="compare against graph oracles")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="exhaustive formula-vs-oracle check")
    p.add_argument("--max-t", type=int, required=True)
    p.add_argument("--min-t", type=int, default=2)
    p.add_argument("--max-polys", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-orders", action="store_true", help="skip per-edge order comparison")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help="'rows cols' then entries ('-' for stdin)")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "snf":
            return cmd_snf(args)
        rep, code = (cmd_chain if args.command == "chain" else cmd_flower)(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidPartition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTITION
    except PolyflowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(rep))
    else:
        _print_report(rep)
    return code


if __name__ == "__main__":
    sys.exit(main())
