"""Exhaustive formula-versus-oracle checks over small polygon flowers."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from . import flower as fl
from .graph import ChainSpec, FlowerSpec, build_flower, contract_edge
from .linalg import determinant, generator_order, smith_decomposition
from .oracle import (
    cycle_cut_matrix,
    sandpile_group_cycle_cut,
    sandpile_group_laplacian,
    tau_matrix_tree,
)

log = logging.getLogger(__name__)

__all__ = [
    "enumerate_petals",
    "canonical_key",
    "enumerate_flowers",
    "check_flower",
    "SweepResult",
    "run_sweep",
]


def enumerate_petals(max_polys: int, max_k: int) -> list[ChainSpec]:
    out = []
    for n in range(max_polys + 1):
        out += [ChainSpec(ks) for ks in product(range(2, max_k + 1), repeat=n)]
    return out


def canonical_key(spec: FlowerSpec) -> tuple:
    """Smallest petal sequence among all rotations and reflections of the center."""
    key = spec.key()
    t = len(key)
    images = []
    for seq in (key, key[::-1]):
        images += [seq[i:] + seq[:i] for i in range(t)]
    return min(images)


def enumerate_flowers(max_t: int, max_polys: int, max_k: int, min_t: int = 2) -> list[FlowerSpec]:
    """One flower per dihedral class of petal sequences, sorted by ``(t, key)``."""
    petals = enumerate_petals(max_polys, max_k)
    out = []
    for t in range(max(2, min_t), max_t + 1):
        for combo in product(petals, repeat=t):
            spec = FlowerSpec(t, combo)
            if canonical_key(spec) == spec.key():
                out.append(spec)
    return out


def _edge_orders(g) -> dict:
    mat = cycle_cut_matrix(g)
    diag, _, v = smith_decomposition(mat)
    out = {}
    for j, e in enumerate(g.edges):
        order = 1
        for i, d in enumerate(diag):
            q = d // gcd(d, v[j][i])
            order = order * q // gcd(order, q)
        out[e.label] = order
    return out


def check_flower(spec: FlowerSpec, orders: bool = True) -> list[str]:
    """Run every formula/oracle comparison on one flower; return the mismatches."""
    problems: list[str] = []

    def expect(ok: bool, what: str) -> None:
        if not ok:
            problems.append(what)

    inv = fl.flower_invariants(spec)
    g = build_flower(spec)
    tau = tau_matrix_tree(g)
    expect(inv.tau == tau, f"tau formula {inv.tau} != matrix-tree {tau}")
    expect(abs(determinant(inv.relation_matrix)) == tau, "|det R| != tau")
    expect(all(gcd(a, b) == 1 for a, b in zip(inv.p, inv.q)), "gcd(p_i, q_i) != 1")

    group = fl.group_structure(spec)
    lap = sandpile_group_laplacian(g)
    cc = sandpile_group_cycle_cut(g)
    expect(group == lap, f"formula {group} != Laplacian {lap}")
    expect(lap == cc, f"Laplacian {lap} != cycle/cut {cc}")
    expect(fl.min_generators(spec) == lap.rank, f"mu {fl.min_generators(spec)} != {lap.rank}")
    expect(fl.is_cyclic(spec) == lap.is_cyclic, "cyclicity mismatch")

    if spec.s >= 2 and len({p for p, petal in zip(inv.p, spec.petals) if not petal.trivial}) == 1:
        expect(fl.equal_petal_group(spec) == lap, "equal-petal formula mismatch")

    mu = lap.rank
    for pp in fl.prime_partitions(inv.p):
        expect(fl.group_via_partition(spec, pp) == lap, f"partition {pp} group mismatch")
        expect(fl.mu_via_partition(spec, pp) == mu, f"partition {pp} mu mismatch")
        betas = pp.betas(inv.q, inv.p)
        expect(all(gcd(a, b) == 1 for a, b in zip(pp.alphas, betas)), f"gcd(alpha, beta) != 1 for {pp}")

    classes = fl.classify_edges(spec)
    expect({c.label for c in classes} == set(g.labels()), "edge label sets differ")
    oracle_orders = _edge_orders(g) if orders else {}
    any_gen = False
    for c in classes:
        gen = gcd(tau, tau_matrix_tree(contract_edge(g, c.label))) == 1
        any_gen |= gen
        expect(c.generator == gen, f"edge {c.label}: predicted generator={c.generator}, oracle {gen}")
        if orders:
            expect(c.order == oracle_orders[c.label],
                   f"edge {c.label}: order {c.order} != oracle {oracle_orders[c.label]}")
    expect(fl.exists_generating_edge(spec) == any_gen, "generating-edge existence mismatch")
    for i in range(1, spec.t + 1):
        f_i = fl.petal_generator_edge(spec, i)
        ok = gcd(tau, tau_matrix_tree(contract_edge(g, f_i))) == 1
        expect(fl.petal_generator_test(spec, i) == ok, f"f_{i} generator test mismatch")
    return problems


def _check(args):
    spec, orders = args
    return spec, check_flower(spec, orders)


@dataclass
class SweepResult:
    total: int
    failures: list[tuple[FlowerSpec, list[str]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def minimal_failure(self) -> tuple[FlowerSpec, list[str]] | None:
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: (sum(p.n for p in f[0].petals), f[0].t, f[0].key()))


def run_sweep(specs: list[FlowerSpec], jobs: int = 1, orders: bool = True) -> SweepResult:
    """Check every spec; failures come back sorted by spec key whatever ``jobs`` is."""
    work = [(s, orders) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        results = [_check(w) for w in work]
    failures = [(s, probs) for s, probs in results if probs]
    failures.sort(key=lambda f: (f[0].t, f[0].key()))
    log.info("swept %d flowers, %d failures", len(specs), len(failures))
    return SweepResult(len(specs), failures)
