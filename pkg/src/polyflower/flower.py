"""Sandpile groups of polygon flowers from petal spanning-tree counts.

With ``p_i = tau(P_i)`` and ``q_i = tau(P_i / e_i)`` the group of
``F(C_t; P_1, ..., P_t)`` has the ``t x t`` relation matrix ``R`` with rows
``p_i f_i - p_{i+1} f_{i+1}`` and a last row ``sum q_i f_i``, where ``f_i`` is
the far free edge of petal ``i``.  Everything in this module is derived from
``p`` and ``q`` alone; no graph is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .chain import chain_invariants, chain_tau, chain_tau_contract_end, edge_coefficients
from .errors import BadIndex, BadParameters, InvalidPartition, UnequalPetals, UnknownEdge
from .graph import ChainSpec, EdgeLabel, FlowerSpec, boundary, center
from .linalg import AbelianGroup, IntMatrix, generator_order

__all__ = [
    "FlowerInvariants",
    "PrimePartition",
    "EdgeClass",
    "flower_invariants",
    "coprime_base",
    "product_gcds",
    "group_from_products",
    "group_structure",
    "m_value",
    "min_generators",
    "is_cyclic",
    "equal_petal_group",
    "petal_generator_test",
    "exists_generating_edge",
    "petal_generator_edge",
    "classify_edge",
    "classify_edges",
    "is_prime_partition",
    "prime_partitions",
    "reduced_relation_matrix",
    "group_via_partition",
    "mu_via_partition",
    "thick_cycle_group",
    "sunflower_group",
]


@dataclass(frozen=True)
class FlowerInvariants:
    spec: FlowerSpec
    p: tuple[int, ...]
    q: tuple[int, ...]
    tau: int
    relation_matrix: IntMatrix


def _tau_from_pq(p: Sequence[int], q: Sequence[int]) -> int:
    # prod(p) * sum(q_i / p_i) without fractions
    return sum(qi * prod(p[:i] + p[i + 1:]) for i, qi in enumerate(q))


def _relation_matrix(p: Sequence[int], q: Sequence[int]) -> IntMatrix:
    t = len(p)
    rows = []
    for i in range(t - 1):
        row = [0] * t
        row[i] = p[i]
        row[i + 1] = -p[i + 1]
        rows.append(row)
    rows.append(list(q))
    return rows


def flower_invariants(spec: FlowerSpec) -> FlowerInvariants:
    p, q = [], []
    for petal in spec.petals:
        inv = chain_invariants(petal)
        p.append(inv.tau)
        # the petal is glued along its e_0
        q.append(inv.tau_e0[-1])
    return FlowerInvariants(spec, tuple(p), tuple(q), _tau_from_pq(p, q), _relation_matrix(p, q))


def coprime_base(values: Iterable[int]) -> list[int]:
    """Pairwise coprime integers ``> 1`` such that each value is a product of their powers."""
    base: list[int] = []
    pending = [v for v in values if v > 1]
    while pending:
        x = pending.pop()
        for i, b in enumerate(base):
            g = gcd(x, b)
            if g > 1:
                del base[i]
                pending += [y for y in (g, x // g, b // g) if y > 1]
                break
        else:
            base.append(x)
    return sorted(base)


def _exponent(v: int, b: int) -> int:
    e = 0
    while v % b == 0:
        v //= b
        e += 1
    return e


def product_gcds(values: Sequence[int], upto: int) -> list[int]:
    """``[d_0, ..., d_upto]``: ``d_k`` is the gcd of all products of ``k`` distinct entries.

    Per prime, the exponent of ``d_k`` is the sum of the ``k`` smallest
    exponents among the entries, which a coprime base lets us evaluate
    without factoring.
    """
    if upto > len(values):
        raise ValueError("cannot take products of more entries than exist")
    out = [1] * (upto + 1)
    for b in coprime_base(values):
        exps = sorted(_exponent(v, b) for v in values)
        for k in range(1, upto + 1):
            out[k] *= b ** sum(exps[:k])
    return out


def group_from_products(values: Sequence[int], tau: int) -> AbelianGroup:
    """``Z_{d_1/d_0} + ... + Z_{d_{k-2}/d_{k-3}} + Z_{tau/d_{k-2}}`` for ``k = len(values)``."""
    k = len(values)
    if k < 2:
        return AbelianGroup.from_diagonal([tau])
    d = product_gcds(values, k - 2)
    diag = [d[i] // d[i - 1] for i in range(1, k - 1)] + [tau // d[k - 2]]
    return AbelianGroup.from_diagonal(diag)


def group_structure(spec: FlowerSpec) -> AbelianGroup:
    inv = flower_invariants(spec)
    return group_from_products(inv.p, inv.tau)


def m_value(a: Sequence[int]) -> int:
    """Largest number of entries sharing a prime factor; 1 if no entry exceeds 1."""
    if not a:
        raise ValueError("m_value of an empty sequence")
    best = 1
    for b in coprime_base(a):
        best = max(best, sum(1 for v in a if gcd(v, b) > 1))
    return best


def _mu_from_m(m: int) -> int:
    return 1 if m == 1 else m - 1


def min_generators(spec: FlowerSpec) -> int:
    return _mu_from_m(m_value(flower_invariants(spec).p))


def is_cyclic(spec: FlowerSpec) -> bool:
    return m_value(flower_invariants(spec).p) <= 2


def equal_petal_group(spec: FlowerSpec) -> AbelianGroup:
    """``Z_a^{s-2} + Z_{r a}`` when every non-trivial petal has ``tau = a`` (needs ``s >= 2``)."""
    inv = flower_invariants(spec)
    idx = [i for i, petal in enumerate(spec.petals) if not petal.trivial]
    taus = {inv.p[i] for i in idx}
    if len(idx) < 2 or len(taus) != 1:
        raise UnequalPetals(f"need >= 2 petals with one common tau, got {sorted(taus)}")
    a = taus.pop()
    s, t = len(idx), spec.t
    r = (t - s) * a + sum(inv.q[i] for i in idx)
    return AbelianGroup.from_cyclic([a] * (s - 2) + [r * a])


def _check_petal(spec: FlowerSpec, i: int) -> None:
    if not 1 <= i <= spec.t:
        raise BadIndex(f"petal index {i} outside 1..{spec.t}")


def petal_generator_test(spec: FlowerSpec, i: int) -> bool:
    """Whether the far free edge ``f_i`` of petal ``i`` (1-based) generates the group."""
    _check_petal(spec, i)
    p = flower_invariants(spec).p
    return m_value(p[:i - 1] + p[i:]) == 1


def exists_generating_edge(spec: FlowerSpec) -> bool:
    return any(petal_generator_test(spec, i) for i in range(1, spec.t + 1))


def petal_generator_edge(spec: FlowerSpec, i: int) -> EdgeLabel:
    """Label of ``f_i``: the far free edge of petal ``i``, or ``e_i`` itself if trivial."""
    _check_petal(spec, i)
    petal = spec.petals[i - 1]
    return center(i) if petal.trivial else boundary(petal.n, i)


@dataclass(frozen=True)
class EdgeClass:
    label: EdgeLabel
    petal: int
    coefficient: int
    order: int
    generator: bool


def _petal_of(spec: FlowerSpec, e: EdgeLabel) -> int:
    e = e.canonical()
    i = e.index if e.kind == "center" else e.petal
    if not 1 <= i <= spec.t:
        raise UnknownEdge(str(e))
    return i


def classify_edges(spec: FlowerSpec) -> list[EdgeClass]:
    """Order and generator status of every edge of the flower.

    An edge of petal ``i`` equals ``a f_i`` (up to sign) with ``a`` from the
    chain expressions read from the far end.  It generates iff ``f_i`` does
    and ``gcd(a, tau(F)) = 1``.  The order of ``f_i`` itself is read off the
    Smith transform of ``R``, and ``ord(a f_i) = ord(f_i) / gcd(a, ord(f_i))``.
    """
    inv = flower_invariants(spec)
    p = inv.p
    out = []
    for i, petal in enumerate(spec.petals, start=1):
        ord_f = generator_order(inv.relation_matrix, i - 1)
        gen_f = m_value(p[:i - 1] + p[i:]) == 1
        coeffs = edge_coefficients(petal, base="head", petal=i) if not petal.trivial else {center(i): 1}
        for lab, a in sorted(coeffs.items(), key=lambda kv: kv[0].sort_key()):
            order = ord_f // gcd(a, ord_f)
            out.append(EdgeClass(lab, i, a, order, gen_f and gcd(a, inv.tau) == 1))
    return out


def classify_edge(spec: FlowerSpec, e: EdgeLabel) -> EdgeClass:
    e = e.canonical()
    i = _petal_of(spec, e)
    for ec in classify_edges(spec):
        if ec.petal == i and ec.label == e:
            return ec
    raise UnknownEdge(str(e))


@dataclass(frozen=True)
class PrimePartition:
    """Parts are tuples of 1-based indices; ``alphas[i]`` is the product over part ``i``."""

    parts: tuple[tuple[int, ...], ...]
    alphas: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    def betas(self, q: Sequence[int], p: Sequence[int]) -> tuple[int, ...]:
        return tuple(_tau_from_pq([p[j - 1] for j in part], [q[j - 1] for j in part])
                     for part in self.parts)

    def __str__(self) -> str:
        return " ∪ ".join("{" + ",".join(map(str, part)) + "}" for part in self.parts)


def _make_partition(p: Sequence[int], parts: Iterable[Iterable[int]]) -> PrimePartition:
    parts = tuple(tuple(sorted(part)) for part in parts)
    parts = tuple(sorted(parts))
    alphas = tuple(prod(p[j - 1] for j in part) for part in parts)
    return PrimePartition(parts, alphas)


def is_prime_partition(p: Sequence[int], parts: Iterable[Iterable[int]]) -> bool:
    parts = [tuple(part) for part in parts]
    flat = sorted(j for part in parts for j in part)
    if flat != list(range(1, len(p) + 1)) or any(not part for part in parts):
        return False
    for part in parts:
        for x in range(len(part)):
            for y in range(x + 1, len(part)):
                if gcd(p[part[x] - 1], p[part[y] - 1]) != 1:
                    return False
    alphas = [prod(p[j - 1] for j in part) for part in parts]
    return all(gcd(alphas[x], alphas[y]) != 1
               for x in range(len(alphas)) for y in range(x + 1, len(alphas)))


def prime_partitions(p: Sequence[int], minimum: bool = True) -> list[PrimePartition]:
    """Prime partitions of ``p``, by exhaustive search over set partitions.

    With ``minimum=True`` only those with the fewest parts are returned.
    Parts are grown one index at a time and an index may only join a part
    whose members it is coprime to.  The search is exponential in
    ``len(p)``; keep it to about ten entries.
    """
    t = len(p)
    if t == 0:
        raise ValueError("prime_partitions of an empty sequence")
    found: list[list[list[int]]] = []
    bound = [t]

    def grow(j: int, parts: list[list[int]]) -> None:
        if minimum and len(parts) > bound[0]:
            return
        if j > t:
            if is_prime_partition(p, parts):
                if minimum and len(parts) < bound[0]:
                    bound[0] = len(parts)
                    found.clear()
                found.append([list(x) for x in parts])
            return
        for part in parts:
            if all(gcd(p[j - 1], p[x - 1]) == 1 for x in part):
                part.append(j)
                grow(j + 1, parts)
                part.pop()
        parts.append([j])
        grow(j + 1, parts)
        parts.pop()

    grow(1, [])
    if minimum:
        found = [f for f in found if len(f) == bound[0]]
    return sorted((_make_partition(p, f) for f in found), key=lambda pp: (pp.k, pp.parts))


def _validated(spec: FlowerSpec, partition: PrimePartition | Iterable[Iterable[int]]):
    inv = flower_invariants(spec)
    parts = partition.parts if isinstance(partition, PrimePartition) else partition
    parts = [tuple(part) for part in parts]
    if not is_prime_partition(inv.p, parts):
        raise InvalidPartition(f"{parts} is not a prime partition of {inv.p}")
    return inv, _make_partition(inv.p, parts)


def reduced_relation_matrix(spec: FlowerSpec, partition: PrimePartition | Iterable[Iterable[int]]) -> IntMatrix:
    """The ``k x k`` block ``R'`` with ``R ~ diag(I_{t-k}, R')``."""
    inv, pp = _validated(spec, partition)
    return _relation_matrix(pp.alphas, pp.betas(inv.q, inv.p))


def group_via_partition(spec: FlowerSpec, partition: PrimePartition | Iterable[Iterable[int]]) -> AbelianGroup:
    inv, pp = _validated(spec, partition)
    return group_from_products(pp.alphas, inv.tau)


def mu_via_partition(spec: FlowerSpec, partition: PrimePartition | Iterable[Iterable[int]]) -> int:
    """``k - 1 - k_0'`` where ``k_0'`` is the largest ``j <= k - 2`` with ``d_j' = 1``."""
    _, pp = _validated(spec, partition)
    k = pp.k
    if k < 2:
        return 1
    d = product_gcds(pp.alphas, k - 2)
    k0 = max(j for j in range(k - 1) if d[j] == 1)
    return k - 1 - k0


def thick_cycle_group(ns: Sequence[int]) -> AbelianGroup:
    """Thick cycle: center edge ``i`` replaced by ``ns[i]`` parallel edges.

    ``ns[i]`` parallel edges form a chain of ``ns[i] - 1`` digons, whose
    spanning-tree count is ``ns[i]`` and whose contracted count is 1.
    """
    ns = list(ns)
    if len(ns) < 2 or any(n < 1 for n in ns):
        raise BadParameters(f"need at least two multiplicities >= 1, got {ns}")
    tau = sum(prod(ns[:i] + ns[i + 1:]) for i in range(len(ns)))
    return group_from_products(ns, tau)


def thick_cycle_spec(ns: Sequence[int]) -> FlowerSpec:
    return FlowerSpec(len(ns), tuple(ChainSpec((2,) * (n - 1)) for n in ns))


def sunflower_spec(t: int, s: int, r: int, n: int) -> FlowerSpec:
    """``s`` petals equal to the ``r``-regular chain of ``n`` polygons, the rest trivial."""
    return FlowerSpec(t, tuple(ChainSpec((r,) * n) if i < s else ChainSpec() for i in range(t)))


def sunflower_group(t: int, s: int, r: int, n: int) -> AbelianGroup:
    """``Z_a^{s-2} + Z_{(s b + (t - s) a) a}`` with ``a = tau(P_r^n)``, ``b = tau(P_r^n / e)``."""
    if not (t >= 2 and 0 <= s <= t and r >= 2 and n >= 1):
        raise BadParameters(f"invalid sunflower parameters t={t} s={s} r={r} n={n}")
    chain = (r,) * n
    a, b = chain_tau(chain), chain_tau_contract_end(chain)
    if s >= 2:
        return AbelianGroup.from_cyclic([a] * (s - 2) + [(s * b + (t - s) * a) * a])
    # fewer than two petals: cyclic of order tau(F)
    return AbelianGroup.from_cyclic([t if s == 0 else (t - 1) * a + b])
