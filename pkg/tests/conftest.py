from __future__ import annotations

import sys
from itertools import combinations

from sympy import Matrix


def count_spanning_trees(g) -> int:
    """Enumerate (n-1)-edge subsets and keep the acyclic ones."""
    if g.n == 1:
        return 1
    count = 0
    for subset in combinations(g.edges, g.n - 1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in subset:
            a, b = find(e.tail), find(e.head)
            if a == b:
                break
            parent[a] = b
        else:
            count += 1
    return count


def in_row_lattice(m, vec) -> bool:
    """Whether ``vec`` is an integer combination of the rows of nonsingular ``m``."""
    x = Matrix([vec]) * Matrix(m).inv()
    return all(v.is_integer for v in x)


def rational_order(m, j) -> int:
    """Order of generator ``j``: lcm of denominators of row ``j`` of ``m^{-1}``."""
    from math import lcm

    row = Matrix(m).inv().row(j)
    return lcm(*(int(v.q) for v in row))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
