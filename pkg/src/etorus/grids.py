"""Enumeration of the point grid and the weight grid with their coefficients.

The point grid collects the level-M dual-lattice points inside the even
fundamental domain; the weight grid collects the transform labels.  Both come
out in a fixed canonical order that downstream vectors index into: first the
nonnegative barycentric solutions, then the strictly positive (reflected
interior) ones, lexicographically within each block.

Each point carries its orbit size eps = |W^e| / h, each weight its even
stabilizer order h; both are computed from connected subdiagrams of the
extended Dynkin diagram, with a brute-force orbit count kept as an
independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidTypeError, InvariantViolationError, SizeLimitError
from .rootdata import even_weyl_order
from .weyl import SIDE_F, SIDE_RJF, BarycentricPoint, point_coords, weight_coords

DEFAULT_TORUS_CAP = 10 ** 7


@dataclass(frozen=True)
class GridPoint:
    bary: BarycentricPoint
    eps: int
    index: int


@dataclass(frozen=True)
class WeightPoint:
    bary: BarycentricPoint
    h_dual: int
    index: int


def _level_solutions(weights, M, lower):
    """All integer vectors v >= lower with sum(weights * v) == M, in lex order."""
    n = len(weights)
    tails = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tails[i] = tails[i + 1] + lower * weights[i]
    out = []
    cur = [0] * n

    def rec(i, rem):
        if i == n - 1:
            if rem >= lower * weights[i] and rem % weights[i] == 0:
                cur[i] = rem // weights[i]
                out.append(tuple(cur))
            return
        v = lower
        while v * weights[i] + tails[i + 1] <= rem:
            cur[i] = v
            rec(i + 1, rem - v * weights[i])
            v += 1

    rec(0, M)
    return out


def enumerate_Fe_M(rsd, M, j=1):
    """The canonical point grid at level M.

    The first block solves s_0 + sum m_i s_i = M over nonnegative integers,
    the second over strictly positive ones (those stand for the reflected
    interior points).  eps is attached via the diagram procedure.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    ew = even_weyl_order(rsd.type.family, rsd.rank)
    weights = [1] + [int(v) for v in rsd.marks]
    points = []
    for side, lower in ((SIDE_F, 0), (SIDE_RJF, 1)):
        for sol in _level_solutions(weights, M, lower):
            bary = BarycentricPoint(sol, M, side)
            h = stabilizer_order_diagram(bary, rsd, side="point")
            points.append(GridPoint(bary, ew // h, len(points)))
    return points


def enumerate_Lambda_e_M(rsd, M, j=1):
    """The canonical weight grid at level M (dual marks, omega basis)."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    weights = [1] + [int(v) for v in rsd.dual_marks]
    out = []
    for side, lower in ((SIDE_F, 0), (SIDE_RJF, 1)):
        for sol in _level_solutions(weights, M, lower):
            bary = BarycentricPoint(sol, M, side)
            h = stabilizer_order_diagram(bary, rsd, side="weight")
            out.append(WeightPoint(bary, h, len(out)))
    return out


def _binom(a, b):
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def count_formula(stype, M):
    """Closed-form size of the point grid (equals the weight grid size)."""
    family, n = stype.family, stype.rank
    if family == "A":
        return _binom(n + M, n) + _binom(M - 1, n)
    if family in ("B", "C"):
        if M % 2 == 0:
            k = M // 2
            return _binom(n + k, n) + _binom(n + k - 1, n) + _binom(k, n) + _binom(k - 1, n)
        k = (M - 1) // 2
        return 2 * _binom(n + k, n) + 2 * _binom(k, n)
    if family == "D":
        if M % 2 == 0:
            k = M // 2
            return (_binom(n + k, n) + 6 * _binom(n + k - 1, n) + _binom(n + k - 2, n)
                    + _binom(k + 1, n) + 6 * _binom(k, n) + _binom(k - 1, n))
        k = (M - 1) // 2
        return 4 * (_binom(n + k, n) + _binom(n + k - 1, n) + _binom(k + 1, n) + _binom(k, n))
    raise InvalidTypeError(f"no counting formula for family {family!r}")


def _component_weyl_order(size, has_double_edge, has_branch_node):
    if has_branch_node:
        return 2 ** (size - 1) * math.factorial(size)
    if has_double_edge:
        return 2 ** size * math.factorial(size)
    return math.factorial(size + 1)


def stabilizer_order_diagram(bary, rsd, side="point"):
    """Even stabilizer order of a grid point or weight, from the diagram.

    Reflected-interior representatives and representatives with no zero
    coordinate have trivial stabilizer.  Otherwise the zero-coordinate nodes
    induce a subgraph of the extended diagram (dual extended diagram for
    weights); each connected component is the diagram of a finite reflection
    group, classified by node count plus presence of a double edge or of a
    branch node, and the result is half the product of their orders.
    """
    if side not in ("point", "weight"):
        raise ValueError(f"side must be 'point' or 'weight', got {side!r}")
    sygma = bary.sygma
    if len(sygma) != rsd.rank + 1:
        raise InvariantViolationError(
            f"expected {rsd.rank + 1} barycentric coordinates, got {len(sygma)}"
        )
    marks = rsd.marks if side == "point" else rsd.dual_marks
    if sygma[0] + int(marks @ np.array(sygma[1:])) != bary.level:
        raise InvariantViolationError(f"level identity violated for {sygma} at M={bary.level}")
    if bary.side == SIDE_RJF:
        return 1
    zeros = {i for i, v in enumerate(sygma) if v == 0}
    if not zeros:
        return 1
    edges = rsd.ext_diagram if side == "point" else rsd.dual_ext_diagram
    adj = {i: [] for i in zeros}
    for a, b, mult in edges:
        if a in zeros and b in zeros:
            adj[a].append((b, mult))
            adj[b].append((a, mult))
    order_product = 1
    remaining = set(zeros)
    while remaining:
        start = remaining.pop()
        comp = {start}
        stack = [start]
        double = False
        branch = False
        while stack:
            node = stack.pop()
            if len(adj[node]) >= 3:
                branch = True
            for nb, mult in adj[node]:
                if mult >= 2:
                    double = True
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        if double and branch:
            raise InvariantViolationError("subdiagram with both a double edge and a branch node")
        order_product *= _component_weyl_order(len(comp), double, branch)
    return order_product // 2


def stabilizer_order_brute(bary, even_group, rsd, side="point", j=1):
    """Oracle: count even elements fixing the representative on the torus.

    Points are compared modulo the coroot lattice, weights modulo M times the
    root lattice, both by exact integer congruence through the adjugate.
    """
    M = bary.level
    modulus = rsd.center * M
    if side == "point":
        vec = point_coords(rsd, bary, j)
        count = 0
        for w in even_group:
            diff = rsd.cartan_adjugate @ (w.dual_matrix @ vec - vec)
            if not (diff % modulus).any():
                count += 1
        return count
    vec = weight_coords(rsd, bary, j)
    count = 0
    for w in even_group:
        diff = rsd.cartan_adjugate.T @ (w.matrix @ vec - vec)
        if not (diff % modulus).any():
            count += 1
    return count


def point_class_key(rsd, vec, M):
    """Injective key of a dual-lattice point modulo the coroot lattice."""
    return tuple(int(v) for v in (rsd.cartan_adjugate @ vec) % (rsd.center * M))


def weight_class_key(rsd, vec, M):
    """Injective key of a weight modulo M times the root lattice."""
    return tuple(int(v) for v in (rsd.cartan_adjugate.T @ vec) % (rsd.center * M))


def torus_representatives(rsd, M, even_group, points=None, j=1, cap=DEFAULT_TORUS_CAP):
    """One representative per element of the level-M torus quotient.

    Built as the union of the even orbits of the point grid; the result has
    exactly center * M^rank entries, keyed by point_class_key.
    """
    total = rsd.center * M ** rsd.rank
    if total > cap:
        raise SizeLimitError(f"torus size {total} exceeds cap {cap}", required=total)
    if points is None:
        points = enumerate_Fe_M(rsd, M, j)
    reps = {}
    for gp in points:
        vec = point_coords(rsd, gp.bary, j)
        for w in even_group:
            img = w.dual_matrix @ vec
            reps.setdefault(point_class_key(rsd, img, M), img)
    if len(reps) != total:
        raise AssertionError(f"torus enumeration found {len(reps)} of {total} classes")
    return reps
