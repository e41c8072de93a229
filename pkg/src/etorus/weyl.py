"""Weyl group enumeration and folding into the even fundamental domains.

Group elements are dense integer matrices in two coordinate systems at once:
`matrix` acts on weight coordinates (omega basis) and `dual_matrix` on point
coordinates (omega-check basis).  Folding works on barycentric coordinate
vectors [s_0, ..., s_n]: the affine generator r_i subtracts s_i times column
i of the extended Cartan matrix, which keeps the level identity
s_0 + sum_i m_i s_i = M intact and needs no Euclidean realization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolationError, SizeLimitError
from .rootdata import PointCoord, WeightCoord, weyl_order

SIDE_F = "F"
SIDE_RJF = "rjF"

DEFAULT_GROUP_CAP = 10 ** 6


class WeylElement:
    """One group element with its actions on both weight and point coordinates.

    parity is the determinant of the geometric action (+1 or -1); the simple
    reflections all have parity -1.
    """

    __slots__ = ("matrix", "dual_matrix", "parity")

    def __init__(self, matrix, dual_matrix, parity):
        matrix = np.asarray(matrix, dtype=int)
        dual_matrix = np.asarray(dual_matrix, dtype=int)
        matrix.setflags(write=False)
        dual_matrix.setflags(write=False)
        self.matrix = matrix
        self.dual_matrix = dual_matrix
        self.parity = parity

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (self.matrix == other.matrix).all()

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        return f"WeylElement(parity={self.parity:+d}, matrix={self.matrix.tolist()})"

    def compose(self, other):
        """Element acting as self after other (matrix product self @ other)."""
        return WeylElement(
            self.matrix @ other.matrix,
            self.dual_matrix @ other.dual_matrix,
            self.parity * other.parity,
        )


def identity_element(rank):
    eye = np.eye(rank, dtype=int)
    return WeylElement(eye, eye, 1)


def simple_reflection(rsd, i):
    """Generator r_i (1-based index) as a WeylElement."""
    n = rsd.rank
    C = rsd.cartan
    A = np.eye(n, dtype=int)
    A[:, i - 1] -= C[i - 1, :]
    B = np.eye(n, dtype=int)
    B[:, i - 1] -= C[:, i - 1]
    return WeylElement(A, B, -1)


def highest_root_reflection(rsd):
    """Reflection in the hyperplane orthogonal to the highest root.

    Built from the marks and the Cartan matrix only: on points it subtracts
    <x, xi> * xi-check, on weights <lambda, xi-check> * xi.
    """
    n = rsd.rank
    xivc = rsd.highest_coroot
    B = np.eye(n, dtype=int) - np.outer(xivc, rsd.marks)
    comarks = rsd.cartan_adjugate @ xivc
    if (comarks % rsd.center != 0).any():
        raise AssertionError("highest coroot is not in the coroot lattice")
    comarks //= rsd.center
    xi_w = rsd.cartan.T @ rsd.marks
    A = np.eye(n, dtype=int) - np.outer(xi_w, comarks)
    return WeylElement(A, B, -1)


def dual_highest_root_reflection(rsd):
    """Reflection in the highest root of the dual system."""
    n = rsd.rank
    etavc = rsd.dual_highest_coroot
    A = np.eye(n, dtype=int) - np.outer(etavc, rsd.dual_marks)
    coords = rsd.cartan_adjugate.T @ etavc
    if (coords % rsd.center != 0).any():
        raise AssertionError("dual highest coroot is not in the root lattice")
    coords //= rsd.center
    eta_p = rsd.cartan @ rsd.dual_marks
    B = np.eye(n, dtype=int) - np.outer(eta_p, coords)
    return WeylElement(A, B, -1)


def enumerate_weyl(rsd, cap=DEFAULT_GROUP_CAP):
    """The full Weyl group in canonical order.

    Breadth-first closure over the simple reflections starting from the
    identity; within each BFS shell elements are sorted lexicographically by
    their flattened weight-side matrix, which fixes the ordering across
    platforms.
    """
    expected = weyl_order(rsd.type.family, rsd.rank)
    if expected > cap:
        raise SizeLimitError(
            f"|W({rsd.type})| = {expected} exceeds cap {cap}", required=expected
        )
    gens = [simple_reflection(rsd, i) for i in range(1, rsd.rank + 1)]
    ident = identity_element(rsd.rank)
    seen = {ident}
    ordered = [ident]
    frontier = [ident]
    while frontier:
        shell = []
        for w in frontier:
            for g in gens:
                prod = g.compose(w)
                if prod not in seen:
                    seen.add(prod)
                    shell.append(prod)
        shell.sort(key=lambda e: tuple(e.matrix.flatten()))
        ordered.extend(shell)
        frontier = shell
    if len(ordered) != expected:
        raise AssertionError(f"enumerated {len(ordered)} elements, expected {expected}")
    return ordered


def even_subgroup(elements):
    """The determinant +1 elements, in the order they were enumerated."""
    even = [w for w in elements if w.parity == 1]
    if 2 * len(even) != len(elements):
        raise AssertionError("even subgroup is not half of the input")
    return even


def apply_to_weight(w, t):
    """Image of a weight under a group element (omega coordinates)."""
    if isinstance(t, WeightCoord):
        return WeightCoord(tuple(int(v) for v in w.matrix @ t.vector))
    return w.matrix @ np.asarray(t, dtype=int)


def apply_to_point(w, x):
    """Image of a dual-lattice point under a group element."""
    if isinstance(x, PointCoord):
        return PointCoord(tuple(int(v) for v in w.dual_matrix @ x.vector), x.level)
    return w.dual_matrix @ np.asarray(x, dtype=int)


@dataclass(frozen=True)
class BarycentricPoint:
    """Barycentric coordinates [s_0, ..., s_n] of a fundamental-domain point.

    side == SIDE_F: all entries >= 0, representing the point directly.
    side == SIDE_RJF: all entries >= 1, and the represented point is r_j
    applied to the interior point with these coordinates.
    The level identity s_0 + sum_i m_i s_i = M holds in both cases (dual
    marks on the weight side).
    """

    sygma: tuple
    level: int
    side: str

    def __post_init__(self):
        lo = 0 if self.side == SIDE_F else 1
        if any(v < lo for v in self.sygma):
            raise InvariantViolationError(
                f"side={self.side} requires all coordinates >= {lo}: {self.sygma}"
            )

    @property
    def interior(self):
        return all(v > 0 for v in self.sygma)


def point_coords(rsd, bary, j=1):
    """Omega-check integer coordinates of the point a BarycentricPoint stands for."""
    s = np.array(bary.sygma[1:], dtype=int)
    if bary.side == SIDE_RJF:
        s = s - s[j - 1] * rsd.cartan[:, j - 1]
    return s


def weight_coords(rsd, bary, j=1):
    """Omega integer coordinates of the weight a BarycentricPoint stands for."""
    t = np.array(bary.sygma[1:], dtype=int)
    if bary.side == SIDE_RJF:
        t = t - t[j - 1] * rsd.cartan[j - 1, :]
    return t


def fold_to_F(rsd, x):
    """Fold a dual-lattice point into the fundamental simplex.

    Returns (bary, w, q) with bary the barycentric coordinates of the folded
    point a', w a WeylElement and q an integer omega-check vector in the
    coroot lattice, such that x = w a' + q exactly.
    """
    if not isinstance(x, PointCoord):
        raise TypeError("fold_to_F expects a PointCoord")
    n = rsd.rank
    M = x.level
    s = x.vector
    shat = np.concatenate(([M - int(rsd.marks @ s)], s))
    gens = [simple_reflection(rsd, i) for i in range(1, n + 1)]
    r_hi = highest_root_reflection(rsd)
    acc = identity_element(n)
    shift = np.zeros(n, dtype=int)
    steps = 0
    while (shat < 0).any():
        steps += 1
        if steps > _FOLD_STEP_CAP:
            raise AssertionError("folding did not terminate")
        i = int(np.argmax(shat < 0))
        shat = shat - shat[i] * rsd.ext_cartan[:, i]
        if i == 0:
            shift = acc.dual_matrix @ (M * rsd.highest_coroot) + shift
            acc = acc.compose(r_hi)
        else:
            acc = acc.compose(gens[i - 1])
    bary = BarycentricPoint(tuple(int(v) for v in shat), M, SIDE_F)
    if shift.any() and (rsd.cartan_adjugate @ shift % (rsd.center * M) != 0).any():
        raise AssertionError("translation part left the coroot lattice")
    return bary, acc, shift // M


def fold_to_Fe(rsd, x, j=1):
    """Fold into the even fundamental domain F union r_j int(F).

    Returns (bary, w, q) with parity(w) = +1 and x = w a' + q, where a' is
    the point bary stands for (r_j applied first when side == SIDE_RJF).
    When the plain fold comes back odd, parity is repaired by composing with
    r_j (interior case) or with a reflection stabilizing the folded point:
    the smallest zero coordinate index wins, index 0 meaning the highest-root
    reflection together with its translation correction.
    """
    if not 1 <= j <= rsd.rank:
        raise ValueError(f"j must be in 1..{rsd.rank}, got {j}")
    bary, w, q = fold_to_F(rsd, x)
    if w.parity == 1:
        return bary, w, q
    shat = np.array(bary.sygma)
    if (shat > 0).all():
        w = w.compose(simple_reflection(rsd, j))
        bary = BarycentricPoint(bary.sygma, bary.level, SIDE_RJF)
    else:
        i = int(np.argmax(shat == 0))
        if i == 0:
            q = q + w.dual_matrix @ rsd.highest_coroot
            w = w.compose(highest_root_reflection(rsd))
        else:
            w = w.compose(simple_reflection(rsd, i))
    return bary, w, q


def fold_weight_to_F(rsd, t, M):
    """Fold a weight into M times the dual fundamental simplex, modulo M Q.

    Mirror of fold_to_F on the weight side: barycentric coordinates use the
    dual marks, the affine wall is the highest dual root, translations live
    in M times the root lattice (omega coordinates).  Returns (bary, w, q)
    with t = w a' + M q.
    """
    if not isinstance(t, WeightCoord):
        raise TypeError("fold_weight_to_F expects a WeightCoord")
    n = rsd.rank
    tv = t.vector
    that = np.concatenate(([M - int(rsd.dual_marks @ tv)], tv))
    gens = [simple_reflection(rsd, i) for i in range(1, n + 1)]
    r_hi = dual_highest_root_reflection(rsd)
    acc = identity_element(n)
    shift = np.zeros(n, dtype=int)
    while (that < 0).any():
        i = int(np.argmax(that < 0))
        that = that - that[i] * rsd.dual_ext_cartan[:, i]
        if i == 0:
            shift = acc.matrix @ (M * rsd.dual_highest_coroot) + shift
            acc = acc.compose(r_hi)
        else:
            acc = acc.compose(gens[i - 1])
    bary = BarycentricPoint(tuple(int(v) for v in that), M, SIDE_F)
    if shift.any() and (rsd.cartan_adjugate.T @ shift % (rsd.center * M) != 0).any():
        raise AssertionError("translation part left the root lattice")
    return bary, acc, shift // M


def fold_weight_to_Lambda_e(rsd, t, M, j=1):
    """Fold a weight into the even dual domain (labels of the transform).

    Same parity repair as fold_to_Fe, with the highest dual root playing the
    role of the affine wall.  Returns (bary, w, q) with parity(w) = +1 and
    t = w a' + M q.
    """
    if not 1 <= j <= rsd.rank:
        raise ValueError(f"j must be in 1..{rsd.rank}, got {j}")
    bary, w, q = fold_weight_to_F(rsd, t, M)
    if w.parity == 1:
        return bary, w, q
    that = np.array(bary.sygma)
    if (that > 0).all():
        w = w.compose(simple_reflection(rsd, j))
        bary = BarycentricPoint(bary.sygma, bary.level, SIDE_RJF)
    else:
        i = int(np.argmax(that == 0))
        if i == 0:
            q = q + w.matrix @ rsd.dual_highest_coroot
            w = w.compose(dual_highest_root_reflection(rsd))
        else:
            w = w.compose(simple_reflection(rsd, i))
    return bary, w, q
