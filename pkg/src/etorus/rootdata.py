"""Static combinatorial data of the classical simple root systems.

Supported series (Bourbaki numbering of simple roots):

    A_n (n >= 1), B_n (n >= 3), C_n (n >= 2), D_n (n >= 4)

For each type the module provides the Cartan matrix, its integer adjugate,
the marks and dual marks, the Coxeter number, the order of the center, and
the extended Dynkin diagram of the system and of its dual.  All lattice
computations stay in integer arithmetic: the pairing between the weight
lattice and the dual weight lattice is stored as adjugate/determinant, not
as floating point.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidTypeError

FAMILIES = ("A", "B", "C", "D")

#: minimal rank per family (ranks below these duplicate earlier series)
MIN_RANK = {"A": 1, "B": 3, "C": 2, "D": 4}

#: exact fraction of a full turn; numerator/denominator are reduced integers
RationalPhase = Fraction


@dataclass(frozen=True)
class SimpleType:
    """One classical simple type, e.g. SimpleType("C", 2)."""

    family: str
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "family", str(self.family))
        if self.family not in FAMILIES:
            raise InvalidTypeError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        try:
            object.__setattr__(self, "rank", operator.index(self.rank))
        except TypeError:
            raise InvalidTypeError(f"rank must be an integer, got {self.rank!r}")
        if self.rank < MIN_RANK[self.family]:
            raise InvalidTypeError(
                f"{self.family}_{self.rank} unsupported: family {self.family} requires rank >= "
                f"{MIN_RANK[self.family]}"
            )

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class WeightCoord:
    """Integer coordinates of a weight in the omega basis."""

    coords: tuple

    @property
    def vector(self):
        return np.array(self.coords, dtype=int)


@dataclass(frozen=True)
class PointCoord:
    """A point (s_1 w1v + ... + s_n wnv)/M of the refined dual weight lattice.

    `coords` are the integer numerators s_i over the common denominator
    `level` = M in the dual-weight (omega-check) basis.
    """

    coords: tuple
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level}")

    @property
    def vector(self):
        return np.array(self.coords, dtype=int)


def _cartan_matrix(family, n):
    C = 2 * np.eye(n, dtype=int)
    for i in range(n - 1):
        C[i, i + 1] = C[i + 1, i] = -1
    if family == "B":
        C[n - 2, n - 1] = -2
    elif family == "C":
        C[n - 1, n - 2] = -2
    elif family == "D":
        C[n - 2, n - 1] = C[n - 1, n - 2] = 0
        C[n - 3, n - 1] = C[n - 1, n - 3] = -1
    return C


def _marks_table(family, n):
    if family == "A":
        return np.ones(n, dtype=int)
    m = 2 * np.ones(n, dtype=int)
    if family == "B":
        m[0] = 1
    elif family == "C":
        m[-1] = 1
    else:  # D
        m[0] = m[-2] = m[-1] = 1
    return m


def _dual_marks_table(family, n):
    if family == "A":
        return np.ones(n, dtype=int)
    m = 2 * np.ones(n, dtype=int)
    if family == "B":
        m[-1] = 1
    elif family == "C":
        m[0] = 1
    else:  # D (self-dual)
        m[0] = m[-2] = m[-1] = 1
    return m


def _ext_edges(family, n):
    """Edges (i, k, multiplicity) of the extended Dynkin diagram on nodes 0..n."""
    chain = [(i, i + 1, 1) for i in range(1, n)]
    if family == "A":
        if n == 1:
            return ((0, 1, 4),)
        return tuple([(0, 1, 1), (0, n, 1)] + chain)
    if family == "B":
        chain[-1] = (n - 1, n, 2)
        return tuple([(0, 2, 1)] + chain)
    if family == "C":
        chain[-1] = (n - 1, n, 2)
        return tuple([(0, 1, 2)] + chain)
    # D: forks at both ends
    del chain[-1]
    return tuple([(0, 2, 1)] + chain + [(n - 2, n, 1)])


def _dual_ext_edges(family, n):
    """Extended diagram of the dual root system, same node numbering."""
    chain = [(i, i + 1, 1) for i in range(1, n)]
    if family == "A":
        return _ext_edges("A", n)
    if family == "B":  # dual system is C-shaped
        chain[-1] = (n - 1, n, 2)
        return tuple([(0, 1, 2)] + chain)
    if family == "C":  # dual system is B-shaped; node 0 forks onto node 2
        if n == 2:
            return ((0, 2, 2), (1, 2, 2))
        chain[-1] = (n - 1, n, 2)
        return tuple([(0, 2, 1)] + chain)
    return _ext_edges("D", n)


def _root_norms(cartan):
    """Squared lengths of the simple roots, normalized so long roots have 2.

    Ratios come from the Cartan integers: <ai,ai>/<ak,ak> = C_ik / C_ki.
    """
    n = cartan.shape[0]
    norms = [None] * n
    norms[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for k in range(n):
            if k != i and cartan[i, k] != 0 and norms[k] is None:
                norms[k] = norms[i] * Fraction(int(cartan[k, i]), int(cartan[i, k]))
                stack.append(k)
    top = max(norms)
    return [x * 2 / top for x in norms]


def _extended_cartan(cartan, marks):
    """Extended Cartan matrix on nodes 0..n with node 0 the lowest root -xi."""
    n = cartan.shape[0]
    ext = np.zeros((n + 1, n + 1), dtype=int)
    ext[1:, 1:] = cartan
    ext[0, 0] = 2
    row0 = -(marks @ cartan)
    norms = _root_norms(cartan)
    for k in range(n):
        ext[0, k + 1] = row0[k]
        entry = Fraction(int(row0[k])) * norms[k] / 2
        if entry.denominator != 1:
            raise AssertionError("non-integral extended Cartan entry")
        ext[k + 1, 0] = int(entry)
    return ext


def _integer_adjugate(cartan):
    det = int(round(np.linalg.det(cartan)))
    adj = np.rint(det * np.linalg.inv(cartan)).astype(int)
    if not (cartan @ adj == det * np.eye(cartan.shape[0], dtype=int)).all():
        raise AssertionError("adjugate reconstruction failed")
    return det, adj


def _generate_roots(cartan):
    """Closure of the simple roots under the simple reflections.

    Returns a dict mapping omega-basis coordinates (tuple) to alpha-basis
    coordinates (tuple).  Reflection i acts by t -> t - t_i * row_i(C) on the
    omega side and a -> a - t_i * e_i on the alpha side.
    """
    n = cartan.shape[0]
    roots = {}
    frontier = []
    for i in range(n):
        t = tuple(int(v) for v in cartan[i, :])
        a = tuple(int(i == k) for k in range(n))
        roots[t] = a
        frontier.append((t, a))
    while frontier:
        nxt = []
        for t, a in frontier:
            for i in range(n):
                ti = t[i]
                t2 = tuple(t[k] - ti * int(cartan[i, k]) for k in range(n))
                if t2 not in roots:
                    a2 = tuple(a[k] - ti * int(i == k) for k in range(n))
                    roots[t2] = a2
                    nxt.append((t2, a2))
        frontier = nxt
    return roots


def _derived_marks(cartan):
    """Alpha-coordinates of the highest root, read off the generated root set."""
    roots = _generate_roots(cartan)
    best = max(roots.values(), key=sum)
    return np.array(best, dtype=int), len(roots)


_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}


@dataclass(frozen=True, eq=False)
class RootSystemData:
    """All static data of one classical simple type.

    Immutable after construction; every matrix is an integer numpy array with
    the writeable flag cleared, safe to share across threads.
    """

    type: SimpleType
    cartan: np.ndarray
    cartan_adjugate: np.ndarray
    marks: np.ndarray
    dual_marks: np.ndarray
    coxeter: int
    center: int
    ext_diagram: tuple
    dual_ext_diagram: tuple
    ext_cartan: np.ndarray = field(repr=False)
    dual_ext_cartan: np.ndarray = field(repr=False)

    @property
    def rank(self):
        return self.type.rank

    @property
    def highest_coroot(self):
        """xi-check in omega-check coordinates (translation part of r_0)."""
        return -self.ext_cartan[1:, 0]

    @property
    def dual_highest_coroot(self):
        """eta-check in omega coordinates (translation part of the dual r_0)."""
        return -self.dual_ext_cartan[1:, 0]

    def __repr__(self):
        return f"RootSystemData({self.type})"


def build_root_system(stype, validate=None):
    """Assemble the RootSystemData of a classical simple type.

    With `validate` (default: on under __debug__) the tabulated marks and dual
    marks are cross-checked against the highest root extracted from the full
    generated root set, and the extended-diagram adjacency tables against the
    extended Cartan matrices; any mismatch raises.
    """
    if not isinstance(stype, SimpleType):
        stype = SimpleType(*stype)
    if validate is None:
        validate = __debug__
    family, n = stype.family, stype.rank

    cartan = _cartan_matrix(family, n)
    marks = _marks_table(family, n)
    dual_marks = _dual_marks_table(family, n)
    center, adj = _integer_adjugate(cartan)
    coxeter = 1 + int(marks.sum())
    ext = _extended_cartan(cartan, marks)
    dual_ext = _extended_cartan(cartan.T, dual_marks)
    ext_edges = _ext_edges(family, n)
    dual_ext_edges = _dual_ext_edges(family, n)

    if validate:
        derived, nroots = _derived_marks(cartan)
        if not (derived == marks).all():
            raise AssertionError(f"{stype}: tabulated marks {marks} != derived {derived}")
        derived_dual, _ = _derived_marks(cartan.T)
        if not (derived_dual == dual_marks).all():
            raise AssertionError(f"{stype}: dual marks {dual_marks} != derived {derived_dual}")
        if nroots != _ROOT_COUNT[family](n):
            raise AssertionError(f"{stype}: generated {nroots} roots")
        if sorted(marks) != sorted(dual_marks):
            raise AssertionError(f"{stype}: dual marks are not a permutation of marks")
        for edges, extm in ((ext_edges, ext), (dual_ext_edges, dual_ext)):
            table = {(i, k): m for i, k, m in edges}
            for i in range(n + 1):
                for k in range(i + 1, n + 1):
                    mult = int(extm[i, k] * extm[k, i])
                    if table.get((i, k), 0) != mult:
                        raise AssertionError(f"{stype}: extended diagram edge ({i},{k})")

    data = RootSystemData(
        type=stype,
        cartan=cartan,
        cartan_adjugate=adj,
        marks=marks,
        dual_marks=dual_marks,
        coxeter=coxeter,
        center=center,
        ext_diagram=ext_edges,
        dual_ext_diagram=dual_ext_edges,
        ext_cartan=ext,
        dual_ext_cartan=dual_ext,
    )
    for arr in (data.cartan, data.cartan_adjugate, data.marks, data.dual_marks,
                data.ext_cartan, data.dual_ext_cartan):
        arr.setflags(write=False)
    return data


def pairing_phase(rsd, t, x):
    """Exact value of <lambda, x> mod 1 as a reduced fraction.

    `t` is a WeightCoord (omega basis), `x` a PointCoord (omega-check basis
    over denominator M).  The pairing matrix <w_i, w_j-check> = (C^-1)_ij is
    applied as adjugate over determinant, so the result is an exact rational
    with denominator dividing center * M.
    """
    tv = t.coords if isinstance(t, WeightCoord) else tuple(t)
    xv = x.coords
    M = x.level
    adj = rsd.cartan_adjugate
    num = 0
    for i, ti in enumerate(tv):
        if ti:
            num += int(ti) * sum(int(adj[i, jj]) * int(xv[jj]) for jj in range(rsd.rank))
    den = rsd.center * M
    return Fraction(num % den, den)


@dataclass(frozen=True, eq=False)
class EuclideanRealization:
    """Orthonormal-coordinate realization of one root system.

    Rows of `simple_roots` are the simple roots alpha_i in R^n with long
    roots normalized to squared length 2; the realization is the Cholesky
    factor of the Gram matrix C diag(|alpha_j|^2)/2, so it is the same on
    every platform.  `weights` and `dual_weights` hold the omega and
    omega-check bases row-wise; they are used only for real-valued pairings
    (plotting meshes, off-lattice interpolation), never on the exact lattice
    paths.
    """

    simple_roots: np.ndarray
    dual_simple_roots: np.ndarray
    weights: np.ndarray
    dual_weights: np.ndarray


def euclidean_realization(rsd):
    norms = np.array([float(v) for v in _root_norms(rsd.cartan)])
    gram = rsd.cartan * norms[np.newaxis, :] / 2.0
    alpha = np.linalg.cholesky(gram)
    alpha_dual = 2.0 * alpha / norms[:, np.newaxis]
    weights = np.linalg.inv(alpha_dual.T)
    dual_weights = np.linalg.inv(alpha.T)
    out = EuclideanRealization(alpha, alpha_dual, weights, dual_weights)
    for arr in (out.simple_roots, out.dual_simple_roots, out.weights, out.dual_weights):
        arr.setflags(write=False)
    return out


def weyl_order(family, rank):
    """Order of the Weyl group of one series member.

    Accepts any rank >= 1 (ranks below the canonical family bounds occur as
    connected subdiagrams in the stabilizer computation).
    """
    if family not in FAMILIES or rank < 1:
        raise InvalidTypeError(f"no Weyl group for {family}_{rank}")
    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    return 2 ** (rank - 1) * math.factorial(rank)


def even_weyl_order(family, rank):
    """Order of the rotation (determinant +1) subgroup: always half of |W|."""
    return weyl_order(family, rank) // 2
