"""Discrete E-transform: weighted scalar product, analysis, synthesis.

`ETransform` bundles everything one grid configuration needs: the root
system data, the enumerated even Weyl group, the point and weight grids, and
the value table of all E-functions on all grid points.  Grid-indexed vectors
carry a grid tag (family, rank, M, j); mixing tags is an error rather than a
silent wrong answer.

The analysis step divides each projection by center * |W^e| * M^rank * h,
which makes synthesis on the grid an exact inverse (up to roundoff); the
same constants appear in the Plancherel identity checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import efun
from .errors import GridMismatchError, SizeLimitError
from .grids import enumerate_Fe_M, enumerate_Lambda_e_M, torus_representatives
from .rootdata import (PointCoord, SimpleType, build_root_system,
                       euclidean_realization)
from .weyl import enumerate_weyl, even_subgroup, point_coords, weight_coords


@dataclass(frozen=True)
class SampleVector:
    """Complex values indexed by the canonical point-grid order."""

    values: np.ndarray
    grid_id: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if not np.isfinite(self.values).all():
            raise ValueError("sample values must be finite")


@dataclass(frozen=True)
class CoefficientVector:
    """Complex expansion coefficients indexed by the canonical weight order."""

    values: np.ndarray
    grid_id: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if not np.isfinite(self.values).all():
            raise ValueError("coefficients must be finite")


class ETransform:
    """The discrete E-transform of one (family, rank, M, j) configuration."""

    def __init__(self, family, rank, M, j=1, threads=1):
        self.stype = SimpleType(family, rank)
        if not 1 <= j <= rank:
            raise ValueError(f"j must be in 1..{rank}, got {j}")
        if M < 1:
            raise ValueError(f"M must be >= 1, got {M}")
        self.M = M
        self.j = j
        self.threads = max(1, int(threads))
        self.grid_id = (family, rank, M, j)
        self.rsd = build_root_system(self.stype)
        self.weyl_group = enumerate_weyl(self.rsd)
        self.even_group = even_subgroup(self.weyl_group)
        self.points = enumerate_Fe_M(self.rsd, M, j)
        self.weights = enumerate_Lambda_e_M(self.rsd, M, j)
        self.eps = np.array([p.eps for p in self.points], dtype=int)
        self.h_dual = np.array([w.h_dual for w in self.weights], dtype=int)
        self.point_matrix = np.array(
            [point_coords(self.rsd, p.bary, j) for p in self.points], dtype=int)
        self.weight_matrix = np.array(
            [weight_coords(self.rsd, w.bary, j) for w in self.weights], dtype=int)
        #: per-label normalization center * |W^e| * M^rank * h
        self.norms = (self.rsd.center * len(self.even_group) * M ** rank) * self.h_dual

    @property
    def n_points(self):
        return len(self.points)

    @cached_property
    def table(self):
        """E-function values, rows = weight labels, columns = grid points."""
        return efun.evaluate_E_table(
            self.rsd, self.even_group, self.weight_matrix, self.point_matrix,
            self.M, threads=self.threads)

    @cached_property
    def realization(self):
        return euclidean_realization(self.rsd)

    def _samples(self, f):
        if isinstance(f, SampleVector):
            if f.grid_id != self.grid_id:
                raise GridMismatchError(f"sample grid {f.grid_id} != {self.grid_id}")
            values = f.values
        else:
            values = np.asarray(f, dtype=complex)
        if values.shape[-1] != self.n_points:
            raise GridMismatchError(
                f"expected {self.n_points} samples per vector, got {values.shape[-1]}")
        return values

    def _coefficients(self, cv):
        if isinstance(cv, CoefficientVector):
            if cv.grid_id != self.grid_id:
                raise GridMismatchError(f"coefficient grid {cv.grid_id} != {self.grid_id}")
            values = cv.values
        else:
            values = np.asarray(cv, dtype=complex)
        if values.shape[-1] != len(self.weights):
            raise GridMismatchError(
                f"expected {len(self.weights)} coefficients per vector, got {values.shape[-1]}")
        return values

    def sample_vector(self, values):
        return SampleVector(values, self.grid_id)

    def coefficient_vector(self, values):
        return CoefficientVector(values, self.grid_id)

    def scalar_product(self, f, g):
        """Orbit-size weighted hermitian product of two grid functions."""
        fv = self._samples(f)
        gv = self._samples(g)
        return complex((self.eps * fv) @ np.conj(gv))

    def forward(self, f):
        """Expansion coefficients of grid samples (the analysis step).

        A SampleVector comes back as a CoefficientVector; raw arrays (any
        leading batch shape) come back as raw arrays.
        """
        fv = self._samples(f)
        coeff = ((self.eps * fv) @ np.conj(self.table).T) / self.norms
        if isinstance(f, SampleVector):
            return CoefficientVector(coeff, self.grid_id)
        return coeff

    def reconstruct(self, cv):
        """Synthesis back onto the grid points."""
        values = self._coefficients(cv) @ self.table
        if isinstance(cv, CoefficientVector):
            return SampleVector(values, self.grid_id)
        return values

    def interpolate(self, cv, at):
        """Value of the finite expansion at arbitrary points.

        `at` may be a PointCoord (exact roots-of-unity path) or an array of
        real omega-check coordinate rows, evaluated through the Euclidean
        realization.  The expansion is defined on all of R^rank; off-grid
        points simply evaluate the same finite sum.
        """
        coeff = self._coefficients(cv)
        if isinstance(at, PointCoord):
            column = efun.evaluate_E_table(
                self.rsd, self.even_group, self.weight_matrix,
                at.vector[np.newaxis, :], at.level)[:, 0]
            return complex(coeff @ column)
        pts = np.asarray(at, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        x_euc = pts @ self.realization.dual_weights
        total = np.zeros((len(self.weights), len(pts)), dtype=complex)
        comp = np.zeros_like(total)
        for w in self.even_group:
            lam_euc = (self.weight_matrix @ w.matrix.T) @ self.realization.weights
            term = np.exp(2j * np.pi * (lam_euc @ x_euc.T))
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        values = coeff @ total
        return complex(values[0]) if single else values

    def gram_matrix(self, cap=10 ** 4):
        """Gram matrix of the E-functions under the weighted product.

        Returns (matrix, max off-diagonal magnitude, max relative deviation
        of the diagonal from center * |W^e| * M^rank * h).
        """
        if len(self.weights) > cap:
            raise SizeLimitError(
                f"Gram matrix of order {len(self.weights)} exceeds cap {cap}",
                required=len(self.weights))
        gram = (self.table * self.eps) @ np.conj(self.table).T
        off = gram - np.diag(np.diag(gram))
        max_off = float(np.abs(off).max()) if len(self.weights) > 1 else 0.0
        rel = float(np.abs(np.diag(gram) / self.norms - 1.0).max())
        return gram, max_off, rel

    def plancherel_check(self, f):
        """Both sides of the norm identity and their relative deviation."""
        fv = self._samples(f)
        cvals = ((self.eps * fv) @ np.conj(self.table).T) / self.norms
        lhs = float((self.eps * np.abs(fv) ** 2).sum())
        base = self.rsd.center * len(self.even_group) * self.M ** self.rsd.rank
        rhs = float(base * (self.h_dual * np.abs(cvals) ** 2).sum())
        scale = max(abs(lhs), abs(rhs))
        reldev = abs(lhs - rhs) / scale if scale else 0.0
        return lhs, rhs, reldev

    # -- grid geometry -----------------------------------------------------

    def point_euclidean(self, index):
        """Euclidean coordinates of one grid point (for plotting output)."""
        return (self.point_matrix[index] / self.M) @ self.realization.dual_weights


def abelian_orthogonality_oracle(rsd, M, lam, lam_prime, even_group=None, cap=10 ** 7):
    """Brute character sum over the whole level-M torus quotient.

    Independent of the folding/grid machinery except for torus enumeration:
    sums exp(2 pi i <lam - lam', y>) over all center * M^rank classes y.
    Equal labels (modulo M times the root lattice) give exactly that count;
    distinct labels cancel to zero.
    """
    if even_group is None:
        even_group = even_subgroup(enumerate_weyl(rsd))
    reps = torus_representatives(rsd, M, even_group, cap=cap)
    diff = np.asarray(lam, dtype=int) - np.asarray(lam_prime, dtype=int)
    order = rsd.center * M
    roots = efun.unit_roots(order)
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    adj_diff = diff @ rsd.cartan_adjugate
    for vec in reps.values():
        k = int(adj_diff @ vec) % order
        y = roots[k] - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
