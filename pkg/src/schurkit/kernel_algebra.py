"""Kernel norms and the kernel algebra.

Two norms drive everything here. The plain one treats a kernel as a matrix
over the flattened product spaces and takes the larger of its best row and
column integrals. The structured one applies that construction twice: first
to each partial kernel obtained by freezing the second coordinates on both
sides, then to the grid of partial norms. Composition is the mass-weighted
matrix product; weights enter multiplicatively.
"""

from __future__ import annotations

import numpy as np

from .measure import ProductSpace, Space, counting_space, singleton_space
from .mixed_norm import GridFunction
from .operators import Kernel

__all__ = [
    "WeightGrid",
    "norm_A",
    "norm_B",
    "transpose",
    "compose",
    "identity_kernel",
    "tensor_kernel",
    "separable_kernel",
    "mv_weight",
    "lift_plain_kernel",
    "submult_weight_constant",
    "weight_domination_constant",
]


class WeightGrid(Kernel):
    """A strictly positive real kernel-shaped weight m(x, y)."""

    __slots__ = ()

    def __init__(self, X: ProductSpace, Y: ProductSpace, values):
        super().__init__(X, Y, values)
        if not self.is_real or not np.all(self.values > 0):
            raise ValueError("weight grid entries must be strictly positive reals")


def _norm_a_matrix(A: np.ndarray, mx: np.ndarray, my: np.ndarray) -> float:
    """max(best row integral, best column integral) of a nonnegative matrix."""
    row = (A * my).sum(axis=1).max()
    col = (A * mx[:, None]).sum(axis=0).max()
    return float(max(row, col))


def _weighted_abs(K: Kernel, m: WeightGrid | None) -> np.ndarray:
    A = np.abs(K.values)
    if m is None:
        return A
    if not isinstance(m, WeightGrid):
        raise TypeError("weight must be a WeightGrid")
    if m.X != K.X or m.Y != K.Y:
        raise ValueError("weight grid does not match the kernel's spaces")
    return A * m.values

def norm_A(K: Kernel, m: WeightGrid | None = None) -> float:
    """Plain kernel norm: larger of the best row and column integrals of |m*K|.

    The product structure is ignored; rows are integrated against the source
    masses and columns against the target masses.
    """
    A = _weighted_abs(K, m)
    row = (A * K.Y.mass_grid).sum(axis=(2, 3)).max()
    col = (A * K.X.mass_grid[:, :, None, None]).sum(axis=(0, 1)).max()
    return float(max(row, col))


def norm_B(K: Kernel, m: WeightGrid | None = None) -> float:
    """Structured kernel norm, built in two stages.

    Stage one: for every pair (x2, y2) of second coordinates, take the plain
    norm of the partial kernel (x1, y1) -> |m*K|((x1,x2),(y1,y2)) over the
    first factors. Stage two: take the plain norm of that nonnegative grid
    over the second factors. With singleton second factors this collapses to
    `norm_A`; with m absent the weight is implicitly 1.
    """
    A = _weighted_abs(K, m)
    mu1 = K.X.factor1.masses
    mu2 = K.X.factor2.masses
    nu1 = K.Y.factor1.masses
    nu2 = K.Y.factor2.masses
    # partial-kernel plain norms, batched over (x2, y2)
    row = (A * nu1[None, None, :, None]).sum(axis=2).max(axis=0)  # (x2, y2)
    col = (A * mu1[:, None, None, None]).sum(axis=0).max(axis=1)  # (x2, y2)
    gamma = np.maximum(row, col)
    return _norm_a_matrix(gamma, mu2, nu2)


def transpose(K: Kernel) -> Kernel:
    """Swap source and target: K^T(y, x) = K(x, y). No conjugation."""
    return type(K)(K.Y, K.X, K.values.transpose(2, 3, 0, 1))


def compose(K: Kernel, L: Kernel) -> Kernel:
    """Mass-weighted composition: (K . L)(x, z) = sum_y K(x,y) L(y,z) nu({y})."""
    if K.Y != L.X:
        raise ValueError("middle spaces do not match")
    vals = np.einsum("abcd,cd,cdef->abef", K.values, K.Y.mass_grid, L.values)
    return Kernel(K.X, L.Y, vals)


def identity_kernel(space: ProductSpace) -> Kernel:
    """Unit of the composition algebra: diagonal entries 1/mass."""
    n1, n2 = space.shape
    vals = np.zeros((n1, n2, n1, n2))
    i1 = np.arange(n1)[:, None]
    i2 = np.arange(n2)[None, :]
    vals[i1, i2, i1, i2] = 1.0 / space.mass_grid
    return Kernel(space, space, vals)


def tensor_kernel(f: GridFunction, g: GridFunction) -> Kernel:
    """Rank-one kernel (f (x) g)(x, y) = f(x) * g(y)."""
    vals = np.multiply.outer(f.values, g.values)
    return Kernel(f.space, g.space, vals)


def separable_kernel(a, b, X: ProductSpace, Y: ProductSpace) -> Kernel:
    """Kernel acting factorwise: K((x1,x2),(y1,y2)) = a[x1,y1] * b[x2,y2]."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (X.factor1.size, Y.factor1.size):
        raise ValueError("first-factor matrix shape mismatch")
    if b.shape != (X.factor2.size, Y.factor2.size):
        raise ValueError("second-factor matrix shape mismatch")
    return Kernel(X, Y, np.einsum("ac,bd->abcd", a, b))


def mv_weight(v: GridFunction) -> WeightGrid:
    """Symmetric ratio weight m_v(x, y) = max{v(x)/v(y), v(y)/v(x)}."""
    vv = v.values
    if not v.is_real or not np.all(vv > 0):
        raise ValueError("mv_weight needs a strictly positive real function")
    r = vv[:, :, None, None] / vv[None, None, :, :]
    return WeightGrid(v.space, v.space, np.maximum(r, r.transpose(2, 3, 0, 1)))


def lift_plain_kernel(a, X1: Space | None = None, Y1: Space | None = None) -> Kernel:
    """Wrap a plain matrix kernel as a product kernel.

    Attaches singleton mass-1 second factors, so the structured norm of the
    lift equals the plain norm of the matrix and the second-coordinate Schur
    constants collapse onto the first-coordinate ones.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix kernel")
    if X1 is None:
        X1 = counting_space(a.shape[0])
    if Y1 is None:
        Y1 = counting_space(a.shape[1])
    X = ProductSpace(X1, singleton_space())
    Y = ProductSpace(Y1, singleton_space())
    return Kernel(X, Y, a[:, None, :, None])


def submult_weight_constant(tau: WeightGrid, omega: WeightGrid, sigma: WeightGrid) -> float:
    """Smallest C with tau(x,z) <= C * omega(x,y) * sigma(y,z) for all x,y,z."""
    if omega.X != tau.X or sigma.Y != tau.Y or omega.Y != sigma.X:
        raise ValueError("weight grids do not chain")
    ratio = tau.values[:, :, None, None, :, :] / (
        omega.values[:, :, :, :, None, None] * sigma.values[None, None, :, :, :, :]
    )
    return float(ratio.max())


def weight_domination_constant(v: GridFunction, w: GridFunction, m: WeightGrid) -> float:
    """Smallest C with v(x) <= C * w(y) * m(x,y) for all x, y."""
    if v.space != m.X or w.space != m.Y:
        raise ValueError("weights do not match the grid's spaces")
    ratio = v.values[:, :, None, None] / (w.values[None, None, :, :] * m.values)
    return float(ratio.max())
