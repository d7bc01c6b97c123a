"""Rectangular coverings of product spaces and the bounds they induce.

A covering is a finite list of rectangles V_j x W_j. It carries a discrete
weight per patch (the min formula), a continuous version spread over the
space by first-containing-patch disjointification, a maximal kernel that
smears a kernel's first argument over patches, and an oscillation kernel
measuring phase-corrected variation in the second argument. The constants
assembled in `sup_bound_certificate` turn these into an explicit weighted
sup-norm bound for integral operators dominated on patches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel_algebra import WeightGrid, norm_B, weight_domination_constant
from .measure import ProductSpace
from .mixed_norm import GridFunction, mixed_norm
from .operators import Kernel
from .sum_space import split_four

__all__ = [
    "RectCovering",
    "PhaseGrid",
    "CoveringReport",
    "SupBoundCertificate",
    "validate_covering",
    "covering_weights",
    "maximal_kernel",
    "oscillation",
    "special_linfty_weight",
    "sup_bound_certificate",
]


class PhaseGrid(Kernel):
    """A unimodular complex grid over pairs of product points."""

    __slots__ = ()

    def __init__(self, X: ProductSpace, Y: ProductSpace, values):
        super().__init__(X, Y, np.asarray(values, dtype=complex))
        if not np.allclose(np.abs(self.values), 1.0, rtol=0.0, atol=1e-12):
            raise ValueError("phase grid entries must have modulus 1")


class RectCovering:
    """A finite list of rectangle patches V_j x W_j over a product space.

    Patches are kept in list order; empty or non-covering lists of patches
    are representable (validation reports on them) but an empty patch *list*
    is rejected outright.
    """

    __slots__ = ("space", "patches", "masks1", "masks2", "_product_masks")

    def __init__(self, space: ProductSpace, patches):
        if not isinstance(space, ProductSpace):
            raise TypeError("expected a ProductSpace")
        patches = [(tuple(V), tuple(W)) for V, W in patches]
        if not patches:
            raise ValueError("patch list is empty")
        P = len(patches)
        masks1 = np.zeros((P, space.factor1.size), dtype=bool)
        masks2 = np.zeros((P, space.factor2.size), dtype=bool)
        for j, (V, W) in enumerate(patches):
            for p in V:
                masks1[j, space.factor1.index_of(p)] = True
            for p in W:
                masks2[j, space.factor2.index_of(p)] = True
        masks1.setflags(write=False)
        masks2.setflags(write=False)
        self.space = space
        self.patches = patches
        self.masks1 = masks1
        self.masks2 = masks2
        self._product_masks = None

    def __len__(self) -> int:
        return len(self.patches)

    @property
    def product_masks(self) -> np.ndarray:
        """Boolean (P, n1, n2) membership grids, one per patch."""
        if self._product_masks is None:
            pm = self.masks1[:, :, None] & self.masks2[:, None, :]
            pm.setflags(write=False)
            self._product_masks = pm
        return self._product_masks

    def covers(self) -> bool:
        return bool(self.product_masks.any(axis=0).all())

    def patch_weights(self) -> np.ndarray:
        """Discrete weights min{1, mu1(V_j), mu2(W_j), mu(U_j)} per patch."""
        m1 = (self.masks1 * self.space.factor1.masses).sum(axis=1)
        m2 = (self.masks2 * self.space.factor2.masses).sum(axis=1)
        return np.minimum(1.0, np.minimum(np.minimum(m1, m2), m1 * m2))

    def __repr__(self) -> str:
        return f"RectCovering(patches={len(self.patches)}, space={self.space.shape})"


@dataclass(frozen=True)
class CoveringReport:
    """Validation summary for a rectangle covering."""

    covers: bool
    patch_positive: tuple[bool, ...]
    comparability: float
    intersection_number: int
    moderateness: float | None

    @property
    def admissible(self) -> bool:
        return self.covers and all(self.patch_positive)


def validate_covering(cov: RectCovering, u: GridFunction | None = None) -> CoveringReport:
    """Check the covering axioms and measure the covering's constants.

    Reports whether the patches cover, whether each has positive product
    mass, the smallest C with w_i <= C * w_j over intersecting patch pairs
    (1 when no two patches intersect), the intersection number (each patch
    counts itself), and — when a positive weight u is supplied — the smallest
    C' with u(x) <= C' * u(y) for x, y in a common patch.
    """
    pm = cov.product_masks
    P = len(cov)
    positive = tuple(bool(pm[j].any()) for j in range(P))

    flat = pm.reshape(P, -1)
    meets = (flat.astype(np.uint8) @ flat.astype(np.uint8).T) > 0  # (P, P)
    sigma = int(meets.sum(axis=1).max())

    weights = cov.patch_weights()
    comparability = 1.0
    for i in range(P):
        for j in range(P):
            if i != j and meets[i, j] and weights[j] > 0:
                comparability = max(comparability, float(weights[i] / weights[j]))

    moderateness = None
    if u is not None:
        uv = u.values
        if not u.is_real or np.any(uv <= 0):
            raise ValueError("weight u must be strictly positive")
        moderateness = 1.0
        for j in range(P):
            if positive[j]:
                onpatch = uv[pm[j]]
                moderateness = max(moderateness, float(onpatch.max() / onpatch.min()))

    return CoveringReport(cov.covers(), positive, comparability, sigma, moderateness)


def covering_weights(cov: RectCovering) -> tuple[np.ndarray, GridFunction, float]:
    """Discrete patch weights, their continuous version, and the condition constant.

    The continuous weight is constant on the disjointified pieces
    Omega_n = U_n minus the earlier patches (list order), taking the value of
    the owning patch's discrete weight. The returned constant is the smallest
    C0 with w^c(x)/w_j + w_j/w^c(x) <= 2*C0 for every patch j and x in U_j.
    """
    if not cov.covers():
        raise ValueError("patches do not cover the space")
    weights = cov.patch_weights()
    if np.any(weights <= 0):
        raise ValueError("every patch must have positive product mass")

    pm = cov.product_masks
    wc = np.zeros(cov.space.shape)
    assigned = np.zeros(cov.space.shape, dtype=bool)
    for j in range(len(cov)):
        fresh = pm[j] & ~assigned
        wc[fresh] = weights[j]
        assigned |= pm[j]

    c0 = 1.0
    for j in range(len(cov)):
        ratio = wc[pm[j]] / weights[j]
        c0 = max(c0, float((ratio + 1.0 / ratio).max() / 2.0))
    return weights, GridFunction(cov.space, wc), c0


def _require_square(K: Kernel, cov: RectCovering) -> None:
    if K.X != cov.space or K.Y != cov.space:
        raise ValueError("kernel must be square over the covered space")


def maximal_kernel(K: Kernel, cov: RectCovering) -> Kernel:
    """Patch-maximal kernel (M K)(x, y) = max over z in U(x) of |K(z, y)|.

    U(x) is the union of all patches containing x; since x belongs to it,
    M K >= |K| entrywise.
    """
    _require_square(K, cov)
    if not cov.covers():
        raise ValueError("patches do not cover the space")
    A = np.abs(K.values)
    out = np.zeros_like(A)
    for j in range(len(cov)):
        mask = cov.product_masks[j]
        if not mask.any():
            continue
        patch_max = A[mask].max(axis=0)  # (n1, n2) over the second argument
        out[mask] = np.maximum(out[mask], patch_max[None, :, :])
    return Kernel(K.X, K.Y, out)


def oscillation(K: Kernel, cov: RectCovering, phase: PhaseGrid | None = None) -> Kernel:
    """Phase-corrected variation osc(x, y) = max over z in U(y) of |K(x,y) - phase(y,z) K(x,z)|.

    The patches act on the *second* argument here. With the default phase 1
    and singleton patches the oscillation vanishes identically.
    """
    _require_square(K, cov)
    if not cov.covers():
        raise ValueError("patches do not cover the space")
    n1, n2 = cov.space.shape
    if phase is None:
        gamma = np.ones((n1, n2, n1, n2), dtype=complex)
    else:
        if phase.X != cov.space or phase.Y != cov.space:
            raise ValueError("phase grid must be square over the covered space")
        gamma = phase.values
    Kv = K.values.astype(complex)
    out = np.zeros(Kv.shape[:2] + (n1, n2))
    for j in range(len(cov)):
        mask = cov.product_masks[j]
        y1, y2 = np.nonzero(mask)
        if y1.size == 0:
            continue
        Ky = Kv[:, :, y1, y2]  # (n1, n2, t)
        g = gamma[y1[:, None], y2[:, None], y1[None, :], y2[None, :]]  # (t, t)
        diffs = np.abs(Ky[:, :, :, None] - g[None, None, :, :] * Ky[:, :, None, :])
        patch_osc = diffs.max(axis=3)  # (n1, n2, t)
        out[:, :, y1, y2] = np.maximum(out[:, :, y1, y2], patch_osc)
    return Kernel(K.X, K.Y, out)


def special_linfty_weight(cov: RectCovering, u: GridFunction) -> GridFunction:
    """The target weight v = u / (continuous covering weight), pointwise."""
    _, wc, _ = covering_weights(cov)
    if u.space != cov.space:
        raise ValueError("weight does not live on the covered space")
    return GridFunction(cov.space, u.values / wc.values)


@dataclass(frozen=True)
class SupBoundCertificate:
    """Constant chain certifying max_x |Phi_K f(x)| / v(x) <= c6 * mixed_norm(f, p, q, w).

    Valid for any kernel K whose patch-maximal kernel is dominated entrywise
    by the majorant L the certificate was built from.
    """

    c1: float  # weight-domination constant for w against m
    c2: float  # c1 times the structured norm of the majorant
    c3: float  # indicator embedding constant (sum-norm estimate / mixed norm)
    c4: float  # u-moderateness over patches
    c5: float  # continuous-vs-discrete weight spread over patches
    c6: float  # product of c2..c5
    v: GridFunction  # the weight u / w^c the sup is taken against


def sup_bound_certificate(
    L: Kernel,
    cov: RectCovering,
    u: GridFunction,
    m: WeightGrid,
    p,
    q,
    w: GridFunction | None = None,
) -> SupBoundCertificate:
    """Assemble the weighted sup-norm bound constants for a patch majorant L.

    The chain: c1 makes the mixed norm with weight w tolerate conjugation by
    m; c2 = c1 * norm_B(L, m) bounds the operator norm of Phi_L; c3 converts
    patch-indicator mixed norms into sum-space norms weighted by 1/u (using
    the four-way split's norm sum as a safe over-estimate); c4 is the
    moderateness of u; c5 accounts for the continuous weight exceeding the
    discrete one on overlaps. Their product c6 is the certified constant.
    """
    _require_square(L, cov)
    space = cov.space
    if w is None:
        w = GridFunction(space, np.ones(space.shape))
    weights, wc, _ = covering_weights(cov)
    report = validate_covering(cov, u)
    if not report.admissible:
        raise ValueError("covering must cover with positive patches")

    c1 = weight_domination_constant(w, w, m)
    c2 = c1 * norm_B(L, m)

    c3 = 0.0
    for j in range(len(cov)):
        mask = cov.product_masks[j].astype(float)
        indicator = GridFunction(space, mask)
        scaled = GridFunction(space, mask / u.values)
        estimate = sum(split_four(scaled).corner_norms())
        c3 = max(c3, estimate / mixed_norm(indicator, p, q, w))

    c4 = float(report.moderateness)

    c5 = 1.0
    for j in range(len(cov)):
        c5 = max(c5, float(wc.values[cov.product_masks[j]].max() / weights[j]))

    c6 = c2 * c3 * c4 * c5
    v = GridFunction(space, u.values / wc.values)
    return SupBoundCertificate(c1, c2, c3, c4, c5, c6, v)
