"""Intrinsic volumes V_m of bodies.

Exact paths:

* volume and surface area of polytopes (qhull);
* V_1 of full-dimensional 3-polytopes via edge exterior angles;
* every V_m of a zonotope via subset Gram determinants;
* closed forms for balls;
* lower-dimensional polytopes are reduced isometrically to their affine
  span first, which also makes e.g. V_1 of a planar body in R^3 exact.

The remaining combination (V_1 of a full-dimensional polytope in n >= 4)
falls back to mean-width quadrature over the sphere.  Unsupported (n, m)
pairs raise :class:`UnsupportedMeasure` rather than silently degrading.

Normalization conventions: V_n is the volume; V_{n-1} is half the surface
area for full-dimensional bodies and equals the (n-1)-measure (not
doubled) for bodies of dimension n-1; V_1 is mean width times
n kappa_n / (2 kappa_{n-1}), i.e. (1/kappa_{n-1}) integral of the support
function over the unit sphere.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import bodies as _b
from .bodies import (Ball, Body, DiskHull, VPolytope, Zonotope, affine_dim,
                     as_vpolytope, constant_axes, drop_axes, resolve,
                     to_affine_coords)
from .errors import InvalidArgument, UnsupportedMeasure
from .quadrature import (QuadratureEstimate, QuadratureSpec,
                         integrate_sphere_with_error)

# Relative error attributed to closed-form / exact combinatorial paths.
EXACT_REL_ERR = 1e-10
# Two adjacent facet normals closer than this (in 1 - cos) are coplanar.
COPLANAR_SNAP = 1e-10
# Guard on the number of generator subsets enumerated for a zonotope.
MAX_SUBSETS = 2_000_000


def kappa(j: int) -> float:
    """Volume of the unit ball in R^j (kappa_0 = 1)."""
    if j < 0:
        raise InvalidArgument("kappa defined for j >= 0")
    return math.pi ** (j / 2.0) / math.gamma(j / 2.0 + 1.0)


def intrinsic_coefficient(n: int, i: int) -> float:
    """Normalizing coefficient kappa_{n-i} / C(n, i) relating V_i to the
    mixed volume with balls."""
    if not 0 <= i <= n:
        raise InvalidArgument("need 0 <= i <= n")
    return kappa(n - i) / math.comb(n, i)


@dataclass(frozen=True)
class Measured:
    """A measure value with an absolute error estimate.

    ``exact`` marks closed-form / combinatorial paths whose only error is
    floating-point roundoff (tracked as a nominal relative 1e-10).
    """

    value: float
    error: float
    exact: bool = True

    @staticmethod
    def of_exact(value: float) -> "Measured":
        return Measured(float(value), EXACT_REL_ERR * max(1.0, abs(value)), True)

    @staticmethod
    def of_quadrature(value: float, error: float) -> "Measured":
        return Measured(float(value), abs(error) + EXACT_REL_ERR * max(1.0, abs(value)),
                        False)


# ---------------------------------------------------------------------------
# polytope volume / surface


def volume(p: VPolytope) -> float:
    """n-dimensional volume of the hull; 0 for lower-dimensional bodies."""
    if affine_dim(p) < p.n:
        return 0.0
    if p.n == 1:
        return float(p.vertices.max() - p.vertices.min())
    return float(p.qhull.volume)


def surface_area(p: VPolytope) -> float:
    """Total (n-1)-measure of the boundary.

    For a body of dimension exactly n-1 this is twice its (n-1)-measure
    (both sides of the flat piece); below that the boundary measure is 0.
    """
    d = affine_dim(p)
    if p.n == 1:
        return 2.0 if d >= 0 else 0.0
    if d == p.n:
        return float(p.qhull.area)
    if d == p.n - 1:
        return 2.0 * flat_measure(p)
    return 0.0


def v_top(p: VPolytope) -> float:
    """V_{n-1}(P) = surface_area / 2 (consistent for flat bodies too)."""
    return 0.5 * surface_area(p)


def flat_measure(p: VPolytope) -> float:
    """d-dimensional measure of a d-dimensional polytope (d = affine_dim)."""
    d = affine_dim(p)
    if d == 0:
        return 1.0  # counting measure of a point
    return volume(to_affine_coords(p))


def v1_polytope_exact(p: VPolytope) -> float:
    """V_1 of a full-dimensional 3-polytope from edge exterior angles.

    Every edge contributes length * (angle between the two adjacent outer
    normals) / (2 pi).  Qhull's triangulated surface is walked ridge by
    ridge; ridges interior to a facet have angle 0 and are snapped away.
    """
    if p.n != 3:
        raise UnsupportedMeasure("edge-angle V_1 path is specific to n = 3")
    if affine_dim(p) != 3:
        raise UnsupportedMeasure(
            "degenerate 3-polytope: use the quadrature path or the affine view")
    hull = p.qhull
    normals = hull.equations[:, :3]
    simplices = hull.simplices
    neighbors = hull.neighbors
    total = 0.0
    for s in range(simplices.shape[0]):
        for k in range(3):
            t = neighbors[s, k]
            if t < s:
                continue  # each ridge once
            dot = float(np.dot(normals[s], normals[t]))
            if dot >= 1.0 - COPLANAR_SNAP:
                continue  # same facet: triangulation ridge, not an edge
            dot = max(-1.0, min(1.0, dot))
            ridge = [v for j, v in enumerate(simplices[s]) if j != k]
            length = float(np.linalg.norm(
                hull.points[ridge[0]] - hull.points[ridge[1]]))
            total += length * math.acos(dot) / (2.0 * math.pi)
    return total


# ---------------------------------------------------------------------------
# quadrature mean width


def v1_quadrature(body: Body, spec: QuadratureSpec | None = None) -> QuadratureEstimate:
    """V_1 via (1/kappa_{n-1}) * integral of the support function over the
    sphere.  Works for every body with a support function, including
    lower-dimensional ones."""
    body = resolve(body)
    n = body.n
    if n < 2:
        raise UnsupportedMeasure("mean-width quadrature needs ambient n >= 2")
    if spec is None:
        spec = QuadratureSpec.for_dimension(n)
    est = integrate_sphere_with_error(
        lambda pts: _b.support_many(body, pts), n, spec)
    c = 1.0 / kappa(n - 1)
    return QuadratureEstimate(c * est.value, c * est.error, est.resolution)


# ---------------------------------------------------------------------------
# zonotopes


def vm_zonotope(z: Zonotope, m: int) -> float:
    """V_m of a zonotope: sum over m-element generator subsets of the
    m-volume 2^m sqrt(det(G^T G)) of the spanned box."""
    if not 1 <= m <= z.n:
        raise InvalidArgument(f"need 1 <= m <= {z.n}, got m={m}")
    g = z.generators
    k = g.shape[0]
    if k < m:
        return 0.0
    if math.comb(k, m) > MAX_SUBSETS:
        raise UnsupportedMeasure(
            f"{math.comb(k, m)} generator subsets exceed the enumeration guard")
    if m == 1:
        return 2.0 * float(np.sum(np.linalg.norm(g, axis=1)))
    gram = g @ g.T
    total = 0.0
    for sub in itertools.combinations(range(k), m):
        d = float(np.linalg.det(gram[np.ix_(sub, sub)]))
        if d > 0.0:
            total += math.sqrt(d)
    return (2.0 ** m) * total


# ---------------------------------------------------------------------------
# balls


def vm_ball(b: Ball, m: int) -> float:
    """Closed-form V_m of a (possibly flattened) ball."""
    if not 1 <= m <= b.n:
        raise InvalidArgument(f"need 1 <= m <= {b.n}, got m={m}")
    d = b.active_dim
    if b.radius == 0.0 or d == 0:
        return 0.0
    if m > d:
        return 0.0
    return math.comb(d, m) * kappa(d) / kappa(d - m) * b.radius ** m


# ---------------------------------------------------------------------------
# flat sets (linear m-parallelepipeds used for the projection identity)


@dataclass(frozen=True)
class FlatSet:
    """Parallelepiped spanned by m generator rows inside R^n.

    Construct through :func:`flat_set` to get the full-rank validation;
    projections may legitimately drop rank (measure 0).
    """

    generators: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=float)
        if g.ndim != 2 or g.shape[0] == 0 or g.shape[0] > g.shape[1]:
            raise InvalidArgument(
                f"generators must be (m, n) with 1 <= m <= n, got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise InvalidArgument("generators contain non-finite coordinates")
        a = np.ascontiguousarray(g)
        a.setflags(write=False)
        object.__setattr__(self, "generators", a)

    @property
    def m(self) -> int:
        return self.generators.shape[0]

    @property
    def n(self) -> int:
        return self.generators.shape[1]


def flat_set(generators) -> FlatSet:
    """Validated constructor: generators must be linearly independent."""
    f = FlatSet(np.asarray(generators, dtype=float))
    svals = np.linalg.svd(f.generators, compute_uv=False)
    if svals[-1] <= 1e-9 * max(1.0, float(svals[0])):
        raise InvalidArgument("flat-set generators are (numerically) dependent")
    return f


def hausdorff_flat(f: FlatSet) -> float:
    """m-dimensional measure sqrt(det(G G^T)) of the parallelepiped."""
    gram = f.generators @ f.generators.T
    d = float(np.linalg.det(gram))
    return math.sqrt(max(d, 0.0))


def project_flat(f: FlatSet, i: int) -> FlatSet:
    """Orthogonal projection onto e_i's coordinate hyperplane (column i
    zeroed).  Rank may drop; the projected measure is then 0."""
    if not 0 <= i < f.n:
        raise InvalidArgument(f"axis {i} out of range for n={f.n}")
    g = f.generators.copy()
    g[:, i] = 0.0
    return FlatSet(g)


# ---------------------------------------------------------------------------
# central dispatcher


def vm(body: Body, m: int, spec: QuadratureSpec | None = None) -> Measured:
    """V_m of a body with an error estimate.

    Raises UnsupportedMeasure for combinations with no implemented path
    (full-dimensional polytopes in n >= 4 with 2 <= m <= n-2).
    """
    body = resolve(body)
    n = body.n
    if m == 0:
        return Measured.of_exact(1.0)
    if not 1 <= m <= n:
        raise InvalidArgument(f"need 0 <= m <= {n}, got m={m}")
    if isinstance(body, Zonotope):
        return Measured.of_exact(vm_zonotope(body, m))
    if isinstance(body, Ball):
        return Measured.of_exact(vm_ball(body, m))
    if isinstance(body, DiskHull):
        return _vm_disk_hull(body, m, spec)
    if isinstance(body, VPolytope):
        return _vm_polytope_measured(body, m, spec)
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def _vm_disk_hull(body: DiskHull, m: int, spec) -> Measured:
    if m == 1:
        est = v1_quadrature(body, spec)
        return Measured.of_quadrature(est.value, est.error)
    # V_2, V_3: inscribed polytopal approximation; the k-gon deficit per
    # disk is O(1/fineness^2), reported as such.
    approx = body.as_polytope()
    val = _vm_polytope_measured(approx, m, spec)
    rel = 40.0 / body.fineness ** 2
    return Measured(val.value, val.error + rel * max(1.0, abs(val.value)), False)


def _vm_polytope_measured(p: VPolytope, m: int, spec) -> Measured:
    d = affine_dim(p)
    if m > d:
        return Measured.of_exact(0.0)
    if d == 1:
        # Segment: V_1 is the length.
        diam = float(np.linalg.norm(p.vertices[-1] - p.vertices[0]))
        if p.vertex_count > 2:
            diff = p.vertices[:, None, :] - p.vertices[None, :, :]
            diam = float(np.max(np.linalg.norm(diff, axis=2)))
        return Measured.of_exact(diam)
    if m == d:
        return Measured.of_exact(flat_measure(p) if d < p.n else volume(p))
    if d < p.n:
        # Reduce to the affine span; prefer exact coordinate drops.
        const = constant_axes(p)
        q = drop_axes(p, const) if const else to_affine_coords(p)
        if affine_dim(q) < q.n:
            q = to_affine_coords(q)
        return _vm_polytope_measured(q, m, spec)
    # Full-dimensional in its ambient space from here on.
    if m == d - 1:
        return Measured.of_exact(v_top(p))
    if m == 1 and d == 3:
        return Measured.of_exact(v1_polytope_exact(p))
    if m == 1:
        est = v1_quadrature(p, spec)
        return Measured.of_quadrature(est.value, est.error)
    raise UnsupportedMeasure(
        f"V_{m} of a full-dimensional polytope in R^{d} has no exact or "
        f"quadrature path (supported: m in {{1, {d-1}, {d}}})")


def vm_polytope(p: VPolytope, m: int, spec: QuadratureSpec | None = None) -> float:
    """Dispatcher restricted to polytopes; returns the plain value."""
    if not isinstance(p, VPolytope):
        raise InvalidArgument("vm_polytope expects a vertex polytope")
    return vm(p, m, spec).value


# ---------------------------------------------------------------------------
# auxiliary exact projection measure (brightness in an arbitrary direction)


def brightness_polytope(p: VPolytope, u) -> float:
    """(n-1)-volume of the projection of a full-dimensional polytope onto
    u^perp, via half the sum of |<u, nu_F>| * area(F) over facets."""
    u = _b.as_vector(u, p.n)
    nu = float(np.linalg.norm(u))
    if nu == 0.0:
        raise InvalidArgument("direction must be non-zero")
    u = u / nu
    if affine_dim(p) < p.n:
        raise UnsupportedMeasure("brightness path requires a full-dimensional body")
    hull = p.qhull
    total = 0.0
    for s in range(hull.simplices.shape[0]):
        verts = hull.points[hull.simplices[s]]
        edges = verts[1:] - verts[0]
        gram = edges @ edges.T
        area = math.sqrt(max(float(np.linalg.det(gram)), 0.0)) / math.factorial(p.n - 1)
        total += area * abs(float(np.dot(u, hull.equations[s, :p.n])))
    return 0.5 * total
