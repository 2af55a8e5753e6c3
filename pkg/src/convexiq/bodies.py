"""Convex body representations and elementary operations.

A "body" is one of:

* :class:`VPolytope` -- convex hull of finitely many points, stored as its
  canonical extreme-vertex list;
* :class:`Zonotope` -- center plus a list of segment generators;
* :class:`Ball` -- Euclidean ball, optionally flattened along coordinate
  axes (so that coordinate projections of balls stay symbolic);
* :class:`DiskHull` -- the convex hull of the three unit coordinate disks
  in R^3 (exact support function, polytopal approximation on demand);
* :class:`NamedBody` -- thin serializable wrapper around a named
  construction (``cross``, ``cube``, ``K1``, ``K2``).

All coordinates are float64.  Ambient dimensions from 2 through 8 are the
supported public range; internal coordinate-deleted views may drop to 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DimensionMismatch, InvalidArgument, UnsupportedOperation

# Vertex dedup / on-plane classification tolerance.
DEDUP_TOL = 1e-10
# Singular-value cutoff used by affine rank computations.
RANK_TOL = 1e-9
MIN_DIM = 2
MAX_DIM = 8
# Sign-enumeration guard for zonotope vertex expansion (2**k points).
MAX_ZONOTOPE_EXPAND_GENERATORS = 16


def as_vector(x, n: int | None = None) -> np.ndarray:
    """Validate and return a 1-d float64 coordinate vector."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise InvalidArgument(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidArgument("vector has non-finite coordinates")
    if n is not None and v.shape[0] != n:
        raise DimensionMismatch(f"expected dimension {n}, got {v.shape[0]}")
    return v


def _as_point_array(points, what: str = "points") -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise InvalidArgument(f"{what} must be a non-empty (count, dim) array")
    if not np.all(np.isfinite(pts)):
        raise InvalidArgument(f"{what} contain non-finite coordinates")
    if pts.shape[1] > MAX_DIM:
        raise UnsupportedOperation(
            f"ambient dimension {pts.shape[1]} exceeds the supported cap {MAX_DIM}")
    return pts


def _dedup_points(pts: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Collapse rows that coincide within tol in max-norm.

    Deterministic: rows are visited in lexicographic order and the first
    representative of each cluster survives, so the result is already
    sorted.  Near-duplicates can only sit within ``tol`` of each other in
    the leading coordinate, which bounds the backward scan.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.shape[0] <= 1:
        return np.array(pts, copy=True)
    sp = pts[np.lexsort(pts.T[::-1])]
    xs = sp[:, 0]
    kept: list[int] = []
    for i in range(sp.shape[0]):
        dup = False
        j = len(kept) - 1
        while j >= 0 and xs[i] - xs[kept[j]] <= tol:
            if np.max(np.abs(sp[i] - sp[kept[j]])) <= tol:
                dup = True
                break
            j -= 1
        if not dup:
            kept.append(i)
    return sp[kept]


def _lexsorted(pts: np.ndarray) -> np.ndarray:
    """Rows sorted lexicographically by first coordinate, then second, ..."""
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class VPolytope:
    """Polytope given by its canonical vertex list (extreme points only,
    deduplicated, lexicographically sorted).  Build via :func:`convex_hull`."""

    vertices: np.ndarray

    def __post_init__(self):
        v = _as_point_array(self.vertices, "vertices")
        object.__setattr__(self, "vertices", _freeze(v))

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def qhull(self) -> ConvexHull:
        """Qhull triangulation of the (full-dimensional) polytope.

        Raises QhullError on degenerate input; callers are expected to check
        :func:`affine_dim` first.
        """
        return ConvexHull(self.vertices)


@dataclass(frozen=True)
class Zonotope:
    """Minkowski sum of segments: center + sum_i [-g_i, g_i].

    Generators are stored sign-normalized (first non-zero component
    positive) and lexicographically sorted, with zero generators dropped,
    so that structurally equal zonotopes compare equal.
    """

    center: np.ndarray
    generators: np.ndarray

    def __post_init__(self):
        c = as_vector(self.center)
        g = np.asarray(self.generators, dtype=float)
        if g.ndim != 2 or g.shape[1] != c.shape[0]:
            raise InvalidArgument(
                f"generators must be (k, {c.shape[0]}), got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise InvalidArgument("generators contain non-finite coordinates")
        if c.shape[0] > MAX_DIM:
            raise UnsupportedOperation(
                f"ambient dimension {c.shape[0]} exceeds the supported cap {MAX_DIM}")
        keep = []
        for row in g:
            if np.max(np.abs(row)) <= DEDUP_TOL:
                continue
            j = int(np.argmax(np.abs(row) > DEDUP_TOL))
            keep.append(row if row[j] > 0 else -row)
        norm = _lexsorted(np.array(keep)) if keep else np.zeros((0, c.shape[0]))
        object.__setattr__(self, "center", _freeze(c))
        object.__setattr__(self, "generators", _freeze(norm))

    @property
    def n(self) -> int:
        return self.center.shape[0]

    @property
    def generator_count(self) -> int:
        return self.generators.shape[0]


@dataclass(frozen=True)
class Ball:
    """Euclidean ball of the given radius, optionally flattened along
    coordinate axes (the result of projecting a ball onto coordinate
    hyperplanes; ``zeroed`` lists the collapsed axes)."""

    center: np.ndarray
    radius: float
    zeroed: frozenset = frozenset()

    def __post_init__(self):
        c = as_vector(self.center).copy()
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise InvalidArgument("radius must be non-negative and finite")
        z = frozenset(int(i) for i in self.zeroed)
        for i in z:
            if not 0 <= i < c.shape[0]:
                raise InvalidArgument(f"zeroed axis {i} out of range")
            c[i] = 0.0
        if c.shape[0] > MAX_DIM:
            raise UnsupportedOperation(
                f"ambient dimension {c.shape[0]} exceeds the supported cap {MAX_DIM}")
        object.__setattr__(self, "center", _freeze(c))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "zeroed", z)

    @property
    def n(self) -> int:
        return self.center.shape[0]

    @property
    def active_dim(self) -> int:
        """Dimension of the subspace the ball actually fills."""
        return self.n - len(self.zeroed)


@dataclass(frozen=True)
class DiskHull:
    """Convex hull of the three unit coordinate disks B^3 \\cap e_i^perp.

    The support function is exact: h(u) = sqrt(|u|^2 - min_i u_i^2).
    ``fineness`` controls the inscribed polytopal approximation (vertices
    per disk) used when a vertex representation is required.
    """

    fineness: int = 256

    def __post_init__(self):
        if not (8 <= int(self.fineness) <= 4096):
            raise InvalidArgument("fineness must be in [8, 4096]")
        object.__setattr__(self, "fineness", int(self.fineness))

    @property
    def n(self) -> int:
        return 3

    def as_polytope(self) -> "VPolytope":
        return _disk_hull_polytope(self.fineness)


@dataclass(frozen=True)
class NamedBody:
    """Serializable reference to a named construction.

    ``name`` is one of ``cross``, ``cube``, ``K1``, ``K2``.  The wrapper
    keeps corpus files stable under read/write round trips; ``expand()``
    yields the concrete body.
    """

    name: str
    n: int
    fineness: int = 256

    _ALLOWED = ("cross", "cube", "K1", "K2")

    def __post_init__(self):
        if self.name not in self._ALLOWED:
            raise InvalidArgument(
                f"unknown named body {self.name!r}; expected one of {self._ALLOWED}")
        n = int(self.n)
        if self.name in ("K1", "K2") and n != 3:
            raise InvalidArgument(f"{self.name} is a 3-dimensional body")
        if not (MIN_DIM <= n <= MAX_DIM):
            raise InvalidArgument(f"dimension {n} outside supported range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "fineness", int(self.fineness))

    def expand(self) -> "Body":
        if self.name == "cross":
            return cross_polytope(self.n)
        if self.name == "cube":
            return cube(self.n)
        if self.name == "K1":
            return DiskHull(self.fineness)
        return k2()


Body = Union[VPolytope, Zonotope, Ball, DiskHull, NamedBody]


def resolve(body: Body) -> Body:
    """Expand named wrappers; other bodies pass through."""
    if isinstance(body, NamedBody):
        return body.expand()
    if isinstance(body, (VPolytope, Zonotope, Ball, DiskHull)):
        return body
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def body_dim(body: Body) -> int:
    return resolve(body).n if isinstance(body, NamedBody) else body.n


# ---------------------------------------------------------------------------
# constructions


def cross_polytope(n: int) -> VPolytope:
    """Unit coordinate cross-polytope conv{+-e_1, ..., +-e_n}."""
    if not (MIN_DIM <= n <= MAX_DIM):
        raise InvalidArgument(f"dimension {n} outside supported range")
    eye = np.eye(n)
    return VPolytope(_lexsorted(np.vstack([eye, -eye])))


def cube(n: int) -> VPolytope:
    """Cube [-1, 1]^n."""
    if not (MIN_DIM <= n <= MAX_DIM):
        raise InvalidArgument(f"dimension {n} outside supported range")
    corners = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    return VPolytope(_lexsorted(corners))


def ball(n: int, radius: float = 1.0, center=None) -> Ball:
    if not (MIN_DIM <= n <= MAX_DIM):
        raise InvalidArgument(f"dimension {n} outside supported range")
    c = np.zeros(n) if center is None else as_vector(center, n)
    return Ball(c, radius)


def k1(fineness: int = 256) -> DiskHull:
    """Convex hull of the three unit coordinate disks in R^3."""
    return DiskHull(fineness)


def k2() -> VPolytope:
    """The cross-polytope sqrt(pi/2) * conv{+-e_i} in R^3 (the scaled
    octahedron whose coordinate sections are unit disks in area)."""
    return scale_body(cross_polytope(3), math.sqrt(math.pi / 2.0))


_DISK_HULL_CACHE: dict[int, VPolytope] = {}


def _disk_hull_polytope(fineness: int) -> VPolytope:
    if fineness not in _DISK_HULL_CACHE:
        t = 2.0 * np.pi * np.arange(fineness) / fineness
        cos, sin = np.cos(t), np.sin(t)
        pts = []
        for i in range(3):
            j, kk = [a for a in range(3) if a != i]
            disk = np.zeros((fineness, 3))
            disk[:, j] = cos
            disk[:, kk] = sin
            pts.append(disk)
        _DISK_HULL_CACHE[fineness] = convex_hull(np.vstack(pts))
    return _DISK_HULL_CACHE[fineness]


# ---------------------------------------------------------------------------
# support functions


def support(body: Body, u) -> float:
    """Support function h_K(u) = sup_{x in K} <x, u>.  Requires u != 0."""
    body = resolve(body)
    u = as_vector(u, body.n)
    if np.linalg.norm(u) == 0.0:
        raise InvalidArgument("support direction must be non-zero")
    return float(support_many(body, u[None, :])[0])


def support_many(body: Body, directions: np.ndarray) -> np.ndarray:
    """Vectorized support function over a (N, n) array of directions."""
    body = resolve(body)
    U = np.asarray(directions, dtype=float)
    if U.ndim != 2 or U.shape[1] != body.n:
        raise DimensionMismatch(
            f"directions must be (N, {body.n}), got {U.shape}")
    if isinstance(body, VPolytope):
        return np.max(U @ body.vertices.T, axis=1)
    if isinstance(body, Zonotope):
        base = U @ body.center
        if body.generator_count:
            base = base + np.sum(np.abs(U @ body.generators.T), axis=1)
        return base
    if isinstance(body, Ball):
        mask = np.ones(body.n, dtype=bool)
        for i in body.zeroed:
            mask[i] = False
        return U @ body.center + body.radius * np.linalg.norm(U[:, mask], axis=1)
    if isinstance(body, DiskHull):
        sq = U * U
        return np.sqrt(np.maximum(np.sum(sq, axis=1) - np.min(sq, axis=1), 0.0))
    raise InvalidArgument(f"not a body: {type(body).__name__}")


# ---------------------------------------------------------------------------
# hulls and sums


def convex_hull(points) -> VPolytope:
    """Canonical hull of a point cloud: extreme points only, deduplicated
    at 1e-10, lexicographically sorted.

    Handles degenerate (lower-dimensional) input by reducing to the affine
    span before calling qhull.
    """
    pts = _as_point_array(points)
    if pts.shape[0] == 1:
        return VPolytope(pts)
    origin = pts.mean(axis=0)
    centered = pts - origin
    # Affine rank via SVD; project to span coordinates when degenerate.
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(svals[0]) if svals.size else 1.0)
    rank = int(np.sum(svals > RANK_TOL * scale))
    if rank == 0:
        return VPolytope(origin[None, :])
    if rank == 1:
        t = centered @ vt[0]
        sel = pts[[int(np.argmin(t)), int(np.argmax(t))]]
        return VPolytope(_lexsorted(sel))
    coords = centered @ vt[:rank].T
    try:
        hull = ConvexHull(coords)
    except QhullError:
        hull = ConvexHull(coords, qhull_options="QJ")
    extreme = _dedup_points(pts[hull.vertices])
    return VPolytope(_lexsorted(extreme))


def minkowski_sum(p: Body, q: Body) -> VPolytope:
    """Minkowski sum of two polytopal bodies (hull of pairwise vertex sums)."""
    pv = vertices_of(p)
    qv = vertices_of(q)
    if pv.shape[1] != qv.shape[1]:
        raise DimensionMismatch("summands live in different dimensions")
    sums = (pv[:, None, :] + qv[None, :, :]).reshape(-1, pv.shape[1])
    return convex_hull(sums)


def vertices_of(body: Body) -> np.ndarray:
    """Vertex array of a polytopal body (zonotopes expanded, disk hulls
    approximated at their configured fineness)."""
    body = resolve(body)
    if isinstance(body, VPolytope):
        return body.vertices
    if isinstance(body, Zonotope):
        return as_vpolytope(body).vertices
    if isinstance(body, DiskHull):
        return body.as_polytope().vertices
    raise UnsupportedOperation(
        f"{type(body).__name__} has no exact vertex representation")


def as_vpolytope(body: Body, ball_points: int = 512) -> VPolytope:
    """Polytopal version of a body.

    Zonotopes are expanded exactly (sign enumeration of generators, capped
    at 2**16 points).  Balls become inscribed polytopes and disk hulls use
    their inscribed approximation; both of those are approximations.
    """
    body = resolve(body)
    if isinstance(body, VPolytope):
        return body
    if isinstance(body, Zonotope):
        k = body.generator_count
        if k > MAX_ZONOTOPE_EXPAND_GENERATORS:
            raise UnsupportedOperation(
                f"refusing to expand a zonotope with {k} generators "
                f"(cap {MAX_ZONOTOPE_EXPAND_GENERATORS})")
        if k == 0:
            return VPolytope(body.center[None, :])
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=k)))
        pts = body.center + signs @ body.generators
        return convex_hull(pts)
    if isinstance(body, DiskHull):
        return body.as_polytope()
    if isinstance(body, Ball):
        return _ball_polytope(body, ball_points)
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def _ball_polytope(b: Ball, count: int) -> VPolytope:
    d = b.active_dim
    axes = sorted(set(range(b.n)) - set(b.zeroed))
    if b.radius == 0.0 or d == 0:
        return VPolytope(b.center[None, :])
    if d == 1:
        pts = np.zeros((2, b.n))
        pts[0, axes[0]] = -b.radius
        pts[1, axes[0]] = b.radius
        return convex_hull(b.center + pts)
    if d == 2:
        t = 2.0 * np.pi * np.arange(count) / count
        sub = np.stack([np.cos(t), np.sin(t)], axis=1)
    elif d == 3:
        # Fibonacci sphere: deterministic, near-uniform.
        i = np.arange(count) + 0.5
        phi = np.arccos(1.0 - 2.0 * i / count)
        theta = np.pi * (1.0 + math.sqrt(5.0)) * i
        sub = np.stack([np.sin(phi) * np.cos(theta),
                        np.sin(phi) * np.sin(theta),
                        np.cos(phi)], axis=1)
    else:
        rng = np.random.default_rng(20240 + d)
        raw = rng.standard_normal((count, d))
        sub = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    pts = np.zeros((sub.shape[0], b.n))
    for col, ax in enumerate(axes):
        pts[:, ax] = sub[:, col]
    return convex_hull(b.center + b.radius * pts)


# ---------------------------------------------------------------------------
# affine structure


def affine_dim(body: Body) -> int:
    """Dimension of the affine hull (singular values cut at 1e-9)."""
    body = resolve(body)
    if isinstance(body, VPolytope):
        centered = body.vertices - body.vertices[0]
        if body.vertex_count == 1:
            return 0
        svals = np.linalg.svd(centered, compute_uv=False)
        scale = max(1.0, float(svals[0]))
        return int(np.sum(svals > RANK_TOL * scale))
    if isinstance(body, Zonotope):
        if body.generator_count == 0:
            return 0
        svals = np.linalg.svd(body.generators, compute_uv=False)
        scale = max(1.0, float(svals[0]))
        return int(np.sum(svals > RANK_TOL * scale))
    if isinstance(body, Ball):
        return body.active_dim if body.radius > 0 else 0
    if isinstance(body, DiskHull):
        return 3
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def constant_axes(p: VPolytope, tol: float = DEDUP_TOL) -> list[int]:
    """Coordinate axes along which every vertex shares one value."""
    spread = p.vertices.max(axis=0) - p.vertices.min(axis=0)
    return [i for i in range(p.n) if spread[i] <= tol]


def drop_axes(p: VPolytope, axes) -> VPolytope:
    """Delete the given coordinate axes (companion lower-dimensional view).

    Intrinsic volumes are translation invariant, so measures of a body that
    is constant along ``axes`` agree with measures of the dropped view.
    """
    axes = sorted(set(int(a) for a in axes))
    keep = [i for i in range(p.n) if i not in axes]
    if not keep:
        raise InvalidArgument("cannot drop every coordinate")
    return VPolytope(_lexsorted(_dedup_points(p.vertices[:, keep])))


def to_affine_coords(p: VPolytope) -> VPolytope:
    """Isometric coordinates for a lower-dimensional polytope: project onto
    an orthonormal basis of the affine span.  Intrinsic volumes agree."""
    d = affine_dim(p)
    if d == 0:
        raise InvalidArgument("a point has no affine coordinate view")
    centered = p.vertices - p.vertices.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    coords = centered @ vt[:d].T
    return VPolytope(_lexsorted(_dedup_points(coords)))


# ---------------------------------------------------------------------------
# scaling / translation


def scale_body(body: Body, factor: float) -> Body:
    """Dilate a body about the origin by a non-negative factor."""
    if not (factor >= 0 and math.isfinite(factor)):
        raise InvalidArgument("scale factor must be non-negative and finite")
    body = resolve(body)
    if isinstance(body, VPolytope):
        return VPolytope(_lexsorted(_dedup_points(factor * body.vertices)))
    if isinstance(body, Zonotope):
        return Zonotope(factor * body.center, factor * body.generators)
    if isinstance(body, Ball):
        return Ball(factor * body.center, factor * body.radius, body.zeroed)
    if isinstance(body, DiskHull):
        if factor == 1.0:
            return body
        return scale_body(body.as_polytope(), factor)
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def translate_body(body: Body, t) -> Body:
    body = resolve(body)
    t = as_vector(t, body.n)
    if isinstance(body, VPolytope):
        return VPolytope(_lexsorted(body.vertices + t))
    if isinstance(body, Zonotope):
        return Zonotope(body.center + t, body.generators)
    if isinstance(body, Ball):
        if any(abs(t[i]) > 0 for i in body.zeroed):
            raise InvalidArgument("cannot translate a flattened ball off its slab")
        return Ball(body.center + t, body.radius, body.zeroed)
    if isinstance(body, DiskHull):
        return translate_body(body.as_polytope(), t)
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def same_vertices(p: VPolytope, q: VPolytope, tol: float = 1e-9) -> bool:
    """Structural equality of canonical vertex lists within a tolerance."""
    if p.n != q.n or p.vertex_count != q.vertex_count:
        return False
    return bool(np.max(np.abs(p.vertices - q.vertices)) <= tol)
