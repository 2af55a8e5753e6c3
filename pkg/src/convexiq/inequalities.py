"""Catalog of coordinate projection/section inequalities for convex
bodies, with oriented slack reports, constructors for extremal bodies,
and an equality-case classifier.

Every catalog entry evaluates to one or more ordered links
``lhs >= rhs``; the report's oriented slack is the worst link slack, so
``oriented_slack >= -tolerance`` means the inequality held.  Tolerances
are ten times the propagated measure error: closed-form paths carry a
nominal 1e-10 relative error (so exact comparisons resolve at 1e-9 on
normalized bodies), quadrature paths carry their self-reported bounds.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from . import bodies as _b
from . import measures
from .bodies import (Ball, Body, DiskHull, VPolytope, Zonotope, affine_dim,
                     as_vector, convex_hull, resolve)
from .coordops import EMPTY, project_drop, section_drop
from .errors import InvalidArgument, UnsupportedMeasure
from .measures import Measured, kappa, vm
from .quadrature import QuadratureSpec

PROVEN = "proven"
CONJECTURE = "conjecture"
CONDITIONAL = "conditional"
OPEN = "open"

# Classifier tolerances (on bodies at unit scale).
CLASSIFY_TOL = 1e-7
NEAR_EQUALITY_FACTOR = 1e-6


# ---------------------------------------------------------------------------
# measured arithmetic (first-order error propagation)


def m_const(c: float) -> Measured:
    return Measured(float(c), 0.0, True)


def m_add(*xs: Measured) -> Measured:
    return Measured(sum(x.value for x in xs), sum(x.error for x in xs),
                    all(x.exact for x in xs))


def m_scale(x: Measured, c: float) -> Measured:
    return Measured(c * x.value, abs(c) * x.error, x.exact)


def m_mul(x: Measured, y: Measured) -> Measured:
    return Measured(x.value * y.value,
                    abs(x.value) * y.error + abs(y.value) * x.error,
                    x.exact and y.exact)


def m_pow(x: Measured, p: float) -> Measured:
    v = x.value ** p
    if x.value == 0.0:
        return Measured(0.0, x.error if p <= 1 else 0.0, x.exact)
    return Measured(v, abs(p) * abs(x.value) ** (p - 1.0) * x.error, x.exact)


def m_prod(xs) -> Measured:
    out = m_const(1.0)
    for x in xs:
        out = m_mul(out, x)
    return out


def m_sum_sq(xs) -> Measured:
    return m_add(*[m_mul(x, x) for x in xs])


def m_max(xs) -> Measured:
    best = max(xs, key=lambda x: x.value)
    return Measured(best.value, max(x.error for x in xs), all(x.exact for x in xs))


# ---------------------------------------------------------------------------
# report structure


@dataclass(frozen=True)
class Link:
    """One ordered comparison lhs >= rhs inside an inequality report."""

    name: str
    lhs: Measured
    rhs: Measured

    @property
    def slack(self) -> float:
        return self.lhs.value - self.rhs.value

    @property
    def tolerance(self) -> float:
        scale = max(1.0, abs(self.lhs.value), abs(self.rhs.value))
        return 10.0 * (self.lhs.error + self.rhs.error) + 1e-16 * scale


@dataclass(frozen=True)
class IneqReport:
    """Outcome of evaluating one catalog inequality on one body."""

    id: str
    params: dict
    n: int
    lhs: float
    rhs: float
    oriented_slack: float
    tolerance: float
    satisfied: bool
    equality_flag: str            # strict | near-equality | equality-case-matched
    status: str                   # proven | conjecture | conditional | open
    quadrature_error: float | None
    body_fingerprint: str
    warnings: tuple = ()
    links: tuple = ()             # (name, lhs, rhs, slack) per link

    def summary_line(self) -> str:
        mark = "PASS" if self.satisfied else "VIOLATION"
        extra = f" [{self.equality_flag}]" if self.equality_flag != "strict" else ""
        return (f"{mark} {self.id} ({self.status}) slack={self.oriented_slack:+.6e} "
                f"tol={self.tolerance:.2e}{extra}")


def body_fingerprint(body: Body) -> str:
    """Stable short hash of the canonical serialized body."""
    from . import io as _io  # local import to avoid a cycle
    payload = _io.dumps_body(body)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# measure helpers


def _vm_body(body: Body, m: int, spec) -> Measured:
    return vm(body, m, spec)


def _vm_proj(body: Body, i: int, m: int, spec) -> Measured:
    return vm(project_drop(body, i), m, spec)


def _vm_sect(body: Body, i: int, m: int, spec) -> Measured:
    s = section_drop(body, i)
    if s is EMPTY:
        return Measured.of_exact(0.0)
    return vm(s, m, spec)


def _origin_interior(body: Body) -> bool:
    body = resolve(body)
    if isinstance(body, Ball):
        return (body.active_dim == body.n and
                float(np.linalg.norm(body.center)) < body.radius - 1e-12)
    if isinstance(body, DiskHull):
        return False  # K1 is 3-dimensional but the origin is interior; see below
    if isinstance(body, Zonotope):
        if affine_dim(body) < body.n:
            return False
        dirs = _unit_grid(body.n)
        h = _b.support_many(body, dirs)
        hneg = _b.support_many(body, -dirs)
        return bool(np.all(h > 1e-10) and np.all(hneg > 1e-10))
    if isinstance(body, VPolytope):
        if affine_dim(body) < body.n:
            return False
        eq = body.qhull.equations
        return bool(np.max(eq[:, -1]) < -1e-12)
    return False


def _unit_grid(n: int, count: int = 128) -> np.ndarray:
    rng = np.random.default_rng(7)
    u = rng.standard_normal((count, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.vstack([u, np.eye(n), -np.eye(n)])


# ---------------------------------------------------------------------------
# catalog evaluators


def _ev_loomis_whitney(body, n, m, params, spec):
    projs = [_vm_proj(body, i, n - 1, spec) for i in range(n)]
    vol = _vm_body(body, n, spec)
    return [Link("projection-product", m_prod(projs), m_pow(vol, n - 1))]


def _ev_meyer(body, n, m, params, spec):
    sects = [_vm_sect(body, i, n - 1, spec) for i in range(n)]
    vol = _vm_body(body, n, spec)
    c = math.factorial(n - 1) / float(n ** (n - 1))
    return [Link("dual-product", m_pow(vol, n - 1), m_scale(m_prod(sects), c))]


def _ev_bm_upper(body, n, m, params, spec):
    projs = [_vm_proj(body, i, n - 1, spec) for i in range(n)]
    top = _vm_body(body, n - 1, spec)
    return [Link("projection-sum", m_add(*projs), top)]


def _ev_cg_upper(body, n, m, params, spec):
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    return [Link("scaled-projection-sum",
                 m_scale(m_add(*projs), 1.0 / (n - m)), val)]


def _ev_sqrt_n_lower(body, n, m, params, spec):
    projs = [_vm_proj(body, i, n - 1, spec) for i in range(n)]
    sects = [_vm_sect(body, i, n - 1, spec) for i in range(n)]
    top = _vm_body(body, n - 1, spec)
    psum = m_scale(m_add(*projs), 1.0 / math.sqrt(n))
    ssum = m_scale(m_add(*sects), 1.0 / math.sqrt(n))
    return [Link("projections", top, psum), Link("sections", psum, ssum)]


def _ev_weighted_bm(body, n, m, params, spec):
    a = params["a"]
    projs = [_vm_proj(body, i, n - 1, spec) for i in range(n)]
    top = _vm_body(body, n - 1, spec)
    if top.value <= 0:
        raise InvalidArgument("weighted bound needs a body with positive V_{n-1}")
    ratio = m_mul(m_add(*[m_scale(p, ai) for p, ai in zip(projs, a)]),
                  m_pow(top, -1.0))
    return [Link("lower", ratio, m_const(min(a))),
            Link("upper", m_const(math.sqrt(sum(ai * ai for ai in a))), ratio)]


def _ev_square_lower(body, n, m, params, spec):
    projs = [_vm_proj(body, i, n - 1, spec) for i in range(n)]
    sects = [_vm_sect(body, i, n - 1, spec) for i in range(n)]
    top = _vm_body(body, n - 1, spec)
    return [Link("projections", m_mul(top, top), m_sum_sq(projs)),
            Link("sections", m_sum_sq(projs), m_sum_sq(sects))]


def _ev_pythagorean(body, n, m, params, spec):
    u = params["u"]
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    mu = _vm_arbitrary_projection(body, u, m, spec)
    return [Link("direction-split", m_sum_sq(projs), m_mul(mu, mu))]


def _vm_arbitrary_projection(body: Body, u, m: int, spec) -> Measured:
    """V_m(K | u^perp) for a unit direction u.

    Zonotopes project to zonotopes (generators projected), so every m is
    exact.  Polytopes support m = n-1 through the facet brightness
    formula.  Balls are closed-form.
    """
    body = resolve(body)
    n = body.n
    u = as_vector(u, n)
    norm = float(np.linalg.norm(u))
    if norm == 0:
        raise InvalidArgument("projection direction must be non-zero")
    u = u / norm
    if isinstance(body, Zonotope):
        g = body.generators - np.outer(body.generators @ u, u)
        z = Zonotope(np.zeros(n), g)
        return Measured.of_exact(measures.vm_zonotope(z, m) if g.shape[0] >= 1 else 0.0)
    if isinstance(body, Ball):
        shadow = Ball(np.zeros(max(body.active_dim - 1, 1)), body.radius) \
            if body.active_dim > 1 else None
        if shadow is None or m > shadow.n:
            return Measured.of_exact(0.0)
        return Measured.of_exact(measures.vm_ball(shadow, m))
    if isinstance(body, VPolytope):
        if m != n - 1:
            raise UnsupportedMeasure(
                "arbitrary-direction projections of polytopes are supported "
                "for m = n-1 only (facet brightness formula)")
        return Measured.of_exact(measures.brightness_polytope(body, u))
    if isinstance(body, DiskHull):
        return _vm_arbitrary_projection(body.as_polytope(), u, m, spec)
    raise InvalidArgument(f"not a body: {type(body).__name__}")


def _ev_zonoid_lower(body, n, m, params, spec):
    if not isinstance(resolve(body), Zonotope):
        raise InvalidArgument("this bound is stated for zonotopes")
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    return [Link("zonotope-square", m_mul(val, val),
                 m_scale(m_sum_sq(projs), 1.0 / (n - m)))]


def mth_lower_constant(n: int, m: int) -> float:
    """(1/pi) * (Gamma((n-m)/2) / Gamma((n-m+1)/2))^2."""
    if not 1 <= m <= n - 1:
        raise InvalidArgument("need 1 <= m <= n-1")
    g = math.gamma((n - m) / 2.0) / math.gamma((n - m + 1) / 2.0)
    return g * g / math.pi


def _ev_mth_lower(body, n, m, params, spec):
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    c = mth_lower_constant(n, m)
    return [Link("gamma-square", m_mul(val, val), m_scale(m_sum_sq(projs), c))]


def _ev_reverse_cs(body, n, m, params, spec):
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    total = m_add(*projs)
    return [Link("sum-square", m_scale(m_mul(total, total),
                                       1.0 / math.sqrt(n - m)),
                 m_sum_sq(projs))]


def _ev_cond_eq111(body, n, m, params, spec):
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    total = m_add(*projs)
    bound = total.value / (n - m)
    tol = 10.0 * total.error + 1e-12 * max(1.0, total.value)
    if any(p.value > bound + tol for p in projs):
        return None  # hypothesis fails: conditional inequality inapplicable
    return [Link("conditional-sum-square",
                 m_scale(m_mul(total, total), 1.0 / (n - m)), m_sum_sq(projs))]


def _ev_easy_bounds(body, n, m, params, spec):
    p = params["p"]
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    sects = [_vm_sect(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    pmean = lambda xs: m_pow(m_scale(m_add(*[m_pow(x, p) for x in xs]), 1.0 / n),
                             1.0 / p)
    mp = pmean(projs)
    ms = pmean(sects)
    return [Link("projections", val, mp), Link("sections", mp, ms)]


def _ev_trivmax(body, n, m, params, spec):
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    sects = [_vm_sect(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    return [Link("projections", val, m_max(projs)),
            Link("sections", m_max(projs), m_max(sects))]


def _ev_bm_v1_lower(body, n, m, params, spec):
    projs = [_vm_proj(body, i, 1, spec) for i in range(n)]
    val = _vm_body(body, 1, spec)
    c0 = min_mean_width_ratio(n, spec)
    return [Link("width-sum", val, m_mul(c0, m_add(*projs)))]


def _ev_heron(body, n, m, params, spec):
    if n != 3:
        raise InvalidArgument("the Heron-type bound is three-dimensional")
    a = [_vm_sect(body, i, 1, spec) for i in range(3)]
    top = _vm_body(body, 2, spec)
    sq = m_sum_sq(a)
    quads = m_add(*[m_pow(x, 4.0) for x in a])
    rhs = m_add(m_scale(m_mul(sq, sq), 1.0 / 16.0), m_scale(quads, -1.0 / 8.0))
    return [Link("heron", m_mul(top, top), rhs)]


def _ev_prob4(body, n, m, params, spec):
    c2 = params["c2"]
    projs = [_vm_proj(body, i, m, spec) for i in range(n)]
    sects = [_vm_sect(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m, spec)
    return [Link("projections", m_mul(val, val), m_scale(m_sum_sq(projs), c2)),
            Link("sections", m_scale(m_sum_sq(projs), c2),
                 m_scale(m_sum_sq(sects), c2))]


def _ev_prob5(body, n, m, params, spec):
    c3 = params["c3"]
    sects = [_vm_sect(body, i, m, spec) for i in range(n)]
    val = _vm_body(body, m + 1, spec)
    lhs = m_pow(val, float(m * n))
    rhs = m_scale(m_prod([m_pow(s, float(m + 1)) for s in sects]), c3)
    return [Link("section-product", lhs, rhs)]


# ---------------------------------------------------------------------------
# catalog table


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    evaluator: object
    needs_m: bool = False
    m_range: str = ""            # documented range, checked in _check_m
    extra_params: tuple = ()
    equality_families: tuple = ()


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.id] = entry


_register(CatalogEntry("loomis_whitney", _ev_loomis_whitney,
                       equality_families=("coordinate-box",)))
_register(CatalogEntry("meyer", _ev_meyer,
                       equality_families=("coordinate-cross-polytope",)))
_register(CatalogEntry("bm_upper", _ev_bm_upper,
                       equality_families=("coordinate-box",)))
_register(CatalogEntry("cg_upper", _ev_cg_upper, needs_m=True, m_range="1..n-1",
                       equality_families=("coordinate-box",)))
_register(CatalogEntry("sqrt_n_lower", _ev_sqrt_n_lower,
                       equality_families=("regular-coordinate-cross-polytope",)))
_register(CatalogEntry("weighted_bm", _ev_weighted_bm, extra_params=("a",)))
_register(CatalogEntry("square_lower", _ev_square_lower,
                       equality_families=("coordinate-cross-polytope", "flat")))
_register(CatalogEntry("pythagorean", _ev_pythagorean, needs_m=True,
                       m_range="1..n-1", extra_params=("u",)))
_register(CatalogEntry("zonoid_lower", _ev_zonoid_lower, needs_m=True,
                       m_range="1..n-2",
                       equality_families=("diagonal-generators", "flat")))
_register(CatalogEntry("mth_lower", _ev_mth_lower, needs_m=True, m_range="1..n-2"))
_register(CatalogEntry("reverse_cs", _ev_reverse_cs, needs_m=True, m_range="1..n-2"))
_register(CatalogEntry("cond_eq111", _ev_cond_eq111, needs_m=True, m_range="1..n-2"))
_register(CatalogEntry("easy_bounds", _ev_easy_bounds, needs_m=True,
                       m_range="1..n-1", extra_params=("p",)))
_register(CatalogEntry("trivmax", _ev_trivmax, needs_m=True, m_range="1..n-1"))
_register(CatalogEntry("bm_v1_lower", _ev_bm_v1_lower,
                       equality_families=("regular-coordinate-cross-polytope",)))
_register(CatalogEntry("heron_n3", _ev_heron,
                       equality_families=("o-symmetric-coordinate-cross-polytope",)))
_register(CatalogEntry("prob4_family", _ev_prob4, needs_m=True, m_range="1..n-2",
                       extra_params=("c2",)))
_register(CatalogEntry("prob5_family", _ev_prob5, needs_m=True, m_range="1..n-2",
                       extra_params=("c3",)))


def catalog_ids() -> list[str]:
    return sorted(CATALOG)


def inequality_status(ineq_id: str, n: int, m: int | None) -> str:
    """Proof status of a catalog inequality at the given (n, m)."""
    if ineq_id in ("loomis_whitney", "meyer", "bm_upper", "sqrt_n_lower",
                   "weighted_bm", "square_lower", "pythagorean", "mth_lower",
                   "trivmax", "easy_bounds", "bm_v1_lower", "zonoid_lower"):
        return PROVEN
    if ineq_id == "cg_upper":
        return PROVEN if m in (1, n - 1, n - 2) else CONJECTURE
    if ineq_id == "reverse_cs":
        return PROVEN if m in (1, n - 2) else CONJECTURE
    if ineq_id == "cond_eq111":
        return CONDITIONAL
    if ineq_id == "heron_n3":
        return CONJECTURE
    if ineq_id in ("prob4_family", "prob5_family"):
        return OPEN
    raise InvalidArgument(f"unknown inequality id {ineq_id!r}")


def _check_m(entry: CatalogEntry, n: int, m) -> int | None:
    if not entry.needs_m:
        return None
    if m is None:
        raise InvalidArgument(f"{entry.id} requires the index m ({entry.m_range})")
    m = int(m)
    lo, hi = 1, n - 1
    if entry.m_range == "1..n-2":
        hi = n - 2
    if not lo <= m <= hi:
        raise InvalidArgument(
            f"{entry.id}: m={m} outside {entry.m_range} for n={n}")
    return m


def evaluate(ineq_id: str, body: Body, m: int | None = None,
             params: dict | None = None,
             spec: QuadratureSpec | None = None,
             tolerance: float | None = None) -> IneqReport:
    """Evaluate one catalog inequality on one body.

    ``tolerance`` overrides the propagated-error tolerance when given.
    Violated conjectures do not raise; callers inspect ``satisfied`` and
    ``status``.
    """
    if ineq_id not in CATALOG:
        raise InvalidArgument(
            f"unknown inequality id {ineq_id!r}; known: {', '.join(catalog_ids())}")
    entry = CATALOG[ineq_id]
    body = resolve(body)
    n = body.n
    if n < 2:
        raise InvalidArgument("inequalities need ambient dimension >= 2")
    m_checked = _check_m(entry, n, m)
    params = dict(params or {})
    warnings: list[str] = []
    for name in entry.extra_params:
        if name not in params:
            if name == "p":
                params["p"] = 2.0
            elif name == "a":
                params["a"] = [1.0] * n
            elif name == "u":
                raise InvalidArgument("pythagorean requires a direction u")
            else:
                raise InvalidArgument(f"{ineq_id} requires parameter {name!r}")
    if "a" in params:
        a = [float(x) for x in params["a"]]
        if len(a) != n or any(x <= 0 for x in a):
            raise InvalidArgument("weights a must be n positive reals")
        params["a"] = a
    if "p" in params:
        params["p"] = float(params["p"])
        if params["p"] <= 0:
            raise InvalidArgument("exponent p must be positive")
    if "u" in params:
        params["u"] = [float(x) for x in as_vector(params["u"], n)]
    for cname in ("c2", "c3"):
        if cname in params:
            params[cname] = float(params[cname])
            if params[cname] <= 0:
                raise InvalidArgument(f"constant {cname} must be positive")
    if ineq_id == "meyer" and not _origin_interior(body):
        warnings.append("origin not interior: the section bound may fail legitimately")

    links = entry.evaluator(body, n, m_checked, params, spec)
    status = inequality_status(ineq_id, n, m_checked)
    fingerprint = body_fingerprint(body)

    if links is None:  # conditional hypothesis failed
        return IneqReport(
            id=ineq_id, params=_param_payload(params, m_checked), n=n,
            lhs=0.0, rhs=0.0, oriented_slack=0.0,
            tolerance=tolerance if tolerance is not None else 0.0,
            satisfied=True, equality_flag="strict", status=status,
            quadrature_error=None, body_fingerprint=fingerprint,
            warnings=tuple(warnings + ["hypothesis not met: inequality inapplicable"]),
            links=())

    primary = links[0]
    tol = max(l.tolerance for l in links)
    if tolerance is not None:
        tol = float(tolerance)
    slack = min(l.slack for l in links)
    satisfied = all(l.slack >= -max(l.tolerance, tol if tolerance is not None else 0.0)
                    for l in links)
    quad_err = None
    if any(not (l.lhs.exact and l.rhs.exact) for l in links):
        quad_err = max(l.lhs.error + l.rhs.error for l in links
                       if not (l.lhs.exact and l.rhs.exact))
    scale = max(1.0, abs(primary.lhs.value), abs(primary.rhs.value))
    near = abs(slack) <= max(100.0 * tol, NEAR_EQUALITY_FACTOR * scale)
    flag = "strict"
    if satisfied and near:
        flag = "near-equality"
        matched = equality_case_classifier(body, m=m_checked)
        if _implied_families(matched) & set(entry.equality_families):
            flag = "equality-case-matched"
    return IneqReport(
        id=ineq_id, params=_param_payload(params, m_checked), n=n,
        lhs=primary.lhs.value, rhs=primary.rhs.value,
        oriented_slack=slack, tolerance=tol, satisfied=satisfied,
        equality_flag=flag, status=status, quadrature_error=quad_err,
        body_fingerprint=fingerprint, warnings=tuple(warnings),
        links=tuple((l.name, l.lhs.value, l.rhs.value, l.slack) for l in links))


def _param_payload(params: dict, m: int | None) -> dict:
    out = dict(params)
    if m is not None:
        out["m"] = m
    return out


def _implied_families(matched: str) -> set:
    """A classifier label implies every strictly weaker family label
    (regular cross-polytopes are o-symmetric, which are coordinate
    cross-polytopes)."""
    out = {matched}
    if matched == "regular-coordinate-cross-polytope":
        out |= {"o-symmetric-coordinate-cross-polytope",
                "coordinate-cross-polytope"}
    elif matched == "o-symmetric-coordinate-cross-polytope":
        out.add("coordinate-cross-polytope")
    return out


# ---------------------------------------------------------------------------
# extremal constructors


def cross_polytope_from_sections(s) -> VPolytope:
    """Coordinate cross-polytope whose hyperplane sections have the given
    (n-1)-measures: half-diagonals t_i = ((n-1)! prod s)^(1/(n-1)) / (2 s_i)."""
    s = [float(x) for x in s]
    n = len(s)
    if not _b.MIN_DIM <= n <= _b.MAX_DIM:
        raise InvalidArgument(f"need {_b.MIN_DIM} <= n <= {_b.MAX_DIM} target sections")
    if any(x <= 0 for x in s):
        raise InvalidArgument("section measures must be positive")
    prod = math.prod(s)
    root = (math.factorial(n - 1) * prod) ** (1.0 / (n - 1))
    t = [root / (2.0 * si) for si in s]
    pts = np.zeros((2 * n, n))
    for i, ti in enumerate(t):
        pts[2 * i, i] = ti
        pts[2 * i + 1, i] = -ti
    return convex_hull(pts)


@dataclass(frozen=True)
class SegmentResult:
    """Outcome of the segment reconstruction: either the segment or the
    index (1-based) where feasibility fails."""

    feasible: bool
    segment: VPolytope | None
    violating_index: int | None
    half_extents: tuple


def segment_from_projections(a) -> SegmentResult:
    """Origin-centered segment whose projection widths V_1(L | e_i^perp)
    equal a_i, when one exists.

    The squared coordinates are x_i^2 = (sum a^2 - (n-1) a_i^2) / (n-1);
    infeasibility (some x_i^2 < 0) is reported as a value, not an error.
    """
    a = [float(x) for x in a]
    n = len(a)
    if not _b.MIN_DIM <= n <= _b.MAX_DIM:
        raise InvalidArgument(f"need {_b.MIN_DIM} <= n <= {_b.MAX_DIM} projection widths")
    if any(x < 0 for x in a):
        raise InvalidArgument("projection widths must be non-negative")
    total = sum(x * x for x in a)
    sq = [(total - (n - 1) * ai * ai) / (n - 1) for ai in a]
    for i, v in enumerate(sq):
        if v < -1e-12 * max(1.0, total):
            return SegmentResult(False, None, i + 1, ())
    x = np.sqrt(np.maximum(sq, 0.0))
    seg = convex_hull(np.vstack([x / 2.0, -x / 2.0]))
    return SegmentResult(True, seg, None, tuple(float(v) / 2.0 for v in x))


def min_mean_width_ratio(n: int, spec: QuadratureSpec | None = None) -> Measured:
    """The sharp constant min_K V_1(K) / sum_i V_1(K|e_i^perp), attained by
    the coordinate cross-polytope.

    Exact at n = 3 (arccos(1/3)/pi); quadrature-backed for n >= 4.
    """
    if n < 3:
        raise InvalidArgument("the width-ratio constant needs n >= 3 "
                              "(segments make the ratio degenerate at n = 2)")
    if n > _b.MAX_DIM:
        raise InvalidArgument(f"dimension {n} outside supported range")
    if n == 3:
        return Measured.of_exact(math.acos(1.0 / 3.0) / math.pi)
    cross = _b.cross_polytope(n)
    num = vm(cross, 1, spec)
    # The projection of the cross-polytope onto a coordinate hyperplane is
    # the cross-polytope of that hyperplane.
    den = vm(_b.cross_polytope(n - 1), 1, spec)
    return m_mul(num, m_pow(m_scale(den, float(n)), -1.0))


# ---------------------------------------------------------------------------
# equality-case classifier


def equality_case_classifier(body: Body, m: int | None = None,
                             tol: float = CLASSIFY_TOL) -> str:
    """Match a body against the extremal families of the catalog.

    Returns one of ``coordinate-box``, ``coordinate-cross-polytope``,
    ``o-symmetric-coordinate-cross-polytope``,
    ``regular-coordinate-cross-polytope``, ``diagonal-generators``,
    ``flat`` (dimension <= m), or ``unmatched``.
    """
    body = resolve(body)
    if m is not None and affine_dim(body) <= m:
        return "flat"
    if isinstance(body, Zonotope):
        g = body.generators
        if g.shape[0] >= 1:
            norms = np.linalg.norm(g, axis=1)
            pattern = np.abs(g) / norms[:, None]
            if np.max(np.abs(pattern - pattern[0])) <= tol:
                return "diagonal-generators"
        return "unmatched"
    if not isinstance(body, VPolytope):
        return "unmatched"
    v = body.vertices
    scale = max(1.0, float(np.max(np.abs(v))))
    if _is_coordinate_box(v, tol * scale):
        return "coordinate-box"
    cross_kind = _cross_polytope_kind(v, tol * scale)
    if cross_kind is not None:
        return cross_kind
    return "unmatched"


def _is_coordinate_box(v: np.ndarray, tol: float) -> bool:
    lo = v.min(axis=0)
    hi = v.max(axis=0)
    wide = hi - lo > tol
    d = int(np.sum(wide))
    if v.shape[0] != 2 ** d:
        return False
    for row in v:
        if not np.all((np.abs(row - lo) <= tol) | (np.abs(row - hi) <= tol)):
            return False
    # All corner combinations must be present for the wide axes.
    corners = set()
    for row in v:
        key = tuple(int(abs(row[j] - hi[j]) <= tol) for j in range(v.shape[1]) if wide[j])
        corners.add(key)
    return len(corners) == 2 ** d


def _cross_polytope_kind(v: np.ndarray, tol: float) -> str | None:
    n = v.shape[1]
    # Candidate common point: per coordinate, the most frequent value.
    center = np.zeros(n)
    for j in range(n):
        vals = np.sort(v[:, j])
        best_val, best_count = vals[0], 1
        i = 0
        while i < len(vals):
            k = i
            while k + 1 < len(vals) and vals[k + 1] - vals[i] <= tol:
                k += 1
            if k - i + 1 > best_count:
                best_count, best_val = k - i + 1, vals[(i + k) // 2]
            i = k + 1
        center[j] = best_val
    diffs = v - center
    axes = []
    for row in diffs:
        big = np.abs(row) > tol
        if int(np.sum(big)) != 1:
            return None
        axes.append((int(np.argmax(np.abs(row))), float(row[np.argmax(np.abs(row))])))
    covered = {a for a, _ in axes}
    if len(covered) < 2:
        return None
    lengths = [abs(t) for _, t in axes]
    o_symmetric = (float(np.max(np.abs(center))) <= tol and
                   len(axes) == 2 * len(covered) and
                   all(any(a == b and abs(t + s) <= tol for b, s in axes)
                       for a, t in axes))
    regular = o_symmetric and (max(lengths) - min(lengths) <= tol) and \
        len(covered) == v.shape[1]
    if regular:
        return "regular-coordinate-cross-polytope"
    if o_symmetric:
        return "o-symmetric-coordinate-cross-polytope"
    return "coordinate-cross-polytope"
