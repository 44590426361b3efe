"""Postcritical elastica of a rod clamped at one end, pinned to a circle.

The rod (bending stiffness B, length l) slides at s = 0 with a pin and
rotational spring k_r on a fixed circle of radius R_c; the far end s = l is
clamped to stay parallel to the load axis and free to move along it.  The
constraint reaction R acts along the pin-center line, which serves as the
local x1 axis, so theta obeys theta'' = (R/B) sin theta and the solution
comes out in Jacobi elliptic functions of modulus k, with k >= 1 legal in
the roller case.  Compatibility pins the clamp to the horizontal through
the circle center: [x1(l) - c] sin phi - x2(l) cos phi = 0 with c = +-R_c,
and the axial dead load follows as F = R cos phi, so the load changes sign
exactly where the pin tops the circle at phi = pi/2.

Sign conventions: only theta0 >= 0 is computed; the mirror branch follows
by negating x2 and phi.  half = "left" places the center between pin and
clamp (the assembly that buckles under tension when R_c < l), half =
"right" places it beyond the pin (the compressive assembly).

Accuracy note: tensile states (R > 0) push the modulus toward 1 as
theta0 -> 0 like k - 1 ~ theta0^2/8.  The turning point quantities stay
conditioned in the Carlson forms, so the remaining floor is the m -> 1
Jacobi series inside scipy's ellipj: residuals are clean to ~5e-12 at
theta0 = 1e-4 and degrade to ~2e-10 by 1e-6.  Continuation schedules
start at 1e-4, where solved reactions are good to ~2e-7 absolute.
Compressive states keep a large modulus and stay clean at any theta0.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .branch import BranchTrace
from .elliptic import _E_sym, _F_sym, ellint_F, jacobi_am, jacobi_dn, jacobi_epsilon
from .errors import ContinuationError, DegenerateGeometryError
from .rodlinear import RodModel, critical_force, find_critical_loads

__all__ = [
    "ElasticaProblem",
    "ElasticaState",
    "PostcriticalPoint",
    "MultipleRootWarning",
    "modulus_from",
    "make_state",
    "theta_at",
    "coordinates_at",
    "compatibility_residual",
    "solve_R",
    "trace_branch",
    "shape_export",
    "write_branch_csv",
    "write_shape_csv",
]

_HALVES = ("left", "right")
_SCAN_POINTS = 200
_BRENTQ_RTOL = 4.0 * np.finfo(float).eps


class MultipleRootWarning(UserWarning):
    """The reaction scan window bracketed more than one root (higher modes)."""


@dataclass(frozen=True)
class ElasticaProblem:
    """Rod on a circular constraint; half selects the trivial assembly side."""

    B: float
    l: float
    k_r: float = 0.0
    R_c: float = 1.0
    half: str = "left"

    def __post_init__(self):
        if not self.B > 0.0:
            raise ValueError("bending stiffness B must be positive")
        if not self.l > 0.0:
            raise ValueError("length l must be positive")
        if not self.R_c > 0.0:
            raise ValueError("constraint radius R_c must be positive")
        if self.k_r < 0.0:
            raise ValueError("spring stiffness k_r must be nonnegative")
        if self.half not in _HALVES:
            raise ValueError("half must be 'left' or 'right'")


@dataclass(frozen=True)
class ElasticaState:
    """One elastica configuration at fixed (theta0, R).

    delta is the clamp displacement along the load axis, zero at the
    undeformed assembly; it is physically meaningful once R solves the
    compatibility condition.  u0 and angle_offset are the elliptic origin
    shift F(beta0, k) and the H(R) pi branch offset of the rotation field;
    eps0 and dn0 cache epsilon(u0) and dn(u0) from the well conditioned
    turning point form for use in the coordinate quadratures.
    """

    theta0: float
    R: float
    modulus: float
    alpha_tilde: float
    beta0: float
    phi: float
    F: float
    delta: float
    problem: ElasticaProblem
    u0: float
    angle_offset: float
    eps0: float
    dn0: float


@dataclass(frozen=True)
class PostcriticalPoint:
    theta0: float
    R: float
    F: float
    phi: float
    delta: float


def _rotation_denominator(theta0, R, k_r, B):
    """(den, spring, half_trig, at2) of the half-angle modulus identity."""
    if R == 0.0:
        raise DegenerateGeometryError("zero reaction leaves the modulus undefined")
    at2 = abs(R) / B
    half_trig = math.cos(theta0 / 2.0) if R > 0.0 else math.sin(theta0 / 2.0)
    spring = theta0 * k_r / B
    den = spring * spring + 4.0 * at2 * half_trig * half_trig
    if den <= 0.0:
        raise DegenerateGeometryError("degenerate rotation field: vanishing modulus denominator")
    return den, spring, half_trig, at2


def modulus_from(theta0, R, k_r=0.0, B=1.0):
    """Elliptic modulus of the rotation field.

    Evaluated through half-angle identities,
    den = (theta0 k_r/B)^2 + 4 (|R|/B) cos^2(theta0/2)   for R > 0,
    with sin^2 in place of cos^2 for R < 0, which equals the raw form
    (theta0 k_r/B)^2 + 2 (|R|/B) (sgn(R) cos theta0 + 1) but avoids the
    catastrophic cancellation that otherwise corrupts small theta0.
    """
    den, _, _, at2 = _rotation_denominator(theta0, R, k_r, B)
    return 2.0 * math.sqrt(at2) / math.sqrt(den)


def make_state(theta0, R, problem):
    """Build the elliptic representation of the rod at a trial reaction R."""
    if theta0 < 0.0:
        raise ValueError("theta0 must be nonnegative; mirror states negate x2 and phi")
    den, spring, half_trig, at2 = _rotation_denominator(theta0, R, problem.k_r, problem.B)
    at = math.sqrt(at2)
    k = 2.0 * at / math.sqrt(den)
    offset = math.pi if R > 0.0 else 0.0
    beta0 = (theta0 - offset) / 2.0
    if k > 1.0:
        # turning point at the pin: sin(gamma) = k sin(beta0), and the
        # complement cos^2(gamma) = (theta0 k_r/B)^2/den is kept in closed
        # form; squaring an arcsin here would cost sqrt(eps) of phase
        m1 = den / (4.0 * at2)
        sg = math.copysign(2.0 * at * half_trig / math.sqrt(den), beta0)
        c2 = spring * spring / den
        w = (1.0 - m1) + m1 * c2
        u0 = _F_sym(sg, c2, w) / k
        eps0 = (_E_sym(sg, c2, w, m1) - (1.0 - m1) * k * u0) / (k * m1)
        dn0 = math.sqrt(c2)
    else:
        u0 = ellint_F(beta0, k)
        eps0 = jacobi_epsilon(u0, k)
        dn0 = jacobi_dn(u0, k)
    ul = problem.l * at / k
    phi = 2.0 * jacobi_am(ul + u0, k) + offset
    pref = math.copysign(1.0, R) * 2.0 / (k * at)
    x1 = pref * ((1.0 - 0.5 * k * k) * ul + eps0 - jacobi_epsilon(ul + u0, k))
    x2 = pref * (jacobi_dn(ul + u0, k) - dn0)
    c = problem.R_c if problem.half == "left" else -problem.R_c
    if abs(math.cos(phi)) >= abs(math.sin(phi)):
        lam = (x1 - c) / math.cos(phi)
    else:
        lam = x2 / math.sin(phi)
    return ElasticaState(
        theta0=theta0,
        R=R,
        modulus=k,
        alpha_tilde=at,
        beta0=beta0,
        phi=phi,
        F=R * math.cos(phi),
        delta=lam + c - problem.l,
        problem=problem,
        u0=u0,
        angle_offset=offset,
        eps0=eps0,
        dn0=dn0,
    )


def _check_arclength(s, state):
    l = state.problem.l
    if s < -1e-9 * l or s > l * (1.0 + 1e-9):
        raise ValueError("arclength s must lie in [0, l]")


def theta_at(s, state):
    """Rod rotation theta(s) = 2 am(s alpha/k + u0, k) + angle offset."""
    _check_arclength(s, state)
    u = s * state.alpha_tilde / state.modulus
    return 2.0 * jacobi_am(u + state.u0, state.modulus) + state.angle_offset


def coordinates_at(s, state):
    """Rod centerline point (x1, x2); the pin sits at the origin."""
    _check_arclength(s, state)
    if s == 0.0:
        return 0.0, 0.0
    k, at, u0 = state.modulus, state.alpha_tilde, state.u0
    u = s * at / k
    pref = math.copysign(1.0, state.R) * 2.0 / (k * at)
    x1 = pref * ((1.0 - 0.5 * k * k) * u + state.eps0 - jacobi_epsilon(u + u0, k))
    x2 = pref * (jacobi_dn(u + u0, k) - state.dn0)
    return x1, x2


def compatibility_residual(R, theta0, problem):
    """Closure defect [x1(l) - c] sin phi - x2(l) cos phi, c = +-R_c.

    The cos phi regularization keeps the same roots as the tan phi form
    while staying finite where branches legitimately cross phi = pi/2.
    """
    st = make_state(theta0, R, problem)
    x1, x2 = coordinates_at(problem.l, st)
    c = problem.R_c if problem.half == "left" else -problem.R_c
    return (x1 - c) * math.sin(st.phi) - x2 * math.cos(st.phi)


def _nd_problem(problem):
    return ElasticaProblem(
        B=1.0,
        l=1.0,
        k_r=problem.k_r * problem.l / problem.B,
        R_c=problem.R_c / problem.l,
        half=problem.half,
    )


def _default_seed(ndp):
    # linearized critical load of the matching sliding-rod model
    chi_hat = -1.0 / ndp.R_c if ndp.half == "left" else 1.0 / ndp.R_c
    model = RodModel(B=1.0, l=1.0, k=ndp.k_r, chi_hat=chi_hat)
    load_sign = "tension" if ndp.half == "left" else "compression"
    modes = find_critical_loads(model, load_sign)
    if not modes:
        raise ValueError(
            "no linearized critical load exists for this geometry; pass a seed reaction"
        )
    return critical_force(modes[0], model)


def solve_R(theta0, problem, seed=None):
    """Solve the compatibility condition for the constraint reaction.

    Scans a geometric window seed*[0.2, 5] for sign changes of the
    residual, refines each by bracketing, warns when several roots fall in
    the window and keeps the smallest-magnitude one.  The solve runs on
    the unit-B, unit-l problem and rescales at the boundary.
    """
    if not theta0 > 0.0:
        raise ValueError("theta0 must be positive")
    ndp = _nd_problem(problem)
    scale = problem.B / problem.l**2
    seed_nd = _default_seed(ndp) if seed is None else seed / scale
    grid = seed_nd * np.geomspace(0.2, 5.0, _SCAN_POINTS)
    vals = [compatibility_residual(R, theta0, ndp) for R in grid]
    roots = []
    for i in range(_SCAN_POINTS - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(
                brentq(
                    compatibility_residual,
                    grid[i],
                    grid[i + 1],
                    args=(theta0, ndp),
                    xtol=1e-15,
                    rtol=_BRENTQ_RTOL,
                )
            )
    if vals[-1] == 0.0:
        roots.append(grid[-1])
    if not roots:
        lo, hi = sorted((grid[0], grid[-1]))
        raise ContinuationError(
            "no sign change of the compatibility residual in the reaction window "
            f"[{lo:.6g}, {hi:.6g}] at theta0={theta0:.6g}"
        )
    if len(roots) > 1:
        warnings.warn(
            f"{len(roots)} reaction roots in the scan window at theta0={theta0:.6g}; "
            "keeping the smallest in magnitude",
            MultipleRootWarning,
            stacklevel=2,
        )
    return make_state(theta0, min(roots, key=abs) * scale, problem)


def trace_branch(problem, theta0_schedule, branch, seed=None):
    """Continue a postcritical branch over an increasing theta0 schedule.

    branch selects the assembly: "tensile" starts from the tensile
    bifurcation (half = "left"), "compressive" from the compressive one.
    Each solve is warm started from the previous reaction.  A root-finding
    failure stops the trace early with complete = False.  The load-sign
    transition and the half-circle switch coincide at phi = pi/2 and are
    both recorded in events after bisection refinement.
    """
    if branch == "tensile":
        pr = replace(problem, half="left")
    elif branch == "compressive":
        pr = replace(problem, half="right")
    else:
        raise ValueError("branch must be 'tensile' or 'compressive'")
    schedule = np.asarray(theta0_schedule, dtype=float)
    if schedule.size == 0 or not np.all(schedule > 0.0) or not np.all(np.diff(schedule) > 0.0):
        raise ValueError("theta0_schedule must be strictly increasing positives")

    points = []
    complete = True
    diagnostic = ""
    warm = seed
    for th0 in schedule:
        try:
            st = solve_R(th0, pr, seed=warm)
        except (ContinuationError, DegenerateGeometryError) as exc:
            complete = False
            diagnostic = f"stopped at theta0={th0:.6g}: {exc}"
            break
        points.append(PostcriticalPoint(st.theta0, st.R, st.F, st.phi, st.delta))
        warm = st.R

    events = {}
    for a, b in zip(points, points[1:]):
        if (a.phi - math.pi / 2.0) * (b.phi - math.pi / 2.0) <= 0.0:
            def crossing(th0):
                w = (th0 - a.theta0) / (b.theta0 - a.theta0)
                guess = a.R + w * (b.R - a.R)
                return solve_R(th0, pr, seed=guess).phi - math.pi / 2.0

            th_star = brentq(crossing, a.theta0, b.theta0, xtol=1e-14, rtol=_BRENTQ_RTOL)
            w = (th_star - a.theta0) / (b.theta0 - a.theta0)
            st = solve_R(th_star, pr, seed=a.R + w * (b.R - a.R))
            ev = PostcriticalPoint(st.theta0, st.R, st.F, st.phi, st.delta)
            events["load_sign_transition"] = ev
            events["half_circle_switch"] = ev
            break
    return BranchTrace(
        label=branch, points=points, events=events, complete=complete, diagnostic=diagnostic
    )


def shape_export(state, n):
    """Deformed centerline sampled uniformly in s: columns (s, x1, x2, theta)."""
    if n < 2:
        raise ValueError("need at least two samples")
    out = np.empty((n, 4))
    for i, s in enumerate(np.linspace(0.0, state.problem.l, n)):
        x1, x2 = coordinates_at(s, state)
        out[i] = (s, x1, x2, theta_at(s, state))
    out[0] = (0.0, 0.0, 0.0, state.theta0)
    return out


def write_branch_csv(path, trace, problem):
    """Branch table with the load also normalized as 4 F l^2/(B pi^2)."""
    norm = 4.0 * problem.l**2 / (problem.B * math.pi**2)
    with open(path, "w", newline="") as fh:
        fh.write("theta0,R,F,phi,delta,normalized_F\n")
        for p in trace.points:
            row = (p.theta0, p.R, p.F, p.phi, p.delta, p.F * norm)
            fh.write(",".join("%.16e" % v for v in row) + "\n")


def write_shape_csv(path, shape):
    with open(path, "w", newline="") as fh:
        fh.write("s,x1,x2,theta\n")
        for row in shape:
            fh.write(",".join("%.16e" % v for v in row) + "\n")
