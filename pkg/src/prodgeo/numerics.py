"""Shared numerical routines: damped Newton, 1-D minimization,
predictor-corrector curve continuation, and composite quadrature.

Everything here is deterministic and dependency-free beyond numpy; the
geometric modules supply the residual callables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SolverReport",
    "CurveTrace",
    "fd_jacobian",
    "newton_solve",
    "project_to_zero",
    "golden_section",
    "trace_implicit_curve",
    "composite_simpson",
]

FD_SCALE = 1e-6


@dataclass
class SolverReport:
    converged: bool
    iterations: int
    residual_norm: float
    message: str = ""


@dataclass
class CurveTrace:
    """Polyline approximation of an implicitly defined curve.

    ``closed`` marks a loop (first point repeated at the end);
    ``complete`` is False when a direction was abandoned (left the
    domain or the step size underflowed).
    """

    points: np.ndarray
    closed: bool
    complete: bool
    message: str = ""
    steps: int = 0


def fd_jacobian(f, x, fx=None, scale: float = FD_SCALE) -> np.ndarray:
    """Central-difference Jacobian of ``f`` at ``x``.

    The step for coordinate i is scale * (1 + |x_i|).
    """
    x = np.asarray(x, dtype=float)
    if fx is None:
        fx = np.atleast_1d(np.asarray(f(x), dtype=float))
    m = fx.shape[0]
    jac = np.zeros((m, x.shape[0]))
    for j in range(x.shape[0]):
        h = scale * (1.0 + abs(x[j]))
        e = np.zeros_like(x)
        e[j] = h
        jac[:, j] = (np.asarray(f(x + e), float) - np.asarray(f(x - e), float)) / (2.0 * h)
    return jac


def _eval(f, x):
    try:
        fx = np.atleast_1d(np.asarray(f(x), dtype=float))
    except Exception:
        return None
    if not np.all(np.isfinite(fx)):
        return None
    return fx


def newton_solve(f, x0, tol: float = 1e-12, max_iter: int = 200,
                 inside=None) -> tuple[np.ndarray, SolverReport]:
    """Damped Newton iteration for a square system f(x) = 0.

    Steps are halved until the residual norm decreases; candidates for
    which ``inside`` returns False (or where f is not finite) are
    rejected the same way.  On failure the best iterate seen is
    returned together with a non-converged report.
    """
    x = np.asarray(x0, dtype=float).copy()
    fx = _eval(f, x)
    if fx is None:
        return x, SolverReport(False, 0, math.inf, "residual undefined at start")
    best_x, best_norm = x.copy(), float(np.max(np.abs(fx)))
    for it in range(1, max_iter + 1):
        norm = float(np.max(np.abs(fx)))
        if norm <= tol:
            return x, SolverReport(True, it - 1, norm)
        jac = fd_jacobian(f, x, fx)
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -fx, rcond=None)
        if not np.all(np.isfinite(step)):
            return best_x, SolverReport(False, it, best_norm, "singular Jacobian")
        l2 = float(np.linalg.norm(fx))
        alpha = 1.0
        accepted = False
        for _ in range(30):
            cand = x + alpha * step
            if inside is None or inside(cand):
                fc = _eval(f, cand)
                if fc is not None and float(np.linalg.norm(fc)) < (1.0 - 1e-4 * alpha) * l2:
                    x, fx = cand, fc
                    accepted = True
                    break
            alpha *= 0.5
        if not accepted:
            return best_x, SolverReport(False, it, best_norm, "line search stalled")
        cur = float(np.max(np.abs(fx)))
        if cur < best_norm:
            best_x, best_norm = x.copy(), cur
    norm = float(np.max(np.abs(fx)))
    if norm <= tol:
        return x, SolverReport(True, max_iter, norm)
    return best_x, SolverReport(False, max_iter, best_norm, "iteration limit")


def project_to_zero(f, x0, tol: float = 1e-10, max_iter: int = 40,
                    inside=None) -> tuple[np.ndarray, bool]:
    """Gauss-Newton projection onto the zero set of an underdetermined
    system (m equations, n > m unknowns): minimal-norm correction steps.
    """
    x = np.asarray(x0, dtype=float).copy()
    for _ in range(max_iter):
        fx = _eval(f, x)
        if fx is None:
            return x, False
        if float(np.max(np.abs(fx))) <= tol:
            return x, True
        jac = fd_jacobian(f, x, fx)
        gram = jac @ jac.T
        try:
            lam = np.linalg.solve(gram, fx)
        except np.linalg.LinAlgError:
            return x, False
        step = -jac.T @ lam
        alpha = 1.0
        moved = False
        l2 = float(np.linalg.norm(fx))
        for _ in range(20):
            cand = x + alpha * step
            if inside is None or inside(cand):
                fc = _eval(f, cand)
                if fc is not None and float(np.linalg.norm(fc)) < l2:
                    x = cand
                    moved = True
                    break
            alpha *= 0.5
        if not moved:
            return x, False
    fx = _eval(f, x)
    return x, fx is not None and float(np.max(np.abs(fx))) <= tol


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(fn, a: float, b: float, tol: float = 1e-10,
                   max_iter: int = 200) -> tuple[float, float]:
    """Golden-section minimization of a unimodal function on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)


@dataclass
class PolylineMinimum:
    """Refined minimum of a function sampled along a polyline.

    ``position`` is the refined parameter in sample-index coordinates
    (sample i sits at parameter i); ``ties`` lists every sample whose
    value comes within the tie tolerance of the sampled minimum.
    """

    index: int
    position: float
    value: float
    ties: tuple


def minimize_on_polyline(values, refine, *, tie_tol: float = 1e-9,
                         tol: float = 1e-10) -> PolylineMinimum:
    """Coarse argmin over samples plus golden-section refinement.

    ``values`` are function samples at integer parameters 0..n-1 and
    ``refine`` re-evaluates the function at fractional parameters.  The
    search bracket is the pair of neighbors around the coarse argmin.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) < 3:
        raise ValueError("need at least three samples along the polyline")
    i0 = int(np.argmin(values))
    lo = float(max(0, i0 - 1))
    hi = float(min(len(values) - 1, i0 + 1))
    s, fs = golden_section(refine, lo, hi, tol=tol)
    if values[i0] < fs:
        s, fs = float(i0), float(values[i0])
    ties = tuple(int(i) for i in
                 np.flatnonzero(values <= values[i0] + tie_tol))
    return PolylineMinimum(i0, s, fs, ties)


def _tangent(f, x, prev=None):
    jac = fd_jacobian(f, x)
    t = np.cross(jac[0], jac[1])
    n = np.linalg.norm(t)
    if n < 1e-14:
        return None
    t = t / n
    if prev is not None and float(np.dot(t, prev)) < 0.0:
        t = -t
    return t


def trace_implicit_curve(f, seed, step: float, *, max_steps: int = 20_000,
                         corrector_tol: float = 1e-10, inside=None,
                         min_step_factor: float = 1e-5) -> CurveTrace:
    """Trace the curve {x in R^3 : f(x) = 0 in R^2} through ``seed``.

    Predictor-corrector continuation with adaptive step halving: a step
    is retried at half size until the Gauss-Newton corrector converges
    within 8 iterations.  Closed curves are detected by returning to the
    start; otherwise both directions from the seed are traced and the
    halves concatenated.
    """
    x0, ok = project_to_zero(f, np.asarray(seed, dtype=float),
                             tol=corrector_tol, inside=inside)
    if not ok:
        return CurveTrace(np.empty((0, 3)), False, False, "seed projection failed")

    h0 = step
    h_min = step * min_step_factor

    def march(direction_sign):
        pts = [x0]
        t = _tangent(f, x0)
        if t is None:
            return pts, False, "tangent undefined at seed", True
        t = direction_sign * t
        h = h0
        arc = 0.0
        for n in range(max_steps):
            pred = pts[-1] + h * t
            cand, ok = project_to_zero(f, pred, tol=corrector_tol,
                                       max_iter=8, inside=inside)
            if not ok or (inside is not None and not inside(cand)):
                h *= 0.5
                if h < h_min:
                    return pts, False, "step underflow", False
                continue
            nt = _tangent(f, cand, prev=t)
            if nt is None:
                return pts, False, "tangent undefined", False
            pts.append(cand)
            arc += float(np.linalg.norm(cand - pts[-2]))
            t = nt
            h = min(h0, h * 1.6)
            if arc > 3.0 * h0 and float(np.linalg.norm(cand - x0)) < 1.5 * h:
                return pts, True, "", False
        return pts, False, "step limit", False

    fwd, closed, msg, degenerate = march(+1.0)
    if degenerate:
        return CurveTrace(np.array([x0]), False, False, msg)
    if closed:
        pts = np.array(fwd + [x0])
        return CurveTrace(pts, True, True, "", steps=len(fwd))
    back, back_closed, msg2, _ = march(-1.0)
    pts = np.array(list(reversed(back[1:])) + fwd)
    complete = False  # open curve truncated in at least one direction
    message = "; ".join(m for m in (msg, msg2) if m)
    return CurveTrace(pts, False, complete, message, steps=len(pts))


def composite_simpson(values, dx: float) -> float:
    """Composite Simpson rule over equally spaced samples.

    ``values`` must contain an odd number of samples (even interval
    count).
    """
    v = np.asarray(values, dtype=float)
    if v.shape[0] < 3 or v.shape[0] % 2 == 0:
        raise ValueError("composite_simpson needs an odd number of samples")
    w = np.ones(v.shape[0])
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(dx / 3.0 * np.dot(w, v))
