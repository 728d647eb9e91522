"""Quadrature oracles that recompute everything from the regulated
vacuum two-point function, independently of the closed forms.

Two kinds of evaluation live here:

* direct double integrals over detector proper times, with the two-point
  function regulated by a small imaginary time shift ``eps`` and the limit
  eps -> 0 taken by polynomial (Richardson) extrapolation over a
  decreasing schedule;

* a single-integral route that first reduces the pair correlation to a
  principal-value integral plus a residue term, and evaluates the
  principal value by analytic pole subtraction so that plain panel
  quadrature regains spectral accuracy.

The double-integral routes share no algebra with the single-integral
reduction; their mutual agreement is what certifies the closed forms.

Quadrature layout: each axis is covered by Gauss-Legendre panels.  Panels
are geometrically refined toward the lightcone poles (which sit a distance
eps off the integration line) down to width ~eps, which keeps the per-panel
Bernstein parameter of the nearest pole of order one and the error
spectral.  The inner time variable is integrated over an offset window of
half-width ``domain_halfwidth + 2`` centred on the outer node; relative to
the nominal square this clips and pads only regions whose Gaussian window
is below exp(-(halfwidth+2)^2/4) ~ 1e-21, far under every tolerance.  The
offset parameterization makes the integrand a product of a bounded real
cross-Gaussian matrix and per-axis complex vectors, so each pass is one
large real exponential plus a real matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .closedform import (
    DetectorPairConfig,
    HarvestReport,
    Method,
    correlation_x,
    transition_probability,
)

__all__ = [
    "NonConvergence",
    "OracleSettings",
    "DEFAULT_SETTINGS",
    "extrapolate_to_zero",
    "pd_double_integral",
    "pv_gaussian_pole_integral",
    "x_single_integral_pv",
    "x_double_integral",
    "c_quadrature",
    "c_double_integral",
    "DensityMatrix4",
    "assemble_rho",
    "harvest_report",
]

_SQRT_PI = np.sqrt(np.pi)


class NonConvergence(RuntimeError):
    """A quadrature or regulator-limit self-check failed."""


@dataclass(frozen=True)
class OracleSettings:
    """Knobs for the integral oracles.

    epsilon_schedule   regulator values (units of the switching duration),
                       strictly decreasing; the regulator limit is the
                       extrapolation of the sampled values to zero
    quadrature_nodes   Gauss-Legendre nodes per panel
    domain_halfwidth   integration cutoff (units of the switching
                       duration); the Gaussian window makes the discarded
                       tail < exp(-halfwidth^2/2) relative
    pv_exclusion       half-width of the symmetric pole exclusion used by
                       the debug fallback of the principal-value route
    richardson_order   polynomial order of the regulator extrapolation
    """

    epsilon_schedule: tuple[float, ...] = (0.05, 0.025, 0.0125)
    quadrature_nodes: int = 64
    domain_halfwidth: float = 12.0
    pv_exclusion: float = 1e-3
    richardson_order: int = 2

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilon_schedule)
        object.__setattr__(self, "epsilon_schedule", eps)
        if len(eps) < 2:
            raise ValueError("epsilon_schedule needs at least two values")
        if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilon_schedule must be strictly decreasing and positive")
        if self.quadrature_nodes < 4:
            raise ValueError("quadrature_nodes must be >= 4")
        if self.domain_halfwidth < 8.0:
            raise ValueError("domain_halfwidth must be >= 8 to bury the Gaussian tail")
        if self.pv_exclusion <= 0:
            raise ValueError("pv_exclusion must be > 0")
        if self.richardson_order < 1:
            raise ValueError("richardson_order must be >= 1")


DEFAULT_SETTINGS = OracleSettings()

# Panels wider than this resolve nothing even for the smooth Gaussian
# envelope; the graded ladders below stop once they reach it.
_MAX_PANEL_WIDTH = 1.5


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panelize(edges: np.ndarray, order: int):
    """Nodes and weights of per-panel Gauss-Legendre on consecutive edges."""
    xg, wg = _gauss_legendre(order)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    return (mid + half * xg[None, :]).ravel(), (half * wg[None, :]).ravel()


def _fill_edges(anchors, max_width):
    """Subdivide gaps between sorted anchor edges down to max_width."""
    e = np.array(sorted(set(float(a) for a in anchors)))
    out = [e[0]]
    for a, b in zip(e[:-1], e[1:]):
        n = int(np.ceil((b - a) / max_width))
        if n > 1:
            out.extend(np.linspace(a, b, n + 1)[1:])
        else:
            out.append(b)
    return np.asarray(out)


def _graded_edges(lo, hi, poles, eps, max_width=_MAX_PANEL_WIDTH):
    """Panel edges on [lo, hi]: geometric refinement to width ~eps around
    each pole abscissa, uniform fill at most max_width elsewhere."""
    edges = {float(lo), float(hi)}
    for p in poles:
        if lo < p < hi:
            edges.add(float(p))
        w = eps
        x = w
        while x < 2.0 * max_width:
            for s in (p - x, p + x):
                if lo < s < hi:
                    edges.add(float(s))
            w *= 2.0
            x += w
    return _fill_edges(edges, max_width)


def extrapolate_to_zero(eps_values, samples):
    """Diagonal of the Neville tableau at zero regulator.

    Entry k is the value of the degree-k polynomial through the first
    k + 1 (eps, sample) pairs, evaluated at eps = 0; the last entry is the
    full-order extrapolant.
    """
    eps = [float(e) for e in eps_values]
    tab = [complex(s) for s in samples]
    n = len(tab)
    if len(eps) != n:
        raise ValueError("schedule and samples must have equal length")
    diag = [tab[0]]
    for m in range(1, n):
        for i in range(n - m):
            tab[i] = (eps[i] * tab[i + 1] - eps[i + m] * tab[i]) / (eps[i] - eps[i + m])
        diag.append(tab[0])
    return diag


def _regulator_limit(settings: OracleSettings, samples, rel_tol, scale):
    """Extrapolate regulated samples to zero and self-check convergence.

    Returns (value, extrapolant sequence).  The value is the extrapolant of
    order ``richardson_order`` (capped by the schedule length).  Its error
    is estimated as the last order's correction scaled by the smallest
    regulator -- the contraction one further order would bring -- and must
    not exceed rel_tol times the result scale.
    """
    eps = settings.epsilon_schedule
    order = min(settings.richardson_order, len(eps) - 1)
    diag = extrapolate_to_zero(eps, samples)
    best, prev = diag[order], diag[order - 1]
    err_est = abs(best - prev) * eps[-1]
    if err_est > rel_tol * max(abs(best), scale * 1e-3):
        raise NonConvergence(
            f"regulator extrapolation error estimate {err_est:.3e} exceeds "
            f"{rel_tol:.1e} of the result ({abs(best):.3e})"
        )
    return best, tuple(diag[: order + 1])


def _outer_axis(settings: OracleSettings):
    T = settings.domain_halfwidth
    n_panels = int(np.ceil(2.0 * T / _MAX_PANEL_WIDTH))
    return _panelize(np.linspace(-T, T, n_panels + 1), settings.quadrature_nodes)


def _inner_span(settings: OracleSettings):
    # offsets beyond this only enter through exp(-o^2/4) tails < 1e-21
    return settings.domain_halfwidth + 2.0


def _cross_gaussian(t_outer, offsets, sign):
    # exp(-(t^2 + (t + s*o)^2)/2) = exp(-(t + s*o/2)^2) * exp(-o^2/4)
    return np.exp(-((t_outer[:, None] + 0.5 * sign * offsets[None, :]) ** 2))


def _apply_real_matrix(g, q):
    # g @ q with real g and complex q, without promoting g to complex
    ri = g @ np.column_stack([q.real, q.imag])
    return ri[:, 0] + 1j * ri[:, 1]


def pd_double_integral(
    omega_sigma,
    coupling,
    settings: OracleSettings = DEFAULT_SETTINGS,
    return_extrapolants: bool = False,
):
    """Transition probability straight from the regulated two-point
    function: a double integral over the detector's proper time against the
    Gaussian window and the gap phase, evaluated per regulator value and
    extrapolated to zero regulator.

    The extrapolated imaginary part must vanish (below 1e-8 of the
    coupling-squared scale) and the extrapolation must self-certify to
    1e-5; violations raise :exc:`NonConvergence`.  With
    ``return_extrapolants`` the increasing-order extrapolant sequence is
    returned alongside the value, for convergence diagnostics.
    """
    x = float(omega_sigma)
    span = _inner_span(settings)
    t_out, w_out = _outer_axis(settings)
    samples = []
    for eps in settings.epsilon_schedule:
        edges = _graded_edges(-span, span, [0.0], eps)
        o, w_in = _panelize(edges, settings.quadrature_nodes)
        # inner time = outer + o; kernel depends on the offset alone
        q = w_in * np.exp(-o * o / 4.0) * np.exp(1j * x * o) / (o + 1j * eps) ** 2
        g = _cross_gaussian(t_out, o, +1.0)
        row = _apply_real_matrix(g, q)
        samples.append(-np.sum(w_out * row) / (4.0 * np.pi**2))
    limit, diag = _regulator_limit(settings, samples, 1e-5, 1.0 / (4.0 * np.pi))
    val = coupling**2 * limit
    if abs(val.imag) > 1e-8 * coupling**2:
        raise NonConvergence(
            f"imaginary residue {val.imag:.3e} survives the regulator limit"
        )
    if return_extrapolants:
        return float(val.real), tuple(coupling**2 * e for e in diag)
    return float(val.real)


def _pv_by_subtraction(kappa, l, settings):
    """PV of exp(-v^2/4) exp(-i kappa v / 2) / (v^2 - l^2) over the line.

    Writes g(v) for the numerator and subtracts
    [g(l)/(2l)] h(v-l) - [g(-l)/(2l)] h(v+l) with h(u) = exp(-u^2)/u, an
    odd kernel of exactly zero principal value; the remainder extends to an
    entire function, so panel quadrature (edges pinned at the poles) is
    spectrally accurate.
    """
    V = settings.domain_halfwidth

    def g(v):
        return np.exp(-v * v / 4.0) * np.exp(-0.5j * kappa * v)

    cp = g(l) / (2.0 * l)
    cm = g(-l) / (2.0 * l)
    edges = _fill_edges([-V, -l, l, V], max_width=1.0)
    v, w = _panelize(edges, settings.quadrature_nodes)
    u_p = v - l
    u_m = v + l
    remainder = (
        g(v) / (v * v - l * l)
        - cp * np.exp(-u_p * u_p) / u_p
        + cm * np.exp(-u_m * u_m) / u_m
    )
    return np.sum(w * remainder)


def _pv_by_exclusion(kappa, l, settings):
    """Debug fallback: symmetric interval exclusion around each pole.

    First-order accurate in the exclusion radius only; kept to make the
    superiority of the subtraction route demonstrable.
    """
    V = settings.domain_halfwidth
    r = settings.pv_exclusion
    edges = _fill_edges([-V, -l - r, -l + r, l - r, l + r, V], max_width=1.0)
    v, w = _panelize(edges, settings.quadrature_nodes)
    keep = (np.abs(v - l) > r) & (np.abs(v + l) > r)
    f = np.exp(-v * v / 4.0) * np.exp(-0.5j * kappa * v) / (v * v - l * l)
    return np.sum(w[keep] * f[keep])


def pv_gaussian_pole_integral(
    kappa,
    l_over_sigma,
    settings: OracleSettings = DEFAULT_SETTINGS,
    method: str = "subtraction",
):
    """Principal value of the Gaussian-windowed two-pole integral

        PV int exp(-v^2/4) exp(-i kappa v / 2) / (v^2 - l^2) dv.

    ``method="subtraction"`` (default) removes the poles analytically;
    ``method="exclusion"`` is the linearly convergent debug fallback.
    """
    l = float(l_over_sigma)
    if l <= 0:
        raise ValueError("l_over_sigma must be > 0")
    if method == "subtraction":
        return _pv_by_subtraction(float(kappa), l, settings)
    if method == "exclusion":
        return _pv_by_exclusion(float(kappa), l, settings)
    raise ValueError(f"unknown principal-value method {method!r}")


def _x_pv_once(cfg, settings, method):
    a, d, l = cfg.omega_a_sigma, cfg.delta_omega_sigma, cfg.l_over_sigma
    lam2 = cfg.coupling**2
    pref = lam2 / (4.0 * np.pi**1.5) * np.exp(-((2.0 * a + d) ** 2) / 4.0)
    pv = pv_gaussian_pole_integral(d, l, settings, method)
    residue = (
        -1j
        * lam2
        / (4.0 * _SQRT_PI * l)
        * np.exp(-((2.0 * a + d) ** 2 + l * l) / 4.0)
        * np.cos(0.5 * d * l)
    )
    return pref * pv + residue


def x_single_integral_pv(
    cfg: DetectorPairConfig,
    settings: OracleSettings = DEFAULT_SETTINGS,
    method: str = "subtraction",
):
    """Pair-correlation amplitude via the single-integral reduction: the
    double integral collapses (Gaussian in the mean time, principal value
    plus a lightcone residue in the time difference).

    Self-checks by doubling the panel order; a relative shift above 1e-8
    raises :exc:`NonConvergence`.  Returns the doubled-order value.  The
    exclusion fallback carries no such guarantee (its error is set by the
    exclusion radius, not the panel order) and skips the gate.
    """
    coarse = _x_pv_once(cfg, settings, method)
    fine = _x_pv_once(
        cfg, replace(settings, quadrature_nodes=2 * settings.quadrature_nodes), method
    )
    if method == "subtraction" and abs(fine - coarse) > 1e-8 * max(abs(fine), 1e-300):
        raise NonConvergence(
            f"principal-value quadrature not converged: order doubling moved the "
            f"result by {abs(fine - coarse):.3e} (value {abs(fine):.3e})"
        )
    return fine


def x_double_integral(
    cfg: DetectorPairConfig,
    settings: OracleSettings = DEFAULT_SETTINGS,
    return_extrapolants: bool = False,
):
    """Pair-correlation amplitude by direct time-ordered double
    integration, fully independent of the single-integral reduction.

    The time ordering splits the domain along the equal-time diagonal; each
    triangle is integrated with the inner variable offset from the outer by
    s > 0, with panels refined toward the lightcone pole at s = l.  The
    regulator schedule and extrapolation mirror the probability route, with
    the self-check at this route's 1e-3 accuracy target.
    """
    return _x_double_raw(
        cfg.omega_a_sigma,
        cfg.omega_b_sigma,
        cfg.l_over_sigma,
        cfg.coupling,
        settings,
        return_extrapolants,
    )


def _x_double_raw(a, b, l, coupling, settings, return_extrapolants=False):
    """Time-ordered route with both gaps given explicitly; the result must
    not depend on which detector carries which gap."""
    t_out, w_out = _outer_axis(settings)
    w_phase = w_out * np.exp(-1j * (a + b) * t_out)
    samples = []
    for eps in settings.epsilon_schedule:
        edges = _graded_edges(0.0, _inner_span(settings), [l], eps)
        s, w_in = _panelize(edges, settings.quadrature_nodes)
        kern = w_in * np.exp(-s * s / 4.0) / ((s + 1j * eps) ** 2 - l * l)
        total = 0.0 + 0.0j
        for sign in (+1.0, -1.0):
            # inner time = outer + sign*s; sign=+1 is the later-B triangle
            g = _cross_gaussian(t_out, s, sign)
            total += np.sum(w_phase * _apply_real_matrix(g, kern * np.exp(-1j * sign * b * s)))
        samples.append(coupling**2 / (4.0 * np.pi**2) * total)
    scale = coupling**2 / (4.0 * np.pi)
    limit, diag = _regulator_limit(settings, samples, 1e-3, scale)
    if return_extrapolants:
        return complex(limit), diag
    return complex(limit)


def _c_pv_once(cfg, settings):
    a, d, l = cfg.omega_a_sigma, cfg.delta_omega_sigma, cfg.l_over_sigma
    kappa = 2.0 * a + d
    pv = pv_gaussian_pole_integral(kappa, l, settings)
    residue = np.pi / l * np.exp(-l * l / 4.0) * np.sin(0.5 * kappa * l)
    return (
        -cfg.coupling**2
        * _SQRT_PI
        / (4.0 * np.pi**2)
        * np.exp(-d * d / 4.0)
        * (pv + residue)
    )


def c_quadrature(cfg: DetectorPairConfig, settings: OracleSettings = DEFAULT_SETTINGS):
    """Exchange correlation (the amplitude linking the two singly-excited
    states), for which no closed form exists.

    Reduced to mean/difference time variables: the mean-time Gaussian
    integrates analytically, the difference-time integral is the same
    principal-value-plus-residue machinery as the single-integral
    correlation route (both lightcone poles now sit on the same side of the
    contour, so the residue enters through a sine).  Self-checks by panel
    order doubling at 1e-8.
    """
    coarse = _c_pv_once(cfg, settings)
    fine = _c_pv_once(cfg, replace(settings, quadrature_nodes=2 * settings.quadrature_nodes))
    if abs(fine - coarse) > 1e-8 * max(abs(fine), 1e-300):
        raise NonConvergence(
            f"exchange-correlation quadrature not converged: order doubling moved "
            f"the result by {abs(fine - coarse):.3e}"
        )
    return fine


def c_double_integral(cfg: DetectorPairConfig, settings: OracleSettings = DEFAULT_SETTINGS):
    """Exchange correlation by direct double integration with the regulator
    schedule; the independent cross-check of :func:`c_quadrature`.  No time
    ordering here, so the kernel's two poles are offset to the same side
    and the square is integrated in one pass."""
    a, d, l = cfg.omega_a_sigma, cfg.delta_omega_sigma, cfg.l_over_sigma
    b = a + d
    span = _inner_span(settings)
    t_out, w_out = _outer_axis(settings)
    w_phase = w_out * np.exp(-1j * (a - b) * t_out)
    samples = []
    for eps in settings.epsilon_schedule:
        edges = _graded_edges(-span, span, [-l, l], eps)
        o, w_in = _panelize(edges, settings.quadrature_nodes)
        # inner time = outer + o, so the kernel argument is -o
        q = (
            w_in
            * np.exp(-o * o / 4.0)
            * np.exp(1j * b * o)
            / ((-o - 1j * eps) ** 2 - l * l)
        )
        g = _cross_gaussian(t_out, o, +1.0)
        samples.append(
            -cfg.coupling**2 / (4.0 * np.pi**2) * np.sum(w_phase * _apply_real_matrix(g, q))
        )
    scale = cfg.coupling**2 / (4.0 * np.pi)
    return complex(_regulator_limit(settings, samples, 1e-3, scale)[0])


@dataclass
class DensityMatrix4:
    """Joint detector-pair state to second order in the coupling, in the
    ordered basis (both ground, only B excited, only A excited, both
    excited)."""

    entries: np.ndarray

    def validate(self):
        m = self.entries
        if m.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian to 1e-10")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise ValueError("density matrix trace differs from 1 by more than 1e-10")
        mask = np.array(
            [
                [False, True, True, False],
                [True, False, False, True],
                [True, False, False, True],
                [False, True, True, True],
            ]
        )
        if np.max(np.abs(m[mask])) > 1e-12:
            raise ValueError("entries outside the allowed sparsity pattern")
        return self

    def concurrence(self) -> float:
        """Concurrence of this two-detector state, using the structure of
        the allowed sparsity pattern."""
        m = self.entries
        return 2.0 * max(0.0, abs(m[0, 3]) - float(np.sqrt(m[1, 1].real * m[2, 2].real)))


def assemble_rho(cfg: DetectorPairConfig, settings: OracleSettings = DEFAULT_SETTINGS):
    """Assemble the joint state: probabilities and pair correlation from
    the closed forms, exchange correlation from quadrature (its only
    route).  The result is validated before being returned."""
    p_a = transition_probability(cfg.omega_a_sigma, cfg.coupling)
    p_b = transition_probability(cfg.omega_b_sigma, cfg.coupling)
    x = correlation_x(cfg)
    c = c_quadrature(cfg, settings)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0 - p_a - p_b
    m[1, 1] = p_b
    m[2, 2] = p_a
    m[1, 2] = c
    m[2, 1] = np.conj(c)
    m[0, 3] = x
    m[3, 0] = np.conj(x)
    return DensityMatrix4(m).validate()


def harvest_report(
    cfg: DetectorPairConfig,
    settings: OracleSettings = DEFAULT_SETTINGS,
    x_path: str = "single",
    include_c: bool = False,
):
    """Full oracle recomputation of a scenario.

    ``x_path`` selects the correlation route: "single" (principal value,
    ~1e-9) or "double" (direct time-ordered integration, ~1e-3).
    Probabilities always come from the double-integral route.
    """
    if x_path == "single":
        x = x_single_integral_pv(cfg, settings)
        method = Method.ORACLE_SINGLE_INTEGRAL
    elif x_path == "double":
        x = x_double_integral(cfg, settings)
        method = Method.ORACLE_DOUBLE_INTEGRAL
    else:
        raise ValueError(f"unknown x_path {x_path!r}")
    p_a = pd_double_integral(cfg.omega_a_sigma, cfg.coupling, settings)
    p_b = pd_double_integral(cfg.omega_b_sigma, cfg.coupling, settings)
    conc = 2.0 * max(0.0, abs(x) - float(np.sqrt(p_a * p_b)))
    c = c_quadrature(cfg, settings) if include_c else None
    return HarvestReport(p_a=p_a, p_b=p_b, x=x, concurrence=conc, method=method, c_corr=c)
