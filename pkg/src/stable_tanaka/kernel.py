"""The explicit local-time kernel and its smoothings.

The central object is

    F(x) = D(alpha) (1 - beta sgn(x)) |x|^(alpha-1),   sgn(0) = -1,

whose compensated-jump generator vanishes away from the origin; convolved
with a test function phi it therefore inverts the generator,
L(F * phi) = phi. This module evaluates F and its derivatives, the standard
bump mollifiers rho_n, kernel convolutions F * phi (by Gauss-Jacobi rules
that absorb the |.|^(alpha-1) cusp), and the compensator density

    G_eps(x) = int_{|h| > eps} {F(x+h) - F(x)} nu(dh),

which the martingale part of the local-time decomposition integrates along
paths.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .params import StableParams, nu_density, nu_tail_mass

__all__ = [
    "MollifierSpec",
    "standard_bump",
    "bump_normalization",
    "kernel_F",
    "kernel_F_prime",
    "kernel_F_second",
    "kernel_convolve",
    "smooth_F",
    "compensator_density",
    "CompensatorTable",
    "compensator_table",
]


# --------------------------------------------------------------- mollifier

@lru_cache(maxsize=1)
def bump_normalization() -> float:
    """int_{-1}^{1} exp(-1/(1-x^2)) dx, computed once to ~1e-13."""
    val, err = integrate.quad(lambda x: math.exp(-1.0 / (1.0 - x * x)),
                              -1.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    if err > 1e-12:
        raise RuntimeError(f"bump normalization quadrature stalled (err {err:.1e})")
    return val


def standard_bump(x):
    """The unit bump exp(-1/(1-x^2))/Z on (-1, 1), zero outside; mass 1."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    out /= bump_normalization()
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class MollifierSpec:
    """rho_n(x) = n rho(nx): the unit bump squeezed to support [-1/n, 1/n]."""

    n: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"mollifier index must be a positive integer, got {self.n!r}")

    @property
    def width(self) -> float:
        return 1.0 / self.n

    def __call__(self, x):
        return self.n * standard_bump(self.n * np.asarray(x, dtype=float))


# ------------------------------------------------------------------ kernel

def _signum_left(x: np.ndarray) -> np.ndarray:
    # left-continuous signum: sgn(0) = -1 (the kernel formula's convention;
    # immaterial at 0 itself where |x|^(alpha-1) kills the factor)
    return np.where(x > 0.0, 1.0, -1.0)


def kernel_F(params: StableParams, x):
    """F(x) = D (1 - beta sgn(x)) |x|^(alpha-1); nonnegative, F(0) = 0."""
    x = np.asarray(x, dtype=float)
    out = params.big_d * (1.0 - params.beta * _signum_left(x)) \
        * np.abs(x) ** (params.alpha - 1.0)
    return out if out.ndim else float(out)


def kernel_F_prime(params: StableParams, x):
    """F'(x) = (alpha-1) D (sgn(x) - beta) |x|^(alpha-2), undefined at 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("F' has a non-removable singularity at 0")
    out = (params.alpha - 1.0) * params.big_d \
        * (_signum_left(x) - params.beta) * np.abs(x) ** (params.alpha - 2.0)
    return out if out.ndim else float(out)


def kernel_F_second(params: StableParams, x):
    """F''(x) = (alpha-1)(alpha-2) D (sgn(x) - beta) sgn(x) |x|^(alpha-3)."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("F'' has a non-removable singularity at 0")
    s = _signum_left(x)
    out = (params.alpha - 1.0) * (params.alpha - 2.0) * params.big_d \
        * (s - params.beta) * s * np.abs(x) ** (params.alpha - 3.0)
    return out if out.ndim else float(out)


# ------------------------------------------------------------- convolution

@lru_cache(maxsize=32)
def _jacobi_rule(m: int, alpha: float):
    # integrates (1+t)^(alpha-1) g(t) over [-1, 1] exactly for polynomial g
    return special.roots_jacobi(m, 0.0, alpha - 1.0)


@lru_cache(maxsize=8)
def _legendre_rule(m: int):
    return np.polynomial.legendre.leggauss(m)


def kernel_convolve(params: StableParams, phi, x, radius: float,
                    n_nodes: int = 48):
    """(F * phi)(x) = int F(x - y) phi(y) dy for phi supported in [-radius, radius].

    The integrand's |x - y|^(alpha-1) cusp at y = x is absorbed exactly by
    Gauss-Jacobi rules on the two subintervals it separates; evaluation
    points outside the support use a plain Gauss-Legendre rule. Vectorized
    over x; ``phi`` must accept arrays.

    The result grows like 2 D |x|^(alpha-1) * (mass of phi) for large |x|,
    so it is *not* a decaying grid function; apply generators to it through
    the windowed route.
    """
    if not radius > 0.0:
        raise ValueError("support radius must be positive")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    a, big_d, beta = params.alpha, params.big_d, params.beta

    inside = np.abs(x) < radius
    if np.any(inside):
        xi = x[inside]
        t, w = _jacobi_rule(n_nodes, a)
        # y above x: x - y < 0, kernel weight D (1 + beta) (y - x)^(alpha-1)
        span = radius - xi
        y = xi[:, None] + span[:, None] * (t[None, :] + 1.0) / 2.0
        upper = (span / 2.0) ** a * (phi(y) * w[None, :]).sum(axis=1)
        # y below x: kernel weight D (1 - beta) (x - y)^(alpha-1)
        span = radius + xi
        y = xi[:, None] - span[:, None] * (t[None, :] + 1.0) / 2.0
        lower = (span / 2.0) ** a * (phi(y) * w[None, :]).sum(axis=1)
        out[inside] = big_d * ((1.0 + beta) * upper + (1.0 - beta) * lower)

    if np.any(~inside):
        xo = x[~inside]
        t, w = _legendre_rule(max(n_nodes, 64))
        y = radius * t
        dist = np.abs(xo[:, None] - y[None, :])
        side = 1.0 - beta * _signum_left(xo)[:, None]
        vals = side * dist ** (a - 1.0) * phi(y)[None, :]
        out[~inside] = big_d * radius * (vals * w[None, :]).sum(axis=1)

    return float(out[0]) if scalar else out


def smooth_F(params: StableParams, moll: MollifierSpec, x):
    """The mollified kernel F_n = F * rho_n; converges to F uniformly."""
    return kernel_convolve(params, moll, x, moll.width)


# -------------------------------------------------------------- compensator

def _tail_beyond(params: StableParams, fx: float, h_max: float) -> float:
    # int_{|h|>H} {F(x+h) - F(x)} nu(dh) for H >> |x|: expanding
    # F(x+h) ~ D(1 -+ beta)|h|^(alpha-1)(1 + (alpha-1)x/h) makes the
    # leading term 4 D c+ c- / ((c+ + c-) H) -- the x-correction cancels
    # between the sides exactly -- minus F(x) nu({|h| > H}).
    lead = 4.0 * params.big_d * params.c_plus * params.c_minus \
        / ((params.c_plus + params.c_minus) * h_max)
    return lead - fx * nu_tail_mass(params, h_max)


def compensator_density(params: StableParams, x: float, eps: float,
                        h_max: float = 1e3, tol: float = 1e-8) -> float:
    """G_eps(x): integral of F(x+h) - F(x) over jumps larger than eps.

    Adaptive quadrature in per-decade panels over eps < |h| <= h_max, with
    an extra split at h = -x where the integrand inherits the kernel cusp,
    plus the analytic tail beyond h_max. For |x| < eps the cusp lies inside
    the excluded band and the value is dominated by the near field; that is
    legitimate but worth a warning, since Riemann sums over paths must
    resolve the scale eps around the target level.
    """
    if not 0.0 < eps < 1.0 < h_max:
        raise ValueError("need 0 < eps < 1 < h_max")
    x = float(x)
    if abs(x) < eps:
        warnings.warn(
            f"compensator evaluated at |x|={abs(x):.3g} inside the cutoff "
            f"eps={eps:.3g}; values vary on the eps scale there",
            RuntimeWarning, stacklevel=2)
    fx = kernel_F(params, x)

    def integrand(h):
        return (kernel_F(params, x + h) - fx) * nu_density(params, h)

    n_dec = int(math.ceil(math.log10(h_max / eps)))
    mags = np.geomspace(eps, h_max, n_dec + 1)
    value = _tail_beyond(params, fx, h_max)
    err_total = 0.0
    for sign in (1.0, -1.0):
        edges = sign * mags
        # the kernel cusp sits at h = -x; insert it on the matching side
        kink = -x
        if math.copysign(1.0, kink) == sign and eps < abs(kink) < h_max:
            edges = np.append(edges, kink)
        edges = np.sort(edges)
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, err = integrate.quad(integrand, lo, hi, epsabs=tol / 100.0,
                                      epsrel=1e-10, limit=400)
            value += val
            err_total += err
    if err_total > tol * max(1.0, abs(value)):
        raise RuntimeError(
            f"compensator quadrature error {err_total:.2e} exceeds tolerance")
    return value


class CompensatorTable:
    """G_eps sampled on a sign-aware log grid, served by linear interpolation.

    Martingale-part integrals evaluate G_eps at every path point; building
    the quadrature-backed values once and interpolating afterwards turns
    ~1e8 evaluations from hours into seconds. Nodes cluster geometrically
    toward 0 where G varies on the eps scale; queries beyond the outermost
    node clamp to its (decaying) value.
    """

    def __init__(self, params: StableParams, eps: float, h_max: float = 1e3,
                 x_max: float = 1e3, nodes_per_decade: int = 40):
        if not x_max > eps:
            raise ValueError("x_max must exceed eps")
        self.params = params
        self.eps = eps
        x_min = 1e-2 * eps
        n_dec = math.log10(x_max / x_min)
        mags = np.geomspace(x_min, x_max, int(round(n_dec * nodes_per_decade)) + 1)
        nodes = np.concatenate([-mags[::-1], [0.0], mags])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            values = np.array([compensator_density(params, x, eps, h_max)
                               for x in nodes])
        self.x_nodes = nodes
        self.g_values = values

    def __call__(self, x):
        return np.interp(x, self.x_nodes, self.g_values)


@lru_cache(maxsize=8)
def compensator_table(params: StableParams, eps: float,
                      h_max: float = 1e3) -> CompensatorTable:
    """Cached table factory so Monte Carlo loops share one build."""
    return CompensatorTable(params, eps, h_max)
