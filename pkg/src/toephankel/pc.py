"""Piecewise continuous symbols: jump factors, the Fredholm criterion and
the factorization signature beyond continuous symbols.

A PC symbol is a finite product of a rational base with elementary jump
factors exp{i beta arg(-t/tau)}; this class has exact one-sided limits
everywhere and is closed under everything the Fredholm criterion and the
signature computation need.  The psi factors are the shift-compatible
analogues (1 - t/tau)^beta * (1 - alpha(t)/tau)^(-beta) at a fixed point
tau of the shift: they satisfy psi * (psi o alpha) = 1, generate Toeplitz
operators invertible on the Hardy space, and have factorization
signature +1, which is what makes signature peeling work.

The argument convention is the principal branch, arg z in (-pi, pi].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from .errors import AtJumpPoint, NotMatching, SignatureIndeterminate
from .rational import RationalSymbol
from .shift import ShiftParams, eval_alpha

JUMP_LOCATION_TOL = 1e-9
FREDHOLM_THRESHOLD = 1e-8


@dataclass(frozen=True)
class JumpFactor:
    """exp{i beta arg(-t/tau)}: one jump at tau with ratio exp(-2 pi i beta)."""

    tau: complex
    beta_exp: complex

    def __post_init__(self):
        if abs(abs(self.tau) - 1.0) > 1e-10:
            raise ValueError("jump point must lie on the unit circle")
        if abs(self.beta_exp.real) >= 1.0:
            raise ValueError("Re beta must lie in (-1, 1)")

    def eval(self, t):
        t = np.asarray(t, dtype=complex)
        return np.exp(1j * self.beta_exp * np.angle(-t / self.tau))

    def limits_at(self, point: complex) -> tuple[complex, complex]:
        """(counterclockwise-from-below, from-above) limits at the point."""
        if abs(point - self.tau) < JUMP_LOCATION_TOL:
            return (
                complex(np.exp(1j * np.pi * self.beta_exp)),
                complex(np.exp(-1j * np.pi * self.beta_exp)),
            )
        v = complex(self.eval(point))
        return v, v


@dataclass(frozen=True)
class PCSymbol:
    """rational base times finitely many jump factors."""

    base: RationalSymbol
    jumps: tuple[JumpFactor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(self.jumps))

    @property
    def jump_points(self) -> tuple[complex, ...]:
        return tuple(j.tau for j in self.jumps)

    def eval(self, t):
        t = np.asarray(t, dtype=complex)
        if t.ndim == 0:
            for j in self.jumps:
                if abs(complex(t) - j.tau) < JUMP_LOCATION_TOL:
                    raise AtJumpPoint(f"evaluation at the jump point {j.tau}")
        out = self.base.eval(t)
        for j in self.jumps:
            out = out * j.eval(t)
        return out

    def limits_at(self, point: complex) -> tuple[complex, complex]:
        left = right = complex(self.base.eval(point))
        for j in self.jumps:
            jl, jr = j.limits_at(point)
            left *= jl
            right *= jr
        return left, right


@dataclass(frozen=True)
class PsiFactor:
    """Shift-compatible jump factor at a fixed point of alpha.

    psi(t) = eta(t) * eta_alpha(t)^-1 with eta(t) = (1 - t/tau)^beta on the
    principal branch and tau the chosen fixed point; scale premultiplies
    (so that -psi and similar variants stay expressible).
    """

    which: str                   # 't_plus' or 't_minus'
    beta_exp: complex
    shift: ShiftParams
    scale: complex = 1.0

    def __post_init__(self):
        if self.which not in ("t_plus", "t_minus"):
            raise ValueError("which must be 't_plus' or 't_minus'")

    @property
    def tau(self) -> complex:
        return self.shift.t_plus if self.which == "t_plus" else self.shift.t_minus

    @property
    def jump_points(self) -> tuple[complex, ...]:
        return (self.tau,)

    def eval(self, t):
        t = np.asarray(t, dtype=complex)
        if t.ndim == 0 and abs(complex(t) - self.tau) < JUMP_LOCATION_TOL:
            raise AtJumpPoint("evaluation at the fixed-point jump")
        tau = self.tau
        at = eval_alpha(self.shift, t)
        eta = _principal_power(1.0 - t / tau, self.beta_exp)
        eta_a = _principal_power(1.0 - at / tau, -self.beta_exp)
        return self.scale * eta * eta_a

    def limits_at(self, point: complex) -> tuple[complex, complex]:
        if abs(point - self.tau) < JUMP_LOCATION_TOL:
            return (
                self.scale * complex(np.exp(1j * np.pi * self.beta_exp)),
                self.scale * complex(np.exp(-1j * np.pi * self.beta_exp)),
            )
        v = complex(self.eval(point))
        return v, v


def _principal_power(w, beta: complex):
    """w^beta = exp(beta (log|w| + i Arg w)), Arg in (-pi, pi]."""
    w = np.asarray(w, dtype=complex)
    return np.exp(beta * (np.log(np.abs(w)) + 1j * np.angle(w)))


PCLike = Union[RationalSymbol, PCSymbol, PsiFactor]


def _as_pc(s) -> PCLike:
    if isinstance(s, (PCSymbol, PsiFactor)):
        return s
    if isinstance(s, RationalSymbol):
        return PCSymbol(s, ())
    raise TypeError(f"not a symbol: {type(s)!r}")


def eval_pc(s: PCLike, t):
    """Pointwise evaluation away from jump points."""
    return _as_pc(s).eval(t)


def one_sided_limits(s: PCLike, tau: complex) -> tuple[complex, complex]:
    """(s(tau - 0), s(tau + 0)) with respect to the counterclockwise
    orientation."""
    return _as_pc(s).limits_at(tau)


def jump_points_of(s: PCLike) -> tuple[complex, ...]:
    s = _as_pc(s)
    return getattr(s, "jump_points", ())


# ---------------------------------------------------------------------------
# the 2x2 Fredholm criterion


def nu_h(y: float, p: float) -> tuple[complex, complex]:
    """(nu_p(y), h_p(y)) on the two-point compactification of the reals.

    nu_p(y) = (1 + coth(pi (y + i/p))) / 2,  h_p(y) = 1 / sinh(pi (y + i/p));
    the limits at +/- infinity are (1, 0) and (0, 0).
    """
    if not 1.0 < p < np.inf:
        raise ValueError("p must lie in (1, infinity)")
    if np.isposinf(y):
        return 1.0 + 0.0j, 0.0 + 0.0j
    if np.isneginf(y):
        return 0.0 + 0.0j, 0.0 + 0.0j
    z = np.pi * (y + 1j / p)
    sh = np.sinh(z)
    return complex(0.5 * (1.0 + np.cosh(z) / sh)), complex(1.0 / sh)


def _arc_thetas(shift: ShiftParams, n_t: int, extra_points) -> np.ndarray:
    """Interior sample angles of the arc running from t_plus to t_minus."""
    th0 = float(np.angle(shift.t_plus))
    span = float(np.mod(np.angle(shift.t_minus) - th0, 2 * np.pi))
    base = th0 + span * (np.arange(1, n_t + 1)) / (n_t + 1)
    out = list(base)
    for z in extra_points:
        d = float(np.mod(np.angle(z) - th0, 2 * np.pi))
        if 1e-9 < d < span - 1e-9:
            out.append(th0 + d)
    return np.array(sorted(out))


def _y_grid(n_y: int) -> list[float]:
    interior = n_y - 2
    v = np.linspace(-0.999, 0.999, interior)
    return [-np.inf] + list(np.arctanh(v)) + [np.inf]


def fredholm_symbol_check(
    a: PCLike,
    b: PCLike,
    p: float,
    shift: ShiftParams,
    n_t: int = 512,
    n_y: int = 201,
    threshold: float = FREDHOLM_THRESHOLD,
) -> dict:
    """Fredholm test for T(a) + H(b) with piecewise continuous a, b.

    On the open arc between the fixed points the 2x2 symbol matrix must be
    invertible for all (t, y); at the fixed points a scalar function must
    stay away from zero.  The report carries the minima over the grid,
    which includes the jump points of both symbols (degeneracies live
    exactly there), y = 0 and y = +/- infinity.
    """
    a = _as_pc(a)
    b = _as_pc(b)
    extra = list(jump_points_of(a)) + list(jump_points_of(b))
    for s in (a, b):
        base = getattr(s, "base", None)
        if base is not None:
            for z in base.num_roots:
                if abs(abs(z) - 1.0) < 1e-6:
                    extra.append(z / abs(z))
    extra += [eval_alpha(shift, z) for z in extra]
    thetas = _arc_thetas(shift, n_t, extra)
    ts = np.exp(1j * thetas)
    ys = _y_grid(n_y)
    nus = np.array([nu_h(y, p)[0] for y in ys])
    hs = np.array([nu_h(y, p)[1] for y in ys])

    a_l = np.empty(len(ts), complex)
    a_r = np.empty(len(ts), complex)
    b_l = np.empty(len(ts), complex)
    b_r = np.empty(len(ts), complex)
    aa_l = np.empty(len(ts), complex)
    aa_r = np.empty(len(ts), complex)
    ba_l = np.empty(len(ts), complex)
    ba_r = np.empty(len(ts), complex)
    for i, t in enumerate(ts):
        at = eval_alpha(shift, complex(t))
        a_l[i], a_r[i] = a.limits_at(complex(t))
        b_l[i], b_r[i] = b.limits_at(complex(t))
        aa_l[i], aa_r[i] = a.limits_at(at)
        ba_l[i], ba_r[i] = b.limits_at(at)

    # det over the (t, y) grid
    m11 = a_r[:, None] * nus[None, :] + a_l[:, None] * (1 - nus[None, :])
    m22 = aa_r[:, None] * nus[None, :] + aa_l[:, None] * (1 - nus[None, :])
    m12 = (b_r - b_l)[:, None] / 2j * hs[None, :]
    m21 = (ba_l - ba_r)[:, None] / 2j * hs[None, :]
    det = m11 * m22 - m12 * m21
    i_flat = int(np.argmin(np.abs(det)))
    min_det = float(np.abs(det).flat[i_flat])

    # scalar at the fixed points, mu(t_plus) = 1, mu(t_minus) = -1
    min_scalar = np.inf
    scalar_where = None
    for tau, mu in ((shift.t_plus, 1.0), (shift.t_minus, -1.0)):
        al, ar = a.limits_at(tau)
        bl, br = b.limits_at(tau)
        vals = ar * nus + al * (1 - nus) + mu * (br - bl) / 2.0 * hs
        j = int(np.argmin(np.abs(vals)))
        if abs(vals[j]) < min_scalar:
            min_scalar = float(abs(vals[j]))
            scalar_where = {"t": [tau.real, tau.imag], "y": ys[j]}
    verdict = bool(min_det > threshold and min_scalar > threshold)
    return {
        "fredholm": verdict,
        "min_abs_det": min_det,
        "min_abs_scalar": min_scalar,
        "threshold": threshold,
        "det_argmin": {
            "t_index": i_flat // len(ys),
            "y": ys[i_flat % len(ys)],
        },
        "scalar_argmin": scalar_where,
        "grid": {"n_t": len(ts), "n_y": len(ys), "p": p},
    }


# ---------------------------------------------------------------------------
# signature for PC matching symbols


def _matching_residual_pc(g: PCLike, shift: ShiftParams, grid: int = 512) -> float:
    ts = shift.circle_grid(grid)
    keep = np.ones(len(ts), dtype=bool)
    specials = list(jump_points_of(g))
    specials += [eval_alpha(shift, z) for z in specials]
    for z in specials:
        keep &= np.abs(ts - z) > 1e-3
    ts = ts[keep]
    vals = eval_pc(g, ts) * eval_pc(g, eval_alpha(shift, ts))
    return float(np.max(np.abs(vals - 1.0)))


def _snap(value: complex) -> int:
    if abs(value - 1.0) < 1e-6:
        return 1
    if abs(value + 1.0) < 1e-6:
        return -1
    raise SignatureIndeterminate(f"residual value {value:.8g} not near +-1")


def pc_alpha_signature(
    g: PCLike,
    p: float,
    shift: ShiftParams,
    check_fredholm: bool = True,
) -> int:
    """Factorization signature of a PC matching symbol.

    Any jump at t_plus is peeled off by the psi factor whose exponent is
    read from the jump ratio g(t_plus+0)/g(t_plus-0) = exp(-2 pi i beta);
    the remaining factor is continuous at t_plus, where its value (a sign)
    is the signature.  Peeling contributes +1, so no correction is needed,
    and continuity at t_plus alone already determines the sign.
    """
    g = _as_pc(g)
    resid = _matching_residual_pc(g, shift)
    if resid >= 1e-8:
        raise NotMatching(f"g g_alpha - 1 residual {resid:.3e}")
    if check_fredholm:
        zero = PCSymbol(RationalSymbol.constant(0.0), ())
        rep = fredholm_symbol_check(g, zero, p, shift, n_t=128, n_y=101)
        if not rep["fredholm"]:
            raise SignatureIndeterminate("T(g) is not Fredholm on this space")
    gl, gr = g.limits_at(shift.t_plus)
    if abs(gl) < 1e-14:
        raise SignatureIndeterminate("vanishing one-sided limit at t_plus")
    ratio = gr / gl
    if abs(ratio - 1.0) < 1e-10:
        # continuous at t_plus: read the value straight off
        return _snap(0.5 * (gl + gr))
    beta = _beta_from_ratio(ratio, p)
    psi_l = complex(np.exp(1j * np.pi * beta))
    psi_r = complex(np.exp(-1j * np.pi * beta))
    v_left = gl / psi_l
    v_right = gr / psi_r
    if abs(v_left - v_right) > 1e-8 * max(1.0, abs(v_left)):
        raise SignatureIndeterminate("peeled factor is not continuous at t_plus")
    return _snap(0.5 * (v_left + v_right))


def _beta_from_ratio(ratio: complex, p: float) -> complex:
    """beta with exp(-2 pi i beta) = ratio and Re beta in (-1/q, 1/p)."""
    q = p / (p - 1.0)
    beta = -np.log(ratio) / (2j * np.pi)
    while beta.real <= -1.0 / q:
        beta += 1.0
    while beta.real >= 1.0 / p:
        beta -= 1.0
    if not (-1.0 / q < beta.real < 1.0 / p):
        raise SignatureIndeterminate(
            f"jump exponent {beta:.6g} outside the admissible strip"
        )
    return complex(beta)


# ---------------------------------------------------------------------------
# Toeplitz sections of PC symbols by piecewise Gauss-Legendre quadrature


def _gl_panels(breaks: np.ndarray, k_max: int, nodes: int = 10, refine: float = 1.0):
    """Composite GL nodes/weights on [breaks[0], breaks[-1]] split so that
    every panel sees at most ~2 radians of the fastest oscillation."""
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    all_t = []
    all_w = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        width = b - a
        if width <= 1e-12:
            continue
        panels = max(8, int(np.ceil(refine * width * max(k_max, 1) / 2.0)))
        edges = np.linspace(a, b, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        t = (mid[:, None] + half[:, None] * xs[None, :]).ravel()
        w = (half[:, None] * ws[None, :]).ravel()
        all_t.append(t)
        all_w.append(w)
    return np.concatenate(all_t), np.concatenate(all_w)


def pc_fourier_coefficients(
    s: PCLike, shift: ShiftParams, lo: int, hi: int, refine: float = 1.0
) -> np.ndarray:
    """Fourier coefficients of a piecewise smooth symbol on [lo, hi].

    Integration runs on the smooth arcs separately, so the jump points are
    panel boundaries and never quadrature nodes; panel counts scale with
    the largest requested frequency.
    """
    s = _as_pc(s)
    th0 = 0.123456
    cuts = sorted(
        float(np.mod(np.angle(z) - th0, 2 * np.pi)) for z in jump_points_of(s)
    )
    breaks = np.array([0.0] + cuts + [2 * np.pi]) + th0
    k_max = max(abs(lo), abs(hi))
    theta, w = _gl_panels(breaks, k_max, refine=refine)
    vals = eval_pc(s, np.exp(1j * theta)) * w
    ks = np.arange(lo, hi + 1)
    out = np.empty(len(ks), complex)
    chunk = 64
    for i in range(0, len(ks), chunk):
        kk = ks[i : i + chunk]
        out[i : i + chunk] = (np.exp(-1j * np.outer(kk, theta)) @ vals) / (2 * np.pi)
    return out


def pc_toeplitz_entries(
    s: PCLike, shift: ShiftParams, n: int
) -> tuple[np.ndarray, float]:
    """Toeplitz section of a PC symbol, with a panel-refinement error bound."""
    co = pc_fourier_coefficients(s, shift, -(n - 1), n - 1)
    probe = pc_fourier_coefficients(s, shift, n - 5, n - 1, refine=1.7)
    err = float(np.max(np.abs(co[-5:] - probe)))
    col = co[n - 1 :]
    row = co[: n][::-1]
    return scipy.linalg.toeplitz(col, row), err
