"""Matching pairs, subordinated pairs and the factorization signature.

A pair (a, b) is matching for the shift when a * (a o alpha) equals
b * (b o alpha) on the circle.  The subordinated functions c = a/b and
d = b/(a o alpha) then satisfy c (c o alpha) = 1 = d (d o alpha), and the
indices of their Toeplitz operators control the whole kernel structure.

The signature of a matching function g is the sign in the representation
g = sigma * g_plus * chi^(-n) * (g_plus^-1 o alpha).  It is computed here
along two independent routes: the normalization constant of the
Wiener-Hopf factorization, (lam/conj(beta))^n / g_plus(1/conj(beta)),
and the values at the fixed points (g(t_plus), respectively
g(t_minus) (-1)^n).  Disagreement between routes is a hard error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BadPlusFactor,
    CrossCheckMismatch,
    NotFredholm,
    NotInvertible,
    NotMatching,
    SignatureIndeterminate,
)
from .rational import DELTA_CIRCLE, RationalSymbol
from .shift import ShiftParams, chi_power, compose_with_shift, eval_alpha
from .wiener_hopf import factorize

MATCH_TOL = 1e-8
SNAP_TOL = 1e-6


@dataclass(frozen=True)
class MatchingPair:
    """A matching pair with its subordinated data, tied to one shift."""

    a: RationalSymbol
    b: RationalSymbol
    c: RationalSymbol
    d: RationalSymbol
    kappa1: int
    kappa2: int
    sigma_c: Optional[int]
    sigma_d: Optional[int]
    shift: ShiftParams
    a_alpha_inv: RationalSymbol

    @property
    def is_fredholm(self) -> bool:
        return self.sigma_c is not None and self.sigma_d is not None


def check_matching(
    a: RationalSymbol, b: RationalSymbol, shift: ShiftParams, grid: int = 512
) -> float:
    """sup over a circle grid of |a a_alpha - b b_alpha|."""
    for name, s in (("a", a), ("b", b)):
        if s.is_zero or np.any(np.abs(np.abs(s.num_roots) - 1.0) < DELTA_CIRCLE):
            raise NotInvertible(f"{name} vanishes on the circle")
    t = shift.circle_grid(grid)
    at = eval_alpha(shift, t)
    lhs = a.eval(t) * a.eval(at)
    rhs = b.eval(t) * b.eval(at)
    return float(np.max(np.abs(lhs - rhs)))


def subordinated_pair(a, b, shift: ShiftParams):
    """(c, d, kappa1, kappa2) with c = a/b, d = b / (a o alpha)."""
    residual = check_matching(a, b, shift)
    if residual >= MATCH_TOL:
        raise NotMatching(f"matching residual {residual:.3e} >= {MATCH_TOL}")
    c = a * b.invert()
    a_alpha = compose_with_shift(a, shift)
    d = b * a_alpha.invert()
    return c, d, -c.winding_number(), -d.winding_number()


def make_matching_pair(a, b, shift: ShiftParams) -> MatchingPair:
    """Build a MatchingPair, verifying the cross identities of (c, d)."""
    c, d, k1, k2 = subordinated_pair(a, b, shift)
    a_alpha = compose_with_shift(a, shift)
    b_alpha = compose_with_shift(b, shift)
    cross_c = b_alpha * a_alpha.invert()
    cross_d = b_alpha.invert() * a
    scale = max(1.0, a.sup_norm_on_circle(64), b.sup_norm_on_circle(64))
    for left, right in ((c, cross_c), (d, cross_d)):
        if left.distance_to(right) > 1e-10 * scale * max(1.0, left.sup_norm_on_circle(64)):
            raise NotMatching("cross identities of the subordinated pair fail")
    try:
        sc = alpha_signature(c, shift)
        sd = alpha_signature(d, shift)
    except NotFredholm:
        sc = sd = None
    return MatchingPair(
        a=a, b=b, c=c, d=d, kappa1=k1, kappa2=k2,
        sigma_c=sc, sigma_d=sd, shift=shift, a_alpha_inv=a_alpha.invert(),
    )


def _snap_sign(value: complex, label: str) -> int:
    if abs(value - 1.0) < SNAP_TOL:
        return 1
    if abs(value + 1.0) < SNAP_TOL:
        return -1
    raise SignatureIndeterminate(f"{label} = {value:.8g} not within {SNAP_TOL} of +-1")


def alpha_signature(g: RationalSymbol, shift: ShiftParams, grid: int = 512) -> int:
    """Sign of the matching representation of g, cross-checked two ways.

    Route one evaluates (lam/conj(beta))^n / g_plus(1/conj(beta)) on the
    factorization; route two reads g at the fixed points (with the (-1)^n
    twist at t_minus).  Rational symbols are continuous at both fixed
    points, so all three numbers must agree.
    """
    t = shift.circle_grid(grid)
    resid = float(np.max(np.abs(g.eval(t) * g.eval(eval_alpha(shift, t)) - 1.0)))
    if resid >= MATCH_TOL:
        raise NotMatching(f"g g_alpha - 1 residual {resid:.3e}")
    fac = factorize(g)
    n = fac.kappa
    bc = np.conj(shift.beta)
    xi = (shift.lam / bc) ** n / fac.g_plus.eval(1.0 / bc)
    sig = _snap_sign(xi, "factorization signature")
    v_plus = _snap_sign(g.eval(shift.t_plus), "value at t_plus")
    v_minus = _snap_sign(g.eval(shift.t_minus) * (-1.0) ** n, "twisted value at t_minus")
    if not (sig == v_plus == v_minus):
        raise CrossCheckMismatch(
            f"signature routes disagree: factorization {sig}, "
            f"t_plus {v_plus}, t_minus {v_minus}"
        )
    return sig


def generate_matching_function(
    g_plus: RationalSymbol, n: int, sigma: int, shift: ShiftParams
) -> RationalSymbol:
    """sigma * g_plus * chi^(-n) * (g_plus^-1 o alpha).

    The result is a matching function with Toeplitz index n and signature
    sigma, provided g_plus and its inverse are analytic in the closed disk.
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    for r in (g_plus.num_roots, g_plus.den_roots):
        if np.any(np.abs(r) < 1.0 + DELTA_CIRCLE):
            raise BadPlusFactor("g_plus has a zero or pole in the closed disk")
    if g_plus.num.lo != 0:
        raise BadPlusFactor("g_plus carries a monomial factor")
    inv_composed = compose_with_shift(g_plus.invert(), shift)
    return float(sigma) * g_plus * chi_power(shift, -n) * inv_composed


def generate_matching_pair(
    a: RationalSymbol, rho: RationalSymbol, shift: ShiftParams
) -> MatchingPair:
    """Pair (a, a_alpha * rho) for any invertible a and matching rho."""
    t = shift.circle_grid(256)
    resid = float(np.max(np.abs(rho.eval(t) * rho.eval(eval_alpha(shift, t)) - 1.0)))
    if resid >= MATCH_TOL:
        raise NotMatching(f"rho is not matching (residual {resid:.3e})")
    b = compose_with_shift(a, shift) * rho
    return make_matching_pair(a, b, shift)


def adjoint_pair(pair: MatchingPair) -> MatchingPair:
    """The pair generating the adjoint operators: (conj(a), conj(b) o alpha).

    Its subordinated pair is (conj(d), conj(c)) and the indices negate and
    swap; both facts are verified here.
    """
    shift = pair.shift
    a_adj = pair.a.conjugate_bar()
    b_adj = compose_with_shift(pair.b.conjugate_bar(), shift)
    out = make_matching_pair(a_adj, b_adj, shift)
    d_bar = pair.d.conjugate_bar()
    c_bar = pair.c.conjugate_bar()
    scale = max(1.0, d_bar.sup_norm_on_circle(64), c_bar.sup_norm_on_circle(64))
    if out.c.distance_to(d_bar) > 1e-10 * scale or out.d.distance_to(c_bar) > 1e-10 * scale:
        raise CrossCheckMismatch("adjoint subordinated pair mismatch")
    if (out.kappa1, out.kappa2) != (-pair.kappa2, -pair.kappa1):
        raise CrossCheckMismatch("adjoint indices are not the negated swap")
    return out
