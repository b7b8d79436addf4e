"""Wiener-Hopf factorization of rational symbols.

An admissible symbol g with no zeros on the circle splits as

    g = g_minus * t^(-kappa) * g_plus,      g_minus(infinity) = 1,

where g_plus collects the zeros/poles outside the closed disk, g_minus the
ones inside, and kappa is minus the winding number, i.e. the index of the
Toeplitz operator with symbol g.  The normalization constant is carried by
g_plus, which is what the signature formula reads off.

The factorization yields explicit one-sided inverses of the Toeplitz
operator: with g0 = g_minus g_plus one has T(g0)^-1 = g_plus^-1 P g_minus^-1,
and multiplying by the monomial that cancels t^(-kappa) gives a right
inverse for kappa >= 0 and a left inverse for kappa <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NotFredholm, WrongSide
from .laurent import LaurentPolynomial
from .rational import DELTA_CIRCLE, RationalSymbol
from .series import TruncatedSeries, multiply_by_symbol


@dataclass(frozen=True)
class WHFactorization:
    """g = g_minus * t^(-kappa) * g_plus with kappa the Toeplitz index."""

    kappa: int
    g_plus: RationalSymbol
    g_minus: RationalSymbol

    def reconstruct(self) -> RationalSymbol:
        return self.g_minus * RationalSymbol.monomial(-self.kappa) * self.g_plus


def factorize(g: RationalSymbol) -> WHFactorization:
    """Split zeros and poles by modulus; raises NotFredholm on circle roots."""
    if g.is_zero:
        raise NotFredholm("zero symbol")
    for r in (g.num_roots, g.den_roots):
        if np.any(np.abs(np.abs(r) - 1.0) < DELTA_CIRCLE):
            raise NotFredholm("zero or pole inside the circle annulus")
    zn, zd = g.num_roots, g.den_roots
    z_in = zn[np.abs(zn) < 1.0]
    z_out = zn[np.abs(zn) > 1.0]
    w_in = zd[np.abs(zd) < 1.0]
    w_out = zd[np.abs(zd) > 1.0]
    lead = g.num.coeffs[-1]  # den is monic
    kappa = -(g.num.lo + len(z_in) - len(w_in))
    # prod (t - z)/t over inside roots has value 1 at infinity
    minus_num = LaurentPolynomial.from_roots(z_in, 1.0, lo=-len(z_in))
    minus_den = LaurentPolynomial.from_roots(w_in, 1.0, lo=-len(w_in))
    plus_num = LaurentPolynomial.from_roots(z_out, lead)
    plus_den = LaurentPolynomial.from_roots(w_out, 1.0)
    return WHFactorization(
        kappa=int(kappa),
        g_plus=RationalSymbol(plus_num, plus_den),
        g_minus=RationalSymbol(minus_num, minus_den),
    )


def eval_gplus_inverse_at(fac: WHFactorization, z: complex) -> complex:
    """1/g_plus at a point of the open disk (g_plus has no roots there)."""
    if abs(z) >= 1.0:
        raise ValueError("point must lie inside the open disk")
    return 1.0 / fac.g_plus.eval(z)


def apply_one_sided_inverse(
    fac: WHFactorization,
    h: Union[TruncatedSeries, RationalSymbol],
    side: str,
):
    """Apply the explicit one-sided inverse of T(g) to an analytic input.

    side='right' needs kappa >= 0, side='left' needs kappa <= 0,
    side='two_sided' needs kappa = 0.  Rational inputs stay exact; series
    inputs go through windowed coefficient convolutions.
    """
    kappa = fac.kappa
    if side == "right" and kappa < 0:
        raise WrongSide("right inverse requires index >= 0")
    if side == "left" and kappa > 0:
        raise WrongSide("left inverse requires index <= 0")
    if side == "two_sided" and kappa != 0:
        raise WrongSide("two-sided inverse requires index 0")
    if side not in ("right", "left", "two_sided"):
        raise ValueError("side must be right, left or two_sided")

    gm_inv = fac.g_minus.invert()
    gp_inv = fac.g_plus.invert()
    if isinstance(h, RationalSymbol):
        if side == "right":
            x = gm_inv * RationalSymbol.monomial(kappa) * h
            return gp_inv * x.split_analytic()[0]
        x = (gm_inv * h).split_analytic()[0]
        x = RationalSymbol.monomial(kappa) * gp_inv * x
        return x.split_analytic()[0]
    if side == "right":
        x = multiply_by_symbol(h.shift(kappa), gm_inv).part("P")
        return multiply_by_symbol(x, gp_inv).trim()
    x = multiply_by_symbol(h, gm_inv).part("P")
    x = multiply_by_symbol(x, gp_inv).shift(kappa)
    return x.part("P").trim()
