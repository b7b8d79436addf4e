"""The orientation-reversing circle involution and its weighted flip.

For |beta| > 1 the Moebius map alpha(z) = (z - beta)/(conj(beta) z - 1)
is an involution of the unit circle with two fixed points.  It factors as
alpha = alpha_plus * t^-1 * alpha_minus with alpha_plus analytic inside and
alpha_minus analytic outside, and induces the weighted flip

    (J f)(t) = t^-1 alpha_minus(t) f(alpha(t)),

an involution that swaps the analytic and anti-analytic halves.  chi and
psi_cap are the degree +1 canonical functions t/alpha_minus and
t/alpha_plus; chi-powers realize all index shifts used downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BetaInsideDisk, GridTooSmall, PoleHit
from .laurent import LaurentPolynomial
from .rational import RationalSymbol
from .series import FFT_CAP, TruncatedSeries

_CHECK_GRID = 64
_FLIP_FFT_START = 256


@dataclass(frozen=True)
class ShiftParams:
    """Derived data of the circle involution for one beta."""

    beta: complex
    lam: complex
    t_plus: complex
    t_minus: complex
    alpha: RationalSymbol
    alpha_plus: RationalSymbol
    alpha_minus: RationalSymbol
    chi: RationalSymbol
    psi_cap: RationalSymbol

    @property
    def decay(self) -> float:
        """Geometric tail ratio of flip images: 1/|beta|."""
        return 1.0 / abs(self.beta)

    def pad(self, tol: float = 1e-10) -> int:
        return int(np.ceil(np.log(tol) / np.log(self.decay))) + 4

    def circle_grid(self, n: int = 512) -> np.ndarray:
        return np.exp(2j * np.pi * (np.arange(n) + 0.2371) / n)


def make_shift(beta: complex) -> ShiftParams:
    """Build and verify the shift data for |beta| > 1."""
    beta = complex(beta)
    if abs(beta) <= 1.0 + 1e-10:
        raise BetaInsideDisk(f"|beta| = {abs(beta):.6g} must exceed 1")
    bc = np.conj(beta)
    lam = 1j * np.sqrt(abs(beta) ** 2 - 1.0)
    t_plus = (1.0 + lam) / bc
    t_minus = (1.0 - lam) / bc
    lin_num = LaurentPolynomial(0, [-beta, 1.0])     # t - beta
    lin_den = LaurentPolynomial(0, [-1.0, bc])       # conj(beta) t - 1
    alpha = RationalSymbol(lin_num, lin_den)
    alpha_plus = RationalSymbol(lin_num * (1.0 / lam))
    alpha_minus = RationalSymbol(LaurentPolynomial(1, [lam]), lin_den)
    chi = RationalSymbol(lin_den * (1.0 / lam))      # t / alpha_minus
    psi_cap = RationalSymbol(LaurentPolynomial(1, [lam]), lin_num)
    shift = ShiftParams(
        beta, complex(lam), complex(t_plus), complex(t_minus),
        alpha, alpha_plus, alpha_minus, chi, psi_cap,
    )
    _verify(shift)
    return shift


def _verify(shift: ShiftParams, tol: float = 1e-12) -> None:
    for t in (shift.t_plus, shift.t_minus):
        assert abs(abs(t) - 1.0) < tol, "fixed point off the circle"
        assert abs(eval_alpha(shift, t) - t) < tol * 10, "fixed point not fixed"
    t = shift.circle_grid(_CHECK_GRID)
    a = eval_alpha(shift, t)
    scale = max(1.0, abs(shift.beta))
    assert np.max(np.abs(eval_alpha(shift, a) - t)) < tol * scale * 10
    fact = shift.alpha_plus.eval(t) / t * shift.alpha_minus.eval(t)
    assert np.max(np.abs(fact - a)) < tol * scale * 10
    chi_match = shift.chi.eval(t) * shift.chi.eval(a)
    assert np.max(np.abs(chi_match - 1.0)) < tol * scale * 10


def eval_alpha(shift: ShiftParams, t):
    """Pointwise alpha(t) = (t - beta) / (conj(beta) t - 1)."""
    t = np.asarray(t, dtype=complex)
    den = np.conj(shift.beta) * t - 1.0
    if np.any(np.abs(den) < 1e-12):
        raise PoleHit("alpha evaluated at its pole 1/conj(beta)")
    out = (t - shift.beta) / den
    return out if out.ndim else complex(out)


def _compose_laurent(f: LaurentPolynomial, shift: ShiftParams) -> RationalSymbol:
    """Exact substitution t -> alpha(t) for a Laurent polynomial."""
    if f.is_zero:
        return RationalSymbol.constant(0.0)
    beta = shift.beta
    bc = np.conj(beta)
    lo, hi = f.lo, f.hi
    p = np.array([-beta, 1.0], dtype=complex)   # t - beta (ascending)
    q = np.array([-1.0, bc], dtype=complex)     # conj(beta) t - 1
    # numerator sum_k c_k (t-beta)^(k-lo) (bc t-1)^(hi-k); powers built once
    deg = hi - lo
    p_pows = [np.array([1.0 + 0j])]
    q_pows = [np.array([1.0 + 0j])]
    for _ in range(deg):
        p_pows.append(np.convolve(p_pows[-1], p))
        q_pows.append(np.convolve(q_pows[-1], q))
    acc = np.zeros(deg + 1, dtype=complex)
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        term = c * np.convolve(p_pows[i], q_pows[deg - i])
        acc[: len(term)] += term
    num = LaurentPolynomial(0, acc)
    den = LaurentPolynomial.one()
    if lo >= 0:
        num = num * LaurentPolynomial(0, _pow(p, lo))
    else:
        den = den * LaurentPolynomial(0, _pow(p, -lo))
    if hi >= 0:
        den = den * LaurentPolynomial(0, _pow(q, hi))
    else:
        num = num * LaurentPolynomial(0, _pow(q, -hi))
    return RationalSymbol(num, den)


def _pow(c: np.ndarray, k: int) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for _ in range(k):
        out = np.convolve(out, c)
    return out


def compose_with_shift(s: RationalSymbol, shift: ShiftParams) -> RationalSymbol:
    """Exact rational substitution s(alpha(t)), reduced."""
    num_c = _compose_laurent(s.num, shift)
    den_c = _compose_laurent(s.den, shift)
    return RationalSymbol(num_c.num * den_c.den, num_c.den * den_c.num)


def chi_power(shift: ShiftParams, k: int) -> RationalSymbol:
    """chi^k as a reduced rational symbol; winding number k."""
    return shift.chi.power(k)


def apply_J_alpha(
    f: Union[TruncatedSeries, RationalSymbol],
    shift: ShiftParams,
    tol: float = 1e-10,
) -> Union[TruncatedSeries, RationalSymbol]:
    """The weighted flip J f = t^-1 alpha_minus * (f o alpha).

    Rational symbols are transformed exactly; coefficient windows go through
    a circle grid and are re-expanded by FFT, with the geometric |beta|^-1
    tail certified below tol (GridTooSmall otherwise).
    """
    if isinstance(f, RationalSymbol):
        comp = compose_with_shift(f, shift)
        return shift.chi.invert() * comp

    scale = max(float(np.max(np.abs(f.coeffs))), 1e-300)
    pad = shift.pad(tol)
    while True:
        lo = -f.hi - pad
        hi = -f.lo + pad
        span = hi - lo + 1
        m = _FLIP_FFT_START
        while m < 4 * span:
            m *= 2
        if m > FFT_CAP:
            raise GridTooSmall("flip window exceeds the FFT cap")
        t = np.exp(2j * np.pi * np.arange(m) / m)
        at = eval_alpha(shift, t)
        vals = shift.alpha_minus.eval(t) / t * f.eval(at)
        co = np.fft.fft(vals) / m
        exps = np.arange(lo, hi + 1)
        out = co[np.mod(exps, m)]
        edge = max(
            float(np.max(np.abs(out[:2]))), float(np.max(np.abs(out[-2:])))
        )
        if edge <= tol * scale:
            return TruncatedSeries(lo, out, tail=edge).trim(1e-15)
        pad *= 2
        if pad > 10_000:
            raise GridTooSmall("flip tail failed to certify below tolerance")
