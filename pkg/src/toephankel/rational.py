"""Rational symbols on the unit circle.

A symbol is a ratio of two Laurent polynomials, kept reduced (no shared
roots within the clustering tolerance) and normalized so that the
denominator is a monic ordinary polynomial with nonzero constant term.
Admissibility means the denominator has no root inside the exclusion
annulus | |z| - 1 | < DELTA_CIRCLE, so evaluation on the circle is bounded.

Besides arithmetic, this module provides the partial-fraction machinery
used everywhere else: exact Fourier coefficients on a window, the exact
splitting of a symbol into its analytic-inside and analytic-outside parts,
and certified winding numbers via root localization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    DenominatorNearZero,
    IllConditionedRoots,
    NotInvertibleOnCircle,
)
from .laurent import LaurentPolynomial

DELTA_CIRCLE = 1e-8   # exclusion annulus around |z| = 1
CLUSTER_TOL = 1e-9    # root matching tolerance for num/den cancellation
PF_CLUSTER_TOL = 1e-5 # pole grouping tolerance (m-fold roots scatter ~eps^(1/m))


def _cancel_roots(rn: np.ndarray, rd: np.ndarray, tol: float):
    """Cluster-level num/den root cancellation within tol (relative).

    Roots are grouped into clusters first and whole multiplicities are
    cancelled between matching clusters; survivors are rebuilt from the
    cluster centroids, which stay machine-accurate even when the
    individual roots of a multiple factor scatter.
    """
    num_clusters = [[z, m] for z, m in _cluster(rn, tol)]
    den_clusters = [[z, m] for z, m in _cluster(rd, tol)]
    cancelled = False
    for dc in den_clusters:
        candidates = [nc for nc in num_clusters if nc[1] > 0]
        if not candidates:
            break
        dist = [abs(dc[0] - nc[0]) for nc in candidates]
        i = int(np.argmin(dist))
        if dist[i] <= tol * max(1.0, abs(dc[0])):
            q = min(candidates[i][1], dc[1])
            candidates[i][1] -= q
            dc[1] -= q
            cancelled = True
    rn2 = np.concatenate(
        [np.full(m, z, complex) for z, m in num_clusters if m > 0]
        or [np.zeros(0, complex)]
    )
    rd2 = np.concatenate(
        [np.full(m, z, complex) for z, m in den_clusters if m > 0]
        or [np.zeros(0, complex)]
    )
    return rn2, rd2, cancelled


def _cluster(points: np.ndarray, tol: float):
    """Group points into clusters of diameter ~tol; returns (center, count)."""
    remaining = list(points)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        changed = True
        while changed:
            changed = False
            for p in remaining[:]:
                c = np.mean(members)
                if abs(p - c) <= tol * max(1.0, abs(c)):
                    members.append(p)
                    remaining.remove(p)
                    changed = True
        center = complex(np.mean(members))
        if abs(center) < 1e-12:
            center = 0.0 + 0.0j
        clusters.append((center, len(members)))
    return clusters


@dataclass(frozen=True)
class RationalSymbol:
    """Reduced ratio num/den of Laurent polynomials, admissible on |t|=1."""

    num: LaurentPolynomial
    den: LaurentPolynomial = field(default_factory=LaurentPolynomial.one)

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            object.__setattr__(self, "num", LaurentPolynomial.zero())
            object.__setattr__(self, "den", LaurentPolynomial.one())
            object.__setattr__(self, "_num_roots", np.zeros(0, complex))
            object.__setattr__(self, "_den_roots", np.zeros(0, complex))
            return
        num, den = _deflate_edges(num, den)
        offset = num.lo - den.lo
        lead_d = den.coeffs[-1]
        if len(den.coeffs) == 1:
            num = LaurentPolynomial(offset, num.coeffs / lead_d)
            den = LaurentPolynomial.one()
            rn2, rd2 = num.roots(), np.zeros(0, complex)
        else:
            rn, rd = num.roots(), den.roots()
            lead_n = num.coeffs[-1]
            num = LaurentPolynomial(offset, num.coeffs / lead_d)
            den = LaurentPolynomial(0, den.coeffs / lead_d)
            rn2, rd2 = rn, rd
            # Shared roots of an m-fold factor scatter like eps^(1/m) under
            # np.roots, so try a coarse cancellation first and only accept it
            # when the reduced fraction reproduces the original values.
            for tol in (3e-2, 1e-3, CLUSTER_TOL):
                rn_t, rd_t, cancelled = _cancel_roots(rn, rd, tol)
                if not cancelled:
                    break
                num_t = LaurentPolynomial.from_roots(rn_t, lead_n / lead_d, lo=offset)
                den_t = LaurentPolynomial.from_roots(rd_t, 1.0)
                if _same_values(num, den, num_t, den_t):
                    num, den = num_t, den_t
                    rn2, rd2 = rn_t, rd_t
                    break
        bad = np.abs(np.abs(rd2) - 1.0) < DELTA_CIRCLE
        if np.any(bad):
            raise DenominatorNearZero(
                f"pole(s) {rd2[bad]} inside the circle annulus (delta={DELTA_CIRCLE})"
            )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_num_roots", np.asarray(rn2, complex))
        object.__setattr__(self, "_den_roots", np.asarray(rd2, complex))
        self._num_roots.setflags(write=False)
        self._den_roots.setflags(write=False)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def constant(value: complex) -> "RationalSymbol":
        return RationalSymbol(LaurentPolynomial.constant(value))

    @staticmethod
    def monomial(k: int, value: complex = 1.0) -> "RationalSymbol":
        return RationalSymbol(LaurentPolynomial.monomial(k, value))

    @staticmethod
    def from_laurent(lp: LaurentPolynomial) -> "RationalSymbol":
        return RationalSymbol(lp)

    # -- queries --------------------------------------------------------------

    @property
    def num_roots(self) -> np.ndarray:
        return self._num_roots

    @property
    def den_roots(self) -> np.ndarray:
        return self._den_roots

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> complex:
        return self.num.constant_value() / self.den.constant_value()

    def eval(self, t, guard: float = 1e-12):
        """Pointwise value num(t)/den(t); raises when |den(t)| < guard."""
        t = np.asarray(t, dtype=complex)
        dv = self.den.eval(t)
        if np.any(np.abs(dv) < guard):
            raise DenominatorNearZero("evaluation too close to a pole")
        nv = self.num.eval(t)
        out = nv / dv
        return out if np.ndim(out) else complex(out)

    def sup_norm_on_circle(self, grid: int = 512) -> float:
        t = np.exp(2j * np.pi * (np.arange(grid) + 0.2371) / grid)
        return float(np.max(np.abs(self.eval(t))))

    def distance_to(self, other: "RationalSymbol", grid: int = 512) -> float:
        """sup over a circle grid of |self - other|."""
        t = np.exp(2j * np.pi * (np.arange(grid) + 0.2371) / grid)
        return float(np.max(np.abs(self.eval(t) - other.eval(t))))

    # -- algebra ----------------------------------------------------------------

    def __mul__(self, other) -> "RationalSymbol":
        if isinstance(other, RationalSymbol):
            return RationalSymbol(self.num * other.num, self.den * other.den)
        return RationalSymbol(self.num * other, self.den)

    __rmul__ = __mul__

    def __neg__(self) -> "RationalSymbol":
        return RationalSymbol(-self.num, self.den)

    def __add__(self, other) -> "RationalSymbol":
        if not isinstance(other, RationalSymbol):
            other = RationalSymbol.constant(other)
        out = _lcm_add(self, other)
        if out is not None:
            return out
        return RationalSymbol(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other) -> "RationalSymbol":
        return self + (-other if isinstance(other, RationalSymbol)
                       else RationalSymbol.constant(-other))

    def invert(self) -> "RationalSymbol":
        bad = np.abs(np.abs(self._num_roots) - 1.0) < DELTA_CIRCLE
        if self.is_zero or np.any(bad):
            raise NotInvertibleOnCircle(
                "symbol has a zero inside the circle annulus"
            )
        return RationalSymbol(self.den, self.num)

    def conjugate_bar(self) -> "RationalSymbol":
        """Boundary-function conjugate: sum c_k t^k -> sum conj(c_k) t^-k."""
        return RationalSymbol(self.num.conjugate_bar(), self.den.conjugate_bar())

    def power(self, k: int) -> "RationalSymbol":
        if k == 0:
            return RationalSymbol.constant(1.0)
        base = self if k > 0 else self.invert()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def winding_number(self) -> int:
        """#zeros minus #poles inside the open disk (with multiplicity).

        Roots inside the exclusion annulus make the count uncertifiable.
        """
        for r in (self._num_roots, self._den_roots):
            if np.any(np.abs(np.abs(r) - 1.0) < DELTA_CIRCLE):
                raise IllConditionedRoots(
                    "root inside the circle annulus; winding not certified"
                )
        zeros_in = int(np.sum(np.abs(self._num_roots) < 1.0))
        poles_in = int(np.sum(np.abs(self._den_roots) < 1.0))
        return self.num.lo + zeros_in - poles_in

    # -- partial fractions --------------------------------------------------------

    def partial_fractions(self):
        """Exact decomposition  s = poly_part + sum_j r_j / (t - z)^j.

        Returns (poly_part, terms) where poly_part is a LaurentPolynomial with
        nonnegative exponents and terms is a list of (z, [r_1, ..., r_m]).
        Negative monomial exponents of the numerator are folded into a pole
        at z = 0.

        Residues come from contour integrals around pole clusters.  Because
        an m-fold root scatters like eps^(1/m) under companion-matrix root
        finding, the clustering tolerance is escalated until the rebuilt
        decomposition reproduces the symbol on a validation grid; the
        centroid of a scattered m-fold group is accurate to machine
        precision, so once the grouping is right the residues are too.
        """
        if self.is_zero:
            return LaurentPolynomial.zero(), []
        m0 = self.num.lo
        pn = self.num.coeffs
        pd = self.den.coeffs
        if m0 >= 0:
            pn = np.concatenate([np.zeros(m0, complex), pn])
        else:
            pd = np.concatenate([np.zeros(-m0, complex), pd])
        if len(pd) == 1:
            return LaurentPolynomial(0, pn / pd[0]), []
        quo, rem = npoly.polydiv(pn, pd)
        if len(pn) >= len(pd):
            poly_part = LaurentPolynomial(0, quo)
        else:
            poly_part = LaurentPolynomial.zero()
            rem = pn

        def value(t):
            # proper part rem/pd at points t
            return npoly.polyval(t, rem) / npoly.polyval(t, pd)

        roots = np.roots(pd[::-1])
        nodes = 256
        unit = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        tgrid = np.exp(2j * np.pi * (np.arange(96) + 0.31) / 96)
        ref = value(tgrid)
        ref_scale = 1.0 + np.abs(ref)
        best = None
        with np.errstate(all="ignore"):
            for tol in (CLUSTER_TOL, 1e-7, PF_CLUSTER_TOL, 1e-3, 3e-2):
                clusters = _cluster(roots, tol)
                centers = np.array([c for c, _ in clusters])
                terms = []
                for z, m in clusters:
                    others = centers[np.abs(centers - z) > tol * max(1.0, abs(z))]
                    gap = np.min(np.abs(others - z)) if len(others) else max(1.0, abs(z))
                    rho = 0.35 * gap
                    tq = z + rho * unit
                    sq = value(tq)
                    # r_j = rho^j * mean_q s(t_q) e^{i j phi_q}
                    residues = []
                    ex = np.ones(nodes, complex)
                    for j in range(1, m + 1):
                        ex = ex * unit
                        residues.append(complex(rho**j * np.mean(sq * ex)))
                    terms.append((z, residues))
                err = np.abs(_eval_pf(terms, tgrid) - ref) / ref_scale
                worst = float(np.max(err))
                if not np.isfinite(worst):
                    worst = float("inf")
                if worst < 1e-10:
                    return poly_part, terms
                if best is None or worst < best[0]:
                    best = (worst, terms)
        raise IllConditionedRoots(
            f"partial fractions failed to validate (best error {best[0]:.3e})"
        )

    def coefficients(self, lo: int, hi: int):
        """Exact Fourier coefficients on the exponent window [lo, hi].

        Returns (coeffs, tail_bound) where tail_bound estimates the largest
        coefficient magnitude just outside the window.
        """
        poly_part, terms = self.partial_fractions()
        out = np.zeros(hi - lo + 1, dtype=complex)
        for i, c in enumerate(poly_part.coeffs):
            e = poly_part.lo + i
            if lo <= e <= hi and c != 0:
                out[e - lo] += c
        tail = 0.0
        for z, residues in terms:
            inside = abs(z) < 1.0
            for j, r in enumerate(residues, start=1):
                if r == 0:
                    continue
                if inside:
                    # r/(t-z)^j = r * sum_i C(j+i-1, i) z^i t^(-j-i)
                    i_hi = -lo - j
                    if i_hi >= 0:
                        i_arr = np.arange(i_hi + 1)
                        vals = r * _binom_geom(j, i_arr, z)
                        e_arr = -j - i_arr
                        mask = e_arr <= hi
                        out[e_arr[mask] - lo] += vals[mask]
                    tail += abs(r * _binom_geom(j, np.array([max(0, -lo - j + 1)]), z)[0])
                else:
                    # r/(t-z)^j = r (-1)^j sum_i C(j+i-1, i) z^(-j-i) t^i
                    if hi >= 0:
                        i_arr = np.arange(max(lo, 0), hi + 1)
                        vals = r * (-1) ** j * _binom_geom(j, i_arr, 1.0 / z) * z ** (-j)
                        out[i_arr - lo] += vals
                    tail += abs(r * _binom_geom(j, np.array([hi + 1]), 1.0 / z)[0] * z ** (-j))
        return out, float(tail)

    def coefficient(self, k: int) -> complex:
        c, _ = self.coefficients(k, k)
        return complex(c[0])

    def split_analytic(self):
        """Exact splitting s = P(s) + Q(s) into rational parts.

        P(s) keeps nonnegative exponents (poles outside the closed disk),
        Q(s) keeps negative ones (poles inside, vanishing at infinity).
        """
        poly_part, terms = self.partial_fractions()
        p_terms = [(z, res) for z, res in terms if abs(z) > 1.0]
        q_terms = [(z, res) for z, res in terms if abs(z) < 1.0]
        return (
            _reassemble(poly_part, p_terms),
            _reassemble(LaurentPolynomial.zero(), q_terms),
        )

    def decay_rate(self) -> float:
        """Largest geometric ratio of the coefficient tails (0 = finite support)."""
        rate = 0.0
        for z in self._den_roots:
            rate = max(rate, abs(z) if abs(z) < 1.0 else 1.0 / abs(z))
        return rate

    def pad_for(self, tol: float = 1e-12) -> int:
        """Window padding beyond which coefficient tails drop under tol."""
        rate = self.decay_rate()
        if rate == 0.0:
            return 0
        scale = max(self.sup_norm_on_circle(64), 1.0)
        return int(np.ceil(np.log(tol / scale) / np.log(rate))) + 4

    def __str__(self) -> str:
        if self.den.is_constant and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _deflate_one(lp: LaurentPolynomial, rel: float) -> LaurentPolynomial:
    c = lp.coeffs
    scale = np.max(np.abs(c))
    lo = lp.lo
    end = len(c)
    while end > 1 and abs(c[end - 1]) < rel * scale:
        end -= 1
    start = 0
    while start < end - 1 and abs(c[start]) < rel * scale:
        start += 1
        lo += 1
    if start == 0 and end == len(c):
        return lp
    return LaurentPolynomial(lo, c[start:end])


def _deflate_edges(num: LaurentPolynomial, den: LaurentPolynomial):
    """Drop relatively tiny edge coefficients when the values survive.

    Cancellation-born polynomials can carry leading or trailing junk of
    relative size ~1e-12: the corresponding spurious far/near-zero roots
    wreck partial fractions downstream.  Dropping them changes circle
    values by the same relative amount, which a pointwise validation
    confirms before the deflated representation is adopted.
    """
    num_d = _deflate_one(num, 1e-9)
    den_d = _deflate_one(den, 1e-9)
    if num_d is num and den_d is den:
        return num, den
    if _same_values(num, den, num_d, den_d, tol=1e-9):
        return num_d, den_d
    num_d = _deflate_one(num, 1e-12)
    den_d = _deflate_one(den, 1e-12)
    if (num_d is not num or den_d is not den) and _same_values(
        num, den, num_d, den_d, tol=1e-10
    ):
        return num_d, den_d
    return num, den


def _lcm_add(s1: "RationalSymbol", s2: "RationalSymbol"):
    """Sum over a least common denominator found by root-cluster matching.

    Naive cross-multiplication doubles the denominator degree, and monic
    products of many inside/outside roots take tiny values on the circle,
    amplifying coefficient roundoff catastrophically.  Matching shared pole
    clusters keeps the denominator minimal; the result is validated against
    pointwise values and None is returned when validation fails (the caller
    then falls back to the naive path).
    """
    if s1.is_zero or s2.is_zero or (len(s1._den_roots) == 0 and len(s2._den_roots) == 0):
        return None  # trivial cases: the naive path is exact
    t = np.exp(2j * np.pi * (np.arange(96) + 0.371) / 96)
    try:
        ref = s1.eval(t) + s2.eval(t)
    except DenominatorNearZero:
        return None
    ref_scale = 1.0 + np.abs(ref)
    for tol in (1e-9, 1e-6, 1e-3):
        cl1 = _cluster(s1._den_roots, tol)
        cl2 = _cluster(s2._den_roots, tol)
        lcm = [[z, m, m, 0] for z, m in cl1]  # center, mult, used-by-1, used-by-2
        for z, m in cl2:
            hit = None
            for entry in lcm:
                if abs(entry[0] - z) <= tol * max(1.0, abs(z)):
                    hit = entry
                    break
            if hit is None:
                lcm.append([z, m, 0, m])
            else:
                hit[3] = m
                hit[1] = max(hit[1], m)
        extra1, extra2, den_roots = [], [], []
        for z, m, m1, m2 in lcm:
            den_roots.extend([z] * m)
            extra1.extend([z] * (m - m1))
            extra2.extend([z] * (m - m2))
        num = (
            s1.num * LaurentPolynomial.from_roots(extra1)
            + s2.num * LaurentPolynomial.from_roots(extra2)
        )
        if num.is_zero:
            return RationalSymbol.constant(0.0)
        try:
            cand = RationalSymbol(num, LaurentPolynomial.from_roots(den_roots))
            err = np.max(np.abs(cand.eval(t) - ref) / ref_scale)
        except DenominatorNearZero:
            continue
        if err < 1e-11:
            return cand
    return None


def _eval_pf(terms, t: np.ndarray) -> np.ndarray:
    """Evaluate sum_j r_j/(t-z)^j over all terms at the points t."""
    acc = np.zeros_like(t)
    for z, residues in terms:
        base = 1.0 / (t - z)
        p = np.ones_like(t)
        for r in residues:
            p = p * base
            if r != 0:
                acc = acc + r * p
    return acc


def _same_values(num_a, den_a, num_b, den_b, grid: int = 128, tol: float = 1e-10) -> bool:
    """Relative agreement of two fractions on a circle grid."""
    t = np.exp(2j * np.pi * (np.arange(grid) + 0.1234567) / grid)
    da, db = den_a.eval(t), den_b.eval(t)
    if np.any(np.abs(da) < 1e-13) or np.any(np.abs(db) < 1e-13):
        return False
    va = num_a.eval(t) / da
    vb = num_b.eval(t) / db
    scale = np.maximum(1.0, np.abs(va))
    return bool(np.max(np.abs(va - vb) / scale) < tol)


def _binom_geom(j: int, i_arr: np.ndarray, z: complex) -> np.ndarray:
    """C(j+i-1, i) * z^i for the i values requested (i >= 0, increasing)."""
    if len(i_arr) == 0:
        return np.zeros(0, complex)
    i_max = int(i_arr[-1])
    fac = np.ones(i_max + 1, dtype=complex)
    if i_max > 0:
        u = np.arange(1, i_max + 1)
        fac[1:] = np.cumprod((j + u - 1) / u * z)
    return fac[i_arr]


def _reassemble(poly_part: LaurentPolynomial, terms) -> RationalSymbol:
    num = poly_part
    den = LaurentPolynomial.one()
    for z, residues in terms:
        m = len(residues)
        base = LaurentPolynomial(0, np.array([-z, 1.0], complex))
        full = base.power(m)
        tnum = LaurentPolynomial.zero()
        for j, r in enumerate(residues, start=1):
            tnum = tnum + r * base.power(m - j)
        num = num * full + tnum * den
        den = den * full
    return RationalSymbol(num, den)


# -- spec-level operation wrappers -------------------------------------------------


def eval_symbol(s: RationalSymbol, t: complex) -> complex:
    """Value of the symbol at a unit-circle point."""
    if abs(abs(t) - 1.0) > 1e-12:
        raise ValueError("evaluation point must lie on the unit circle")
    return s.eval(t)


def symbol_algebra(op: str, *args) -> RationalSymbol:
    """Dispatch for {multiply | invert | conjugate_bar | power}."""
    if op == "multiply":
        a, b = args
        return a * b
    if op == "invert":
        (a,) = args
        return a.invert()
    if op == "conjugate_bar":
        (a,) = args
        return a.conjugate_bar()
    if op == "power":
        a, k = args
        return a.power(int(k))
    raise ValueError(f"unknown symbol operation {op!r}")


def winding_number(s: RationalSymbol) -> int:
    return s.winding_number()
