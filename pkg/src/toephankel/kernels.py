"""Kernel and cokernel structure of T(a) +/- H(b) over matching pairs.

The analytic pipeline works in exact rational arithmetic throughout:

* kernels of scalar Toeplitz operators with matching symbols split into
  explicit chi-power families read off the factorization and signature;
* the injections phi_plus/phi_minus transport kernel elements of T(d)
  into the kernels of the sum and difference operators;
* cokernels are always computed as kernels of the adjoint pair
  (conj(a), conj(b) o alpha) - one code path, no separate conventions;
* the remaining index quadrant is handled by lifting with chi^n, building
  the bracket space for the lifted pair, intersecting with the image of
  T(chi^n) through n coefficient functionals, and dividing by chi^n.

Every produced basis function is gated twice: an exact residual against
the operator it is supposed to annihilate, and a finite-section residual
against the numerical oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

import numpy as np
import scipy.linalg

from .errors import (
    CrossCheckMismatch,
    NotApplicable,
    NotFredholm,
    NotFredholmPair,
    NotInKernel,
    NotMatching,
    WrongRegime,
)
from .matching import MatchingPair, adjoint_pair, alpha_signature, make_matching_pair
from .rational import RationalSymbol
from .series import TruncatedSeries, multiply_by_symbol
from .shift import ShiftParams, apply_J_alpha, chi_power, compose_with_shift
from .wiener_hopf import WHFactorization, apply_one_sided_inverse, factorize

KERNEL_RESIDUAL_TOL = 1e-8   # exact-arithmetic membership gate
ORACLE_RESIDUAL_TOL = 1e-6   # finite-section membership gate
RANK_TOL = 1e-8              # rank decisions for the coefficient functionals


class Regime(Enum):
    RIGHT_INV = "RIGHT_INV"
    LEFT_INV = "LEFT_INV"
    SPLIT = "SPLIT"
    LIFTED = "LIFTED"


def classify_regime(kappa1: int, kappa2: int) -> Regime:
    if kappa1 >= 0:
        return Regime.RIGHT_INV if kappa2 >= 1 else Regime.SPLIT
    return Regime.LIFTED if kappa2 >= 1 else Regime.LEFT_INV


# ---------------------------------------------------------------------------
# exact operator actions on analytic rationals


def toeplitz_apply(g: RationalSymbol, f: RationalSymbol) -> RationalSymbol:
    """T(g) f = P(g f) for analytic rational f."""
    return (g * f).split_analytic()[0]


def hankel_apply(b: RationalSymbol, f: RationalSymbol, shift: ShiftParams) -> RationalSymbol:
    """H(b) f = P(b * J f); J f is anti-analytic for analytic f."""
    jf = apply_J_alpha(f, shift)
    return (b * jf).split_analytic()[0]


def operator_apply(
    pair: MatchingPair, sign: int, f: RationalSymbol
) -> RationalSymbol:
    return toeplitz_apply(pair.a, f) + float(sign) * hankel_apply(pair.b, f, pair.shift)


def operator_residual(pair: MatchingPair, sign: int, f: RationalSymbol) -> float:
    scale = max(1.0, f.sup_norm_on_circle(128))
    return operator_apply(pair, sign, f).sup_norm_on_circle(128) / scale


def analytic_series(f: RationalSymbol, tol: float = 1e-13) -> TruncatedSeries:
    """Coefficient window of an analytic rational, certified below tol."""
    hi = max(f.num.hi, 0) + f.pad_for(tol)
    c, tail = f.coefficients(0, hi)
    return TruncatedSeries(0, c, tail=tail).trim(1e-14)


# ---------------------------------------------------------------------------
# kernel splitting for scalar Toeplitz operators with matching symbols


def toeplitz_kernel_split(
    g: RationalSymbol, shift: ShiftParams
) -> tuple[list[RationalSymbol], list[RationalSymbol]]:
    """Bases of the two flip-eigenspaces inside ker T(g), index n >= 1.

    For n = 2m the families are g_plus^-1 (chi^(m-k-1) +/- sigma chi^(m+k)),
    k < m, of dimension m each; for n = 2m+1 they are
    g_plus^-1 (chi^(m+k) +/- sigma chi^(m-k)), k <= m, with the zero element
    dropped, of dimensions m + (1 +/- sigma)/2.
    """
    fac = factorize(g)
    n = fac.kappa
    if n <= 0:
        raise NotApplicable(f"kernel split needs index >= 1, got {n}")
    sigma = alpha_signature(g, shift)
    gpi = fac.g_plus.invert()
    plus: list[RationalSymbol] = []
    minus: list[RationalSymbol] = []
    if n % 2 == 0:
        m = n // 2
        for k in range(m):
            lowc = chi_power(shift, m - k - 1)
            high = chi_power(shift, m + k)
            plus.append(gpi * (lowc + float(sigma) * high))
            minus.append(gpi * (lowc - float(sigma) * high))
    else:
        m = n // 2
        for k in range(m + 1):
            high = chi_power(shift, m + k)
            lowc = chi_power(shift, m - k)
            cand_p = high + float(sigma) * lowc
            cand_m = high - float(sigma) * lowc
            if not cand_p.is_zero:
                plus.append(gpi * cand_p)
            if not cand_m.is_zero:
                minus.append(gpi * cand_m)
    expect_p = n // 2 + ((1 + sigma) // 2 if n % 2 else 0)
    expect_m = n // 2 + ((1 - sigma) // 2 if n % 2 else 0)
    if (len(plus), len(minus)) != (expect_p, expect_m):
        raise CrossCheckMismatch("kernel split dimensions off the predicted count")
    return plus, minus


def apply_P_alpha(
    g: RationalSymbol,
    f: Union[RationalSymbol, TruncatedSeries],
    shift: ShiftParams,
):
    """The involution J Q g P restricted to ker T(g)."""
    if isinstance(f, RationalSymbol):
        scale = max(1.0, f.sup_norm_on_circle(128))
        p_part, q_part = (g * f).split_analytic()
        if p_part.sup_norm_on_circle(128) > KERNEL_RESIDUAL_TOL * scale:
            raise NotInKernel("input is not in ker T(g)")
        return apply_J_alpha(q_part, shift)
    gf = multiply_by_symbol(f, g)
    if gf.part("P").norm() > KERNEL_RESIDUAL_TOL * max(1.0, f.norm()):
        raise NotInKernel("input is not in ker T(g)")
    return apply_J_alpha(gf.part("Q"), shift)


def phi_pm(
    s: RationalSymbol,
    pair: MatchingPair,
    fac_c: WHFactorization,
    sign: int,
    shift: ShiftParams,
) -> RationalSymbol:
    """Transport of s in ker T(d) into ker(T(a) + sign * H(b)).

    2 phi(s) = x -/+ J Q c x +/- J Q a_alpha^-1 s  with
    x = T_r^-1(c) T(a_alpha^-1) s; requires T(c) right-invertible.
    """
    if pair.kappa1 < 0:
        raise WrongRegime("phi maps need a right-invertible T(c)")
    scale = max(1.0, s.sup_norm_on_circle(128))
    if toeplitz_apply(pair.d, s).sup_norm_on_circle(128) > KERNEL_RESIDUAL_TOL * scale:
        raise NotInKernel("s is not in ker T(d)")
    aai = pair.a_alpha_inv
    w = aai * s
    x = apply_one_sided_inverse(fac_c, w.split_analytic()[0], "right")
    u = apply_J_alpha((pair.c * x).split_analytic()[1], shift)
    v = apply_J_alpha(w.split_analytic()[1], shift)
    if sign > 0:
        return 0.5 * (x - u + v)
    return 0.5 * (x + u - v)


# ---------------------------------------------------------------------------
# image membership for chi powers and the lifted pipeline


def in_image_chi_power(
    h: Union[RationalSymbol, TruncatedSeries],
    n: int,
    shift: ShiftParams,
    tol: float = 1e-10,
):
    """Is the analytic h divisible by chi^n?  Returns (flag, quotient).

    Membership is equivalent to vanishing of the coefficients 0..n-1 of
    h * alpha_minus^n; on success the quotient h / chi^n is returned
    (exact rational division, or stable backward synthetic division for
    coefficient windows).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    am_n = shift.alpha_minus.power(n)
    if isinstance(h, RationalSymbol):
        scale = max(1.0, h.sup_norm_on_circle(128))
        vals, _ = (h * am_n).coefficients(0, n - 1)
        if np.max(np.abs(vals)) >= tol * scale:
            return False, None
        quotient = h * chi_power(shift, -n)
        q_side = quotient.split_analytic()[1]
        if q_side.sup_norm_on_circle(128) > 1e-8 * scale:
            raise CrossCheckMismatch("certified quotient came out non-analytic")
        return True, quotient
    scale = max(1.0, h.norm())
    if h.part("Q").norm() > 1e-12 * scale:
        raise ValueError("input series must be analytic (no negative modes)")
    prod = multiply_by_symbol(h, am_n)
    vals = np.array([prod.coefficient(i) for i in range(n)])
    if np.max(np.abs(vals)) >= tol * scale:
        return False, None
    bc = np.conj(shift.beta)
    coeffs = h.to_vector(max(h.hi + 1, 2))
    for _ in range(n):
        # divide by (bc*t - 1): backward recursion is stable since |bc| > 1
        q = np.zeros(len(coeffs) - 1, dtype=complex)
        for i in range(len(q) - 1, -1, -1):
            upper = q[i + 1] if i + 1 < len(q) else 0.0
            q[i] = (coeffs[i + 1] + upper) / bc
        coeffs = q
    coeffs = coeffs * shift.lam**n
    return True, TruncatedSeries(0, coeffs).trim()


def _lift_exponent(kappa: int) -> int:
    # smallest n >= 0 with 0 <= 2n + kappa <= 1
    return (-kappa + 1) // 2 if kappa < 0 else 0


def _intersect_and_divide(
    funcs: list[RationalSymbol], n: int, shift: ShiftParams
) -> list[RationalSymbol]:
    """Intersect span(funcs) with the image of T(chi^n), divide by chi^n."""
    if not funcs:
        return []
    am_n = shift.alpha_minus.power(n)
    rows = []
    for f in funcs:
        vals, _ = (f * am_n).coefficients(0, n - 1)
        rows.append(vals)
    m = np.array(rows).T  # n x dim
    u, s, vh = scipy.linalg.svd(m)
    rank = int(np.sum(s > RANK_TOL * (s[0] if len(s) and s[0] > 0 else 1.0)))
    null_vecs = vh[rank:].conj().T  # dim x q
    out = []
    for q in range(null_vecs.shape[1]):
        acc = RationalSymbol.constant(0.0)
        for f, w in zip(funcs, null_vecs[:, q]):
            if abs(w) > 1e-14:
                acc = acc + complex(w) * f
        quotient = acc * chi_power(shift, -n)
        q_side = quotient.split_analytic()[1]
        scale = max(1.0, quotient.sup_norm_on_circle(128))
        if q_side.sup_norm_on_circle(128) > 1e-8 * scale:
            raise CrossCheckMismatch("lifted quotient is not analytic")
        out.append(quotient)
    return out


def _kernel_functions(pair: MatchingPair):
    """Tagged rational bases of ker(T(a)+H(b)) and ker(T(a)-H(b))."""
    shift = pair.shift
    k1, k2 = pair.kappa1, pair.kappa2
    plus: list[tuple[RationalSymbol, str]] = []
    minus: list[tuple[RationalSymbol, str]] = []
    if k1 >= 0:
        if k1 >= 1:
            b_plus, b_minus = toeplitz_kernel_split(pair.c, shift)
            plus += [(f, "P_minus_c") for f in b_minus]
            minus += [(f, "P_plus_c") for f in b_plus]
        if k2 >= 1:
            fac_c = factorize(pair.c)
            d_plus, d_minus = toeplitz_kernel_split(pair.d, shift)
            plus += [(phi_pm(s, pair, fac_c, +1, shift), "phi_plus_d") for s in d_plus]
            minus += [(phi_pm(s, pair, fac_c, -1, shift), "phi_minus_d") for s in d_minus]
    elif k2 >= 1:
        n = _lift_exponent(k1)
        lifted = make_matching_pair(
            pair.a * chi_power(shift, -n), pair.b * chi_power(shift, n), shift
        )
        if lifted.kappa1 != k1 + 2 * n or lifted.kappa2 != k2:
            raise CrossCheckMismatch("lifted pair has unexpected indices")
        br_plus, br_minus = _kernel_functions(lifted)
        plus += [
            (f, "lifted") for f in _intersect_and_divide([g for g, _ in br_plus], n, shift)
        ]
        minus += [
            (f, "lifted") for f in _intersect_and_divide([g for g, _ in br_minus], n, shift)
        ]
    # kappa1 <= -1 and kappa2 <= 0: both kernels are trivial
    for sign, funcs in ((+1, plus), (-1, minus)):
        for f, _tag in funcs:
            resid = operator_residual(pair, sign, f)
            if resid > KERNEL_RESIDUAL_TOL:
                raise CrossCheckMismatch(
                    f"kernel candidate fails the exact residual gate ({resid:.3e})"
                )
    return plus, minus


# ---------------------------------------------------------------------------
# basis containers


@dataclass(frozen=True)
class BasisFunction:
    series: TruncatedSeries
    rational: Optional[RationalSymbol]
    tag: str


@dataclass(frozen=True)
class KernelBasis:
    """Normalized basis of one of the four defect spaces."""

    sign: str                   # '+' or '-'
    kind: str                   # 'ker' or 'coker'
    functions: tuple[BasisFunction, ...]

    @property
    def dim(self) -> int:
        return len(self.functions)

    def gram_min_singular_value(self) -> float:
        if not self.functions:
            return float("inf")
        lo = min(f.series.lo for f in self.functions)
        hi = max(f.series.hi for f in self.functions)
        vecs = np.stack(
            [
                np.concatenate(
                    [
                        np.zeros(f.series.lo - lo, complex),
                        f.series.coeffs,
                        np.zeros(hi - f.series.hi, complex),
                    ]
                )
                for f in self.functions
            ]
        )
        return float(np.min(scipy.linalg.svdvals(vecs)))


def _assemble_basis(kind: str, sign: int, funcs) -> KernelBasis:
    items = []
    for f, tag in funcs:
        series = analytic_series(f)
        nrm = series.norm()
        if nrm == 0:
            raise CrossCheckMismatch("zero basis function")
        items.append(BasisFunction((1.0 / nrm) * series, (1.0 / nrm) * f, tag))
    basis = KernelBasis("+" if sign > 0 else "-", kind, tuple(items))
    if basis.dim and basis.gram_min_singular_value() <= 1e-8:
        raise CrossCheckMismatch("basis functions are numerically dependent")
    return basis


# ---------------------------------------------------------------------------
# defect numbers and reports


@dataclass(frozen=True)
class DefectReport:
    dim_ker_plus: int
    dim_coker_plus: int
    dim_ker_minus: int
    dim_coker_minus: int
    regime: Regime
    kappa1: int
    kappa2: int
    bases: Optional[dict] = field(default=None, repr=False)
    oracle: Optional[dict] = field(default=None, repr=False)

    @property
    def oracle_agreement(self) -> Optional[dict]:
        if self.oracle is None:
            return None
        return self.oracle.get("agreement")

    def __post_init__(self):
        lhs = (self.dim_ker_plus - self.dim_coker_plus) + (
            self.dim_ker_minus - self.dim_coker_minus
        )
        if lhs != self.kappa1 + self.kappa2:
            raise CrossCheckMismatch(
                f"index bookkeeping violated: {lhs} != {self.kappa1 + self.kappa2}"
            )


def all_defect_bases(pair: MatchingPair) -> dict:
    """The four bases keyed by (kind, sign-string)."""
    if not pair.is_fredholm:
        raise NotFredholmPair("subordinated functions do not factorize")
    ker_p, ker_m = _kernel_functions(pair)
    adj = adjoint_pair(pair)
    cok_p, cok_m = _kernel_functions(adj)
    return {
        ("ker", "+"): _assemble_basis("ker", +1, ker_p),
        ("ker", "-"): _assemble_basis("ker", -1, ker_m),
        ("coker", "+"): _assemble_basis("coker", +1, cok_p),
        ("coker", "-"): _assemble_basis("coker", -1, cok_m),
    }


def kernel_cokernel_bases(
    pair: MatchingPair,
    shift: Optional[ShiftParams] = None,
    which: tuple[str, str] = ("ker", "+"),
    oracle_size: int = 256,
    verify: bool = True,
) -> KernelBasis:
    """One of the four defect-space bases; cokernels via the adjoint pair.

    With verify=True every returned function must pass the finite-section
    residual gate against the operator it annihilates (the conjugate
    transpose section for cokernels)."""
    kind, sign = which
    if kind not in ("ker", "coker") or sign not in ("+", "-"):
        raise ValueError("which must be (ker|coker, +|-)")
    basis = all_defect_bases(pair)[(kind, sign)]
    if verify and basis.dim:
        from .oracle import operator_section, residual_check

        section = operator_section(
            "plus" if sign == "+" else "minus", pair, pair.shift, oracle_size
        )
        entries = section.entries if kind == "ker" else section.entries.conj().T
        gate = type(section)(oracle_size, entries, section.kind, dict(section.meta))
        for f in basis.functions:
            resid = residual_check(gate, f.series)
            if resid >= ORACLE_RESIDUAL_TOL:
                raise CrossCheckMismatch(
                    f"basis function fails the oracle residual gate ({resid:.3e})"
                )
    return basis


def _oracle_block(pair: MatchingPair, bases: dict, n: int) -> dict:
    from .oracle import (
        localized_null_dims,
        numerical_null_space,
        operator_section,
        residual_check,
    )

    shift = pair.shift
    out = {"size": n, "dims": {}, "residuals": {}, "agreement": {}}
    sections = {
        "+": operator_section("plus", pair, shift, n),
        "-": operator_section("minus", pair, shift, n),
    }
    agree_all = True
    for sign in ("+", "-"):
        ns = numerical_null_space(sections[sign])
        dim_ker, dim_coker = localized_null_dims(ns, n)
        out["dims"][f"ker{sign}"] = dim_ker
        out["dims"][f"coker{sign}"] = dim_coker
        worst = 0.0
        for f in bases[("ker", sign)].functions:
            worst = max(worst, residual_check(sections[sign], f.series))
        adj_entries = sections[sign].entries.conj().T
        adj_section = type(sections[sign])(
            n, adj_entries, sections[sign].kind, dict(sections[sign].meta)
        )
        for f in bases[("coker", sign)].functions:
            worst = max(worst, residual_check(adj_section, f.series))
        out["residuals"][sign] = worst
        ok = (
            dim_ker == bases[("ker", sign)].dim
            and dim_coker == bases[("coker", sign)].dim
            and worst < ORACLE_RESIDUAL_TOL
        )
        out["agreement"][sign] = bool(ok)
        agree_all = agree_all and ok
    out["agreement"]["all"] = agree_all
    return out


def defect_numbers(
    pair: MatchingPair,
    shift: Optional[ShiftParams] = None,
    oracle_size: int = 256,
    run_oracle: bool = True,
    keep_bases: bool = True,
) -> DefectReport:
    """Defect numbers of T(a) +/- H(b) with regime dispatch and oracle check."""
    bases = all_defect_bases(pair)
    oracle = _oracle_block(pair, bases, oracle_size) if run_oracle else None
    return DefectReport(
        dim_ker_plus=bases[("ker", "+")].dim,
        dim_coker_plus=bases[("coker", "+")].dim,
        dim_ker_minus=bases[("ker", "-")].dim,
        dim_coker_minus=bases[("coker", "-")].dim,
        regime=classify_regime(pair.kappa1, pair.kappa2),
        kappa1=pair.kappa1,
        kappa2=pair.kappa2,
        bases=bases if keep_bases else None,
        oracle=oracle,
    )


# ---------------------------------------------------------------------------
# one-sided invertibility classes


@dataclass(frozen=True)
class ClassMatch:
    tag: str
    sign: str
    dim_ker: Optional[int] = None
    dim_coker: Optional[int] = None


def coburn_class(
    a: RationalSymbol,
    b: RationalSymbol,
    shift: ShiftParams,
    oracle_size: int = 256,
    verify: bool = True,
) -> Optional[list[ClassMatch]]:
    """Match (a, b) against the one-sided-invertibility classes.

    Covers the direct families b in {a chi^-1 (minus), a chi (plus),
    +/- a (both signs)}, their duals built from a o alpha and psi_cap, and
    the subordinated criterion ind T(c) in {-1, 0, 1} with signature +1.
    When verified, each match asserts min(dim ker, dim coker) = 0 on the
    oracle section.
    """
    tol = 1e-8
    a_alpha = compose_with_shift(a, shift)
    candidates: list[tuple[str, str]] = []

    def close(x: RationalSymbol, y: RationalSymbol) -> bool:
        return x.distance_to(y) < tol * max(1.0, y.sup_norm_on_circle(64))

    direct = [
        ("T(a)-H(a chi^-1)", "-", a * chi_power(shift, -1)),
        ("T(a)+H(a chi)", "+", a * shift.chi),
        ("T(a)+H(a)", "+", a),
        ("T(a)-H(a)", "-", a),
        ("T(a)-H(a_alpha psi_cap^-1)", "-", a_alpha * shift.psi_cap.invert()),
        ("T(a)+H(a_alpha psi_cap)", "+", a_alpha * shift.psi_cap),
        ("T(a)+H(a_alpha)", "+", a_alpha),
        ("T(a)-H(a_alpha)", "-", a_alpha),
    ]
    for tag, sign, target in direct:
        if close(b, target):
            candidates.append((tag, sign))
    try:
        pair = make_matching_pair(a, b, shift)
        sigma_c = pair.sigma_c
        if pair.kappa1 == 1 and sigma_c == 1:
            candidates.append(("index-one subordinated", "+"))
        elif pair.kappa1 == -1 and sigma_c == 1:
            candidates.append(("index-minus-one subordinated", "-"))
        elif pair.kappa1 == 0:
            candidates.append(("index-zero subordinated", "+"))
            candidates.append(("index-zero subordinated", "-"))
    except (NotMatching, NotFredholm):
        pass
    if not candidates:
        return None
    if not verify:
        return [ClassMatch(tag, sign) for tag, sign in candidates]
    from .oracle import localized_null_dims, numerical_null_space, operator_section

    out = []
    sections = {}
    for tag, sign in candidates:
        if sign not in sections:
            sections[sign] = operator_section(
                "plus" if sign == "+" else "minus", (a, b), shift, oracle_size
            )
        ns = numerical_null_space(sections[sign])
        dk, dc = localized_null_dims(ns, oracle_size)
        if min(dk, dc) != 0:
            raise CrossCheckMismatch(
                f"class {tag}: oracle found ker {dk} and coker {dc} both nonzero"
            )
        out.append(ClassMatch(tag, sign, dk, dc))
    return out


# ---------------------------------------------------------------------------
# transfer maps between the block kernel and the diagonal kernel


def _series_pair(vec):
    if isinstance(vec, (tuple, list)) and len(vec) == 2:
        f, g = vec
        if not isinstance(f, TruncatedSeries):
            f = TruncatedSeries.from_vector(np.asarray(f, complex))
        if not isinstance(g, TruncatedSeries):
            g = TruncatedSeries.from_vector(np.asarray(g, complex))
        return f, g
    arr = np.asarray(vec, dtype=complex)
    half = len(arr) // 2
    return (
        TruncatedSeries.from_vector(arr[:half]),
        TruncatedSeries.from_vector(arr[half:]),
    )


def _toeplitz_series(g: RationalSymbol, f: TruncatedSeries) -> TruncatedSeries:
    return multiply_by_symbol(f, g).part("P")


def _op_series(pair: MatchingPair, sign: int, f: TruncatedSeries) -> TruncatedSeries:
    jf = apply_J_alpha(f, pair.shift)
    hank = multiply_by_symbol(jf.part("Q"), pair.b).part("P")
    return _toeplitz_series(pair.a, f) + float(sign) * hank


def transfer_U(
    pair: MatchingPair,
    shift: Optional[ShiftParams] = None,
    direction: str = "U1",
    vec=None,
    tol: float = 1e-8,
):
    """The mutually inverse maps between ker of the 2x2 block operator and
    ker diag(T(a)+H(b), T(a)-H(b)).

    U1: (phi, psi) -> 1/2 (phi - J Q c phi + J Q a_alpha^-1 psi,
                          phi + J Q c phi - J Q a_alpha^-1 psi)
    U2: (Phi, Psi) -> (Phi + Psi, P(b_alpha (Phi+Psi) + a_alpha J P(Phi-Psi)))
    """
    shift = shift or pair.shift
    f, g = _series_pair(vec)
    scale = max(f.norm(), g.norm(), 1e-300)
    if direction == "U1":
        r1 = _toeplitz_series(pair.d, g).norm()
        r2 = (_toeplitz_series(pair.a_alpha_inv, g) - _toeplitz_series(pair.c, f)).norm()
        if max(r1, r2) > tol * scale:
            raise NotInKernel("input fails the block-kernel residual gate")
        cf = apply_J_alpha(multiply_by_symbol(f, pair.c).part("Q"), shift)
        ag = apply_J_alpha(multiply_by_symbol(g, pair.a_alpha_inv).part("Q"), shift)
        big = f - cf + ag
        small = f + cf - ag
        return (0.5 * big).trim(), (0.5 * small).trim()
    if direction == "U2":
        if max(
            _op_series(pair, +1, f).norm(), _op_series(pair, -1, g).norm()
        ) > tol * scale:
            raise NotInKernel("input fails the diagonal-kernel residual gate")
        b_alpha = compose_with_shift(pair.b, shift)
        a_alpha = compose_with_shift(pair.a, shift)
        total = f + g
        diff = apply_J_alpha((f - g).part("P"), shift)
        second = (
            multiply_by_symbol(total, b_alpha) + multiply_by_symbol(diff, a_alpha)
        ).part("P")
        return total.trim(), second.trim()
    raise ValueError("direction must be 'U1' or 'U2'")
