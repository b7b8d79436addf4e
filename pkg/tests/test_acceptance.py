"""Acceptance criteria for the whole package, one test per criterion.

Each test prints a single PASS/FAIL line (run pytest -s to see them), pins
the tolerances stated in the criteria, and enforces its runtime budget.
"""

import time

import numpy as np
import pytest
import scipy.linalg

from toephankel import (
    PsiFactor,
    RationalSymbol,
    TruncatedSeries,
    alpha_signature,
    apply_J_alpha,
    coburn_class,
    defect_numbers,
    eval_alpha,
    factorize,
    fredholm_symbol_check,
    generate_matching_function,
    generate_matching_pair,
    make_matching_pair,
    make_shift,
    nu_h,
    numerical_null_space,
    operator_section,
    pc_alpha_signature,
    toeplitz_kernel_split,
    transfer_U,
)
from toephankel.kernels import analytic_series
from toephankel.oracle import residual_check
from toephankel.pc import pc_toeplitz_entries

from helpers import random_invertible, random_plus_factor


def _report(num, ok, detail=""):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def _guard(num):
    class Ctx:
        def __enter__(self):
            self.t0 = time.monotonic()
            return self

        @property
        def elapsed(self):
            return time.monotonic() - self.t0

        def __exit__(self, exc_type, exc, tb):
            if exc_type is not None:
                _report(num, False, f"({self.elapsed:.2f}s)")
            return False

    return Ctx()


def test_criterion_1_shift_algebra_identities():
    rng = np.random.default_rng(101)
    with _guard(1) as g:
        for beta in (2.0, 2.0j, 1.5 + 0.5j):
            sh = make_shift(beta)
            t = sh.circle_grid(512)
            at = eval_alpha(sh, t)
            assert np.max(np.abs(eval_alpha(sh, at) - t)) < 1e-8
            fact = sh.alpha_plus.eval(t) / t * sh.alpha_minus.eval(t)
            assert np.max(np.abs(fact - at)) < 1e-8
            assert np.max(np.abs(sh.chi.eval(t) * sh.chi.eval(at) - 1.0)) < 1e-8
            conj_ap = sh.alpha_plus.conjugate_bar()
            assert conj_ap.distance_to(sh.alpha_minus.invert(), grid=512) < 1e-8
            coeffs = rng.normal(size=33) + 1j * rng.normal(size=33)
            f = TruncatedSeries(0, coeffs)  # degree-32 input
            back = apply_J_alpha(apply_J_alpha(f, sh), sh)
            assert (back - f).norm() < 1e-8 * f.norm()
            two_sided = TruncatedSeries(-16, coeffs)
            lhs = apply_J_alpha(two_sided.part("P"), sh)
            rhs = apply_J_alpha(two_sided, sh).part("Q")
            assert (lhs - rhs).norm() < 1e-8 * max(1.0, two_sided.norm())
        assert g.elapsed < 5.0
        _report(1, True, f"({g.elapsed:.2f}s, 3 shifts, 6 identities)")


def test_criterion_2_factorization_round_trip():
    rng = np.random.default_rng(202)
    sh = make_shift(2.0)
    with _guard(2) as g:
        count = 0
        while count < 100:
            gp = random_plus_factor(rng, max_deg=3, allow_poles=True)
            n = int(rng.integers(-4, 5))
            sigma = 1 if rng.random() < 0.5 else -1
            fun = generate_matching_function(gp, n, sigma, sh)
            assert -fun.winding_number() == n
            assert alpha_signature(fun, sh) == sigma
            fac = factorize(fun)
            assert fac.kappa == n
            err = fac.reconstruct().distance_to(fun)
            assert err < 1e-10 * max(1.0, fun.sup_norm_on_circle())
            count += 1
        assert g.elapsed < 30.0
        _report(2, True, f"({g.elapsed:.2f}s, 100 round trips)")


def test_criterion_3_kernel_basis_families():
    sh = make_shift(2.0)
    with _guard(3) as g:
        cases = [
            (sh.chi.invert(), (1, 0)),
            (-1.0 * sh.chi.invert(), (0, 1)),
            (sh.chi.power(-3), (2, 1)),
            (sh.chi.power(-4), (2, 2)),
        ]
        for sym, dims in cases:
            b_plus, b_minus = toeplitz_kernel_split(sym, sh)
            assert (len(b_plus), len(b_minus)) == dims
            section = operator_section("toeplitz", sym, sh, 256)
            for f in b_plus + b_minus:
                assert residual_check(section, analytic_series(f)) < 1e-6
            svd_dims = [
                numerical_null_space(operator_section("toeplitz", sym, sh, n)).dim
                for n in (128, 256, 512)
            ]
            assert svd_dims[0] == svd_dims[1] == svd_dims[2] == sum(dims)
        assert g.elapsed < 60.0
        _report(3, True, f"({g.elapsed:.2f}s, 4 symbols at N in 128/256/512)")


def test_criterion_4_right_invertible_defects():
    sh = make_shift(2.0)
    with _guard(4) as g:
        pair = make_matching_pair(sh.chi.power(-2), sh.chi.power(-2), sh)
        rep = defect_numbers(pair, oracle_size=256)
        dims = (
            rep.dim_ker_plus,
            rep.dim_coker_plus,
            rep.dim_ker_minus,
            rep.dim_coker_minus,
        )
        assert dims == (2, 0, 2, 0)
        assert rep.oracle["dims"] == {
            "ker+": 2, "coker+": 0, "ker-": 2, "coker-": 0,
        }
        assert rep.oracle["agreement"]["all"]
        assert g.elapsed < 60.0
        _report(4, True, f"({g.elapsed:.2f}s, dims {dims})")


def test_criterion_5_lifted_regime():
    sh = make_shift(2.0)
    with _guard(5) as g:
        pair = make_matching_pair(RationalSymbol.constant(1.0), sh.chi.invert(), sh)
        assert (pair.kappa1, pair.kappa2) == (-1, 1)
        rep = defect_numbers(pair, oracle_size=256)
        assert rep.regime.value == "LIFTED"
        assert (
            rep.dim_ker_plus,
            rep.dim_coker_plus,
            rep.dim_ker_minus,
            rep.dim_coker_minus,
        ) == (0, 0, 0, 0)
        for kind in ("plus", "minus"):
            section = operator_section(kind, pair, sh, 256)
            svals = scipy.linalg.svdvals(section.entries)
            assert svals[-1] > 1e-6
        assert g.elapsed < 60.0
        _report(5, True, f"({g.elapsed:.2f}s, both sections invertible)")


def test_criterion_6_transfer_maps():
    sh = make_shift(2.0)
    with _guard(6) as g:
        pair = make_matching_pair(sh.chi.power(-2), sh.chi.power(-2), sh)
        n = 128
        blk = operator_section("block", pair, sh, n)
        ns = numerical_null_space(blk)
        assert ns.dim == 4
        for i in range(ns.dim):
            vec = ns.right[:, i]
            f = TruncatedSeries.from_vector(vec[:n]).trim(1e-11)
            h = TruncatedSeries.from_vector(vec[n:]).trim(1e-11)
            F, G = transfer_U(pair, sh, "U1", (f, h))
            f2, h2 = transfer_U(pair, sh, "U2", (F, G))
            assert max((f2 - f).norm(), (h2 - h).norm()) < 1e-8
            F2, G2 = transfer_U(pair, sh, "U1", (f2, h2))
            assert max((F2 - F).norm(), (G2 - G).norm()) < 1e-8
        F, G = transfer_U(
            pair, sh, "U1", (TruncatedSeries.zero(), TruncatedSeries.basis(0))
        )
        half_chi = 0.5 * analytic_series(sh.chi)
        assert (F - half_chi).norm() < 1e-8
        assert (G + half_chi).norm() < 1e-8
        _report(6, True, f"({g.elapsed:.2f}s, round trips on the 4-dim kernel)")


def test_criterion_7_coburn_simonenko_suite():
    rng = np.random.default_rng(707)
    sh = make_shift(2.0)
    with _guard(7) as g:
        per_class = 20
        checked = 0
        # direct families
        for tag, build in (
            ("T(a)-H(a chi^-1)", lambda a: a * sh.chi.invert()),
            ("T(a)+H(a chi)", lambda a: a * sh.chi),
            ("T(a)+H(a)", lambda a: a),
            ("T(a)-H(a)", lambda a: a),
        ):
            for _ in range(per_class):
                a = random_invertible(rng, max_deg=2)
                matches = coburn_class(a, build(a), sh, oracle_size=256)
                assert matches is not None
                match = next(m for m in matches if m.tag == tag)
                assert min(match.dim_ker, match.dim_coker) == 0
                checked += 1
        # subordinated-index families
        for kappa1 in (1, -1, 0):
            for _ in range(per_class):
                a = random_invertible(rng, max_deg=2)
                c = generate_matching_function(
                    random_plus_factor(rng, max_deg=2), kappa1, 1, sh
                )
                b = a * c.invert()
                matches = coburn_class(a, b, sh, oracle_size=256)
                assert matches is not None
                assert any("subordinated" in m.tag for m in matches)
                for m in matches:
                    assert min(m.dim_ker, m.dim_coker) == 0
                checked += 1
        assert g.elapsed < 300.0
        _report(7, True, f"({g.elapsed:.2f}s, {checked} instances)")


def test_criterion_8_index_bookkeeping():
    rng = np.random.default_rng(808)
    sh = make_shift(2.0)
    with _guard(8) as g:
        pairs = [
            make_matching_pair(sh.chi.power(-2), sh.chi.power(-2), sh),
            make_matching_pair(RationalSymbol.constant(1.0), sh.chi.invert(), sh),
            make_matching_pair(RationalSymbol.constant(1.0), sh.chi, sh),
            make_matching_pair(sh.chi.power(2), sh.chi.power(-2), sh),
            make_matching_pair(sh.chi.invert(), sh.chi.power(-2), sh),
        ]
        for _ in range(10):
            rho = generate_matching_function(
                random_plus_factor(rng, 2), int(rng.integers(-3, 4)),
                1 if rng.random() < 0.5 else -1, sh,
            )
            pairs.append(generate_matching_pair(random_plus_factor(rng, 2), rho, sh))
        for pair in pairs:
            rep = defect_numbers(pair, run_oracle=False)
            lhs = (rep.dim_ker_plus - rep.dim_coker_plus) + (
                rep.dim_ker_minus - rep.dim_coker_minus
            )
            assert lhs == pair.kappa1 + pair.kappa2
        _report(8, True, f"({g.elapsed:.2f}s, {len(pairs)} pairs)")


def test_criterion_9_pc_suite():
    sh = make_shift(2.0)
    with _guard(9) as g:
        # endpoint limits are exact
        assert nu_h(np.inf, 2.0) == (1.0 + 0.0j, 0.0 + 0.0j)
        assert nu_h(-np.inf, 2.0) == (0.0 + 0.0j, 0.0 + 0.0j)
        assert nu_h(np.inf, 1.5) == (1.0 + 0.0j, 0.0 + 0.0j)
        # T(psi) sections are invertible
        psi = PsiFactor("t_plus", 0.3, sh)
        for n in (64, 128, 256):
            entries, _ = pc_toeplitz_entries(psi, sh, n)
            assert scipy.linalg.svdvals(entries)[-1] > 1e-6
        # symbol criterion agrees with the factorization verdicts at p = 2
        golden = [
            (sh.chi.power(-2), sh.chi.power(-2)),
            (RationalSymbol.constant(1.0), sh.chi.invert()),
            (RationalSymbol.constant(1.0), RationalSymbol.constant(1.0)),
            (RationalSymbol.constant(1.0), sh.chi),
            (sh.chi.power(2), sh.chi.power(-2)),
            (sh.chi.invert(), sh.chi.power(-2)),
        ]
        for a, b in golden:
            pair = make_matching_pair(a, b, sh)
            assert pair.is_fredholm
            rep = fredholm_symbol_check(a, b, 2.0, sh, n_t=128, n_y=81)
            assert rep["fredholm"]
        # signatures agree between the PC and rational routes
        for sym in (
            RationalSymbol.constant(1.0),
            sh.chi.invert(),
            -1.0 * sh.chi.invert(),
            sh.chi.power(-4),
            generate_matching_function(random_plus_factor(
                np.random.default_rng(909), 2), 2, -1, sh),
        ):
            assert pc_alpha_signature(sym, 2.0, sh) == alpha_signature(sym, sh)
        _report(9, True, f"({g.elapsed:.2f}s)")
