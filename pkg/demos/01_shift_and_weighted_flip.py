"""The circle involution alpha and its weighted flip.

For |beta| > 1 the map alpha(z) = (z - beta)/(conj(beta) z - 1) reverses
the orientation of the unit circle, squares to the identity and fixes two
points.  This script walks through the derived data: the plus/minus
factorization of alpha, the degree-one matching functions chi and psi_cap,
and the flip operator J f = t^-1 alpha_minus * (f o alpha) that exchanges
analytic and anti-analytic Fourier modes.

Run:  python demos/01_shift_and_weighted_flip.py
"""

import numpy as np

from toephankel import (
    TruncatedSeries,
    apply_J_alpha,
    compose_with_shift,
    eval_alpha,
    fourier_coefficients,
    make_shift,
)

for beta in (2.0, 2.0j, 1.5 + 0.5j):
    sh = make_shift(beta)
    print(f"\n=== beta = {beta} ===")
    print(f"fixed points: t+ = {sh.t_plus:.6f}, t- = {sh.t_minus:.6f}")
    t = sh.circle_grid(512)
    at = eval_alpha(sh, t)
    print("max |alpha(alpha(t)) - t| on 512 points:",
          f"{np.max(np.abs(eval_alpha(sh, at) - t)):.2e}")
    fact = sh.alpha_plus.eval(t) / t * sh.alpha_minus.eval(t)
    print("max |alpha - alpha_plus t^-1 alpha_minus|:",
          f"{np.max(np.abs(fact - at)):.2e}")
    print("chi * (chi o alpha) = 1 residual:",
          f"{np.max(np.abs(sh.chi.eval(t) * sh.chi.eval(at) - 1)):.2e}")

sh = make_shift(2.0)
print("\n=== the weighted flip at beta = 2 ===")
j_one = apply_J_alpha(TruncatedSeries.basis(0), sh)
print("J applied to 1 lives on exponents", j_one.lo, "..", j_one.hi)
chi_inv = fourier_coefficients(sh.chi.invert(), (j_one.lo, j_one.hi))
print("distance to the coefficients of chi^-1:",
      f"{(j_one - chi_inv).norm():.2e}")

# J is an involution: flipping twice returns the input
rng = np.random.default_rng(1)
f = TruncatedSeries(0, rng.normal(size=9) + 1j * rng.normal(size=9))
back = apply_J_alpha(apply_J_alpha(f, sh), sh)
print("J(J f) = f residual on a random degree-8 input:",
      f"{(back - f).norm():.2e}")

# exact rational route: J chi = chi^-2
j_chi = apply_J_alpha(sh.chi, sh)
print("J chi equals chi^-2:",
      f"{j_chi.distance_to(sh.chi.power(-2)):.2e}")

# composition with alpha swaps the plus and minus factors
swapped = compose_with_shift(sh.alpha_plus, sh)
print("alpha_plus o alpha equals alpha_minus:",
      f"{swapped.distance_to(sh.alpha_minus):.2e}")
