"""Finite-section numerical oracle.

Truncated matrices of the Toeplitz, flip-Hankel, sum/difference and 2x2
block operators in the Fourier basis, plus SVD null spaces and residual
checks.  Everything analytic elsewhere in the package is cross-validated
against these sections; the sections themselves are built from certified
coefficient windows (exact partial fractions for Toeplitz, FFT grids with
geometric-tail certificates for the Hankel columns).

All computations use the coefficient l2 geometry.  Rational symbols are
Fredholm with the same defect numbers on every Hardy space of the admitted
class, so a single oracle geometry suffices; genuinely p-sensitive
piecewise-continuous symbols are outside what this oracle can adjudicate.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
import numpy as np
import scipy.linalg

from .errors import GridTooSmall, NoSpectralGap, WindowTooTight
from .matching import MatchingPair
from .rational import RationalSymbol
from .series import TruncatedSeries, fourier_coefficients
from .shift import ShiftParams, eval_alpha

SVD_TOL = 1e-8
SVD_GAP = 100.0
ENTRY_TAIL_TOL = 1e-10
DUMP_MAGIC = b"TPHK"
DUMP_VERSION = 1


@dataclass(frozen=True)
class FiniteSection:
    """N x N compression of an operator in the Fourier basis."""

    size: int
    entries: np.ndarray = field(repr=False)
    kind: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def margin(self) -> int:
        return int(self.meta.get("margin", 0))


def _toeplitz_entries(a: RationalSymbol, n: int) -> tuple[np.ndarray, float]:
    co = fourier_coefficients(a, (-(n - 1), n - 1))
    col = co.coeffs[n - 1 :]
    row = co.coeffs[: n][::-1]
    return scipy.linalg.toeplitz(col, row), float(co.tail or 0.0)


def _symbol_margin(s: RationalSymbol, tol: float = ENTRY_TAIL_TOL) -> int:
    """How far multiplication by s can push coefficient support."""
    band = (s.num.hi - s.num.lo) + (s.den.hi - s.den.lo)
    return band + s.pad_for(tol)


def _hankel_entries(
    b: RationalSymbol, shift: ShiftParams, n: int
) -> tuple[np.ndarray, float]:
    """Columns are the analytic coefficients of b * (flip of t^k)."""
    pad = shift.pad(ENTRY_TAIL_TOL) + b.pad_for(ENTRY_TAIL_TOL)
    m = 1024
    while m < 4 * (n + pad):
        m *= 2
    while True:
        if m > 2**22:
            raise GridTooSmall("hankel column grid exceeded the cap")
        t = np.exp(2j * np.pi * np.arange(m) / m)
        at = eval_alpha(shift, t)
        w = b.eval(t) * shift.alpha_minus.eval(t) / t
        powers = at[:, None] ** np.arange(n)[None, :]
        cols = np.fft.fft(w[:, None] * powers, axis=0) / m
        tail = float(np.max(np.abs(cols[m // 2 - 2 : m // 2 + 3, :])))
        scale = max(1.0, float(np.max(np.abs(cols[:n, :]))))
        if tail <= ENTRY_TAIL_TOL * scale:
            return np.ascontiguousarray(cols[:n, :]), tail
        m *= 2


def operator_section(
    kind: str,
    payload,
    shift: ShiftParams,
    n: int,
) -> FiniteSection:
    """Build the N x N (or 2N x 2N for the block) section.

    kind is one of 'toeplitz', 'hankel', 'plus', 'minus', 'block'.
    'toeplitz'/'hankel' take a single symbol, the others a MatchingPair or
    an (a, b) tuple of symbols.
    """
    if n < 8:
        raise ValueError("section size must be at least 8")
    if kind in ("toeplitz", "hankel"):
        sym = payload
        if not isinstance(sym, RationalSymbol):
            from .pc import pc_toeplitz_entries  # local import: PC path optional

            if kind == "hankel":
                raise ValueError("hankel sections require a rational symbol")
            entries, tail = pc_toeplitz_entries(sym, shift, n)
            meta = {"tail": tail, "margin": n // 2, "symbols": str(sym)}
            return FiniteSection(n, entries, kind, meta)
        if kind == "toeplitz":
            entries, tail = _toeplitz_entries(sym, n)
            margin = _symbol_margin(sym)
        else:
            entries, tail = _hankel_entries(sym, shift, n)
            margin = _symbol_margin(sym) + shift.pad(ENTRY_TAIL_TOL)
        return FiniteSection(
            n, entries, kind, {"tail": tail, "margin": margin, "symbols": str(sym)}
        )

    if isinstance(payload, MatchingPair):
        a, b = payload.a, payload.b
        pair = payload
    else:
        a, b = payload
        pair = None
    if kind in ("plus", "minus"):
        ta, tail_a = _toeplitz_entries(a, n)
        hb, tail_b = _hankel_entries(b, shift, n)
        sign = 1.0 if kind == "plus" else -1.0
        margin = max(_symbol_margin(a), _symbol_margin(b) + shift.pad(ENTRY_TAIL_TOL))
        return FiniteSection(
            n,
            ta + sign * hb,
            kind,
            {"tail": max(tail_a, tail_b), "margin": margin,
             "symbols": f"T({a}) {'+' if sign > 0 else '-'} H({b})"},
        )
    if kind == "block":
        if pair is None:
            from .matching import make_matching_pair

            pair = make_matching_pair(a, b, shift)
        tc, _ = _toeplitz_entries(pair.c, n)
        td, _ = _toeplitz_entries(pair.d, n)
        taai, _ = _toeplitz_entries(pair.a_alpha_inv, n)
        z = np.zeros((n, n), dtype=complex)
        entries = np.block([[z, td], [-tc, taai]])
        margin = max(_symbol_margin(pair.c), _symbol_margin(pair.d),
                     _symbol_margin(pair.a_alpha_inv))
        return FiniteSection(
            2 * n, entries, kind,
            {"margin": margin, "halves": n, "symbols": "block [[0,T(d)],[-T(c),T(a_alpha^-1)]]"},
        )
    raise ValueError(f"unknown section kind {kind!r}")


@dataclass(frozen=True)
class NullSpace:
    dim: int
    right: np.ndarray          # columns span ker(M)
    left: np.ndarray           # columns span ker(M^H)
    singular_values: np.ndarray


def numerical_null_space(
    section: FiniteSection, tol: float = SVD_TOL, gap: float = SVD_GAP
) -> NullSpace:
    """Null space by SVD with a spectral-gap certificate.

    Singular values below tol * sigma_max count as zero; the smallest kept
    value must exceed the largest dropped one by the gap factor, otherwise
    the split is ambiguous and NoSpectralGap is raised.
    """
    u, s, vh = scipy.linalg.svd(section.entries)
    smax = s[0] if len(s) else 0.0
    cut = tol * smax
    k = int(np.sum(s < cut))
    if k > 0 and k < len(s):
        largest_zero = s[len(s) - k]
        smallest_nonzero = s[len(s) - k - 1]
        if largest_zero > 0 and smallest_nonzero < gap * largest_zero:
            raise NoSpectralGap(
                f"singular values {smallest_nonzero:.3e} / {largest_zero:.3e} "
                f"below the gap factor {gap}"
            )
    right = vh[len(s) - k :].conj().T if k else np.zeros((section.size, 0), complex)
    left = u[:, len(s) - k :] if k else np.zeros((section.size, 0), complex)
    return NullSpace(dim=k, right=right, left=left, singular_values=s)


def localized_null_dims(ns: NullSpace, size: int) -> tuple[int, int]:
    """Genuine (kernel, cokernel) dimensions from a section's null space.

    A square section has equal right and left null counts, but vectors that
    only reflect the truncation carry their mass near the cut.  A null
    vector counts as genuine when at least half of its l2 mass sits in the
    first half of the coordinates; the spurious ones escape to infinity
    with the section size and are discarded.
    """
    half = size // 2

    def genuine(vectors: np.ndarray) -> int:
        count = 0
        for i in range(vectors.shape[1]):
            v = vectors[:, i]
            if np.linalg.norm(v[:half]) ** 2 >= 0.5 * np.linalg.norm(v) ** 2:
                count += 1
        return count

    return genuine(ns.right), genuine(ns.left)


def residual_check(section: FiniteSection, f: TruncatedSeries) -> float:
    """|| section * coeffs(f) ||_2 / || coeffs(f) ||_2 for analytic f."""
    if section.kind == "block":
        raise ValueError("use block_residual_check for block sections")
    n = section.size
    if f.hi + section.margin >= n:
        raise WindowTooTight(
            f"support up to t^{f.hi} with margin {section.margin} exceeds N={n}"
        )
    vec = f.to_vector(n)
    exps = f.lo + np.arange(len(f.coeffs))
    outside = f.coeffs[(exps < 0) | (exps >= n)]
    if len(outside) and np.linalg.norm(outside) > 1e-12 * max(f.norm(), 1e-300):
        raise WindowTooTight("input has significant coefficients outside the section")
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        return 0.0
    return float(np.linalg.norm(section.entries @ vec) / nrm)


def block_residual_check(
    section: FiniteSection, f: TruncatedSeries, g: TruncatedSeries
) -> float:
    """Residual of a stacked (f, g) vector against a block section."""
    n = section.meta["halves"]
    vec = np.concatenate([f.to_vector(n), g.to_vector(n)])
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        return 0.0
    return float(np.linalg.norm(section.entries @ vec) / nrm)


def dump_section(section: FiniteSection, path) -> None:
    """Binary dump: 16-byte header (magic, u32 version, u64 N), then
    row-major interleaved re/im float64, little-endian."""
    n = section.size
    header = DUMP_MAGIC + struct.pack("<IQ", DUMP_VERSION, n)
    inter = np.empty((n, n, 2), dtype="<f8")
    inter[:, :, 0] = section.entries.real
    inter[:, :, 1] = section.entries.imag
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(inter.tobytes())


def load_section(path) -> FiniteSection:
    with open(path, "rb") as fh:
        header = fh.read(16)
        if header[:4] != DUMP_MAGIC:
            raise ValueError("bad magic")
        version, n = struct.unpack("<IQ", header[4:])
        if version != DUMP_VERSION:
            raise ValueError(f"unsupported version {version}")
        raw = np.frombuffer(fh.read(), dtype="<f8").reshape(n, n, 2)
    return FiniteSection(int(n), raw[:, :, 0] + 1j * raw[:, :, 1], "loaded", {})
