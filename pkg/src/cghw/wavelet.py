"""Gradient Haar wavelet: coefficient algebra and 1-level 2D transforms.

The scaling function is the sloped segment lam*(x - 1/2) + 1 on [0, 1),
with slope lam in [-2, 2].  Its two refinement coefficients

    p0 = lam^2/24 - lam/4 + 1      p1 = lam^2/24 + lam/4 + 1

are both >= 2/3 on the admissible slope range, which makes every analysis
matrix built here invertible: each 2x2 column-pair block has determinant
-(pt0_a * pt0_d + pt1_b * pt1_c) <= -4/9 where pt_i = p_i / sqrt(2).

Keystream values s in [0, 1] parameterize slopes through lam = 4s - 2, so a
stream of all 0.5 reproduces the classical Haar transform exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

SQRT2 = math.sqrt(2.0)


def _check_lambda(lam):
    if not -2.0 <= lam <= 2.0:
        raise ValueError(f"slope lambda={lam!r} outside [-2, 2]")


def scaling_value(x, lam):
    """Evaluate the gradient scaling function at x."""
    _check_lambda(lam)
    if 0.0 <= x < 1.0:
        return lam * (x - 0.5) + 1.0
    return 0.0


def wavelet_value(x, lam):
    """Evaluate the gradient wavelet function at x."""
    _check_lambda(lam)
    if 0.0 <= x < 0.5:
        return (lam * lam / 24.0 + lam / 4.0 + 1.0) * (2.0 * lam * x - lam / 2.0 + 1.0)
    if 0.5 <= x < 1.0:
        return -(lam * lam / 24.0 - lam / 4.0 + 1.0) * (2.0 * lam * x - 1.5 * lam + 1.0)
    return 0.0


@dataclass(frozen=True)
class CoeffPair:
    """Scaling coefficients for one slope, plus their sqrt(2)-normalized forms."""

    lam: float
    p0: float
    p1: float
    pt0: float
    pt1: float


def coeffs(lam):
    """Refinement coefficients p0, p1 and pt_i = p_i / sqrt(2) for a slope."""
    _check_lambda(lam)
    p0 = lam * lam / 24.0 - lam / 4.0 + 1.0
    p1 = lam * lam / 24.0 + lam / 4.0 + 1.0
    return CoeffPair(lam=lam, p0=p0, p1=p1, pt0=p0 / SQRT2, pt1=p1 / SQRT2)


def lambda_from_s(s):
    """Map a keystream value in [0, 1] onto the slope range [-2, 2]."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"keystream value s={s!r} outside [0, 1]")
    return 4.0 * s - 2.0


@dataclass(frozen=True, eq=False)
class AnalysisMatrix:
    """n x n one-level analysis matrix with per-entry keyed coefficients.

    Row r < n/2 holds (pt0(lam_a), pt1(lam_b)) at columns 2r, 2r+1;
    row n/2 + r holds (pt1(lam_c), -pt0(lam_d)) at the same columns.
    """

    n: int
    entries: np.ndarray
    source: str = ""


def build_analysis_matrix(stream, n, source=""):
    """Build an n x n analysis matrix from 2n keystream values.

    Row pair r consumes stream values 4r .. 4r+3 as the slopes
    (lam_a, lam_b, lam_c, lam_d) in that order.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"matrix size n={n!r} must be an even integer >= 2")
    values = np.asarray(getattr(stream, "values", stream), dtype=float)
    if values.ndim != 1 or len(values) != 2 * n:
        raise ValueError(
            f"stream segment has length {values.size}, expected {2 * n} for n={n}"
        )
    half = n // 2
    entries = np.zeros((n, n))
    for r in range(half):
        ca = coeffs(lambda_from_s(values[4 * r]))
        cb = coeffs(lambda_from_s(values[4 * r + 1]))
        cc = coeffs(lambda_from_s(values[4 * r + 2]))
        cd = coeffs(lambda_from_s(values[4 * r + 3]))
        entries[r, 2 * r] = ca.pt0
        entries[r, 2 * r + 1] = cb.pt1
        entries[half + r, 2 * r] = cc.pt1
        entries[half + r, 2 * r + 1] = -cd.pt0
    entries.setflags(write=False)
    return AnalysisMatrix(n=n, entries=entries, source=source)


def block_determinants(matrix):
    """Determinant of each 2x2 column-pair block of an analysis matrix."""
    m = matrix.entries
    half = matrix.n // 2
    r = np.arange(half)
    a = m[r, 2 * r]
    b = m[r, 2 * r + 1]
    c = m[half + r, 2 * r]
    d = m[half + r, 2 * r + 1]
    return a * d - b * c


def invert_analysis_matrix(matrix):
    """Exact inverse via closed-form 2x2 block inversion.

    Output pair (x_{2r}, x_{2r+1}) depends only on (y_r, y_{n/2+r}), so the
    inverse scatters each inverted block to rows 2r, 2r+1 and columns
    r, n/2 + r.  The determinant bound |det| >= 4/9 keeps this stable.
    """
    m = matrix.entries
    n = matrix.n
    half = n // 2
    inv = np.zeros((n, n))
    for r in range(half):
        a = m[r, 2 * r]
        b = m[r, 2 * r + 1]
        c = m[half + r, 2 * r]
        d = m[half + r, 2 * r + 1]
        det = a * d - b * c
        inv[2 * r, r] = d / det
        inv[2 * r, half + r] = -b / det
        inv[2 * r + 1, r] = -c / det
        inv[2 * r + 1, half + r] = a / det
    return inv


@dataclass(frozen=True, eq=False)
class SubBands:
    """The four 1-level coefficient planes of a 2D analysis step."""

    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray

    @property
    def shape(self):
        return self.ll.shape


def forward1(image, row_matrix, col_matrix):
    """One analysis level: F = R * image * C^T, split into quadrants.

    Quadrant layout of F (low-pass rows first): LL top-left, HL top-right,
    LH bottom-left, HH bottom-right.
    """
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise ValueError("image must be a 2D matrix")
    m, n = image.shape
    if row_matrix.n != m or col_matrix.n != n:
        raise ValueError(
            f"matrix sizes ({row_matrix.n}, {col_matrix.n}) do not match "
            f"image shape {image.shape}"
        )
    f = row_matrix.entries @ image @ col_matrix.entries.T
    hm, hn = m // 2, n // 2
    return SubBands(
        ll=f[:hm, :hn], hl=f[:hm, hn:], lh=f[hm:, :hn], hh=f[hm:, hn:]
    )


def assemble(bands):
    """Reassemble the full coefficient matrix from its quadrants."""
    top = np.hstack([bands.ll, bands.hl])
    bottom = np.hstack([bands.lh, bands.hh])
    return np.vstack([top, bottom])


def inverse1(bands, row_matrix, col_matrix):
    """Invert forward1: returns R^-1 * F * (C^-1)^T for the assembled F."""
    f = assemble(bands)
    m, n = f.shape
    if row_matrix.n != m or col_matrix.n != n:
        raise ValueError(
            f"matrix sizes ({row_matrix.n}, {col_matrix.n}) do not match "
            f"band assembly shape {f.shape}"
        )
    inv_row = invert_analysis_matrix(row_matrix)
    inv_col = invert_analysis_matrix(col_matrix)
    return inv_row @ f @ inv_col.T
