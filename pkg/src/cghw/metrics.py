"""Security metrics: histogram, entropy, adjacent-pixel correlation, NPCR, UACI."""

import math
from dataclasses import dataclass

import numpy as np

DIRECTIONS = ("horizontal", "vertical", "diagonal")
_OFFSETS = {"horizontal": (0, 1), "vertical": (1, 0), "diagonal": (1, 1)}

DEFAULT_PAIRS = 3000
DEFAULT_SEED = 42


def _as_image(img):
    a = np.asarray(img)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("expected a nonempty 2D image")
    return a.astype(np.int64)


def histogram(img):
    """Counts of each of the 256 gray levels."""
    return np.bincount(_as_image(img).ravel(), minlength=256)


def mean_intensity(img):
    return float(_as_image(img).mean())


def entropy(img):
    """Shannon entropy in bits and its value normalized by log2(256)."""
    counts = histogram(img)
    total = counts.sum()
    probs = counts[counts > 0] / total
    bits = float(-(probs * np.log2(probs)).sum())
    return bits, bits / 8.0


def correlation_coefficient(x, y):
    """r_xy = Cov(x, y) / sqrt(D(x) D(y)) with 1/N-normalized estimators."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ex, ey = x.mean(), y.mean()
    dx = ((x - ex) ** 2).mean()
    dy = ((y - ey) ** 2).mean()
    if dx == 0.0 or dy == 0.0:
        raise ValueError("correlation undefined for a constant sample")
    cov = ((x - ex) * (y - ey)).mean()
    return float(cov / math.sqrt(dx * dy))


def correlation(img, direction, pairs=DEFAULT_PAIRS, rng_seed=DEFAULT_SEED):
    """Correlation of `pairs` randomly sampled adjacent pixel pairs.

    Sampling is uniform over admissible positions and deterministic for a
    given rng_seed.
    """
    if direction not in _OFFSETS:
        raise ValueError(f"unknown direction {direction!r}")
    a = _as_image(img)
    h, w = a.shape
    di, dj = _OFFSETS[direction]
    if h - di < 1 or w - dj < 1:
        raise ValueError(f"image {h}x{w} too small for {direction} pairs")
    rng = np.random.default_rng(rng_seed)
    i = rng.integers(0, h - di, size=pairs)
    j = rng.integers(0, w - dj, size=pairs)
    return correlation_coefficient(a[i, j], a[i + di, j + dj])


def npcr(c1, c2):
    """Percentage of positions where the two images differ."""
    a, b = _as_image(c1), _as_image(c2)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float((a != b).mean() * 100.0)


def uaci(c1, c2):
    """Mean absolute difference, as a percentage of the 255 gray range."""
    a, b = _as_image(c1), _as_image(c2)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.abs(a - b).mean() / 255.0 * 100.0)


@dataclass(frozen=True, eq=False)
class MetricsReport:
    histogram: np.ndarray
    mean_intensity: float
    entropy_bits: float
    normalized_entropy: float
    corr_h: float
    corr_v: float
    corr_d: float
    rng_seed: int
    npcr_percent: float | None = None
    uaci_percent: float | None = None

    def as_dict(self):
        d = {
            "mean_intensity": self.mean_intensity,
            "entropy_bits": self.entropy_bits,
            "normalized_entropy": self.normalized_entropy,
            "corr_h": self.corr_h,
            "corr_v": self.corr_v,
            "corr_d": self.corr_d,
            "rng_seed": self.rng_seed,
        }
        if self.npcr_percent is not None:
            d["npcr_percent"] = self.npcr_percent
        if self.uaci_percent is not None:
            d["uaci_percent"] = self.uaci_percent
        d["histogram"] = [int(c) for c in self.histogram]
        return d

    def as_text(self):
        lines = []
        for key, value in self.as_dict().items():
            if key == "histogram":
                value = " ".join(str(c) for c in value)
            lines.append(f"{key} {value}")
        return "\n".join(lines) + "\n"


def analyze(img, ref=None, pairs=DEFAULT_PAIRS, rng_seed=DEFAULT_SEED):
    """Full metric report for one image, with NPCR/UACI against `ref` if given."""
    bits, normalized = entropy(img)
    report = MetricsReport(
        histogram=histogram(img),
        mean_intensity=mean_intensity(img),
        entropy_bits=bits,
        normalized_entropy=normalized,
        corr_h=correlation(img, "horizontal", pairs, rng_seed),
        corr_v=correlation(img, "vertical", pairs, rng_seed),
        corr_d=correlation(img, "diagonal", pairs, rng_seed),
        rng_seed=rng_seed,
        npcr_percent=None if ref is None else npcr(img, ref),
        uaci_percent=None if ref is None else uaci(img, ref),
    )
    return report
