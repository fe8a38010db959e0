import numpy as np
import pytest

from cghw.chaotic import ChaoticParams
from cghw.keyschedule import KeyMaterial


def natural_photo():
    import skimage.data

    return skimage.data.camera()[::2, ::2].copy()


def fixture_corpus(size=256):
    """Deterministic test corpus: synthetic patterns plus a natural photo."""
    rng = np.random.default_rng(2024)
    n = size
    row = np.arange(n) * 255 // (n - 1)
    images = {
        "random": rng.integers(0, 256, (n, n), dtype=np.uint8),
        "gradient_h": np.tile(row.astype(np.uint8), (n, 1)),
        "gradient_v": np.tile(row.astype(np.uint8), (n, 1)).T.copy(),
        "constant": np.full((n, n), 100, dtype=np.uint8),
        "checkerboard": (((np.indices((n, n)).sum(axis=0)) % 2) * 255).astype(np.uint8),
        "half_split": np.vstack(
            [np.zeros((n // 2, n), np.uint8), np.full((n // 2, n), 255, np.uint8)]
        ),
        "diagonal": ((np.add.outer(np.arange(n), np.arange(n)) * 255) // (2 * n - 2)).astype(
            np.uint8
        ),
        "sinusoid": (
            127.5 + 127.5 * np.sin(np.outer(np.arange(n), np.arange(n)) * 0.002)
        ).astype(np.uint8),
        "blobs": None,
        "noisy_ramp": None,
    }
    yy, xx = np.indices((n, n), dtype=float)
    blobs = np.zeros((n, n))
    for cx, cy, s in ((60, 70, 25), (180, 120, 40), (120, 200, 18)):
        blobs += 255 * np.exp(-(((xx - cx) ** 2 + (yy - cy) ** 2) / (2 * s * s)))
    images["blobs"] = np.clip(blobs, 0, 255).astype(np.uint8)
    images["noisy_ramp"] = np.clip(
        images["gradient_h"].astype(int) + rng.integers(-30, 31, (n, n)), 0, 255
    ).astype(np.uint8)
    images["photo"] = natural_photo() if size == 256 else images["random"]
    return images


def random_key_material(rng):
    """User-supplied key material with all streams in the chaotic regime."""
    streams = []
    for _ in range(3):
        x0 = float(rng.uniform(0.05, 0.95))
        if abs(x0 - 0.5) < 1e-6:
            x0 += 0.01
        streams.append(ChaoticParams(x0=x0, a=float(rng.uniform(1.05, 1.95)), n=2))
    return KeyMaterial(streams=tuple(streams), provenance="user-supplied")


@pytest.fixture(scope="session")
def corpus():
    return fixture_corpus()


@pytest.fixture(scope="session")
def photo():
    return natural_photo()
