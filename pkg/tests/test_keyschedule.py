import numpy as np
import pytest

from cghw.keyschedule import (
    KeyMaterial,
    derive_all,
    derive_seed_pair,
    derive_stream_params,
)


def brute_force_seed_pair(image, n):
    """Independent oracle for the byte-pair derivation (default divisor)."""
    p = [[int(v) for v in row] for row in image]
    m, w = len(p), len(p[0])
    total = sum(sum(row) for row in p)
    divisor = max(1.0, total / (m * w))
    col_sum = sum(p[i][n - 1] for i in range(m))
    row_sum = sum(p[n - 1][j] for j in range(w))
    return int(col_sum % divisor) ^ 255, int(row_sum % divisor) ^ 255


class TestDeriveSeedPair:
    def test_constant_image(self):
        img = np.full((4, 4), 100, dtype=np.uint8)
        assert derive_seed_pair(img, 2) == (255, 255)
        assert derive_seed_pair(img, 2, strict=True) == (255, 255)

    def test_all_zero_image_clamps_divisor(self):
        img = np.zeros((4, 4), dtype=np.uint8)
        assert derive_seed_pair(img, 1) == (255, 255)
        assert derive_seed_pair(img, 1, strict=True) == (255, 255)

    def test_single_pixel_image(self):
        for v in (0, 1, 200):
            img = np.array([[v]], dtype=np.uint8)
            assert derive_seed_pair(img, 1) == (255, 255)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            img = rng.integers(0, 256, (8, 6), dtype=np.uint8)
            for n in (1, 2, 3):
                assert derive_seed_pair(img, n) == brute_force_seed_pair(img, n)

    def test_values_are_bytes(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
            lam, mu = derive_seed_pair(img, 2)
            assert 0 <= lam <= 255 and 0 <= mu <= 255

    def test_index_out_of_range(self):
        img = np.zeros((4, 4), dtype=np.uint8)
        with pytest.raises(ValueError):
            derive_seed_pair(img, 0)
        with pytest.raises(ValueError):
            derive_seed_pair(img, 5)


class TestDeriveStreamParams:
    def test_degenerate_zero_remaps(self):
        p = derive_stream_params(255, 255, 1)
        assert p.x0 == pytest.approx(0.123456789, abs=1e-15)
        assert p.a == pytest.approx(1.123456789, abs=1e-12)

    def test_complementary_bytes_remap(self):
        p = derive_stream_params(0b10101010, 0b01010101, 1)
        assert p.x0 == pytest.approx(0.123456789, abs=1e-15)

    def test_remap_is_stream_distinct(self):
        xs = {derive_stream_params(255, 255, k).x0 for k in (1, 2, 3)}
        assert len(xs) == 3

    def test_hand_computed_values(self):
        p = derive_stream_params(100, 10, 1)
        assert p.x0 == pytest.approx(110.0 / 255.0, abs=1e-15)
        assert p.a == pytest.approx(1.0 + 110.0 / 255.0, abs=1e-12)
        strict = derive_stream_params(100, 10, 1, strict=True)
        assert strict.a == pytest.approx(2.0 * (1.0 + 110.0 / 255.0), abs=1e-12)

    def test_default_alpha_stays_chaotic(self):
        # folded scaling keeps every stream's control parameter in [1, 2)
        for lam in range(0, 256, 7):
            for mu in range(0, 256, 11):
                for k in (1, 2, 3):
                    p = derive_stream_params(lam, mu, k)
                    assert 1.0 <= p.a < 2.0

    def test_alpha_for_first_stream_matches_spec_range(self):
        for lam, mu in ((1, 2), (17, 200), (99, 98)):
            p = derive_stream_params(lam, mu, 1)
            assert p.a == pytest.approx(1.0 + p.x0, abs=1e-12)

    def test_bad_stream_index(self):
        with pytest.raises(ValueError):
            derive_stream_params(1, 2, 4)

    def test_bad_bytes(self):
        with pytest.raises(ValueError):
            derive_stream_params(-1, 0, 1)
        with pytest.raises(ValueError):
            derive_stream_params(0, 300, 1)


class TestDeriveAll:
    def test_deterministic(self):
        rng = np.random.default_rng(6)
        img = rng.integers(0, 256, (32, 32), dtype=np.uint8)
        assert derive_all(img) == derive_all(img)

    def test_constant_image_hits_remap_everywhere(self):
        img = np.full((4, 4), 100, dtype=np.uint8)
        keys = derive_all(img)
        for k, params in enumerate(keys.streams, start=1):
            assert params.x0 == pytest.approx(0.123456789 + 0.1 * (k - 1), abs=1e-12)

    def test_seed_in_open_interval(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
            for params in derive_all(img).streams:
                assert 0.0 < params.x0 < 1.0

    def test_sensitive_pixel_edit_changes_keys(self):
        rng = np.random.default_rng(10)
        img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
        base = derive_all(img)
        for i, j in ((1, 0), (2, 5), (3, 3), (0, 1), (9, 2)):
            edited = img.copy()
            edited[i, j] = (int(edited[i, j]) + 128) % 256
            assert derive_all(edited) != base

    def test_avalanche_over_random_edits(self):
        rng = np.random.default_rng(12)
        img = rng.integers(0, 256, (64, 64), dtype=np.uint8)
        base = derive_all(img)
        changed = 0
        for _ in range(50):
            i, j = rng.integers(0, 64, size=2)
            v = int(rng.integers(0, 256))
            while v == img[i, j]:
                v = int(rng.integers(0, 256))
            edited = img.copy()
            edited[i, j] = v
            if derive_all(edited) != base:
                changed += 1
        assert changed >= 45

    def test_size_validation(self):
        with pytest.raises(ValueError):
            derive_all(np.zeros((2, 4), dtype=np.uint8))
        with pytest.raises(ValueError):
            derive_all(np.zeros((5, 6), dtype=np.uint8))

    def test_records_provenance_and_pairs(self):
        img = np.full((8, 8), 50, dtype=np.uint8)
        keys = derive_all(img)
        assert keys.provenance == "derived-from-image"
        assert len(keys.lambda_mu) == 3
        for lam, mu in keys.lambda_mu:
            assert 0 <= lam <= 255 and 0 <= mu <= 255

    def test_material_validation(self):
        img = np.full((8, 8), 50, dtype=np.uint8)
        keys = derive_all(img)
        with pytest.raises(ValueError):
            KeyMaterial(streams=keys.streams[:2])
        with pytest.raises(ValueError):
            KeyMaterial(streams=keys.streams, permutation_variant="bogus")
