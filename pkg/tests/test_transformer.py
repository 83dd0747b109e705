import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dals import DegenerateMask, clamp_probability, lambda_maps, prob_to_sdm
from scipy import ndimage

E = float(np.e)


class TestClamp:
    def test_clamps_stray_values(self):
        p = clamp_probability(np.array([[-0.1, 0.5], [1.0 + 1e-7, 0.0]]))
        assert p.min() == 0.0 and p.max() == 1.0

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            clamp_probability(np.array([[np.nan]]))


class TestLambdaMaps:
    def test_midpoint(self):
        maps = lambda_maps(np.full((2, 2), 0.5))
        np.testing.assert_allclose(maps.lambda1, E, rtol=1e-12)
        np.testing.assert_allclose(maps.lambda2, E, rtol=1e-12)

    def test_confident_foreground(self):
        maps = lambda_maps(np.full((2, 2), 1.0))
        np.testing.assert_allclose(maps.lambda1, np.exp(0.5), rtol=1e-12)
        np.testing.assert_allclose(maps.lambda2, np.exp(2.0), rtol=1e-12)

    def test_confident_background(self):
        maps = lambda_maps(np.full((2, 2), 0.0))
        np.testing.assert_allclose(maps.lambda1, np.exp(2.0), rtol=1e-12)
        np.testing.assert_allclose(maps.lambda2, np.exp(0.5), rtol=1e-12)

    def test_swap_symmetry_exact_on_dyadic_grid(self):
        y = np.arange(0, 1025, dtype=np.float64).reshape(25, 41) / 1024.0
        a = lambda_maps(y)
        b = lambda_maps(1.0 - y)
        np.testing.assert_array_equal(a.lambda1, b.lambda2)
        np.testing.assert_array_equal(a.lambda2, b.lambda1)

    @settings(max_examples=100, derandomize=True, deadline=None)
    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_swap_symmetry_general(self, y):
        a = lambda_maps(np.array([[y]]))
        b = lambda_maps(np.array([[1.0 - y]]))
        np.testing.assert_allclose(a.lambda1, b.lambda2, rtol=1e-14)
        np.testing.assert_allclose(a.lambda2, b.lambda1, rtol=1e-14)

    def test_monotone_and_bounded(self):
        y = np.arange(0, 1001, dtype=np.float64).reshape(1, -1) / 1000.0
        maps = lambda_maps(y)
        assert (np.diff(maps.lambda1[0]) < 0).all()
        assert (np.diff(maps.lambda2[0]) > 0).all()
        assert maps.lambda1.min() >= np.exp(0.5) - 1e-12
        assert maps.lambda2.max() <= np.exp(2.0) + 1e-12

    def test_weights_cross_only_at_half(self):
        y = np.arange(0, 1001, dtype=np.float64).reshape(1, -1) / 1000.0
        maps = lambda_maps(y)
        equal = np.isclose(maps.lambda1, maps.lambda2, rtol=1e-12)
        np.testing.assert_array_equal(np.nonzero(equal[0])[0], [500])


class TestProbToSdm:
    def test_two_valued_disk(self):
        n = 64
        yy, xx = np.indices((n, n), dtype=float)
        c = (n - 1) / 2.0
        inside = np.hypot(xx - c, yy - c) <= 10.0
        p = np.where(inside, 0.9, 0.1)
        phi = prob_to_sdm(p)
        assert abs(phi[int(c), int(c)] - 9.5) <= 0.5
        np.testing.assert_array_equal(phi > 0, inside)

    def test_constant_map_rejected(self):
        with pytest.raises(DegenerateMask):
            prob_to_sdm(np.full((16, 16), 0.3))
        with pytest.raises(DegenerateMask):
            prob_to_sdm(np.full((16, 16), 0.9))

    def test_zero_level_tracks_isocontour(self):
        # smooth blob: the zero level set must sit on the 0.5 isocontour of p
        n = 96
        yy, xx = np.indices((n, n), dtype=float)
        c = (n - 1) / 2.0
        disk = (np.hypot(xx - c, yy - c) <= 16.0).astype(float)
        p = ndimage.gaussian_filter(disk, 2.0)
        phi = prob_to_sdm(p)
        pts = oracles.crossing_points(phi)
        # bilinear-interpolate p at the crossings: they must lie within 1 px
        # of the isocontour, i.e. |p - 0.5| <= |grad p| * 1 px
        gy, gx = np.gradient(p)
        gmax = np.hypot(gx, gy).max()
        for x, y in pts:
            x0, y0 = int(np.floor(x)), int(np.floor(y))
            fx, fy = x - x0, y - y0
            x1, y1 = min(x0 + 1, n - 1), min(y0 + 1, n - 1)
            val = (
                p[y0, x0] * (1 - fx) * (1 - fy)
                + p[y0, x1] * fx * (1 - fy)
                + p[y1, x0] * (1 - fx) * fy
                + p[y1, x1] * fx * fy
            )
            assert abs(val - 0.5) <= gmax * 1.0

    def test_unit_gradient_near_band(self):
        n = 96
        yy, xx = np.indices((n, n), dtype=float)
        c = (n - 1) / 2.0
        disk = (np.hypot(xx - c, yy - c) <= 20.0).astype(float)
        p = ndimage.gaussian_filter(disk, 2.0)
        phi = prob_to_sdm(p)
        g = oracles.grad_mag(phi)
        sel = (np.abs(phi) >= 2.0) & (np.abs(phi) <= 6.0)
        assert g[sel].min() >= 0.9 and g[sel].max() <= 1.1
