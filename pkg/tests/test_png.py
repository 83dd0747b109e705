import numpy as np
from PIL import Image

import oracles
from dals import export_overlay, export_png8, import_png8


def test_roundtrip_within_quantization(tmp_path):
    rng = np.random.default_rng(0)
    f = rng.uniform(size=(12, 17))
    path = tmp_path / "f.png"
    export_png8(path, f)
    back = import_png8(path)
    assert back.shape == f.shape
    assert np.abs(back - f).max() <= 1.0 / 255.0


def test_all_black(tmp_path):
    path = tmp_path / "z.png"
    Image.fromarray(np.zeros((6, 6), dtype=np.uint8), mode="L").save(path)
    np.testing.assert_array_equal(import_png8(path), np.zeros((6, 6)))


def test_export_clamps(tmp_path):
    path = tmp_path / "c.png"
    export_png8(path, np.array([[-0.5, 2.0]]))
    np.testing.assert_array_equal(import_png8(path), [[0.0, 1.0]])


def test_overlay_colors_exact_zero_band(tmp_path):
    phi = oracles.disk_sdm(32, 9.0)
    image = np.clip(phi, 0, 1) * 0 + 0.5
    path = tmp_path / "o.png"
    export_overlay(path, image, phi, color=(255, 0, 0))
    with Image.open(path) as img:
        rgb = np.asarray(img.convert("RGB"))
    colored = (rgb == np.array([255, 0, 0])).all(axis=-1)
    np.testing.assert_array_equal(colored, np.abs(phi) < 0.7)
