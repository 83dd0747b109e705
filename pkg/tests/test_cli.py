import json

import numpy as np
import pytest

from dals import KIND_MASK, KIND_PROBABILITY, KIND_SCALAR, read_field, write_field
from dals.cli import main


def _disk_mask(n=48, r=10.0):
    yy, xx = np.indices((n, n), dtype=float)
    c = (n - 1) / 2.0
    return np.hypot(xx - c, yy - c) <= r


def test_eval_identical_masks(tmp_path, capsys):
    mask = _disk_mask()
    a = tmp_path / "a.dals"
    b = tmp_path / "b.dals"
    write_field(a, mask, KIND_MASK)
    write_field(b, mask, KIND_MASK)
    rc = main(["eval", "--pred", str(a), "--gt", str(b)])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert out == "dice=1.000000 hausdorff=0.000000 boundf=1.000000"


def test_eval_boundf_tolerance_flag(tmp_path, capsys):
    a = tmp_path / "a.dals"
    b = tmp_path / "b.dals"
    write_field(a, _disk_mask(48, 10.0), KIND_MASK)
    write_field(b, _disk_mask(48, 13.0), KIND_MASK)
    rc = main(["eval", "--pred", str(a), "--gt", str(b), "--boundf-tol", "4.0"])
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert line.split()[2] == "boundf=1.000000"


def test_segment_degenerate_prob_exit_code(tmp_path, capsys):
    img = tmp_path / "img.dals"
    prob = tmp_path / "prob.dals"
    write_field(img, np.full((32, 32), 0.5), KIND_SCALAR)
    write_field(prob, np.zeros((32, 32)), KIND_PROBABILITY)
    rc = main(["segment", "--image", str(img), "--prob", str(prob), "--out", str(tmp_path / "o")])
    err = capsys.readouterr().err
    assert rc == 3
    assert err.startswith("error: degenerate-mask:")


def test_segment_kind_checked(tmp_path, capsys):
    img = tmp_path / "img.dals"
    write_field(img, np.full((8, 8), 0.5), KIND_SCALAR)
    rc = main(["segment", "--image", str(img), "--prob", str(img), "--out", str(tmp_path / "o")])
    assert rc == 10
    assert capsys.readouterr().err.startswith("error: kind-constraint:")


def test_bad_magic_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.dals"
    bad.write_bytes(b"JUNKJUNKJUNKJUNKJUNK")
    rc = main(["eval", "--pred", str(bad), "--gt", str(bad)])
    assert rc == 8
    assert capsys.readouterr().err.startswith("error: bad-magic:")


def test_lambda_command(tmp_path, capsys):
    prob = tmp_path / "p.dals"
    write_field(prob, np.full((8, 8), 0.5), KIND_PROBABILITY)
    out = tmp_path / "lam"
    rc = main(["lambda", "--prob", str(prob), "--out", str(out)])
    assert rc == 0
    lam1, kind1 = read_field(out / "lambda1.dals")
    lam2, kind2 = read_field(out / "lambda2.dals")
    assert kind1 == kind2 == KIND_SCALAR
    np.testing.assert_allclose(lam1, np.e, rtol=1e-6)
    np.testing.assert_allclose(lam2, np.e, rtol=1e-6)


def test_phantom_segment_eval_pipeline(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    rc = main(["phantom", "--preset", "liver-ct", "--count", "2", "--seed", "5",
               "--out", str(corpus)])
    assert rc == 0
    capsys.readouterr()

    manifest = corpus / "manifest.jsonl"
    records = [json.loads(line) for line in manifest.read_text().splitlines()]
    assert len(records) == 2
    assert records[0]["id"] == "sample_00000"
    assert records[1]["seed"] == 6

    preds = tmp_path / "preds"
    for rec in records:
        rc = main([
            "segment",
            "--image", str(corpus / rec["image"]),
            "--prob", str(corpus / rec["prob"]),
            "--out", str(preds / rec["id"]),
            "--overlay",
        ])
        assert rc == 0
        capsys.readouterr()
        out_dir = preds / rec["id"]
        assert (out_dir / "y_out.dals").exists()
        assert (out_dir / "mask.dals").exists()
        assert (out_dir / "phi.dals").exists()
        assert (out_dir / "overlay.png").exists()
        energy = (out_dir / "energy.csv").read_text().splitlines()
        assert energy[0] == "iteration,energy"
        assert len(energy) > 1

    rc = main(["eval-batch", "--manifest", str(manifest), "--pred-dir", str(preds)])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "sample,dice,hausdorff,boundf"
    assert len(lines) == 1 + 2 + 3
    assert lines[-3].startswith("dice mean=")
    assert lines[-2].startswith("hausdorff mean=")
    assert lines[-1].startswith("boundf mean=")
    mean_dice = float(lines[-3].split("mean=")[1].split()[0])
    assert mean_dice > 0.9


def test_liver_ct_pipeline_mean_dice(tmp_path, capsys):
    # end-to-end phantom -> segment -> eval-batch on ten seeds: the printed
    # mean dice clears 0.95
    corpus = tmp_path / "corpus"
    rc = main(["phantom", "--preset", "liver-ct", "--count", "10", "--seed", "0",
               "--out", str(corpus)])
    assert rc == 0
    capsys.readouterr()
    records = [json.loads(line) for line in (corpus / "manifest.jsonl").read_text().splitlines()]
    preds = tmp_path / "preds"
    for rec in records:
        rc = main(["segment", "--image", str(corpus / rec["image"]),
                   "--prob", str(corpus / rec["prob"]), "--out", str(preds / rec["id"])])
        assert rc == 0
        capsys.readouterr()
    rc = main(["eval-batch", "--manifest", str(corpus / "manifest.jsonl"),
               "--pred-dir", str(preds)])
    assert rc == 0
    summary = [l for l in capsys.readouterr().out.splitlines() if l.startswith("dice mean=")]
    mean_dice = float(summary[0].split("mean=")[1].split()[0])
    assert mean_dice >= 0.95


def test_phantom_rejects_unknown_preset(capsys):
    with pytest.raises(SystemExit):
        main(["phantom", "--preset", "bogus", "--out", "/tmp/x"])


def test_cli_determinism(tmp_path, capsys):
    corpus_a = tmp_path / "a"
    corpus_b = tmp_path / "b"
    for out in (corpus_a, corpus_b):
        rc = main(["phantom", "--preset", "lung-ct", "--count", "1", "--seed", "3",
                   "--out", str(out)])
        assert rc == 0
    capsys.readouterr()
    assert (corpus_a / "sample_00000_image.dals").read_bytes() == (
        corpus_b / "sample_00000_image.dals"
    ).read_bytes()
    assert (corpus_a / "sample_00000_prob.dals").read_bytes() == (
        corpus_b / "sample_00000_prob.dals"
    ).read_bytes()
