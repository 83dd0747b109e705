from pathlib import Path

from conftest import write_disk_corpus

from dals_backbone import BackboneConfig, infer_field, load_checkpoint, read_field, train


def test_overfit_ten_phantoms(tmp_path):
    manifest = write_disk_corpus(tmp_path / "corpus", count=10, size=64, seed=5)
    cfg = BackboneConfig(epochs=200, seed=1)
    ckpt = train(manifest, tmp_path / "ckpt", cfg, target_dice=0.9)

    curve = Path(ckpt, "curve.csv").read_text().splitlines()
    assert curve[0] == "epoch,loss,train_dice"
    epochs_run = len(curve) - 1
    final_dice = float(curve[-1].split(",")[2])
    assert epochs_run <= 200
    assert final_dice >= 0.9
    print(f"overfit: train dice {final_dice:.3f} after {epochs_run} epochs")

    # checkpoint reloads and keeps the output contract on corpus images
    model = load_checkpoint(ckpt)
    image, _ = read_field(tmp_path / "corpus" / "s0_image.dals")
    prob = infer_field(model, image)
    assert prob.shape == image.shape
    assert prob.min() >= 0.0 and prob.max() <= 1.0


def test_training_curve_is_recorded(tmp_path):
    manifest = write_disk_corpus(tmp_path / "corpus", count=4, size=48, seed=2)
    cfg = BackboneConfig(epochs=3, seed=0)
    ckpt = train(manifest, tmp_path / "ckpt", cfg)
    curve = Path(ckpt, "curve.csv").read_text().splitlines()
    assert len(curve) == 4  # header + 3 epochs
    assert (Path(ckpt) / "model.pt").exists()
