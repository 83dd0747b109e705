"""Command-line surface: train on a corpus manifest, infer probability maps."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import read_manifest
from .infer import infer_file
from .model import BackboneConfig
from .train import load_checkpoint, train


def _cmd_train(args) -> int:
    cfg = BackboneConfig(epochs=args.epochs, seed=args.seed, batch_size=args.batch_size)
    out = train(args.manifest, args.out, cfg, target_dice=args.target_dice)
    print(f"checkpoint written to {out}")
    return 0


def _cmd_infer(args) -> int:
    model = load_checkpoint(args.checkpoint)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.image:
        infer_file(model, args.image, out_dir / (Path(args.image).stem + "_prob.dals"))
        count = 1
    else:
        records = read_manifest(args.manifest)
        count = 0
        for rec in records:
            infer_file(model, rec["image"], out_dir / f"{rec['id']}_prob.dals")
            count += 1
    print(f"wrote {count} probability map(s) to {out_dir}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="dals-backbone")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on a phantom corpus manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=BackboneConfig.epochs)
    p.add_argument("--batch-size", type=int, default=BackboneConfig.batch_size)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target-dice", type=float, default=None)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("infer", help="emit probability maps for corpus images")
    p.add_argument("--checkpoint", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--manifest")
    group.add_argument("--image")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_infer)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
