"""Command-line surface: phantom generation, segmentation, evaluation.

Errors print a single machine-parsable line ``error: <code>: <message>`` on
stderr and exit with the code mapped in EXIT_CODES.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .errors import DalsError, KindConstraintViolation
from .evolution import EvolutionConfig, segment
from .fieldfile import (
    KIND_MASK,
    KIND_PROBABILITY,
    KIND_SCALAR,
    KIND_SDM,
    read_field,
    write_field,
)
from .metrics import confidence_interval, evaluate
from .phantom import PRESETS, generate, preset_spec
from .png_io import export_overlay
from .transformer import lambda_maps

EXIT_CODES = {
    "degenerate-mask": 3,
    "empty-band": 4,
    "degenerate-window": 5,
    "empty-mask": 6,
    "shape-mismatch": 7,
    "bad-magic": 8,
    "unsupported-version": 9,
    "kind-constraint": 10,
    "truncated-payload": 11,
    "invalid-header": 12,
    "field-file": 13,
}

_DEFAULTS = EvolutionConfig()


def _binarize(values: np.ndarray, kind: int) -> np.ndarray:
    """Kind-aware binarization: masks pass through, probabilities and scalars
    cut at 0.5, signed distance maps cut at 0."""
    if kind == KIND_MASK:
        return values >= 0.5
    if kind == KIND_SDM:
        return values >= 0.0
    return values >= 0.5


def _read_kind(path, expected: int, what: str) -> np.ndarray:
    values, kind = read_field(path)
    if kind != expected:
        raise KindConstraintViolation(f"{what} must be a kind={expected} field, got kind={kind}")
    return values


def _cmd_phantom(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    records = []
    for i in range(args.count):
        spec = preset_spec(args.preset, seed=args.seed + i)
        sample = generate(spec)
        sid = f"sample_{i:05d}"
        names = {
            "image": f"{sid}_image.dals",
            "gt": f"{sid}_gt.dals",
            "prob": f"{sid}_prob.dals",
        }
        write_field(out / names["image"], sample.image, KIND_SCALAR)
        write_field(out / names["gt"], sample.gt, KIND_MASK)
        write_field(out / names["prob"], sample.prob, KIND_PROBABILITY)
        records.append({"id": sid, "seed": spec.seed, "spec": asdict(spec), **names})
    with open(out / "manifest.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    print(f"wrote {args.count} samples to {out}")
    return 0


def _cmd_segment(args) -> int:
    image = _read_kind(args.image, KIND_SCALAR, "--image")
    prob = _read_kind(args.prob, KIND_PROBABILITY, "--prob")
    cfg = EvolutionConfig(
        mu=args.mu,
        epsilon=args.epsilon,
        window=args.window,
        dt=args.dt,
        band_half_width=args.band,
        max_iters=args.max_iters,
    )
    result = segment(image, prob, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_field(out / "y_out.dals", result.y_out, KIND_PROBABILITY)
    write_field(out / "mask.dals", result.mask, KIND_MASK)
    write_field(out / "phi.dals", result.phi_final, KIND_SDM)
    with open(out / "energy.csv", "w") as fh:
        fh.write("iteration,energy\n")
        for i, e in enumerate(result.energy_trace, start=1):
            fh.write(f"{i},{e!r}\n")
    if args.overlay:
        export_overlay(out / "overlay.png", image, result.phi_final)
    print(
        f"converged={str(result.converged).lower()} iterations={result.iterations_run}"
    )
    return 0


def _cmd_eval(args) -> int:
    pred = _binarize(*read_field(args.pred))
    gt = _binarize(*read_field(args.gt))
    report = evaluate(pred, gt, args.boundf_tol)
    print(
        f"dice={report.dice:.6f} hausdorff={report.hausdorff:.6f} "
        f"boundf={report.boundf:.6f}"
    )
    return 0


def _cmd_eval_batch(args) -> int:
    manifest = Path(args.manifest)
    pred_dir = Path(args.pred_dir)
    base = manifest.parent
    scores: dict[str, list[float]] = {"dice": [], "hausdorff": [], "boundf": []}
    print("sample,dice,hausdorff,boundf")
    with open(manifest) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            gt = _binarize(*read_field(base / rec["gt"]))
            pred = _binarize(*read_field(pred_dir / rec["id"] / "y_out.dals"))
            report = evaluate(pred, gt)
            print(
                f"{rec['id']},{report.dice:.6f},{report.hausdorff:.6f},"
                f"{report.boundf:.6f}"
            )
            scores["dice"].append(report.dice)
            scores["hausdorff"].append(report.hausdorff)
            scores["boundf"].append(report.boundf)
    for name in ("dice", "hausdorff", "boundf"):
        values = scores[name]
        if len(values) >= 2:
            mean, half = confidence_interval(values)
        elif values:
            mean, half = values[0], float("nan")
        else:
            mean, half = float("nan"), float("nan")
        print(f"{name} mean={mean:.6f} ci95={half:.6f}")
    return 0


def _cmd_lambda(args) -> int:
    prob = _read_kind(args.prob, KIND_PROBABILITY, "--prob")
    maps = lambda_maps(prob)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_field(out / "lambda1.dals", maps.lambda1, KIND_SCALAR)
    write_field(out / "lambda2.dals", maps.lambda2, KIND_SCALAR)
    print(f"wrote lambda1.dals, lambda2.dals to {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dals", description="Level-set lesion segmentation toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="generate a seeded phantom corpus")
    p.add_argument("--preset", required=True, choices=sorted(PRESETS))
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_phantom)

    p = sub.add_parser("segment", help="refine a probability map against an image")
    p.add_argument("--image", required=True)
    p.add_argument("--prob", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mu", type=float, default=_DEFAULTS.mu)
    p.add_argument("--epsilon", type=float, default=_DEFAULTS.epsilon)
    p.add_argument("--window", type=int, default=_DEFAULTS.window)
    p.add_argument("--dt", type=float, default=_DEFAULTS.dt)
    p.add_argument("--band", type=float, default=_DEFAULTS.band_half_width)
    p.add_argument("--max-iters", type=int, default=_DEFAULTS.max_iters)
    p.add_argument("--overlay", action="store_true")
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("eval", help="score one prediction against a reference")
    p.add_argument("--pred", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--boundf-tol", type=float, default=2.0)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("eval-batch", help="score a corpus listed in a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--pred-dir", required=True)
    p.set_defaults(func=_cmd_eval_batch)

    p = sub.add_parser("lambda", help="emit the weight maps for a probability map")
    p.add_argument("--prob", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lambda)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DalsError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.code, 1)
    except FileNotFoundError as exc:
        print(f"error: missing-file: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: invalid-argument: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
