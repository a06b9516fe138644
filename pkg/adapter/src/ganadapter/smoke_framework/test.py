#!/usr/bin/env python3
"""Smoke inference: one output PNG per input, matching stems.

--dataroot is a flat directory of input PNGs; outputs land in
--results_dir as <stem>.png at crop_size resolution.
"""

import sys
from pathlib import Path

import torch

sys.path.insert(0, str(Path(__file__).parent))
from common import TinyGenerator, build_parser, load_image_tensor, save_tensor_image


def main():
    parser = build_parser(__doc__)
    parser.add_argument("--results_dir", required=True)
    args = parser.parse_args()

    checkpoint_path = Path(args.checkpoints_dir) / args.name / "latest_net_G.pth"
    if not checkpoint_path.exists():
        raise SystemExit(f"checkpoint not found: {checkpoint_path}")
    checkpoint = torch.load(checkpoint_path, map_location="cpu", weights_only=True)
    model = TinyGenerator(checkpoint["ngf"])
    model.load_state_dict(checkpoint["state_dict"])
    model.eval()

    inputs = sorted(Path(args.dataroot).glob("*.png"))
    if not inputs:
        raise SystemExit(f"no input PNGs in {args.dataroot}")
    results = Path(args.results_dir)
    results.mkdir(parents=True, exist_ok=True)
    with torch.no_grad():
        for path in inputs:
            tensor = load_image_tensor(path, args.crop_size)
            save_tensor_image(model(tensor), results / path.name)
    print(f"wrote {len(inputs)} outputs to {results}")


if __name__ == "__main__":
    main()
