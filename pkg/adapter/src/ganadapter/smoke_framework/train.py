#!/usr/bin/env python3
"""Smoke trainer: fits the tiny generator and writes a checkpoint.

pix2pix mode expects <dataroot>/train/*.png side-by-side pairs (left
input, right target); cycle_gan mode expects <dataroot>/trainA/*.png and
trainB/*.png and fits an identity map on domain A (enough to exercise
the adapter's train/infer plumbing).
"""

import sys
from pathlib import Path

import numpy as np
import torch
from PIL import Image

sys.path.insert(0, str(Path(__file__).parent))
from common import TinyGenerator, build_parser


def load_pairs(args):
    size = args.crop_size
    inputs, targets = [], []
    if args.model == "pix2pix":
        paths = sorted((Path(args.dataroot) / "train").glob("*.png"))
        for path in paths:
            img = Image.open(path).convert("RGB")
            half = img.width // 2
            left = img.crop((0, 0, half, img.height)).resize((size, size), Image.BILINEAR)
            right = img.crop((half, 0, img.width, img.height)).resize((size, size), Image.BILINEAR)
            inputs.append(np.asarray(left, dtype=np.float32) / 255.0)
            targets.append(np.asarray(right, dtype=np.float32) / 255.0)
    else:
        paths = sorted((Path(args.dataroot) / "trainA").glob("*.png"))
        for path in paths:
            img = Image.open(path).convert("RGB").resize((size, size), Image.BILINEAR)
            arr = np.asarray(img, dtype=np.float32) / 255.0
            inputs.append(arr)
            targets.append(arr)
    if not inputs:
        raise SystemExit(f"no training images found under {args.dataroot}")

    def to_tensor(stack):
        return torch.from_numpy(np.stack(stack)).permute(0, 3, 1, 2)

    return to_tensor(inputs), to_tensor(targets)


def main():
    parser = build_parser(__doc__)
    parser.add_argument("--n_epochs", type=int, default=1)
    args = parser.parse_args()

    torch.manual_seed(args.seed)
    x, y = load_pairs(args)
    model = TinyGenerator(args.ngf)
    optimizer = torch.optim.Adam(model.parameters(), lr=1e-2)
    loss_fn = torch.nn.L1Loss()
    for epoch in range(args.n_epochs):
        optimizer.zero_grad()
        loss = loss_fn(model(x), y)
        loss.backward()
        optimizer.step()
        print(f"epoch {epoch + 1}/{args.n_epochs} loss {loss.item():.4f}", flush=True)

    out_dir = Path(args.checkpoints_dir) / args.name
    out_dir.mkdir(parents=True, exist_ok=True)
    torch.save(
        {"state_dict": model.state_dict(), "ngf": args.ngf, "model": args.model},
        out_dir / "latest_net_G.pth",
    )
    print(f"saved checkpoint to {out_dir / 'latest_net_G.pth'}")


if __name__ == "__main__":
    main()
