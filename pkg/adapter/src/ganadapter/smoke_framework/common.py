"""Shared pieces of the smoke framework scripts."""

import argparse

import numpy as np
import torch
import torch.nn as nn
from PIL import Image


def build_parser(description):
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--dataroot", required=True)
    parser.add_argument("--name", default="run")
    parser.add_argument("--model", choices=["pix2pix", "cycle_gan"], default="pix2pix")
    parser.add_argument("--checkpoints_dir", required=True)
    parser.add_argument("--ngf", type=int, default=8)
    parser.add_argument("--ndf", type=int, default=8)  # accepted; no discriminator here
    parser.add_argument("--load_size", type=int, default=64)
    parser.add_argument("--crop_size", type=int, default=64)
    parser.add_argument("--gpu_ids", default="-1")  # CPU only
    parser.add_argument("--seed", type=int, default=0)
    return parser


class TinyGenerator(nn.Module):
    """3 -> ngf -> 3 convolutional map; just enough to train and infer."""

    def __init__(self, ngf):
        super().__init__()
        self.net = nn.Sequential(
            nn.Conv2d(3, ngf, 3, padding=1),
            nn.ReLU(inplace=True),
            nn.Conv2d(ngf, ngf, 3, padding=1),
            nn.ReLU(inplace=True),
            nn.Conv2d(ngf, 3, 3, padding=1),
            nn.Sigmoid(),
        )

    def forward(self, x):
        return self.net(x)


def load_image_tensor(path, size):
    img = Image.open(path).convert("RGB").resize((size, size), Image.BILINEAR)
    arr = np.asarray(img, dtype=np.float32) / 255.0
    return torch.from_numpy(arr).permute(2, 0, 1).unsqueeze(0)


def save_tensor_image(tensor, path):
    arr = tensor.squeeze(0).permute(1, 2, 0).clamp(0, 1).detach().numpy()
    Image.fromarray((arr * 255.0 + 0.5).astype(np.uint8), mode="RGB").save(path)
