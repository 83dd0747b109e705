"""Toy-scale dense encoder / dilated bottleneck / decoder.

The encoder stacks dense blocks (each layer sees the concatenation of every
earlier feature map in its block) separated by compressing transitions that
halve the resolution.  The last dense block feeds a multiscale block of four
parallel dilated convolutions whose outputs are concatenated, widening the
receptive field without further downsampling.  A light decoder upsamples back
to the input resolution and a 1x1 convolution + sigmoid emits the per-pixel
interior probability.  Fully convolutional: inputs are reflect-padded to the
downsampling multiple and the output is cropped back, so output shape always
equals input shape.  Capacity is kept under one million parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
import torch.nn.functional as F
from torch import nn


@dataclass(frozen=True)
class BackboneConfig:
    input_size: int = 256
    dense_blocks: int = 3
    layers_per_block: int = 3
    growth: int = 12
    stem_channels: int = 16
    dilation_rates: tuple[int, ...] = (2, 4, 8, 16)
    batch_size: int = 4
    lr: float = 1e-3
    lr_decay_every: int = 10
    lr_decay_factor: float = 10.0
    epochs: int = 60
    seed: int = 0


class DenseLayer(nn.Module):
    def __init__(self, in_ch: int, growth: int):
        super().__init__()
        self.norm = nn.BatchNorm2d(in_ch)
        self.conv = nn.Conv2d(in_ch, growth, 3, padding=1, bias=False)

    def forward(self, x):
        return F.relu(self.conv(self.norm(x)))


class DenseBlock(nn.Module):
    """Each layer consumes the concatenation of the block input and all
    previously produced feature maps."""

    def __init__(self, in_ch: int, layers: int, growth: int):
        super().__init__()
        self.layers = nn.ModuleList(
            DenseLayer(in_ch + i * growth, growth) for i in range(layers)
        )
        self.out_channels = in_ch + layers * growth

    def forward(self, x):
        feats = [x]
        for layer in self.layers:
            feats.append(layer(torch.cat(feats, dim=1)))
        return torch.cat(feats, dim=1)


class Transition(nn.Module):
    """1x1 compression followed by 2x average pooling."""

    def __init__(self, in_ch: int, out_ch: int):
        super().__init__()
        self.conv = nn.Conv2d(in_ch, out_ch, 1, bias=False)

    def forward(self, x):
        return F.avg_pool2d(self.conv(x), 2)


class DilationBlock(nn.Module):
    """Four parallel 3x3 convolutions at increasing dilation, concatenated."""

    def __init__(self, in_ch: int, branch_ch: int, rates: tuple[int, ...]):
        super().__init__()
        self.branches = nn.ModuleList(
            nn.Conv2d(in_ch, branch_ch, 3, padding=r, dilation=r) for r in rates
        )
        self.out_channels = branch_ch * len(rates)

    def forward(self, x):
        return torch.cat([F.relu(b(x)) for b in self.branches], dim=1)


class Backbone(nn.Module):
    def __init__(self, cfg: BackboneConfig | None = None):
        super().__init__()
        if cfg is None:
            cfg = BackboneConfig()
        self.cfg = cfg
        self.stride = 2 ** (cfg.dense_blocks - 1)

        self.stem = nn.Conv2d(1, cfg.stem_channels, 3, padding=1)
        blocks = []
        transitions = []
        ch = cfg.stem_channels
        for i in range(cfg.dense_blocks):
            block = DenseBlock(ch, cfg.layers_per_block, cfg.growth)
            blocks.append(block)
            ch = block.out_channels
            if i < cfg.dense_blocks - 1:
                out = max(ch // 2, cfg.stem_channels)
                transitions.append(Transition(ch, out))
                ch = out
        self.blocks = nn.ModuleList(blocks)
        self.transitions = nn.ModuleList(transitions)

        self.dilated = DilationBlock(ch, ch // 2, cfg.dilation_rates)
        ch = self.dilated.out_channels

        ups = []
        for _ in range(cfg.dense_blocks - 1):
            out = max(ch // 2, 16)
            ups.append(nn.Conv2d(ch, out, 3, padding=1))
            ch = out
        self.decoder = nn.ModuleList(ups)
        self.head = nn.Conv2d(ch, 1, 1)

    def forward(self, x):
        h, w = x.shape[-2:]
        pad_h = (-h) % self.stride
        pad_w = (-w) % self.stride
        if pad_h or pad_w:
            x = F.pad(x, (0, pad_w, 0, pad_h), mode="reflect")

        x = F.relu(self.stem(x))
        for i, block in enumerate(self.blocks):
            x = block(x)
            if i < len(self.transitions):
                x = self.transitions[i](x)
        x = self.dilated(x)
        for conv in self.decoder:
            x = F.interpolate(x, scale_factor=2, mode="bilinear", align_corners=False)
            x = F.relu(conv(x))
        x = torch.sigmoid(self.head(x))
        return x[..., :h, :w]


def parameter_count(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters())
