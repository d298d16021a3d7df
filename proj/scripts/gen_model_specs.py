#!/usr/bin/env python3
# Copyright 2026 pamdi-sim authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the built-in model spec files under data/models/.

Each model is flattened into the sequential list of top-level computational
units a layer-wise partitioner sees, and every unit gets
  - flops: floating point operations for ONE data point (a multiply-accumulate
    counts as 2 FLOPs; elementwise ops count 1 per element),
  - output_bytes: float32 bytes of the feature map the unit emits.

Formulas (see data/models/README.md for the derivation):
  conv:     2 * k^2 * C_in * C_out * H_out * W_out
  batchnorm: 2 * C * H * W          relu: C * H * W
  maxpool:  k^2 * C * H_out * W_out  residual add: C * H * W
  linear:   2 * N_in * N_out
  attention block (per batch item): 2 * (12 s h^2 + 2 s^2 h) + 10 s h
"""

import json
import os

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "models")
F32 = 4


def conv(k, cin, cout, h, w):
    return 2.0 * k * k * cin * cout * h * w


def write(name, spec):
    os.makedirs(OUT_DIR, exist_ok=True)
    path = os.path.join(OUT_DIR, name + ".json")
    with open(path, "w") as f:
        json.dump(spec, f, indent=2)
        f.write("\n")
    total = sum(l["flops"] for l in spec["layers"])
    print(f"{name}: {len(spec['layers'])} layers, {total/1e9:.3f} GFLOP")


def resnet50_224():
    """torchvision-style flattening: conv1, bn1, relu, maxpool, 16 bottleneck
    blocks (3+4+6+3), avgpool, flatten, fc -> 23 sequential units."""
    layers = []

    def unit(flops, c, h, w):
        layers.append({"flops": flops, "bytes": c * h * w * F32})

    unit(conv(7, 3, 64, 112, 112), 64, 112, 112)         # conv1
    unit(2 * 64 * 112 * 112, 64, 112, 112)               # bn1
    unit(64 * 112 * 112, 64, 112, 112)                   # relu
    unit(9 * 64 * 56 * 56, 64, 56, 56)                   # maxpool 3x3 s2

    def bottleneck(cin, width, cout, h, w, downsample):
        f = conv(1, cin, width, h, w)
        f += 2 * width * h * w + width * h * w           # bn + relu
        f += conv(3, width, width, h, w)
        f += 2 * width * h * w + width * h * w
        f += conv(1, width, cout, h, w)
        f += 2 * cout * h * w
        if downsample:
            f += conv(1, cin, cout, h, w) + 2 * cout * h * w
        f += cout * h * w + cout * h * w                 # residual add + relu
        unit(f, cout, h, w)

    stages = [(64, 64, 256, 56, 3), (256, 128, 512, 28, 4),
              (512, 256, 1024, 14, 6), (1024, 512, 2048, 7, 3)]
    for cin, width, cout, hw, blocks in stages:
        for b in range(blocks):
            bottleneck(cin if b == 0 else cout, width, cout, hw, hw, b == 0)

    unit(7 * 7 * 2048, 2048, 1, 1)                       # global avgpool
    unit(2048, 2048, 1, 1)                               # flatten
    layers.append({"flops": 2.0 * 2048 * 10, "bytes": 10 * F32})  # fc, 10 classes

    spec = {
        "model_id": "resnet50_224",
        "input_size_bytes": 224 * 224 * 3 * F32,
        "output_size_bytes": 10 * F32,
        "layers": [{"layer_index": i + 1, "flops": l["flops"], "output_bytes": l["bytes"]}
                   for i, l in enumerate(layers)],
    }
    assert len(layers) == 23, len(layers)
    return spec


def resnet56_32():
    """CIFAR-style ResNet-56: conv1, bn1, relu, 27 basic blocks (9 per stage),
    avgpool, flatten, fc -> 33 sequential units."""
    layers = []

    def unit(flops, c, h, w):
        layers.append({"flops": flops, "bytes": c * h * w * F32})

    unit(conv(3, 3, 16, 32, 32), 16, 32, 32)
    unit(2 * 16 * 32 * 32, 16, 32, 32)
    unit(16 * 32 * 32, 16, 32, 32)

    def basic(cin, cout, h, downsample):
        f = conv(3, cin, cout, h, h)
        f += 2 * cout * h * h + cout * h * h
        f += conv(3, cout, cout, h, h)
        f += 2 * cout * h * h
        if downsample:
            f += conv(1, cin, cout, h, h) + 2 * cout * h * h
        f += cout * h * h + cout * h * h
        unit(f, cout, h, h)

    for stage, (cin, cout, h) in enumerate([(16, 16, 32), (16, 32, 16), (32, 64, 8)]):
        for b in range(9):
            basic(cin if b == 0 else cout, cout, h, stage > 0 and b == 0)

    unit(8 * 8 * 64, 64, 1, 1)
    unit(64, 64, 1, 1)
    layers.append({"flops": 2.0 * 64 * 10, "bytes": 10 * F32})

    spec = {
        "model_id": "resnet56_32",
        "input_size_bytes": 32 * 32 * 3 * F32,
        "output_size_bytes": 10 * F32,
        "layers": [{"layer_index": i + 1, "flops": l["flops"], "output_bytes": l["bytes"]}
                   for i, l in enumerate(layers)],
    }
    assert len(layers) == 33, len(layers)
    return spec


def gpt2_small(batch):
    """GPT-2 small (12 layers, h=768, 12 heads), sequence length 64, given
    batch size. One unit per transformer block; token+position embeddings fold
    into block 1 and the last-token LM head into block 12."""
    s, h, vocab, blocks = 64, 768, 50257, 12
    per_block = batch * (2.0 * (12 * s * h * h + 2 * s * s * h) + 10 * s * h)
    layers = []
    for i in range(blocks):
        f = per_block
        if i == 0:
            f += batch * s * h          # embedding lookup + position add
        if i == blocks - 1:
            f += batch * 2.0 * h * vocab  # LM head on the last token
        layers.append({"layer_index": i + 1, "flops": f,
                       "output_bytes": batch * s * h * F32})
    return {
        "model_id": f"gpt2s_seq64_b{batch}",
        "input_size_bytes": batch * s * F32,       # token ids
        "output_size_bytes": batch * vocab * F32,  # last-token logits
        "layers": layers,
    }


if __name__ == "__main__":
    write("resnet50_224", resnet50_224())
    write("resnet56_32", resnet56_32())
    write("gpt2s_seq64_b12", gpt2_small(12))
    write("gpt2s_seq64_b16", gpt2_small(16))
