#!/usr/bin/env python3
# Copyright 2026 The Swarmtest Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Trains the bundled small MNIST classifier and writes the bundled data.

Input is the 5000-sample MNIST CSV shipped with mlxtend
(mlxtend/data/data/mnist_5k.csv.gz: 784 pixel bytes then the label per row).
The rows are sorted by label, so a seeded shuffle picks 400 training and 100
held-out samples per class; the 1000 held-out samples are written as the
bundled IDX seed pool (in shuffled order).

Outputs (under --out):
  models/mnist_small.json, models/mnist_small.bin   manifest + float32 blob
  mnist/subset-images-idx3-ubyte, mnist/subset-labels-idx1-ubyte

Only needed to regenerate the bundled files; the C++ build does not run it.
"""

import argparse
import gzip
import json
import os
import struct

import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F


class SmallNet(nn.Module):
  def __init__(self, c1, c2, k1, k2, hidden, pool1):
    super().__init__()
    self.pool1 = pool1
    self.conv1 = nn.Conv2d(1, c1, k1)
    self.conv2 = nn.Conv2d(c1, c2, k2)
    side = 28 - k1 + 1
    if pool1:
      side //= 2
    self.side = (side - k2 + 1) // 2
    self.fc1 = nn.Linear(c2 * self.side * self.side, hidden)
    self.fc2 = nn.Linear(hidden, 10)

  def forward(self, x):
    x = F.relu(self.conv1(x))
    self.first_activation = x
    if self.pool1:
      x = F.max_pool2d(x, 2)
    x = F.relu(self.conv2(x))
    x = F.max_pool2d(x, 2)
    x = torch.flatten(x, 1)
    x = F.relu(self.fc1(x))
    return self.fc2(x)


def load_csv(path):
  with gzip.open(path, "rt") as f:
    data = np.loadtxt(f, delimiter=",", dtype=np.int64)
  return data[:, :-1].astype(np.uint8), data[:, -1].astype(np.uint8)


def write_idx(images, labels, image_path, label_path):
  with open(image_path, "wb") as f:
    f.write(struct.pack(">IIII", 0x803, len(images), 28, 28))
    f.write(images.astype(np.uint8).tobytes())
  with open(label_path, "wb") as f:
    f.write(struct.pack(">II", 0x801, len(labels)))
    f.write(labels.astype(np.uint8).tobytes())


def export(model, manifest_path, blob_path):
  # Runtime tensors are HWC; conv weights are [out][ky][kx][in] and dense
  # layers read the HWC-flattened tensor.
  sd = {k: v.detach().numpy().astype(np.float32) for k, v in model.state_dict().items()}
  conv1 = sd["conv1.weight"].transpose(0, 2, 3, 1)
  conv2 = sd["conv2.weight"].transpose(0, 2, 3, 1)
  hidden = sd["fc1.weight"].shape[0]
  c2, side = conv2.shape[0], model.side
  fc1 = sd["fc1.weight"].reshape(hidden, c2, side, side).transpose(0, 2, 3, 1).reshape(hidden, -1)
  blob = np.concatenate([
      conv1.ravel(), sd["conv1.bias"], conv2.ravel(), sd["conv2.bias"],
      fc1.ravel(), sd["fc1.bias"], sd["fc2.weight"].ravel(), sd["fc2.bias"]
  ]).astype("<f4")
  manifest = {
      "format": "swarmtest-model-v1",
      "input": {"height": 28, "width": 28, "channels": 1},
      "num_classes": 10,
      "precision": "single",
      "layers": [
          {"kind": "conv2d", "in_channels": 1, "out_channels": conv1.shape[0],
           "kernel": conv1.shape[1], "activation": "relu"},
      ] + ([{"kind": "maxpool2"}] if model.pool1 else []) + [
          {"kind": "conv2d", "in_channels": conv1.shape[0], "out_channels": c2,
           "kernel": conv2.shape[1], "activation": "relu"},
          {"kind": "maxpool2"},
          {"kind": "dense", "inputs": fc1.shape[1], "outputs": hidden, "activation": "relu"},
          {"kind": "dense", "inputs": hidden, "outputs": 10, "activation": "none"},
          {"kind": "softmax"},
      ],
  }
  with open(manifest_path, "w") as f:
    json.dump(manifest, f, indent=2)
    f.write("\n")
  blob.tofile(blob_path)


def main():
  parser = argparse.ArgumentParser()
  parser.add_argument("--csv", required=True)
  parser.add_argument("--out", required=True)
  parser.add_argument("--epochs", type=int, default=12)
  parser.add_argument("--c1", type=int, default=16)
  parser.add_argument("--c2", type=int, default=8)
  parser.add_argument("--k1", type=int, default=3)
  parser.add_argument("--k2", type=int, default=3)
  # L1 penalty on first-layer activations. Sparse feature maps keep the
  # per-seed coverage of the bundled model well below saturation.
  parser.add_argument("--act_l1", type=float, default=10.0)
  parser.add_argument("--pool1", action=argparse.BooleanOptionalAction,
                      default=True)
  parser.add_argument("--hidden", type=int, default=32)
  parser.add_argument("--seed", type=int, default=2)
  args = parser.parse_args()

  torch.manual_seed(args.seed)
  np.random.seed(args.seed)
  x, y = load_csv(args.csv)
  rng = np.random.default_rng(args.seed)
  train_idx, test_idx = [], []
  for c in range(10):
    rows = rng.permutation(np.flatnonzero(y == c))
    train_idx.extend(rows[:400])
    test_idx.extend(rows[400:])
  train_idx = rng.permutation(train_idx)
  test_idx = rng.permutation(test_idx)
  x_train, y_train = x[train_idx], y[train_idx]
  x_test, y_test = x[test_idx], y[test_idx]

  def tensor(a):
    return torch.tensor(a.reshape(-1, 1, 28, 28) / 255.0, dtype=torch.float32)

  xt, yt = tensor(x_train), torch.tensor(y_train, dtype=torch.long)
  xv, yv = tensor(x_test), torch.tensor(y_test, dtype=torch.long)

  model = SmallNet(args.c1, args.c2, args.k1, args.k2, args.hidden,
                   args.pool1)
  opt = torch.optim.Adam(model.parameters(), lr=2e-3)
  for epoch in range(args.epochs):
    model.train()
    perm = torch.randperm(len(xt))
    for i in range(0, len(xt), 64):
      idx = perm[i:i + 64]
      opt.zero_grad()
      loss = F.cross_entropy(model(xt[idx]), yt[idx])
      if args.act_l1 > 0:
        loss = loss + args.act_l1 * model.first_activation.abs().mean()
      loss.backward()
      opt.step()
    model.eval()
    with torch.no_grad():
      acc = (model(xv).argmax(1) == yv).float().mean().item()
    print(f"epoch {epoch + 1}: loss {loss.item():.4f} held-out acc {acc:.4f}")

  os.makedirs(os.path.join(args.out, "models"), exist_ok=True)
  os.makedirs(os.path.join(args.out, "mnist"), exist_ok=True)
  export(model, os.path.join(args.out, "models", "mnist_small.json"),
         os.path.join(args.out, "models", "mnist_small.bin"))
  write_idx(x_test, y_test, os.path.join(args.out, "mnist", "subset-images-idx3-ubyte"),
            os.path.join(args.out, "mnist", "subset-labels-idx1-ubyte"))


if __name__ == "__main__":
  main()
