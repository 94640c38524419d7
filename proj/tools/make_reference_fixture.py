"""Writes a small LSWF reference pack with PyTorch as the forward-pass oracle.

Usage: python3 tools/make_reference_fixture.py tests/fixtures/reference_pack
"""

import json
import struct
import sys
from pathlib import Path

import torch
from torch import nn

KIND = {"dense": 0, "conv": 1, "conv_transpose": 2, "relu": 3, "sigmoid": 4,
        "tanh": 5, "softmax": 6, "flatten": 7, "maxpool2x2": 8}


def layer_records(model):
    for m in model:
        if isinstance(m, nn.Linear):
            yield "dense", struct.pack("<II", m.in_features, m.out_features), m.weight, m.bias
        elif isinstance(m, nn.Conv2d):
            hdr = struct.pack("<5I", m.in_channels, m.out_channels, m.kernel_size[0], m.stride[0], m.padding[0])
            yield "conv", hdr, m.weight, m.bias
        elif isinstance(m, nn.ConvTranspose2d):
            hdr = struct.pack("<5I", m.in_channels, m.out_channels, m.kernel_size[0], m.stride[0], m.padding[0])
            yield "conv_transpose", hdr, m.weight, m.bias
        elif isinstance(m, nn.ReLU):
            yield "relu", b"", None, None
        elif isinstance(m, nn.Sigmoid):
            yield "sigmoid", b"", None, None
        elif isinstance(m, nn.Softmax):
            yield "softmax", b"", None, None
        elif isinstance(m, nn.Flatten):
            yield "flatten", b"", None, None
        elif isinstance(m, nn.MaxPool2d):
            yield "maxpool2x2", b"", None, None
        elif isinstance(m, nn.Unflatten):
            continue  # implicit in LSWF: a flat vector entering a conv is reshaped
        else:
            raise ValueError(f"unsupported layer {m}")


def write_lswf(path, model, kind, input_dim):
    records = list(layer_records(model))
    out = bytearray(b"LSWF")
    out += struct.pack("<IBII", 1, kind, input_dim, len(records))
    for name, hdr, w, b in records:
        out += struct.pack("<B", KIND[name]) + hdr
        for p in (w, b):
            if p is not None:
                out += p.detach().to(torch.float32).contiguous().numpy().astype("<f4").tobytes()
    Path(path).write_bytes(bytes(out))


def blob(path, t):
    Path(path).write_bytes(t.detach().to(torch.float32).contiguous().numpy().astype("<f4").tobytes())


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    torch.manual_seed(7)

    decoder = nn.Sequential(nn.Linear(5, 32), nn.ReLU(), nn.Unflatten(1, (2, 4, 4)),
                            nn.ConvTranspose2d(2, 1, 4, stride=2, padding=1), nn.Sigmoid())
    classifier = nn.Sequential(nn.Conv2d(1, 2, 3, padding=1), nn.ReLU(), nn.MaxPool2d(2), nn.Flatten(),
                               nn.Linear(32, 3), nn.Softmax(dim=1))

    z = torch.randn(10, 5)
    with torch.no_grad():
        images = decoder(z).reshape(10, 64)
        x = torch.rand(10, 1, 8, 8)
        logits = classifier[:-1](x)

    write_lswf(out / "decoder.lswf", decoder, 0, 5)
    write_lswf(out / "classifier.lswf", classifier, 1, 64)
    blob(out / "decoder_inputs.f32", z)
    blob(out / "decoder_outputs.f32", images)
    blob(out / "classifier_inputs.f32", x.reshape(10, 64))
    blob(out / "classifier_logits.f32", logits)
    manifest = {
        "version": 1,
        "entries": [
            {"name": "decoder", "model": "decoder.lswf", "inputs": "decoder_inputs.f32",
             "outputs": "decoder_outputs.f32", "count": 10, "input_dim": 5, "output_dim": 64, "output": "final"},
            {"name": "classifier", "model": "classifier.lswf", "inputs": "classifier_inputs.f32",
             "outputs": "classifier_logits.f32", "count": 10, "input_dim": 64, "output_dim": 3, "output": "logits"},
        ],
    }
    (out / "reference.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
