#!/usr/bin/env python3
"""Writes the bundled network descriptions into data/networks/.

HW is the input spatial size of each kernel. Convolutions pad to keep
HW/S outputs. 1x1 stride-2 shortcut convs are written at their output size
with stride 1 (same MACs) since s <= ks is required.
"""
import json
import pathlib
import sys

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "networks"


def conv(hw, ci, co, ks, s):
    return {"type": "conv+bn+relu", "hw": hw, "c_i": ci, "c_o": co, "ks": ks, "s": s}


def dw(hw, c, ks, s):
    return {"type": "dwconv+bn+relu", "hw": hw, "c_i": c, "ks": ks, "s": s}


def pool(hw, c, ks, s):
    return {"type": "avg/max pool", "hw": hw, "c_i": c, "ks": ks, "s": s}


def other(hw, c):
    return {"type": "others", "hw": hw, "c_i": c}


def concat(hw, a, b):
    return {"type": "concat", "hw": hw, "c_i1": a, "c_i2": b, "c_i3": 0, "c_i4": 0}


def fc(ci, co):
    return {"type": "fc", "c_i": ci, "c_o": co}


def resnet18():
    k = [conv(224, 3, 64, 7, 2), pool(112, 64, 3, 2)]
    hw, c = 56, 64
    for out, stride in [(64, 1), (128, 2), (256, 2), (512, 2)]:
        for block in range(2):
            s = stride if block == 0 else 1
            k.append(conv(hw, c, out, 3, s))
            hw_out = hw // s
            k.append(conv(hw_out, out, out, 3, 1))
            if s != 1 or c != out:
                k.append(conv(hw_out, c, out, 1, 1))
            k.append(other(hw_out, out))
            hw, c = hw_out, out
    k += [pool(7, 512, 7, 7), fc(512, 1000)]
    return k


def mobilenetv2():
    k = [conv(224, 3, 32, 3, 2), dw(112, 32, 3, 1), conv(112, 32, 16, 1, 1)]
    hw, c = 112, 16
    for t, out, n, stride in [(6, 24, 2, 2), (6, 32, 3, 2), (6, 64, 4, 2),
                              (6, 96, 3, 1), (6, 160, 3, 2), (6, 320, 1, 1)]:
        for i in range(n):
            s = stride if i == 0 else 1
            e = c * t
            k.append(conv(hw, c, e, 1, 1))
            k.append(dw(hw, e, 3, s))
            hw_out = hw // s
            k.append(conv(hw_out, e, out, 1, 1))
            if s == 1 and c == out:
                k.append(other(hw_out, out))
            hw, c = hw_out, out
    k += [conv(7, 320, 1280, 1, 1), pool(7, 1280, 7, 7), fc(1280, 1000)]
    return k


def shufflenetv2():
    k = [conv(224, 3, 24, 3, 2), pool(112, 24, 3, 2)]
    hw, c = 56, 24
    for out, n in [(116, 4), (232, 8), (464, 4)]:
        half = out // 2
        hw_out = hw // 2
        k += [dw(hw, c, 3, 2), conv(hw_out, c, half, 1, 1),
              conv(hw, c, half, 1, 1), dw(hw, half, 3, 2),
              conv(hw_out, half, half, 1, 1), concat(hw_out, half, half),
              other(hw_out, out)]
        hw, c = hw_out, out
        for _ in range(n - 1):
            k += [conv(hw, half, half, 1, 1), dw(hw, half, 3, 1),
                  conv(hw, half, half, 1, 1), concat(hw, half, half),
                  other(hw, out)]
    k += [conv(7, 464, 1024, 1, 1), pool(7, 1024, 7, 7), fc(1024, 1000)]
    return k


def squeezenet11():
    def fire(hw, ci, sq, ex):
        return [conv(hw, ci, sq, 1, 1), conv(hw, sq, ex, 1, 1),
                conv(hw, sq, ex, 3, 1), concat(hw, ex, ex)]

    k = [conv(224, 3, 64, 3, 2), pool(112, 64, 3, 2)]
    k += fire(55, 64, 16, 64) + fire(55, 128, 16, 64)
    k += [pool(55, 128, 3, 2)]
    k += fire(27, 128, 32, 128) + fire(27, 256, 32, 128)
    k += [pool(27, 256, 3, 2)]
    k += fire(13, 256, 48, 192) + fire(13, 384, 48, 192)
    k += fire(13, 384, 64, 256) + fire(13, 512, 64, 256)
    k += [conv(13, 512, 1000, 1, 1), pool(13, 1000, 13, 13)]
    return k


NETWORKS = {
    "resnet18": ("ResNet18", resnet18, 1.8e9,
                 {"FP32": 71.5, "INT16": 70.2, "INT8": 69.5, "INT4": 68.8},
                 "1x1 stride-2 shortcuts encoded at output size with s=1; "
                 "residual adds as others"),
    "mobilenetv2": ("MobileNetv2", mobilenetv2, 585e6,
                    {"FP32": 71.7, "INT16": 71.2, "INT8": 70.8, "INT4": 68.2},
                    "width 1.0; residual adds as others"),
    "shufflenetv2": ("ShuffleNetv2", shufflenetv2, 149.7e6,
                     {"FP32": 68.6, "INT16": 67.9, "INT8": 67.5, "INT4": 66.8},
                     "1.0x; channel shuffle as others"),
    "squeezenet1.1": ("SqueezeNet", squeezenet11, 352e6,
                      {"FP32": 59.9, "INT16": 59.6, "INT8": 59.1, "INT4": 57.5},
                      "v1.1; unpadded 111/55/27/13 maps rounded to the nearest "
                      "benchmarked sizes 112/55/27/13"),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for stem, (name, build, flops, acc, notes) in NETWORKS.items():
        kernels = build()
        for kern in kernels:
            kern["bw"] = 32
        doc = {"schema_version": 1, "kind": "network", "name": name,
               "metadata": {"declared_flops": flops, "top1_accuracy": acc,
                            "notes": notes},
               "kernels": kernels}
        (OUT / f"{stem}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{stem}: {len(kernels)} kernels", file=sys.stderr)


if __name__ == "__main__":
    main()
