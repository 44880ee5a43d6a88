#!/usr/bin/env python3
"""Build a 512x512 8-bit grayscale PGM corpus from the images bundled with scikit-image.

Usage: make_corpus.py OUT_DIR
"""
import os
import sys

import numpy as np
from PIL import Image
import skimage.data

SIZE = 512
DATA = os.path.dirname(skimage.data.__file__)


def gray(im):
    if im.mode in ("RGBA", "LA", "P"):
        bg = Image.new("RGB", im.size, (255, 255, 255))
        bg.paste(im.convert("RGBA"), mask=im.convert("RGBA").split()[-1])
        im = bg
    if im.mode == "L":
        return np.asarray(im, dtype=np.float64)
    rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
    return 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]


def to_image(a):
    return Image.fromarray(np.clip(np.round(a), 0, 255).astype(np.uint8), "L")


def crop(a, x, y):
    return a[y:y + SIZE, x:x + SIZE]


def fit(a):
    """Scale so the short side is SIZE, then center crop."""
    h, w = a.shape
    s = SIZE / min(h, w)
    im = to_image(a).resize((max(SIZE, round(w * s)), max(SIZE, round(h * s))), Image.LANCZOS)
    b = np.asarray(im, dtype=np.float64)
    h, w = b.shape
    return crop(b, (w - SIZE) // 2, (h - SIZE) // 2)


def load(name):
    return gray(Image.open(os.path.join(DATA, name)))


def main():
    out = sys.argv[1]
    os.makedirs(out, exist_ok=True)
    images = {}
    for name in ["astronaut", "brick", "camera", "grass", "gravel", "ihc"]:
        images[name] = load(name + ".png")
    cell = load("cell.png")
    images["cell"] = crop(cell, 19, 74)
    hubble = load("hubble_deep_field.jpg")
    images["hubble_tl"] = crop(hubble, 0, 0)
    images["hubble_br"] = crop(hubble, hubble.shape[1] - SIZE, hubble.shape[0] - SIZE)
    images["hubble_mid"] = crop(hubble, (hubble.shape[1] - SIZE) // 2, (hubble.shape[0] - SIZE) // 2)
    images["hubble_full"] = fit(hubble)
    retina = load("retina.jpg")
    images["retina_full"] = fit(retina)
    images["retina_center"] = crop(retina, (retina.shape[1] - SIZE) // 2, (retina.shape[0] - SIZE) // 2)
    for name in ["motorcycle_left", "motorcycle_right", "coffee", "chelsea", "color",
                 "phantom", "logo", "clock_motion", "coins", "horse"]:
        images[name] = fit(load(name + ".png"))
    images["rocket"] = fit(load("rocket.jpg"))
    for name, a in sorted(images.items()):
        assert a.shape == (SIZE, SIZE), (name, a.shape)
        to_image(a).save(os.path.join(out, name + ".pgm"))
    print(f"wrote {len(images)} images to {out}")


if __name__ == "__main__":
    main()
