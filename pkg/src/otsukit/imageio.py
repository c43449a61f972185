"""Grayscale image loading and saving.

Supports netpbm graymaps in both plain (P2) and raw (P5) encodings with
maxval 255, plus optional 8-bit PNG decoding when Pillow is installed.
Comment lines starting with ``#`` are accepted anywhere in a PGM header.
Color PNG input is converted with Rec.601 luma (0.299R + 0.587G + 0.114B,
rounded half away from zero).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from otsukit import kernels
from otsukit.errors import ImageFormatError

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_INVERT = bytes(255 - i for i in range(256))
_PLAIN_VALUES_PER_LINE = 17  # keeps plain-format lines under 70 characters


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster with row-major pixels."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if not isinstance(self.pixels, bytes):
            object.__setattr__(self, "pixels", bytes(self.pixels))
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"pixel buffer has {len(self.pixels)} bytes, "
                f"expected {self.width * self.height}"
            )


def load_image(source, format_hint: str | None = None) -> GrayImage:
    """Decode a PGM (P2/P5) or, when Pillow is available, an 8-bit PNG.

    `source` is a binary file object or a bytes-like object. `format_hint`
    may be "pgm" or "png" to skip signature sniffing. Malformed streams
    raise ImageFormatError with a message naming the defect.
    """
    data = source.read() if hasattr(source, "read") else bytes(source)
    fmt = format_hint.lower() if format_hint else _sniff(data)
    if fmt == "pgm":
        if data[:2] == b"P2":
            return _load_plain_pgm(data)
        if data[:2] == b"P5":
            return _load_raw_pgm(data)
        raise ImageFormatError("malformed PGM header: expected magic P2 or P5")
    if fmt == "png":
        return _load_png(data)
    raise ImageFormatError(f"unsupported format hint: {format_hint!r}")


def write_image(image: GrayImage, sink, format: str = "P5") -> None:
    """Write a PGM; `format` selects the raw (P5) or plain (P2) encoding."""
    if format.upper() == "P5":
        sink.write(b"P5\n%d %d\n255\n" % (image.width, image.height))
        sink.write(image.pixels)
    elif format.upper() == "P2":
        sink.write(b"P2\n%d %d\n255\n" % (image.width, image.height))
        pixels = image.pixels
        for start in range(0, len(pixels), _PLAIN_VALUES_PER_LINE):
            chunk = pixels[start : start + _PLAIN_VALUES_PER_LINE]
            sink.write(" ".join(str(v) for v in chunk).encode("ascii") + b"\n")
    else:
        raise ValueError(f"unknown PGM encoding: {format!r}")


def binary_mask(image: GrayImage, threshold: int, invert: bool = False) -> GrayImage:
    """Threshold an image into a {0, 255} mask.

    A pixel becomes 255 iff its value is >= threshold (background below,
    foreground at or above); `invert` flips the polarity.
    """
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold {threshold} outside [0, 255]")
    mask = kernels.binarize_u8(image.pixels, threshold)
    if invert:
        mask = mask.translate(_INVERT)
    return GrayImage(image.width, image.height, mask)


def write_binary_mask(
    image: GrayImage,
    threshold: int,
    sink,
    format: str = "P5",
    invert: bool = False,
) -> None:
    """Threshold and write the resulting mask as a PGM."""
    write_image(binary_mask(image, threshold, invert), sink, format)


def _sniff(data: bytes) -> str:
    if data[:2] in (b"P2", b"P5"):
        return "pgm"
    if data[:8] == _PNG_MAGIC:
        return "png"
    raise ImageFormatError("unrecognized image format (not PGM or PNG)")


def _parse_dimensions(tokens) -> tuple[int, int]:
    try:
        width, height = int(tokens[0]), int(tokens[1])
    except (ValueError, IndexError):
        raise ImageFormatError("malformed PGM header: bad dimensions") from None
    if width < 1 or height < 1:
        raise ImageFormatError("malformed PGM header: non-positive dimensions")
    return width, height


def _check_maxval(token) -> None:
    try:
        maxval = int(token)
    except ValueError:
        raise ImageFormatError("malformed PGM header: bad maxval") from None
    if maxval != 255:
        raise ImageFormatError(f"unsupported maxval {maxval} (only 255)")


def _load_plain_pgm(data: bytes) -> GrayImage:
    # plain format is pure text, so comments can be stripped up front
    body = b"\n".join(line.split(b"#", 1)[0] for line in data.splitlines())
    tokens = body.split()
    if len(tokens) < 4:
        raise ImageFormatError("malformed PGM header: truncated")
    width, height = _parse_dimensions(tokens[1:3])
    _check_maxval(tokens[3])
    values = tokens[4:]
    if len(values) < width * height:
        raise ImageFormatError(
            f"truncated pixel data: expected {width * height} values, "
            f"got {len(values)}"
        )
    if len(values) > width * height:
        raise ImageFormatError("trailing data after pixel values")
    pixels = bytearray(width * height)
    for i, token in enumerate(values):
        try:
            v = int(token)
        except ValueError:
            raise ImageFormatError(f"bad pixel value: {token!r}") from None
        if not 0 <= v <= 255:
            raise ImageFormatError(f"pixel value out of range: {v}")
        pixels[i] = v
    return GrayImage(width, height, bytes(pixels))


def _load_raw_pgm(data: bytes) -> GrayImage:
    tokens, offset = _header_tokens(data, 4)
    width, height = _parse_dimensions(tokens[1:3])
    _check_maxval(tokens[3])
    if offset >= len(data) or not data[offset : offset + 1].isspace():
        raise ImageFormatError("malformed PGM header: missing raster delimiter")
    payload = data[offset + 1 :]
    if len(payload) < width * height:
        raise ImageFormatError(
            f"truncated pixel data: expected {width * height} bytes, "
            f"got {len(payload)}"
        )
    return GrayImage(width, height, payload[: width * height])


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read whitespace-delimited header tokens, skipping # comments.

    Returns the tokens and the offset one past the final token.
    """
    tokens: list[bytes] = []
    i, n = 0, len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i >= n:
            raise ImageFormatError("malformed PGM header: truncated")
        if data[i : i + 1] == b"#":
            while i < n and data[i] != 0x0A:
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace() and data[i : i + 1] != b"#":
            i += 1
        tokens.append(data[start:i])
    return tokens, i


def _load_png(data: bytes) -> GrayImage:
    try:
        from PIL import Image
    except ImportError:
        raise ImageFormatError(
            "PNG support requires Pillow (pip install otsukit[png])"
        ) from None
    img = Image.open(io.BytesIO(data))
    if img.mode in ("I", "I;16", "I;16B", "I;16L", "F"):
        raise ImageFormatError(f"unsupported bit depth (PNG mode {img.mode})")
    if img.mode == "1":
        img = img.convert("L")
    if img.mode == "L":
        return GrayImage(img.width, img.height, img.tobytes())
    if img.mode == "LA":
        return GrayImage(img.width, img.height, img.getchannel("L").tobytes())
    if img.mode in ("P", "RGB", "RGBA"):
        rgb = img.convert("RGB")  # drops alpha, expands palettes
        return GrayImage(img.width, img.height, kernels.luma_rec601(rgb.tobytes()))
    raise ImageFormatError(f"unsupported PNG mode {img.mode}")
