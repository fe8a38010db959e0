"""Binary PGM (P5, maxval 255) reading and writing."""

import os
import tempfile

import numpy as np


class FormatError(ValueError):
    """Malformed or unsupported file contents."""


def _atomic_write(path, data):
    """Write to a temp file in the target directory, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cghw-tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _next_token(data, pos):
    """Skip whitespace and '#' comments, return (token, new position)."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise FormatError("truncated PGM header")
    return data[start:pos], pos


def read_pgm(path):
    """Read a binary PGM file into a uint8 array of shape (height, width)."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _next_token(data, 0)
    if magic == b"P2":
        raise FormatError("ASCII PGM (P2) is not supported, need binary P5")
    if magic != b"P5":
        raise FormatError(f"not a binary PGM file (magic {magic!r})")
    fields = []
    for _ in range(3):
        token, pos = _next_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError as exc:
            raise FormatError(f"bad PGM header token {token!r}") from exc
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"unsupported PGM depth (maxval {maxval}, need 255)")
    pos += 1  # single whitespace byte separating header and payload
    expected = width * height
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise FormatError(
            f"truncated PGM payload ({len(payload)} of {expected} bytes)"
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img, path):
    """Write a uint8 image as binary PGM (atomically)."""
    a = np.asarray(img)
    if a.ndim != 2:
        raise ValueError("image must be 2D")
    if a.dtype != np.uint8:
        if a.min() < 0 or a.max() > 255:
            raise ValueError("pixel values outside [0, 255]")
        a = a.astype(np.uint8)
    h, w = a.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    _atomic_write(path, header + a.tobytes())
