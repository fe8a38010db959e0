"""Ciphertext container and key file serialization.

Envelope layout (little-endian):

    magic "CGHW" | version u8 = 1 | mode u8 (0 paper8, 1 lossless16)
    | width u32 | height u32 | qmin f64 | qmax f64
    | payload row-major (1 byte per sample in paper8, 2 in lossless16)

Key files are line-oriented text; chaotic parameters are stored as decimal
text with 17 significant digits so they round-trip doubles exactly.
"""

import struct

import numpy as np

from .chaotic import ChaoticParams
from .cipher import FORMAT_VERSION, CipherEnvelope, MODE_LOSSLESS16, MODE_PAPER8
from .keyschedule import KeyMaterial
from .pgm import FormatError, _atomic_write

ENVELOPE_MAGIC = b"CGHW"
_HEADER = struct.Struct("<4sBBIIdd")
_MODE_BYTE = {MODE_PAPER8: 0, MODE_LOSSLESS16: 1}
_BYTE_MODE = {v: k for k, v in _MODE_BYTE.items()}

KEY_MAGIC = "CGHWKEY"
KEY_VERSION = 1


def write_envelope(env, path):
    dtype = np.dtype("<u1") if env.mode == MODE_PAPER8 else np.dtype("<u2")
    header = _HEADER.pack(
        ENVELOPE_MAGIC,
        env.format_version,
        _MODE_BYTE[env.mode],
        env.width,
        env.height,
        env.qmin,
        env.qmax,
    )
    _atomic_write(path, header + env.payload.astype(dtype).tobytes())


def read_envelope(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise FormatError("truncated envelope header")
    magic, version, mode_byte, width, height, qmin, qmax = _HEADER.unpack_from(data)
    if magic != ENVELOPE_MAGIC:
        raise FormatError(f"bad envelope magic {magic!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported envelope version {version}")
    if mode_byte not in _BYTE_MODE:
        raise FormatError(f"unknown mode byte {mode_byte}")
    mode = _BYTE_MODE[mode_byte]
    dtype = np.dtype("<u1") if mode == MODE_PAPER8 else np.dtype("<u2")
    expected = width * height * dtype.itemsize
    body = data[_HEADER.size :]
    if len(body) != expected:
        raise FormatError(
            f"payload size mismatch ({len(body)} bytes, header implies {expected})"
        )
    payload = np.frombuffer(body, dtype=dtype).reshape(height, width).copy()
    return CipherEnvelope(
        width=width,
        height=height,
        mode=mode,
        qmin=qmin,
        qmax=qmax,
        payload=payload,
        format_version=version,
    )


def _fmt(value):
    return format(value, ".17g")


def write_key_file(keys, path):
    lines = [
        f"{KEY_MAGIC} {KEY_VERSION}",
        f"provenance {keys.provenance}",
        f"strict_eq14 {int(keys.strict_eq14)}",
        f"permutation {keys.permutation_variant}",
    ]
    for k, (params, burn_in) in enumerate(zip(keys.streams, keys.burn_ins), start=1):
        lines.append(
            f"stream {k} x0={_fmt(params.x0)} a={_fmt(params.a)} "
            f"n={params.n} burn_in={burn_in}"
        )
    _atomic_write(path, ("\n".join(lines) + "\n").encode("ascii"))


def read_key_file(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0].split() != [KEY_MAGIC, str(KEY_VERSION)]:
        raise FormatError("not a CGHW key file (bad magic/version line)")
    provenance = None
    strict = False
    variant = None
    streams = {}
    burn_ins = {}
    for line in lines[1:]:
        fields = line.split()
        try:
            if fields[0] == "provenance":
                provenance = fields[1]
            elif fields[0] == "strict_eq14":
                strict = bool(int(fields[1]))
            elif fields[0] == "permutation":
                variant = fields[1]
            elif fields[0] == "stream":
                k = int(fields[1])
                kv = dict(f.split("=", 1) for f in fields[2:])
                streams[k] = ChaoticParams(
                    x0=float(kv["x0"]), a=float(kv["a"]), n=int(kv["n"])
                )
                burn_ins[k] = int(kv["burn_in"])
            else:
                raise FormatError(f"unknown key file record {fields[0]!r}")
        except (IndexError, KeyError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed key file line {line!r}") from exc
    if sorted(streams) != [1, 2, 3] or provenance is None or variant is None:
        raise FormatError("incomplete key file")
    return KeyMaterial(
        streams=tuple(streams[k] for k in (1, 2, 3)),
        burn_ins=tuple(burn_ins[k] for k in (1, 2, 3)),
        provenance=provenance,
        lambda_mu=None,
        strict_eq14=strict,
        permutation_variant=variant,
    )
