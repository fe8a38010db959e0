"""Command-line interface: encrypt, decrypt, analyze, keystream."""

import argparse
import json
import sys

from .chaotic import ChaoticParams, DegenerateStreamError, orbit
from .cipher import MODE_LOSSLESS16, MODE_PAPER8, decrypt, encrypt
from .container import read_envelope, read_key_file, write_envelope, write_key_file
from .keyschedule import PERMUTATION_DATA_SORT, PERMUTATION_KEYED, derive_all
from .metrics import DEFAULT_SEED, analyze
from .pgm import FormatError, _atomic_write, read_pgm, write_pgm

EXIT_IO = 1
EXIT_FORMAT = 2
EXIT_VALIDATION = 3
EXIT_DEGENERATE = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cghw",
        description="Chaotic gradient Haar wavelet image cipher",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="encrypt a PGM image")
    enc.add_argument("--in", dest="inp", required=True, help="plain image (binary PGM)")
    enc.add_argument("--out", required=True, help="output ciphertext (.cghw)")
    enc.add_argument("--keyout", required=True, help="output key file")
    enc.add_argument(
        "--mode", choices=[MODE_LOSSLESS16, MODE_PAPER8], default=MODE_LOSSLESS16
    )
    enc.add_argument(
        "--strict-eq14",
        action="store_true",
        help="use the strict printed key-schedule formulas",
    )
    enc.add_argument(
        "--data-sort",
        action="store_true",
        help="sort sub-bands by their data-derived means (encryption-only)",
    )

    dec = sub.add_parser("decrypt", help="decrypt a ciphertext")
    dec.add_argument("--in", dest="inp", required=True, help="ciphertext (.cghw)")
    dec.add_argument("--key", required=True, help="key file from encryption")
    dec.add_argument("--out", required=True, help="output image (binary PGM)")

    ana = sub.add_parser("analyze", help="security metrics of an image")
    ana.add_argument("--in", dest="inp", required=True, help="image (binary PGM)")
    ana.add_argument("--ref", help="second image for NPCR/UACI")
    ana.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ana.add_argument("--out", required=True, help="output report (text)")
    ana.add_argument("--json", dest="json_out", help="optional JSON report path")

    ks = sub.add_parser("keystream", help="print a chaotic orbit")
    ks.add_argument("--x0", type=float, required=True)
    ks.add_argument("--a", type=float, required=True)
    ks.add_argument("--n", type=int, required=True, help="number of values")
    ks.add_argument("--burn-in", type=int, default=0)
    return parser


def _run_encrypt(args):
    image = read_pgm(args.inp)
    variant = PERMUTATION_DATA_SORT if args.data_sort else PERMUTATION_KEYED
    keys = derive_all(image, strict=args.strict_eq14, permutation_variant=variant)
    envelope = encrypt(image, keys, mode=args.mode)
    write_envelope(envelope, args.out)
    write_key_file(keys, args.keyout)
    return 0


def _run_decrypt(args):
    envelope = read_envelope(args.inp)
    keys = read_key_file(args.key)
    write_pgm(decrypt(envelope, keys), args.out)
    return 0


def _run_analyze(args):
    image = read_pgm(args.inp)
    ref = read_pgm(args.ref) if args.ref else None
    report = analyze(image, ref=ref, rng_seed=args.seed)
    _atomic_write(args.out, report.as_text().encode("ascii"))
    if args.json_out:
        _atomic_write(
            args.json_out, (json.dumps(report.as_dict(), indent=2) + "\n").encode()
        )
    return 0


def _run_keystream(args):
    params = ChaoticParams(x0=args.x0, a=args.a, n=2)
    stream = orbit(params, args.n, burn_in=args.burn_in)
    for value in stream.values:
        print(f"{value:.6f}")
    return 0


_RUNNERS = {
    "encrypt": _run_encrypt,
    "decrypt": _run_decrypt,
    "analyze": _run_analyze,
    "keystream": _run_keystream,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except FormatError as exc:
        print(f"cghw: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except DegenerateStreamError as exc:
        print(f"cghw: degenerate stream: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"cghw: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"cghw: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
