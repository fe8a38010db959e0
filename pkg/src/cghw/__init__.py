"""Chaotic gradient Haar wavelet image cipher and analysis suite."""

from .chaotic import ChaoticParams, DegenerateStreamError, KeyStream, orbit, phi2, phiN
from .cipher import (
    CipherEnvelope,
    MODE_LOSSLESS16,
    MODE_PAPER8,
    PermutationPair,
    decrypt,
    encrypt,
    keyed_permutations,
    xor_mask,
)
from .container import read_envelope, read_key_file, write_envelope, write_key_file
from .keyschedule import KeyMaterial, derive_all, derive_seed_pair, derive_stream_params
from .metrics import analyze, correlation, entropy, histogram, mean_intensity, npcr, uaci
from .pgm import FormatError, read_pgm, write_pgm
from .wavelet import (
    AnalysisMatrix,
    CoeffPair,
    SubBands,
    build_analysis_matrix,
    coeffs,
    forward1,
    inverse1,
    lambda_from_s,
    scaling_value,
    wavelet_value,
)

__all__ = [
    "AnalysisMatrix",
    "ChaoticParams",
    "CipherEnvelope",
    "CoeffPair",
    "DegenerateStreamError",
    "FormatError",
    "KeyMaterial",
    "KeyStream",
    "MODE_LOSSLESS16",
    "MODE_PAPER8",
    "PermutationPair",
    "SubBands",
    "analyze",
    "build_analysis_matrix",
    "coeffs",
    "correlation",
    "decrypt",
    "derive_all",
    "derive_seed_pair",
    "derive_stream_params",
    "encrypt",
    "entropy",
    "forward1",
    "histogram",
    "inverse1",
    "keyed_permutations",
    "lambda_from_s",
    "mean_intensity",
    "npcr",
    "orbit",
    "phi2",
    "phiN",
    "read_envelope",
    "read_key_file",
    "read_pgm",
    "scaling_value",
    "uaci",
    "wavelet_value",
    "write_envelope",
    "write_key_file",
    "write_pgm",
    "xor_mask",
]

__version__ = "0.1.0"
