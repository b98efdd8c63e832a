"""Batch AES-128-CBC built from GF(2^8) field algebra.

All cipher tables (substitution boxes, round constants, mix matrices) are
generated at run time from the field primitives in gaes.gf256 and
verified against known answers; nothing is hard-coded. Batches of many
short messages encrypt as one grid operation, optionally fanned out over
worker threads. Not hardened against side channels; meant for algorithm
work, not production key handling.
"""

from .aes_cbc import (
    IVSet,
    MessageBatch,
    decrypt_batch,
    encrypt_batch,
    pad_zero,
)
from .backend import name as backend_name
from .key_schedule import KeySchedule, gen_keys, round_constants
from .parallel import decrypt_batch_parallel, encrypt_batch_parallel, plan
from .sbox_gen import SBoxPair, build_sbox_pair

__version__ = "0.1.0"

__all__ = [
    "IVSet",
    "KeySchedule",
    "MessageBatch",
    "SBoxPair",
    "backend_name",
    "build_sbox_pair",
    "decrypt_batch",
    "decrypt_batch_parallel",
    "encrypt_batch",
    "encrypt_batch_parallel",
    "gen_keys",
    "pad_zero",
    "plan",
    "round_constants",
    "__version__",
]
