import hashlib
from typing import Union

import numpy as np

Salt = Union[str, int]

UNIFORM_BITS = 53


def digest64(*parts: Salt) -> int:
    """
    Keyed 64-bit BLAKE2b digest of a salt path
        :param parts: ints or strings, order matters
        :return: unsigned 64-bit integer
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        h.update(str(part).encode('utf-8'))
        h.update(b'\x1f')
    return int.from_bytes(h.digest(), 'big')


def derive_seed(master_seed: int, *salt: Salt) -> int:
    """
    Derive an isolated but reproducible 64-bit sub-seed
        :param master_seed: master seed of the run
        :param salt: component name, trial index...
    """
    return digest64(master_seed, *salt)


def make_rng(master_seed: int, *salt: Salt) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, *salt))


def uniform53(*parts: Salt) -> float:
    """Uniform value in [0, 1) with 53 bits of resolution, derived from the salt path"""
    return (digest64(*parts) >> (64 - UNIFORM_BITS)) / float(1 << UNIFORM_BITS)
