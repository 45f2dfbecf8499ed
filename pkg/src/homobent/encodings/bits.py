"""Bitstring genotypes: the full truth table (GA) and the restricted
monomial-selection string (GAr), plus their shared variation operators."""

from __future__ import annotations

import dataclasses
import random
from functools import lru_cache
from math import comb

import numpy as np

from ..boolfun import TruthTable, mobius


def _frozen(bits) -> np.ndarray:
    arr = np.array(bits, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True, eq=False)
class BitstringGenotype:
    n: int
    bits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bits", _frozen(self.bits))
        if self.bits.shape != (1 << self.n,):
            raise ValueError(f"bitstring genotype needs {1 << self.n} bits")

    def __eq__(self, other):
        if not isinstance(other, BitstringGenotype):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    __hash__ = None


@dataclasses.dataclass(frozen=True, eq=False)
class RestrictedGenotype:
    n: int
    d: int
    bits: np.ndarray

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise ValueError(f"degree {self.d} out of range for n={self.n}")
        object.__setattr__(self, "bits", _frozen(self.bits))
        if self.bits.shape != (comb(self.n, self.d),):
            raise ValueError(f"restricted genotype needs C({self.n},{self.d}) bits")

    def __eq__(self, other):
        if not isinstance(other, RestrictedGenotype):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and np.array_equal(self.bits, other.bits)

    __hash__ = None


@dataclasses.dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int
    masks: tuple[int, ...]

    def __len__(self):
        return len(self.masks)


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> MonomialBasis:
    """All degree-d monomial masks of n variables in ascending integer order."""
    if not 1 <= d <= n:
        raise ValueError(f"degree {d} out of range for n={n}")
    masks = tuple(m for m in range(1 << n) if m.bit_count() == d)
    return MonomialBasis(n, d, masks)


def decode_bitstring(g: BitstringGenotype) -> TruthTable:
    return TruthTable(g.n, g.bits)


def restricted_anf(g: RestrictedGenotype) -> np.ndarray:
    coeffs = np.zeros(1 << g.n, dtype=np.uint8)
    coeffs[list(monomial_basis(g.n, g.d).masks)] = g.bits
    return coeffs


def decode_restricted(g: RestrictedGenotype) -> TruthTable:
    return TruthTable(g.n, mobius(restricted_anf(g)))


def random_bits(length: int, rng: random.Random) -> np.ndarray:
    raw = rng.getrandbits(length).to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]


# ---------------------------------------------------------------------------
# operators on raw bit arrays

def flip_one(bits: np.ndarray, rng: random.Random) -> np.ndarray:
    out = bits.copy()
    out[rng.randrange(out.size)] ^= 1
    return out


def shuffle_segment(bits: np.ndarray, rng: random.Random) -> np.ndarray:
    """Permute the bits of a contiguous segment with uniform random endpoints."""
    out = bits.copy()
    i, j = sorted((rng.randrange(out.size), rng.randrange(out.size)))
    seg = list(out[i:j + 1])
    rng.shuffle(seg)
    out[i:j + 1] = seg
    return out


def one_point(a: np.ndarray, b: np.ndarray, rng: random.Random) -> np.ndarray:
    if a.size < 2:
        return a.copy()
    cut = rng.randrange(1, a.size)
    return np.concatenate((a[:cut], b[cut:]))


def uniform(a: np.ndarray, b: np.ndarray, rng: random.Random) -> np.ndarray:
    take_b = random_bits(a.size, rng).astype(bool)
    return np.where(take_b, b, a)


MUTATIONS = (flip_one, shuffle_segment)
CROSSOVERS = (one_point, uniform)


def mutate_bits(g, rng: random.Random):
    """Simple bit flip or segment shuffle, chosen with equal probability."""
    op = MUTATIONS[rng.randrange(len(MUTATIONS))]
    return dataclasses.replace(g, bits=op(g.bits, rng))


def crossover_bits(g1, g2, rng: random.Random):
    """One-point or uniform crossover, chosen with equal probability."""
    if g1.bits.shape != g2.bits.shape:
        raise ValueError("parents differ in length")
    op = CROSSOVERS[rng.randrange(len(CROSSOVERS))]
    return dataclasses.replace(g1, bits=op(g1.bits, g2.bits, rng))
