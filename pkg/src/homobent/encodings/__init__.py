"""Genotype encodings: ``ga`` (truth-table bitstring), ``gar`` (restricted
degree-d monomial selection) and ``gp`` (expression tree)."""

from __future__ import annotations

import random
from math import comb

from ..boolfun import TruthTable
from .bits import (
    BitstringGenotype,
    MonomialBasis,
    RestrictedGenotype,
    crossover_bits,
    decode_bitstring,
    decode_restricted,
    monomial_basis,
    mutate_bits,
    random_bits,
)
from .tree import MAX_DEPTH, TreeGenotype, crossover_tree, eval_tree, mutate_tree, random_tree

ENCODINGS = ("ga", "gar", "gp")


class Encoding:
    """Bundles initialization, variation and decoding for one genotype kind."""

    kind: str

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d

    def random(self, rng: random.Random):
        raise NotImplementedError

    def mutate(self, g, rng: random.Random):
        raise NotImplementedError

    def crossover(self, g1, g2, rng: random.Random):
        raise NotImplementedError

    def decode(self, g) -> TruthTable:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, d={self.d})"


class BitstringEncoding(Encoding):
    kind = "ga"

    def random(self, rng):
        return BitstringGenotype(self.n, random_bits(1 << self.n, rng))

    def mutate(self, g, rng):
        return mutate_bits(g, rng)

    def crossover(self, g1, g2, rng):
        return crossover_bits(g1, g2, rng)

    def decode(self, g):
        return decode_bitstring(g)


class RestrictedEncoding(BitstringEncoding):
    kind = "gar"

    def __init__(self, n: int, d: int):
        super().__init__(n, d)
        self.basis = monomial_basis(n, d)

    def random(self, rng):
        return RestrictedGenotype(self.n, self.d, random_bits(comb(self.n, self.d), rng))

    def decode(self, g):
        return decode_restricted(g)


class TreeEncoding(Encoding):
    kind = "gp"

    def __init__(self, n: int, d: int, max_depth: int = MAX_DEPTH):
        super().__init__(n, d)
        self.max_depth = max_depth

    def random(self, rng):
        return random_tree(self.n, rng, self.max_depth)

    def mutate(self, g, rng):
        return mutate_tree(g, self.n, rng, self.max_depth)

    def crossover(self, g1, g2, rng):
        return crossover_tree(g1, g2, rng, self.max_depth)

    def decode(self, g):
        return eval_tree(g, self.n)


def make_encoding(kind: str, n: int, d: int, max_depth: int = MAX_DEPTH) -> Encoding:
    if kind == "ga":
        return BitstringEncoding(n, d)
    if kind == "gar":
        return RestrictedEncoding(n, d)
    if kind == "gp":
        return TreeEncoding(n, d, max_depth)
    raise ValueError(f"unknown encoding {kind!r}; expected one of {ENCODINGS}")


def random_genotype(kind: str, n: int, d: int, rng: random.Random, max_depth: int = MAX_DEPTH):
    return make_encoding(kind, n, d, max_depth).random(rng)


__all__ = [
    "ENCODINGS",
    "BitstringEncoding",
    "BitstringGenotype",
    "Encoding",
    "MonomialBasis",
    "RestrictedEncoding",
    "RestrictedGenotype",
    "TreeEncoding",
    "TreeGenotype",
    "crossover_bits",
    "crossover_tree",
    "decode_bitstring",
    "decode_restricted",
    "eval_tree",
    "make_encoding",
    "monomial_basis",
    "mutate_bits",
    "mutate_tree",
    "random_genotype",
]
