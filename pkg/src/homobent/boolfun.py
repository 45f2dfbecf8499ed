"""Boolean functions of n variables: truth tables, Walsh spectra, ANF.

Indexing convention used throughout the package: the input vector
``(x_1, ..., x_n)`` maps to the integer ``sum(x_i << (n - i))``, so ``x_1`` is
the most significant bit.  Monomial masks in an ANF use the same convention,
e.g. for ``n = 4`` the monomial ``x_1 x_2`` has mask ``0b1100``.

The array-level helpers (:func:`fwht`, :func:`mobius`, :func:`naive_walsh`)
work on the last axis and accept batches of functions.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

MIN_VARS = 2
MAX_VARS = 20
NAIVE_MAX_VARS = 12


class ParseError(ValueError):
    """Malformed function text; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _as_bits(bits) -> np.ndarray:
    arr = np.array(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence of bits")
    if np.any(arr > 1):
        raise ValueError("bits must be 0 or 1")
    arr.setflags(write=False)
    return arr


def _log2_len(size: int) -> int:
    if size < 1 or size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    return size.bit_length() - 1


class _BitVector:
    __slots__ = ("n", "_bits")

    def __init__(self, n: int, bits):
        arr = _as_bits(bits)
        if not MIN_VARS <= n <= MAX_VARS:
            raise ValueError(f"n must lie in [{MIN_VARS}, {MAX_VARS}], got {n}")
        if arr.size != 1 << n:
            raise ValueError(f"expected {1 << n} bits for n={n}, got {arr.size}")
        self.n = n
        self._bits = arr

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self._bits.tobytes()))

    def __len__(self):
        return self._bits.size


class TruthTable(_BitVector):
    """The 2^n output bits of a Boolean function (read-only)."""

    __slots__ = ()

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @classmethod
    def from_bits(cls, bits) -> "TruthTable":
        arr = np.asarray(bits)
        return cls(_log2_len(arr.size), arr)

    def packed(self) -> int:
        """Bits as a Python integer; index i is bit i."""
        return int.from_bytes(np.packbits(self._bits, bitorder="little").tobytes(), "little")

    def __repr__(self):
        return f"TruthTable(n={self.n}, hex={to_hex(self)!r})"


class Anf(_BitVector):
    """Moebius coefficients: ``coeffs[a]`` is the coefficient of monomial ``x^a``."""

    __slots__ = ()

    @property
    def coeffs(self) -> np.ndarray:
        return self._bits

    def monomials(self) -> list[int]:
        return [int(a) for a in np.flatnonzero(self._bits)]

    def __repr__(self):
        return f"Anf(n={self.n}, {to_anf_string(self)!r})"


class WalshSpectrum:
    """Signed Walsh-Hadamard coefficients, ``values[a] = W_f(a)``."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        arr = np.array(values, dtype=np.int64)
        if arr.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} coefficients for n={n}")
        arr.setflags(write=False)
        self.n = n
        self.values = arr

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __repr__(self):
        return f"WalshSpectrum(n={self.n}, values={self.values.tolist()!r})"


# ---------------------------------------------------------------------------
# transforms

def fwht(bits) -> np.ndarray:
    """Fast Walsh-Hadamard transform of 0/1 truth tables along the last axis."""
    v = 1 - 2 * np.asarray(bits, dtype=np.int64)
    size = v.shape[-1]
    lead = v.shape[:-1]
    _log2_len(size)
    h = 1
    while h < size:
        v = v.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :]
        hi = v[..., 1, :]
        v = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return v.reshape(*lead, size)


def mobius(bits) -> np.ndarray:
    """Binary Moebius transform along the last axis (an involution)."""
    v = np.array(bits, dtype=np.uint8)
    size = v.shape[-1]
    lead = v.shape[:-1]
    _log2_len(size)
    h = 1
    while h < size:
        w = v.reshape(*lead, size // (2 * h), 2, h)
        w[..., 1, :] ^= w[..., 0, :]
        h *= 2
    return v


@lru_cache(maxsize=None)
def _hadamard_signs(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    parity = (np.bitwise_count(idx[:, None] & idx[None, :]) & 1).astype(np.int64)
    signs = 1 - 2 * parity
    signs.setflags(write=False)
    return signs


def naive_walsh(bits) -> np.ndarray:
    """Direct O(4^n) evaluation of the Walsh sum; batched along the last axis."""
    arr = np.asarray(bits, dtype=np.int64)
    n = _log2_len(arr.shape[-1])
    if n > NAIVE_MAX_VARS:
        raise ValueError(f"naive transform limited to n <= {NAIVE_MAX_VARS}, got {n}")
    # W(a) = sum_x (-1)^f(x) * (-1)^(a.x)
    return (1 - 2 * arr) @ _hadamard_signs(n).T


def walsh_transform(tt: TruthTable) -> WalshSpectrum:
    return WalshSpectrum(tt.n, fwht(tt.bits))


def naive_walsh_transform(tt: TruthTable) -> WalshSpectrum:
    return WalshSpectrum(tt.n, naive_walsh(tt.bits))


def mobius_transform(bits) -> np.ndarray:
    """Moebius transform of a 1-D bit sequence; maps truth table <-> ANF."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence")
    return mobius(arr)


def anf_of(tt: TruthTable) -> Anf:
    return Anf(tt.n, mobius(tt.bits))


def truth_table_of(anf: Anf) -> TruthTable:
    return TruthTable(anf.n, mobius(anf.coeffs))


# ---------------------------------------------------------------------------
# properties

@lru_cache(maxsize=None)
def monomial_weights(n: int) -> np.ndarray:
    """Hamming weight of every index in [0, 2^n)."""
    w = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    w.setflags(write=False)
    return w


def covering_bound(n: int) -> int:
    """Largest nonlinearity reachable with n variables (n even)."""
    if n % 2:
        raise ValueError(f"covering radius bound is only attained for even n, got {n}")
    return (1 << (n - 1)) - (1 << (n // 2 - 1))


def max_abs_count(ws: WalshSpectrum) -> tuple[int, int]:
    absw = np.abs(ws.values)
    top = int(absw.max())
    return top, int(np.count_nonzero(absw == top))


def nonlinearity(ws: WalshSpectrum) -> int:
    top, _ = max_abs_count(ws)
    return (1 << (ws.n - 1)) - top // 2


def algebraic_degree(anf: Anf) -> int | None:
    """Largest monomial weight; ``None`` for the zero function (no monomials)."""
    present = monomial_weights(anf.n)[anf.coeffs.astype(bool)]
    if present.size == 0:
        return None
    return int(present.max())


def is_homogeneous(anf: Anf, d: int) -> bool:
    """True iff the ANF is non-empty and every monomial has degree exactly d."""
    present = monomial_weights(anf.n)[anf.coeffs.astype(bool)]
    return present.size > 0 and bool(np.all(present == d))


def is_bent(tt: TruthTable) -> bool:
    if tt.n % 2:
        return False
    return nonlinearity(walsh_transform(tt)) == covering_bound(tt.n)


# ---------------------------------------------------------------------------
# text formats

def to_hex(tt: TruthTable) -> str:
    """Lowercase hex; bit index 0 is the most significant bit of the first digit."""
    return "".join("0123456789abcdef"[int(q)] for q in tt.bits.reshape(-1, 4) @ np.array([8, 4, 2, 1]))


def from_hex(text: str) -> TruthTable:
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if not text:
        raise ParseError("empty truth table", 0)
    for pos, ch in enumerate(text):
        if ch not in "0123456789abcdef":
            raise ParseError(f"invalid hex digit {ch!r}", pos)
    size = 4 * len(text)
    if size & (size - 1):
        raise ValueError(f"truth table has {size} bits, not a power of two")
    digits = np.array([int(ch, 16) for ch in text], dtype=np.uint8)
    bits = ((digits[:, None] >> np.array([3, 2, 1, 0], dtype=np.uint8)) & 1).reshape(-1)
    return TruthTable.from_bits(bits)


def monomial_to_string(mask: int, n: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{i}" for i in range(1, n + 1) if mask >> (n - i) & 1)


def to_anf_string(anf: Anf) -> str:
    masks = anf.monomials()
    if not masks:
        return "0"
    n = anf.n
    # degree first, then variable order
    masks.sort(key=lambda m: (m.bit_count(), -m))
    return " + ".join(monomial_to_string(m, n) for m in masks)


_VAR = re.compile(r"x(\d+)")


def parse_anf(text: str, n: int | None = None) -> Anf:
    """Parse ``"x1*x2 + x3*x4"``-style ANF text.

    Repeated monomials cancel (XOR).  When ``n`` is omitted it is the largest
    variable index present, but at least 2.
    """
    terms: list[tuple[int, set[int]]] = []
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty ANF", 0)
    for chunk in text.split("+"):
        start = pos + len(chunk) - len(chunk.lstrip())
        body = chunk.strip()
        pos += len(chunk) + 1
        if not body:
            raise ParseError("empty term", start)
        if body in ("0", "1"):
            if body == "1":
                terms.append((start, set()))
            continue
        variables: set[int] = set()
        col = start
        for factor in body.split("*"):
            fstart = col + len(factor) - len(factor.lstrip())
            m = _VAR.fullmatch(factor.strip())
            if m is None or int(m.group(1)) < 1:
                raise ParseError(f"bad factor {factor.strip()!r}", fstart)
            variables.add(int(m.group(1)))
            col += len(factor) + 1
        terms.append((start, variables))
    top = max((max(v) for _, v in terms if v), default=0)
    if n is None:
        n = max(top, MIN_VARS)
    elif top > n:
        raise ValueError(f"variable x{top} out of range for n={n}")
    coeffs = np.zeros(1 << n, dtype=np.uint8)
    for _, variables in terms:
        mask = sum(1 << (n - i) for i in variables)
        coeffs[mask] ^= 1
    return Anf(n, coeffs)
