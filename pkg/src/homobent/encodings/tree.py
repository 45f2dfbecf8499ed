"""Expression-tree genotypes for the symbolic (GP) encoding.

A tree is a nested tuple ``(op, child, ...)``; a leaf is the 1-based variable
index as a plain ``int``.  Depth counts edges, so a lone leaf has depth 0.
Evaluation is bit-parallel: every node yields the whole 2^n-row column packed
into one Python integer (row i is bit i).
"""

from __future__ import annotations

import dataclasses
import random
import re
from functools import lru_cache
from typing import Union

import numpy as np

from ..boolfun import ParseError, TruthTable

Tree = Union[int, tuple]

ARITY = {"OR": 2, "XOR": 2, "AND": 2, "AND2": 2, "XNOR": 2, "IF": 3, "NOT": 1}
FUNCTIONS = tuple(ARITY)

MAX_DEPTH = 5
INIT_MIN_DEPTH = 2
CROSSOVER_RETRIES = 5


@dataclasses.dataclass(frozen=True)
class TreeGenotype:
    root: Tree

    def depth(self) -> int:
        return depth(self.root)

    def size(self) -> int:
        return size(self.root)

    def __str__(self):
        return to_string(self.root)


def depth(t: Tree) -> int:
    if isinstance(t, int):
        return 0
    return 1 + max(depth(c) for c in t[1:])


def size(t: Tree) -> int:
    if isinstance(t, int):
        return 1
    return 1 + sum(size(c) for c in t[1:])


def nodes(t: Tree, path: tuple = (), level: int = 0) -> list[tuple[tuple, Tree, int]]:
    """Preorder list of ``(path, subtree, depth)``; a path is a tuple of child slots."""
    out = [(path, t, level)]
    if not isinstance(t, int):
        for k, c in enumerate(t[1:]):
            out.extend(nodes(c, path + (k,), level + 1))
    return out


def subtree(t: Tree, path: tuple) -> Tree:
    for k in path:
        t = t[k + 1]
    return t


def replace(t: Tree, path: tuple, new: Tree) -> Tree:
    if not path:
        return new
    k = path[0]
    children = list(t[1:])
    children[k] = replace(children[k], path[1:], new)
    return (t[0], *children)


def check(t: Tree, n: int, max_depth: int | None = MAX_DEPTH) -> None:
    """Raise ``ValueError`` unless ``t`` is a well-formed tree over n variables."""
    for _, node, _ in nodes(t):
        if isinstance(node, int):
            if not 1 <= node <= n:
                raise ValueError(f"leaf x{node} out of range for n={n}")
        elif node[0] not in ARITY or len(node) - 1 != ARITY[node[0]]:
            raise ValueError(f"malformed node {node[0]!r}")
    if max_depth is not None and depth(t) > max_depth:
        raise ValueError(f"tree depth {depth(t)} exceeds {max_depth}")


# ---------------------------------------------------------------------------
# evaluation

@lru_cache(maxsize=None)
def _columns(n: int) -> tuple[int, ...]:
    rows = np.arange(1 << n)
    cols = [0]
    for i in range(1, n + 1):
        cols.append(_pack((rows >> (n - i)) & 1))
    return tuple(cols)


def _pack(bits) -> int:
    arr = np.asarray(bits, dtype=np.uint8)
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def unpack(value: int, n: int) -> np.ndarray:
    size = 1 << n
    raw = value.to_bytes(max(1, size // 8), "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]


def _eval(t: Tree, cols: tuple[int, ...], full: int) -> int:
    if isinstance(t, int):
        return cols[t]
    op = t[0]
    a = _eval(t[1], cols, full)
    if op == "NOT":
        return full ^ a
    b = _eval(t[2], cols, full)
    if op == "XOR":
        return a ^ b
    if op == "AND":
        return a & b
    if op == "OR":
        return a | b
    if op == "XNOR":
        return full ^ a ^ b
    if op == "AND2":
        return a & (full ^ b)
    if op == "IF":
        c = _eval(t[3], cols, full)
        return (a & b) | ((full ^ a) & c)
    raise ValueError(f"unknown operator {op!r}")


def eval_packed(t: Tree, n: int) -> int:
    for _, node, _ in nodes(t):
        if isinstance(node, int) and not 1 <= node <= n:
            raise ValueError(f"leaf x{node} out of range for n={n}")
    return _eval(t, _columns(n), (1 << (1 << n)) - 1)


def eval_tree(g: TreeGenotype, n: int) -> TruthTable:
    return TruthTable(n, unpack(eval_packed(g.root, n), n))


# ---------------------------------------------------------------------------
# random trees

def _random_tree(n: int, max_depth: int, rng: random.Random, full: bool, root_function: bool) -> Tree:
    if max_depth == 0:
        return rng.randint(1, n)
    n_funcs = len(FUNCTIONS)
    if full or root_function or rng.randrange(n + n_funcs) < n_funcs:
        op = FUNCTIONS[rng.randrange(n_funcs)]
        return (op, *(_random_tree(n, max_depth - 1, rng, full, False) for _ in range(ARITY[op])))
    return rng.randint(1, n)


def grow(n: int, max_depth: int, rng: random.Random) -> Tree:
    return _random_tree(n, max_depth, rng, full=False, root_function=False)


def random_tree(n: int, rng: random.Random, max_depth: int = MAX_DEPTH,
                min_depth: int = INIT_MIN_DEPTH) -> TreeGenotype:
    """Ramped half-and-half: depth drawn from [min_depth, max_depth], then full or grow."""
    d = rng.randint(min(min_depth, max_depth), max_depth)
    full = rng.random() < 0.5
    return TreeGenotype(_random_tree(n, d, rng, full=full, root_function=d > 0))


# ---------------------------------------------------------------------------
# variation

def mutate_tree(g: TreeGenotype, n: int, rng: random.Random, max_depth: int = MAX_DEPTH) -> TreeGenotype:
    """Subtree mutation: a uniformly chosen node is regrown within the depth cap."""
    points = nodes(g.root)
    path, _, level = points[rng.randrange(len(points))]
    return TreeGenotype(replace(g.root, path, grow(n, max(0, max_depth - level), rng)))


def _common_region(a: Tree, b: Tree, strict: bool, path: tuple = ()) -> list[tuple]:
    # strict: descend only through nodes of equal arity (one-point / uniform);
    # otherwise through any child slot present in both (context preserving).
    out = [path]
    if isinstance(a, int) or isinstance(b, int):
        return out
    if strict and len(a) != len(b):
        return out
    for k in range(min(len(a), len(b)) - 1):
        out.extend(_common_region(a[k + 1], b[k + 1], strict, path + (k,)))
    return out


def subtree_crossover(a: Tree, b: Tree, rng: random.Random) -> Tree:
    pa = nodes(a)
    pb = nodes(b)
    return replace(a, pa[rng.randrange(len(pa))][0], pb[rng.randrange(len(pb))][1])


def uniform_crossover(a: Tree, b: Tree, rng: random.Random) -> Tree:
    """Node-wise swaps inside the common region, whole subtrees at its boundary."""
    if isinstance(a, int) or isinstance(b, int) or len(a) != len(b):
        return b if rng.random() < 0.5 else a
    head = b[0] if rng.random() < 0.5 else a[0]
    return (head, *(uniform_crossover(x, y, rng) for x, y in zip(a[1:], b[1:])))


def size_fair_crossover(a: Tree, b: Tree, rng: random.Random) -> Tree:
    """Donated subtree is at most 1 + 2x the size of the one it replaces."""
    pa = nodes(a)
    path = pa[rng.randrange(len(pa))][0]
    limit = 1 + 2 * size(subtree(a, path))
    donors = [node for _, node, _ in nodes(b) if size(node) <= limit]
    return replace(a, path, donors[rng.randrange(len(donors))]) if donors else a


def one_point_crossover(a: Tree, b: Tree, rng: random.Random) -> Tree:
    region = _common_region(a, b, strict=True)
    path = region[rng.randrange(len(region))]
    return replace(a, path, subtree(b, path))


def context_preserving_crossover(a: Tree, b: Tree, rng: random.Random) -> Tree:
    """Swap subtrees rooted at the same coordinates in both parents."""
    region = _common_region(a, b, strict=False)
    path = region[rng.randrange(len(region))]
    return replace(a, path, subtree(b, path))


TREE_CROSSOVERS = (
    subtree_crossover,
    uniform_crossover,
    size_fair_crossover,
    one_point_crossover,
    context_preserving_crossover,
)


def crossover_tree(g1: TreeGenotype, g2: TreeGenotype, rng: random.Random,
                   max_depth: int = MAX_DEPTH) -> TreeGenotype:
    op = TREE_CROSSOVERS[rng.randrange(len(TREE_CROSSOVERS))]
    for _ in range(CROSSOVER_RETRIES):
        child = op(g1.root, g2.root, rng)
        if depth(child) <= max_depth:
            return TreeGenotype(child)
    return g1


# ---------------------------------------------------------------------------
# text form: XOR(AND(x1,x2),NOT(x3))

def to_string(t: Tree) -> str:
    if isinstance(t, int):
        return f"x{t}"
    return f"{t[0]}({','.join(to_string(c) for c in t[1:])})"


_TOKEN = re.compile(r"\s*(?:(?P<var>x\d+)|(?P<op>[A-Z][A-Z0-9]*)|(?P<punct>[(),]))")


def parse_tree(text: str) -> Tree:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    i = 0

    def expect(value):
        nonlocal i
        kind, tok, at = tokens[i]
        if tok != value:
            raise ParseError(f"expected {value!r}", at)
        i += 1

    def node() -> Tree:
        nonlocal i
        kind, tok, at = tokens[i]
        i += 1
        if kind == "var":
            idx = int(tok[1:])
            if idx < 1:
                raise ParseError("variables are 1-indexed", at)
            return idx
        if kind == "op":
            if tok not in ARITY:
                raise ParseError(f"unknown operator {tok!r}", at)
            expect("(")
            args = [node()]
            for _ in range(ARITY[tok] - 1):
                expect(",")
                args.append(node())
            expect(")")
            return (tok, *args)
        raise ParseError("expected variable or operator", at)

    root = node()
    if tokens[i][0] != "end":
        raise ParseError("trailing input", tokens[i][2])
    return root
