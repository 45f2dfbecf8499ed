"""Experiment harness behind the command line: scenario grids, result tables,
single-function reports and exhaustive census of the restricted space."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import re
import statistics
from collections import Counter
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from .boolfun import (
    TruthTable,
    algebraic_degree,
    anf_of,
    covering_bound,
    fwht,
    from_hex,
    is_bent,
    is_homogeneous,
    max_abs_count,
    mobius,
    nonlinearity,
    parse_anf,
    to_anf_string,
    to_hex,
    truth_table_of,
    walsh_transform,
)
from .encodings import ENCODINGS, TreeGenotype, eval_tree, monomial_basis
from .encodings.tree import parse_tree
from .engine import EaConfig, RunRecord, run_batch
from .fitness import FITNESSES

CSV_HEADER = (
    "n",
    "d",
    "encoding",
    "fitness",
    "runs",
    "successes",
    "median_evaluations_to_success",
    "median_best_fitness",
)
ENUMERATION_LIMIT = 25


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# experiments

@dataclasses.dataclass(frozen=True)
class ExperimentSpec:
    scenario: int
    grid: tuple[tuple[int, int], ...]
    encodings: tuple[str, ...]
    fitnesses: tuple[str, ...]
    runs: int = 10
    seed: int = 0
    out: Path | None = None
    evaluations: int = 100_000
    population: int = 500

    def cells(self) -> list[tuple[int, int, str, str]]:
        """Validated (n, d, encoding, fitness) cells in table order."""
        if self.scenario not in (1, 2):
            raise ConfigError(f"scenario must be 1 or 2, got {self.scenario}")
        if self.runs < 1:
            raise ConfigError("need at least one run per cell")
        if not self.grid:
            raise ConfigError("empty (n, d) grid")
        for enc in self.encodings:
            if enc not in ENCODINGS:
                raise ConfigError(f"unknown encoding {enc!r}")
        for fit in self.fitnesses:
            if fit not in FITNESSES:
                raise ConfigError(f"unknown fitness {fit!r}")
        if self.scenario == 1:
            if "gar" in self.encodings:
                raise ConfigError("scenario 1 excludes the restricted encoding (homogeneous by construction)")
            if set(self.fitnesses) != {"fit1"}:
                raise ConfigError("scenario 1 uses fit1 only")
        else:
            if "fit1" in self.fitnesses:
                raise ConfigError("scenario 2 uses fit2, fit3 or fit4")
            if "gar" in self.encodings and "fit3" not in self.fitnesses:
                raise ConfigError("the restricted encoding is run with fit3 only")
        cells = []
        for n, d in self.grid:
            if not 1 <= d <= n or n < 2:
                raise ConfigError(f"invalid (n, d) = ({n}, {d})")
            if self.scenario == 2 and n % 2:
                raise ConfigError(f"bent functions need even n, got n={n}")
            for enc in self.encodings:
                for fit in self.fitnesses:
                    if enc == "gar" and fit != "fit3":
                        continue
                    cells.append((n, d, enc, fit))
        try:
            for n, d, enc, fit in cells:
                self.config(n, d, enc, fit)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return cells

    def config(self, n: int, d: int, encoding: str, fitness: str) -> EaConfig:
        return EaConfig(
            n=n,
            d=d,
            encoding=encoding,
            fitness=fitness,
            population_size=self.population,
            max_evaluations=self.evaluations,
            rng_seed=self.seed,
        )


@dataclasses.dataclass
class CellResult:
    n: int
    d: int
    encoding: str
    fitness: str
    records: list[RunRecord]

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.records)

    def row(self) -> dict:
        hits = [r.evaluations_used for r in self.records if r.success]
        median_fit = statistics.median(r.best_fitness for r in self.records)
        return {
            "n": self.n,
            "d": self.d,
            "encoding": self.encoding,
            "fitness": self.fitness,
            "runs": len(self.records),
            "successes": self.successes,
            "median_evaluations_to_success": _fmt_number(statistics.median(hits)) if hits else "",
            "median_best_fitness": _fmt_number(median_fit),
        }


def _fmt_number(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.6f}"


def run_experiment(spec: ExperimentSpec, jobs: int = 1, progress=None) -> list[CellResult]:
    results = []
    for n, d, enc, fit in spec.cells():
        records = run_batch(spec.config(n, d, enc, fit), spec.runs, jobs)
        cell = CellResult(n, d, enc, fit, records)
        results.append(cell)
        if progress is not None:
            progress(cell)
    return results


def write_results(results: list[CellResult], out: Path) -> None:
    """``results.csv``, ``runs.jsonl`` and ``timings.jsonl`` under ``out``.

    Wall-clock timings live in their own file so the other two stay
    byte-identical across repeated runs with the same seed.
    """
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for cell in results:
        writer.writerow(cell.row())
    runs, timings = [], []
    for cell in results:
        ctx = {"n": cell.n, "d": cell.d, "encoding": cell.encoding, "fitness": cell.fitness}
        for rec in cell.records:
            runs.append(json.dumps({**ctx, **rec.to_dict(timing=False)}))
            timings.append(json.dumps({**ctx, "seed": rec.seed, "wall_time_ms": round(rec.wall_time * 1000, 3)}))
    (out / "results.csv").write_text(buf.getvalue())
    (out / "runs.jsonl").write_text("".join(line + "\n" for line in runs))
    (out / "timings.jsonl").write_text("".join(line + "\n" for line in timings))


def format_table(results: list[CellResult]) -> str:
    """Successes per cell, one row per (n, d) and one column per encoding/fitness."""
    columns = []
    for cell in results:
        key = (cell.encoding, cell.fitness)
        if key not in columns:
            columns.append(key)
    rows: dict[tuple[int, int], dict] = {}
    for cell in results:
        rows.setdefault((cell.n, cell.d), {})[(cell.encoding, cell.fitness)] = cell
    head = ["n", "d"] + [f"{enc.upper()} {fit}" for enc, fit in columns]
    lines = [head]
    for (n, d), cells in rows.items():
        line = [str(n), str(d)]
        for key in columns:
            cell = cells.get(key)
            line.append(f"{cell.successes}/{len(cell.records)}" if cell else "-")
        lines.append(line)
    widths = [max(len(r[i]) for r in lines) for i in range(len(head))]
    return "\n".join("  ".join(s.rjust(w) for s, w in zip(r, widths)) for r in lines)


# ---------------------------------------------------------------------------
# single-function report

def parse_function(text: str, fmt: str = "auto", n: int | None = None) -> TruthTable:
    if fmt == "auto":
        fmt = "expr" if "(" in text else "anf" if re.search(r"x\d", text) else "hex"
    if fmt == "hex":
        tt = from_hex(text)
        if n is not None and tt.n != n:
            raise ValueError(f"hex string encodes n={tt.n}, expected n={n}")
        return tt
    if fmt == "anf":
        return truth_table_of(parse_anf(text, n))
    if fmt == "expr":
        root = parse_tree(text)
        leaves = list(_leaves(root))
        width = n if n is not None else max(max(leaves), 2)
        return eval_tree(TreeGenotype(root), width)
    raise ValueError(f"unknown format {fmt!r}")


def _leaves(t):
    if isinstance(t, int):
        yield t
    else:
        for c in t[1:]:
            yield from _leaves(c)


@dataclasses.dataclass(frozen=True)
class Report:
    n: int
    truth_table: str
    anf: str
    nonlinearity: int
    degree: int | None
    homogeneous: tuple[int, ...]
    bent: bool
    walsh_max: int
    walsh_max_count: int

    def lines(self) -> list[str]:
        bound = covering_bound(self.n) if self.n % 2 == 0 else None
        degree = "none (zero function)" if self.degree is None else str(self.degree)
        out = [
            f"n: {self.n}",
            f"truth table: {self.truth_table}",
            f"anf: {self.anf}",
            f"nonlinearity: {self.nonlinearity}" + (f" (bound {bound})" if bound is not None else ""),
            f"degree: {degree}",
        ]
        out += [f"homogeneous d={k}: {str(k in self.homogeneous).lower()}" for k in range(1, self.n + 1)]
        out += [
            f"bent: {str(self.bent).lower()}",
            f"walsh max |W|: {self.walsh_max}",
            f"walsh max count: {self.walsh_max_count}",
        ]
        return out


def verify(tt: TruthTable) -> Report:
    anf = anf_of(tt)
    ws = walsh_transform(tt)
    top, count = max_abs_count(ws)
    return Report(
        n=tt.n,
        truth_table=to_hex(tt),
        anf=to_anf_string(anf),
        nonlinearity=nonlinearity(ws),
        degree=algebraic_degree(anf),
        homogeneous=tuple(k for k in range(1, tt.n + 1) if is_homogeneous(anf, k)),
        bent=is_bent(tt),
        walsh_max=top,
        walsh_max_count=count,
    )


# ---------------------------------------------------------------------------
# census of the restricted space

@dataclasses.dataclass(frozen=True)
class Census:
    """Every ANF built from degree-d monomials of n variables.

    Genotype ``k`` sets monomial ``masks[j]`` iff bit j of k is set; ``bent``
    lists the genotypes whose function is bent.
    """

    n: int
    d: int
    total: int
    nl_counts: dict[int, int]
    bent: tuple[int, ...]

    @property
    def bent_count(self) -> int:
        return len(self.bent)

    def lines(self) -> list[str]:
        out = [f"n={self.n} d={self.d}: {self.total} functions (zero function included)"]
        out += [f"  nonlinearity {nl}: {cnt}" for nl, cnt in sorted(self.nl_counts.items())]
        out.append(f"bent: {self.bent_count}")
        return out


def enumerate_restricted(n: int, d: int, chunk: int = 1 << 14) -> Census:
    basis = monomial_basis(n, d)
    width = len(basis)
    if width > ENUMERATION_LIMIT:
        raise ConfigError(f"C({n},{d}) = {comb(n, d)} monomials; enumeration is limited to {ENUMERATION_LIMIT}")
    masks = np.array(basis.masks, dtype=np.int64)
    total = 1 << width
    nl_counts: Counter = Counter()
    bent: list[int] = []
    half = 1 << (n - 1)
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        anf = np.zeros((ks.size, 1 << n), dtype=np.uint8)
        anf[:, masks] = (ks[:, None] >> np.arange(width)) & 1
        top = np.abs(fwht(mobius(anf))).max(axis=1)
        nls = half - top // 2
        nl_counts.update(nls.tolist())
        if n % 2 == 0:
            bent.extend(ks[nls == covering_bound(n)].tolist())
    return Census(n, d, total, dict(sorted(nl_counts.items())), tuple(bent))
