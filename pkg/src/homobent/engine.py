"""Steady-state 3-tournament EA with periodic local search."""

from __future__ import annotations

import dataclasses
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .boolfun import Anf, TruthTable, anf_of, to_anf_string, to_hex
from .encodings import ENCODINGS, MAX_DEPTH, make_encoding
from .fitness import FITNESSES, FitnessValue, evaluate, is_solution


@dataclasses.dataclass(frozen=True)
class EaConfig:
    n: int
    d: int
    encoding: str = "gar"
    fitness: str = "fit3"
    population_size: int = 500
    max_evaluations: int = 1_000_000
    tournament_size: int = 3
    mutation_probability: float = 0.5
    local_search_fraction: float = 0.01
    local_search_trials: int = 25
    rng_seed: int = 0
    early_stop: bool = True
    max_depth: int = MAX_DEPTH

    def __post_init__(self):
        if self.encoding not in ENCODINGS:
            raise ValueError(f"unknown encoding {self.encoding!r}")
        if self.fitness not in FITNESSES:
            raise ValueError(f"unknown fitness {self.fitness!r}")
        if not 1 <= self.d <= self.n:
            raise ValueError(f"degree {self.d} out of range for n={self.n}")
        if self.tournament_size != 3:
            raise ValueError("only 3-tournament elimination is supported")
        if self.population_size < self.tournament_size:
            raise ValueError("population smaller than the tournament")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError("mutation probability must lie in [0, 1]")
        if self.max_evaluations < self.population_size:
            raise ValueError("budget cannot cover the initial population")
        if self.fitness != "fit1" and self.n % 2:
            raise ValueError("bent objectives need even n")

    @property
    def local_search_count(self) -> int:
        return math.ceil(self.local_search_fraction * self.population_size)


@dataclasses.dataclass(frozen=True)
class RunRecord:
    seed: int
    success: bool
    evaluations_used: int
    best_fitness: Fraction
    best_truth_table: TruthTable
    best_anf: Anf
    wall_time: float

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "seed": self.seed,
            "success": self.success,
            "evaluations_used": self.evaluations_used,
            "best_fitness": str(self.best_fitness),
            "truth_table": to_hex(self.best_truth_table),
            "anf": to_anf_string(self.best_anf),
        }
        if timing:
            out["wall_time_ms"] = round(self.wall_time * 1000, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))


@dataclasses.dataclass
class Individual:
    genotype: object
    tt: TruthTable
    fitness: FitnessValue


class SteadyStateEA:
    """One run's state: population, budget counter and the best seen so far."""

    def __init__(self, config: EaConfig, rng: random.Random | None = None):
        self.config = config
        self.rng = rng if rng is not None else random.Random(config.rng_seed)
        self.encoding = make_encoding(config.encoding, config.n, config.d, config.max_depth)
        self.evaluations = 0
        self.population: list[Individual] = []
        self.best: Individual | None = None
        self.solution: Individual | None = None

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.config.max_evaluations

    @property
    def done(self) -> bool:
        return self.exhausted or (self.config.early_stop and self.solution is not None)

    def evaluate(self, genotype) -> Individual:
        cfg = self.config
        tt = self.encoding.decode(genotype)
        ind = Individual(genotype, tt, evaluate(tt, cfg.d, cfg.fitness))
        self.evaluations += 1
        if self.best is None or ind.fitness.total > self.best.fitness.total:
            self.best = ind
        if self.solution is None and self._solves(ind.fitness):
            self.solution = ind
        return ind

    def _solves(self, fv: FitnessValue) -> bool:
        if self.config.fitness == "fit1":
            return fv.homogeneous
        return fv.bent_homogeneous

    def initialize(self) -> None:
        self.population = []
        for _ in range(self.config.population_size):
            self.population.append(self.evaluate(self.encoding.random(self.rng)))

    def step(self) -> int:
        """One tournament: replace the worst of three with a new child; returns its slot."""
        rng = self.rng
        pop = self.population
        slots = rng.sample(range(len(pop)), 3)
        worst = min(pop[i].fitness.total for i in slots)
        tied = [i for i in slots if pop[i].fitness.total == worst]
        loser = tied[rng.randrange(len(tied))] if len(tied) > 1 else tied[0]
        p1, p2 = (pop[i].genotype for i in slots if i != loser)
        child = self.encoding.crossover(p1, p2, rng)
        if rng.random() < self.config.mutation_probability:
            child = self.encoding.mutate(child, rng)
        pop[loser] = self.evaluate(child)
        return loser

    def local_search(self, ind: Individual) -> Individual:
        """Mutation hill climbing; stops after ``local_search_trials`` misses in a row."""
        misses = 0
        while misses < self.config.local_search_trials and not self.done:
            cand = self.evaluate(self.encoding.mutate(ind.genotype, self.rng))
            if cand.fitness.total > ind.fitness.total:
                ind = cand
                misses = 0
            else:
                misses += 1
        return ind

    def _local_search_round(self) -> None:
        pop = self.population
        best = max(range(len(pop)), key=lambda i: pop[i].fitness.total)
        targets = [best] + self.rng.sample(range(len(pop)), min(self.config.local_search_count, len(pop)))
        for i in targets:
            if self.done:
                return
            pop[i] = self.local_search(pop[i])

    def run(self) -> RunRecord:
        start = time.perf_counter()
        cfg = self.config
        self.initialize()
        steps = 0
        while not self.done:
            self.step()
            steps += 1
            if steps % cfg.population_size == 0:
                self._local_search_round()
        found = self.solution if self.solution is not None else self.best
        success = self.solution is not None and is_solution(found.tt, cfg.d, cfg.fitness)
        return RunRecord(
            seed=cfg.rng_seed,
            success=success,
            evaluations_used=self.evaluations,
            best_fitness=found.fitness.total,
            best_truth_table=found.tt,
            best_anf=anf_of(found.tt),
            wall_time=time.perf_counter() - start,
        )


def run(config: EaConfig) -> RunRecord:
    return SteadyStateEA(config).run()


def run_seed(master: int, index: int) -> int:
    return master ^ index


def run_batch(config: EaConfig, runs: int, jobs: int = 1) -> list[RunRecord]:
    """``runs`` independent runs seeded ``config.rng_seed ^ i``; order is by i."""
    if runs < 1:
        raise ValueError("need at least one run")
    configs = [dataclasses.replace(config, rng_seed=run_seed(config.rng_seed, i)) for i in range(runs)]
    if jobs <= 1:
        return [run(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, configs))
