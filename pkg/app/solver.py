#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Solver Module
Exact minimum positive displacement by branch and bound, near automorphism
enumeration, the segment-reversal characterization check for complemented
cycles and the seeded lemma checks
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from config import config
from displacement import (build_multigraph, displacement_value, find_positive_edge,
                          is_automorphism, sandwich_pattern_holds)
from errors import BudgetExceededError, InvalidParameterError, NoNearAutomorphismError
from graph_core import Graph, build_cycle, complement
from perms import Permutation, all_sigma_candidates, compose, dihedral

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PiResult:
    """Minimum positive displacement with its witnesses and search statistics"""

    graph: Dict[str, object]
    pi: Optional[int]
    witness_count: Optional[int]
    witnesses: Tuple[Permutation, ...] = ()
    nodes_explored: int = 0
    pruned: int = 0
    symmetry_broken: bool = False

    def to_dict(self, witness_cap: Optional[int] = None) -> Dict[str, object]:
        witnesses = self.witnesses if witness_cap is None else self.witnesses[:witness_cap]
        return {
            'graph': dict(self.graph),
            'pi': self.pi,
            'witness_count': self.witness_count,
            'witnesses': [str(w) for w in witnesses],
            'nodes_explored': self.nodes_explored,
            'pruned': self.pruned,
        }


@dataclass(frozen=True)
class TheoremReport:
    """Brute-force near automorphisms of C̄_n against the rotated/reflected segment reversals"""

    n: int
    pi: Optional[int]
    oracle_set_size: int
    constructed_set_size: int
    duplicates: int
    missing_from_constructed: Tuple[Permutation, ...]
    extra_in_constructed: Tuple[Permutation, ...]

    @property
    def equal(self) -> bool:
        return not self.missing_from_constructed and not self.extra_in_constructed

    def to_dict(self, witness_cap: Optional[int] = None) -> Dict[str, object]:
        def capped(perms: Sequence[Permutation]) -> List[str]:
            perms = perms if witness_cap is None else perms[:witness_cap]
            return [str(p) for p in perms]

        return {
            'n': self.n,
            'pi': self.pi,
            'oracle_set_size': self.oracle_set_size,
            'constructed_set_size': self.constructed_set_size,
            'duplicates': self.duplicates,
            'equal': self.equal,
            'missing_count': len(self.missing_from_constructed),
            'missing': capped(self.missing_from_constructed),
            'extra_count': len(self.extra_in_constructed),
            'extra': capped(self.extra_in_constructed),
        }


@dataclass(frozen=True)
class Population:
    """Permutations a check runs over: all n! of them, or a seeded sample"""

    mode: str = 'exhaustive'
    count: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ('exhaustive', 'sampled'):
            raise InvalidParameterError(f"unknown population mode {self.mode!r}")
        if self.mode == 'sampled' and (self.count < 1 or self.seed is None):
            raise InvalidParameterError("sampled population needs a positive count and a seed")

    @classmethod
    def exhaustive(cls) -> 'Population':
        return cls('exhaustive')

    @classmethod
    def sampled(cls, count: int, seed: int) -> 'Population':
        return cls('sampled', count, seed)

    def size(self, n: int) -> int:
        return math.factorial(n) if self.mode == 'exhaustive' else self.count

    def permutations(self, n: int) -> Iterator[Permutation]:
        if self.mode == 'exhaustive':
            for images in itertools.permutations(range(n)):
                yield Permutation(images)
            return
        rng = np.random.default_rng(self.seed)
        for _ in range(self.count):
            yield Permutation.from_images(rng.permutation(n))

    def to_dict(self) -> Dict[str, object]:
        if self.mode == 'exhaustive':
            return {'mode': 'exhaustive', 'count': None, 'seed': None}
        return {'mode': 'sampled', 'count': self.count, 'seed': self.seed}


@dataclass(frozen=True)
class LemmaReport:
    check: str
    graph: Dict[str, object]
    population: Population
    checked: int
    applicable: int
    violations: Tuple[Permutation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, witness_cap: Optional[int] = None) -> Dict[str, object]:
        violations = self.violations if witness_cap is None else self.violations[:witness_cap]
        return {
            'check': self.check,
            'graph': dict(self.graph),
            'population': self.population.to_dict(),
            'checked': self.checked,
            'applicable': self.applicable,
            'violation_count': len(self.violations),
            'violations': [str(v) for v in violations],
        }


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _SearchTask:
    rows: Rows
    first_image: int
    bound: int
    collect: bool
    value_only: bool
    budget: int


@dataclass(frozen=True)
class _SearchOutcome:
    first_image: int
    best: Optional[int]
    count: int
    witnesses: Tuple[Tuple[int, ...], ...]
    nodes: int
    pruned: int
    exhausted: bool


class _BudgetReached(Exception):
    pass


class _BranchAndBound:
    """Depth-first assignment of f(v_1), f(v_2), ... with f(v_1) fixed.

    The partial sum over pairs of assigned vertices never decreases as the
    assignment grows, so it bounds every completion from below.
    """

    def __init__(self, task: _SearchTask):
        self.rows = task.rows
        self.n = len(task.rows)
        self.bound = task.bound
        self.collect = task.collect
        self.value_only = task.value_only
        self.budget = task.budget
        self.first_image = task.first_image
        self.images = [0] * self.n
        self.used = [False] * self.n
        self.best = None
        self.count = 0
        self.witnesses = []
        self.nodes = 0
        self.pruned = 0

    def run(self) -> _SearchOutcome:
        exhausted = False
        self.images[0] = self.first_image
        self.used[self.first_image] = True
        self.nodes = 1
        try:
            self._extend(1, 0)
        except _BudgetReached:
            exhausted = True
        return _SearchOutcome(
            first_image=self.first_image, best=self.best, count=self.count,
            witnesses=tuple(self.witnesses), nodes=self.nodes,
            pruned=self.pruned, exhausted=exhausted)

    def _extend(self, depth: int, partial: int):
        rows = self.rows
        images = self.images
        used = self.used
        n = self.n
        row_depth = rows[depth]
        for j in range(n):
            if used[j]:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetReached()
            row_j = rows[j]
            s = partial
            for i in range(depth):
                s += abs(row_depth[i] - row_j[images[i]])
            if s > self.bound or (self.value_only and s >= self.bound):
                self.pruned += 1
                continue
            images[depth] = j
            if depth + 1 == n:
                self._leaf(s)
            else:
                used[j] = True
                self._extend(depth + 1, s)
                used[j] = False

    def _leaf(self, total: int):
        if total == 0:
            return
        if self.best is None or total < self.best:
            self.best = total
            self.bound = min(self.bound, total)
            self.count = 1
            self.witnesses = [tuple(self.images)] if self.collect else []
        elif total == self.best:
            self.count += 1
            if self.collect:
                self.witnesses.append(tuple(self.images))


def _run_search_task(task: _SearchTask) -> _SearchOutcome:
    outcome = _BranchAndBound(task).run()
    logger.debug(f"Subtask f(v_1)=v_{task.first_image + 1}: best={outcome.best} "
                 f"count={outcome.count} nodes={outcome.nodes}")
    return outcome


def transposition_bound(g: Graph) -> Optional[int]:
    """Smallest positive displacement over all transpositions.

    Swapping a and b displaces exactly the pairs {a, y} and {b, y}, each by
    |d(a,y) - d(b,y)|.
    """
    rows = g.rows
    best = None
    for a in range(g.n):
        for b in range(a + 1, g.n):
            value = 2 * sum(abs(rows[a][y] - rows[b][y]) for y in range(g.n) if y not in (a, b))
            if value > 0 and (best is None or value < best):
                best = value
    return best


def _iter_automorphisms(rows: Rows, first_image: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    n = len(rows)
    images = [0] * n
    used = [False] * n

    def extend(depth: int):
        if depth == n:
            yield tuple(images)
            return
        row_depth = rows[depth]
        candidates = [first_image] if depth == 0 and first_image is not None else range(n)
        for j in candidates:
            if used[j]:
                continue
            row_j = rows[j]
            if any(row_depth[i] != row_j[images[i]] for i in range(depth)):
                continue
            images[depth] = j
            used[j] = True
            yield from extend(depth + 1)
            used[j] = False

    yield from extend(0)


def automorphisms(g: Graph) -> List[Permutation]:
    """All distance-preserving permutations, in lexicographic order"""
    return [Permutation(images) for images in _iter_automorphisms(g.rows)]


def is_vertex_transitive(g: Graph) -> bool:
    return all(next(_iter_automorphisms(g.rows, v), None) is not None for v in range(g.n))


def _check_solvable(g: Graph):
    if g.is_complete:
        raise NoNearAutomorphismError(
            f"{g!r} is complete: every permutation is an automorphism")


def pi_exact(g: Graph, collect_witnesses: bool = False, *, value_only: bool = False,
             symmetry_breaking: bool = False, workers: Optional[int] = None,
             node_budget: Optional[int] = None) -> PiResult:
    """Exact smallest positive displacement of g.

    The search is split by the image of v_1; every split starts from the
    best transposition bound and runs independently, so results and
    statistics do not depend on the worker count.
    """
    _check_solvable(g)
    if value_only and collect_witnesses:
        raise InvalidParameterError("value_only search cannot collect witnesses")
    if symmetry_breaking and collect_witnesses:
        raise InvalidParameterError("symmetry breaking only applies to value and count queries")
    workers = config.workers if workers is None else max(1, workers)
    node_budget = config.node_budget if node_budget is None else node_budget

    seed_bound = transposition_bound(g)
    first_images = list(range(g.n))
    scale = 1
    if symmetry_breaking:
        if is_vertex_transitive(g):
            first_images = [0]
            scale = g.n
        else:
            logger.warning(f"{g!r} is not vertex-transitive; searching without symmetry breaking")

    # each subtask may use the whole budget; the total is checked after merging
    tasks = [_SearchTask(rows=g.rows, first_image=j, bound=seed_bound,
                         collect=collect_witnesses, value_only=value_only,
                         budget=node_budget) for j in first_images]

    logger.info(f"Searching {g!r}: start bound {seed_bound}, {len(tasks)} subtasks, {workers} workers")
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_search_task, tasks))
    else:
        outcomes = [_run_search_task(task) for task in tasks]

    nodes = sum(o.nodes for o in outcomes)
    pruned = sum(o.pruned for o in outcomes)
    found = [o.best for o in outcomes if o.best is not None]

    if nodes > node_budget or any(o.exhausted for o in outcomes):
        incumbent = min(found + [seed_bound])
        logger.warning(f"Node budget {node_budget} exhausted after {nodes} nodes; incumbent {incumbent}")
        raise BudgetExceededError(
            f"node budget {node_budget} exhausted on {g!r}; best value seen {incumbent}",
            incumbent=incumbent, nodes_explored=nodes)

    # value-only search never reaches a leaf at the start bound itself
    pi = min(found + [seed_bound]) if value_only else min(found)

    witness_count = None
    witnesses: Tuple[Permutation, ...] = ()
    if not value_only:
        witness_count = scale * sum(o.count for o in outcomes if o.best == pi)
        if collect_witnesses:
            witnesses = tuple(sorted(Permutation(images) for o in outcomes if o.best == pi
                                     for images in o.witnesses))

    logger.info(f"pi({g.family}, n={g.n}) = {pi}; witnesses={witness_count} "
                f"nodes={nodes} pruned={pruned}")
    return PiResult(graph=g.describe(), pi=pi, witness_count=witness_count,
                    witnesses=witnesses, nodes_explored=nodes, pruned=pruned,
                    symmetry_broken=scale > 1)


def pi_bruteforce(g: Graph) -> PiResult:
    """Naive enumeration of all n! permutations"""
    _check_solvable(g)
    rows = g.rows
    n = g.n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    best = None
    witnesses = []
    for images in itertools.permutations(range(n)):
        total = sum(abs(rows[u][v] - rows[images[u]][images[v]]) for u, v in pairs)
        if total == 0:
            continue
        if best is None or total < best:
            best = total
            witnesses = [images]
        elif total == best:
            witnesses.append(images)
    return PiResult(graph=g.describe(), pi=best, witness_count=len(witnesses),
                    witnesses=tuple(Permutation(w) for w in witnesses),
                    nodes_explored=math.factorial(n), pruned=0)


def near_automorphisms(g: Graph, workers: Optional[int] = None,
                       node_budget: Optional[int] = None) -> List[Permutation]:
    """Every permutation whose displacement equals the minimum positive one"""
    return list(pi_exact(g, collect_witnesses=True, workers=workers,
                         node_budget=node_budget).witnesses)


# ---------------------------------------------------------------------------
# Characterization check
# ---------------------------------------------------------------------------

def constructed_near_automorphisms(n: int) -> Tuple[List[Permutation], int]:
    """Deduplicated {g o sigma : g dihedral, sigma a block reversal} and the raw count"""
    raw = [compose(g, sigma) for g in dihedral(n) for _, sigma in all_sigma_candidates(n)]
    return sorted(set(raw)), len(raw)


def verify_theorem(n: int, workers: Optional[int] = None,
                   max_n: Optional[int] = None) -> TheoremReport:
    """Compare the exhaustive near automorphisms of C̄_n with the constructed family"""
    max_n = config.theorem_max_n if max_n is None else max_n
    if not 5 <= n <= max_n:
        raise InvalidParameterError(f"theorem check needs 5 <= n <= {max_n}, got {n}")

    g = complement(build_cycle(n))
    result = pi_exact(g, collect_witnesses=True, workers=workers)
    oracle = set(result.witnesses)
    constructed, raw_count = constructed_near_automorphisms(n)
    constructed_set = set(constructed)

    report = TheoremReport(
        n=n, pi=result.pi,
        oracle_set_size=len(oracle),
        constructed_set_size=len(constructed_set),
        duplicates=raw_count - len(constructed_set),
        missing_from_constructed=tuple(sorted(oracle - constructed_set)),
        extra_in_constructed=tuple(sorted(constructed_set - oracle)),
    )
    logger.info(f"Theorem check n={n}: oracle={report.oracle_set_size} "
                f"constructed={report.constructed_set_size} equal={report.equal}")
    return report


# ---------------------------------------------------------------------------
# Lemma checks
# ---------------------------------------------------------------------------

def _complement_cycle(n: int, minimum: int, strict: bool = False) -> Graph:
    if n < minimum or (strict and n == minimum):
        bound = f"> {minimum}" if strict else f">= {minimum}"
        raise InvalidParameterError(f"check needs n {bound}, got {n}")
    return complement(build_cycle(n))


def _finish(report: LemmaReport) -> LemmaReport:
    logger.info(f"{report.check} on {report.graph['family']} n={report.graph['n']}: "
                f"checked={report.checked} applicable={report.applicable} "
                f"violations={len(report.violations)}")
    return report


def check_sandwich_bound(n: int, population: Population) -> LemmaReport:
    """Every permutation showing the sandwich pattern on C̄_n displaces at least 6"""
    g = _complement_cycle(n, 5, strict=True)
    checked = applicable = 0
    violations = []
    for f in population.permutations(n):
        checked += 1
        if sandwich_pattern_holds(g, f):
            applicable += 1
            if displacement_value(g, f) < 6:
                violations.append(f)
    return _finish(LemmaReport('sandwich_bound', g.describe(), population,
                               checked, applicable, tuple(violations)))


def check_multigraph_balance(g: Graph, population: Population) -> LemmaReport:
    """In-degree equals out-degree at every node of every displacement multigraph"""
    checked = 0
    violations = []
    for f in population.permutations(g.n):
        checked += 1
        if not build_multigraph(g, f).balanced:
            violations.append(f)
    return _finish(LemmaReport('multigraph_balance', g.describe(), population,
                               checked, checked, tuple(violations)))


def check_positive_edge(g: Graph, population: Population) -> LemmaReport:
    """Every non-automorphism displaces some edge"""
    checked = applicable = 0
    violations = []
    for f in population.permutations(g.n):
        checked += 1
        if is_automorphism(g, f):
            continue
        applicable += 1
        if find_positive_edge(g, f) is None:
            violations.append(f)
    return _finish(LemmaReport('positive_edge', g.describe(), population,
                               checked, applicable, tuple(violations)))


def check_minimum_displacement(n: int, population: Population) -> LemmaReport:
    """Every non-automorphism of C̄_n displaces at least 4"""
    g = _complement_cycle(n, 5)
    checked = applicable = 0
    violations = []
    for f in population.permutations(n):
        checked += 1
        value = displacement_value(g, f)
        if value == 0:
            continue
        applicable += 1
        if value < 4:
            violations.append(f)
    return _finish(LemmaReport('minimum_displacement', g.describe(), population,
                               checked, applicable, tuple(violations)))
