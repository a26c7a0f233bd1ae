#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Displacement Module
Total relative displacement of a vertex permutation, its per-vertex and
per-pair decompositions, and the displacement multigraph
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple
import logging

import numpy as np

from errors import InvalidParameterError
from graph_core import COMPLEMENT_CYCLE, Graph
from perms import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DisplacedPair:
    """Unordered pair {u, v} (0-based, u < v) whose distance changes under f"""

    u: int
    v: int
    d_before: int
    d_after: int

    @property
    def value(self) -> int:
        return abs(self.d_before - self.d_after)

    def to_dict(self) -> Dict[str, int]:
        return {'u': self.u + 1, 'v': self.v + 1,
                'd_before': self.d_before, 'd_after': self.d_after}


@dataclass(frozen=True)
class DisplacementReport:
    total: int
    per_vertex: Dict[int, int]
    displaced: Tuple[DisplacedPair, ...]
    edge_flips: int

    @property
    def per_pair(self) -> Dict[Tuple[int, int], int]:
        """Nonzero pair contributions keyed by (u, v), u < v"""
        return {(p.u, p.v): p.value for p in self.displaced}

    def to_dict(self) -> Dict[str, object]:
        return {
            'total': self.total,
            'per_vertex': {str(v + 1): value for v, value in sorted(self.per_vertex.items())},
            'displaced_pairs': [p.to_dict() for p in self.displaced],
            'edge_flips': self.edge_flips,
        }


@dataclass(frozen=True)
class DisplacementMultigraph:
    """Directed multigraph on distance values 1..t, one arc per displaced pair"""

    t: int
    arcs: Dict[Tuple[int, int], int]

    @property
    def out_deg(self) -> Dict[int, int]:
        degrees = {a: 0 for a in range(1, self.t + 1)}
        for (i, _), mult in self.arcs.items():
            degrees[i] += mult
        return degrees

    @property
    def in_deg(self) -> Dict[int, int]:
        degrees = {a: 0 for a in range(1, self.t + 1)}
        for (_, j), mult in self.arcs.items():
            degrees[j] += mult
        return degrees

    @property
    def arc_count(self) -> int:
        return sum(self.arcs.values())

    @property
    def balanced(self) -> bool:
        return self.in_deg == self.out_deg

    def to_dict(self) -> Dict[str, object]:
        return {
            't': self.t,
            'arcs': [{'from': i, 'to': j, 'multiplicity': mult}
                     for (i, j), mult in sorted(self.arcs.items())],
            'in_deg': {str(a): d for a, d in self.in_deg.items()},
            'out_deg': {str(a): d for a, d in self.out_deg.items()},
            'balanced': self.balanced,
        }


def _check_sizes(g: Graph, f: Permutation):
    if g.n != f.n:
        raise InvalidParameterError(f"permutation size {f.n} does not match graph size {g.n}")


def _check_vertex(g: Graph, x: int):
    if not 0 <= x < g.n:
        raise InvalidParameterError(f"vertex index {x} out of range 0..{g.n - 1}")


def _moved_distances(g: Graph, f: Permutation) -> np.ndarray:
    """Matrix whose (x, y) entry is d(f(x), f(y))"""
    p = np.asarray(f.images)
    return g.dist[np.ix_(p, p)]


def delta_pair(g: Graph, f: Permutation, x: int, y: int) -> int:
    """|d(x,y) - d(f(x),f(y))|"""
    _check_sizes(g, f)
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise InvalidParameterError(f"delta_pair needs distinct vertices, got {x} twice")
    rows = g.rows
    return abs(rows[x][y] - rows[f(x)][f(y)])


def delta_subset(g: Graph, f: Permutation, x: int, subset: Iterable[int]) -> int:
    """Sum of delta_pair(x, y) over y in subset; y == x is skipped"""
    _check_sizes(g, f)
    _check_vertex(g, x)
    rows = g.rows
    fx = f(x)
    total = 0
    for y in subset:
        _check_vertex(g, y)
        if y != x:
            total += abs(rows[x][y] - rows[fx][f(y)])
    return total


def delta_vertex(g: Graph, f: Permutation, x: int) -> int:
    return delta_subset(g, f, x, range(g.n))


def displacement_value(g: Graph, f: Permutation) -> int:
    """Total displacement without the per-pair breakdown"""
    _check_sizes(g, f)
    return int(np.abs(g.dist - _moved_distances(g, f)).sum()) // 2


def is_automorphism(g: Graph, f: Permutation) -> bool:
    _check_sizes(g, f)
    return bool(np.array_equal(g.dist, _moved_distances(g, f)))


def delta_total(g: Graph, f: Permutation) -> DisplacementReport:
    """Full displacement report of f on g"""
    _check_sizes(g, f)
    moved = _moved_distances(g, f)
    diff = np.abs(g.dist - moved)

    per_vertex = {v: int(value) for v, value in enumerate(diff.sum(axis=1))}
    displaced = tuple(
        DisplacedPair(int(u), int(v), int(g.dist[u, v]), int(moved[u, v]))
        for u, v in np.argwhere(np.triu(diff, k=1) > 0)
    )
    total = sum(p.value for p in displaced)

    p = np.asarray(f.images)
    moved_adjacency = g.adjacency[np.ix_(p, p)]
    edge_flips = int((g.adjacency & ~moved_adjacency).sum()) // 2

    return DisplacementReport(total=total, per_vertex=per_vertex,
                              displaced=displaced, edge_flips=edge_flips)


def build_multigraph(g: Graph, f: Permutation) -> DisplacementMultigraph:
    """Arc a_i -> a_j for every unordered pair moved from distance i to distance j"""
    _check_sizes(g, f)
    rows = g.rows
    arcs = Counter()
    for u in range(g.n):
        fu = f(u)
        for v in range(u + 1, g.n):
            before = rows[u][v]
            after = rows[fu][f(v)]
            if before != after:
                arcs[(before, after)] += 1
    return DisplacementMultigraph(t=g.diameter, arcs=dict(arcs))


def find_positive_edge(g: Graph, f: Permutation) -> Optional[Tuple[int, int]]:
    """First edge (u, v) of g in lexicographic order with delta_pair >= 1"""
    _check_sizes(g, f)
    rows = g.rows
    for u, v in g.edges:
        if rows[f(u)][f(v)] != 1:
            return (u, v)
    return None


def sandwich_pattern_holds(g: Graph, f: Permutation) -> bool:
    """Some v of the complemented cycle has both cycle neighbours mapped onto neighbours of f(v)"""
    if g.family != COMPLEMENT_CYCLE:
        raise InvalidParameterError(f"sandwich pattern is defined on complemented cycles, got {g.family}")
    if g.n <= 5:
        raise InvalidParameterError(f"sandwich pattern needs n > 5, got {g.n}")
    _check_sizes(g, f)
    n = g.n
    adjacency = g.adjacency
    for v in range(n):
        fv = f(v)
        if adjacency[f((v - 1) % n), fv] and adjacency[f((v + 1) % n), fv]:
            return True
    return False
