#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Graph Module
Graph families, complements, all-pairs distances and edge-list ingestion

Vertices are 0-based here; reports print them 1-based.
"""

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Tuple
import logging

import networkx as nx
import numpy as np

from errors import DisconnectedGraphError, InvalidParameterError, ParseError

logger = logging.getLogger(__name__)

PATH = 'path'
CYCLE = 'cycle'
COMPLEMENT_CYCLE = 'complement_cycle'
COMPLEMENT_PATH = 'complement_path'
COMPLETE = 'complete'
CUSTOM = 'custom'

FAMILIES = (PATH, CYCLE, COMPLEMENT_CYCLE, COMPLEMENT_PATH, COMPLETE, CUSTOM)

_COMPLEMENT_FAMILY = {
    CYCLE: COMPLEMENT_CYCLE,
    COMPLEMENT_CYCLE: CYCLE,
    PATH: COMPLEMENT_PATH,
    COMPLEMENT_PATH: PATH,
}

# Prefixes accepted by parse_family_spec
FAMILY_PREFIXES = {
    'cycle': CYCLE,
    'path': PATH,
    'ccycle': COMPLEMENT_CYCLE,
    'cpath': COMPLEMENT_PATH,
    'complete': COMPLETE,
}


@dataclass(frozen=True, eq=False)
class Graph:
    """Connected simple undirected graph with its hop-distance matrix"""

    n: int
    adjacency: np.ndarray
    dist: np.ndarray
    family: str = CUSTOM

    def __post_init__(self):
        self.adjacency.setflags(write=False)
        self.dist.setflags(write=False)

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        """Distance matrix as nested tuples of Python ints, for tight loops"""
        return tuple(tuple(int(d) for d in row) for row in self.dist)

    @property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.n > 1 else 0

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as (u, v) with u < v, in lexicographic order"""
        return tuple((u, v) for u in range(self.n)
                     for v in range(u + 1, self.n) if self.adjacency[u, v])

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from(self.edges)
        return nxg

    def describe(self) -> Dict[str, object]:
        return {'family': self.family, 'n': self.n}

    def __repr__(self) -> str:
        return f"Graph(family={self.family!r}, n={self.n}, edges={len(self.edges)})"


def _bfs_distances(nxg: nx.Graph, n: int) -> np.ndarray:
    """Hop distances by BFS from every vertex"""
    dist = np.full((n, n), -1, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(nxg):
        for target, length in lengths.items():
            dist[source, target] = length
    if (dist < 0).any():
        u, v = (int(i) for i in np.argwhere(dist < 0)[0])
        raise DisconnectedGraphError(
            f"graph is disconnected: no path between v{u + 1} and v{v + 1}")
    return dist


def _from_networkx(nxg: nx.Graph, family: str) -> Graph:
    n = nxg.number_of_nodes()
    if sorted(nxg.nodes) != list(range(n)):
        raise InvalidParameterError("graph nodes must be 0..n-1")
    adjacency = nx.to_numpy_array(nxg, nodelist=list(range(n)), dtype=int) > 0
    dist = _bfs_distances(nxg, n)
    graph = Graph(n=n, adjacency=adjacency, dist=dist, family=family)
    logger.debug(f"Built {graph!r} with diameter {graph.diameter}")
    return graph


def build_cycle(n: int) -> Graph:
    """Cycle C_n: v_i adjacent to v_{i±1 mod n}"""
    if n < 3:
        raise InvalidParameterError(f"cycle needs n >= 3, got {n}")
    return _from_networkx(nx.cycle_graph(n), CYCLE)


def build_path(n: int) -> Graph:
    """Path P_n: v_i adjacent to v_{i+1}"""
    if n < 2:
        raise InvalidParameterError(f"path needs n >= 2, got {n}")
    return _from_networkx(nx.path_graph(n), PATH)


def build_complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"complete graph needs n >= 1, got {n}")
    return _from_networkx(nx.complete_graph(n), COMPLETE)


def complement(g: Graph) -> Graph:
    """Flip adjacency on every distinct pair and recompute distances"""
    family = _COMPLEMENT_FAMILY.get(g.family, CUSTOM)
    try:
        return _from_networkx(nx.complement(g.to_networkx()), family)
    except DisconnectedGraphError as e:
        raise DisconnectedGraphError(f"complement of {g!r} is not connected ({e})") from e


def distance_matrix(g: Graph) -> np.ndarray:
    """Fresh BFS distance matrix for g"""
    return _bfs_distances(g.to_networkx(), g.n)


def build_graph(n: int, edges: List[Tuple[int, int]], family: str = CUSTOM) -> Graph:
    """Graph on 0..n-1 from 0-based edges"""
    if n < 1:
        raise InvalidParameterError(f"graph needs n >= 1, got {n}")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from(edges)
    return _from_networkx(nxg, family)


def parse_edge_list(text: str) -> Graph:
    """Parse "n m" followed by m lines "u v" with 1-based vertices"""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty edge list")

    header = lines[0].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise ParseError(f"line 1: expected 'n m', got {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if n < 1:
        raise ParseError("line 1: n must be at least 1")
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1} edge lines")

    edges = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != 2 or not all(tok.isdigit() for tok in tokens):
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(tokens[0]), int(tokens[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex out of range 1..{n}: {line!r}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append((key[0] - 1, key[1] - 1))

    return build_graph(n, edges)


def parse_family_spec(text: str) -> Graph:
    """Build a graph from "ccycle:7", "cycle:6", "path:5", "cpath:6" or "complete:5" """
    prefix, sep, size = text.strip().partition(':')
    if not sep or prefix not in FAMILY_PREFIXES:
        raise ParseError(
            f"unknown graph family {text!r}; expected one of "
            + ", ".join(f"{p}:n" for p in FAMILY_PREFIXES))
    if not size.isdigit():
        raise ParseError(f"graph size must be a positive integer, got {size!r}")
    n = int(size)

    family = FAMILY_PREFIXES[prefix]
    if family == CYCLE:
        return build_cycle(n)
    if family == PATH:
        return build_path(n)
    if family == COMPLETE:
        return build_complete(n)
    if family == COMPLEMENT_CYCLE:
        return complement(build_cycle(n))
    return complement(build_path(n))


def load_graph(source: str, complement_graph: bool = False) -> Graph:
    """Family spec or edge-list file path, optionally complemented"""
    if ':' in source and source.split(':', 1)[0] in FAMILY_PREFIXES:
        graph = parse_family_spec(source)
    else:
        path = Path(source)
        if not path.is_file():
            raise ParseError(f"graph source {source!r} is neither a family spec nor a file")
        graph = parse_edge_list(path.read_text(encoding='utf-8'))
        logger.info(f"Edge list loaded from {path}")
    if complement_graph:
        graph = complement(graph)
    logger.info(f"Graph ready: {graph!r}")
    return graph
