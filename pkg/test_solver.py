#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Solver tests - exact minimum displacement against brute force, near
automorphism sets, the complemented-cycle characterization and lemma checks
"""

import logging
import sys
from pathlib import Path

# Add the app directory to Python path
app_dir = Path(__file__).parent / 'app'
sys.path.insert(0, str(app_dir))

import networkx as nx
import numpy as np
import pytest

from displacement import delta_total, displacement_value
from errors import BudgetExceededError, InvalidParameterError, NoNearAutomorphismError
from graph_core import build_complete, build_cycle, build_graph, build_path, complement
from perms import Permutation, compose, dihedral, inverse, transposition
from solver import (Population, automorphisms, check_minimum_displacement,
                    check_multigraph_balance, check_positive_edge, check_sandwich_bound,
                    constructed_near_automorphisms, is_vertex_transitive, near_automorphisms,
                    pi_bruteforce, pi_exact, transposition_bound, verify_theorem)


def ccycle(n):
    return complement(build_cycle(n))


def cpath(n):
    return complement(build_path(n))


def random_graphs(count=50, sizes=(4, 5, 6, 7)):
    """Seeded connected graphs that are not complete"""
    graphs = []
    seed = 1000
    while len(graphs) < count:
        n = sizes[seed % len(sizes)]
        nxg = nx.gnp_random_graph(n, 0.5, seed=seed)
        seed += 1
        if nx.is_connected(nxg) and nxg.number_of_edges() < n * (n - 1) // 2:
            graphs.append(build_graph(n, list(nxg.edges)))
    return graphs


ORACLE_GRAPHS = ([build_path(n) for n in range(3, 8)]
                 + [build_cycle(n) for n in range(4, 8)]
                 + [ccycle(n) for n in range(5, 8)]
                 + [cpath(n) for n in range(4, 8)]
                 + random_graphs())


def vf2_automorphisms(g):
    nxg = g.to_networkx()
    matcher = nx.algorithms.isomorphism.GraphMatcher(nxg, nxg)
    return {Permutation(tuple(mapping[i] for i in range(g.n)))
            for mapping in matcher.isomorphisms_iter()}


class TestKnownValues:

    @pytest.mark.parametrize('n, expected', [(5, 4), (6, 8), (7, 8), (8, 12), (9, 12)])
    def test_cycles(self, n, expected):
        assert pi_exact(build_cycle(n)).pi == expected

    @pytest.mark.parametrize('n', range(3, 10))
    def test_paths(self, n):
        assert pi_exact(build_path(n)).pi == 2 * n - 4

    @pytest.mark.parametrize('n', range(5, 10))
    def test_complemented_paths(self, n):
        assert pi_exact(cpath(n)).pi == 2

    @pytest.mark.parametrize('n', range(5, 11))
    def test_complemented_cycles(self, n):
        result = pi_exact(ccycle(n), value_only=True)
        assert result.pi == 4
        assert result.witness_count is None

    def test_complete_graph_has_no_answer(self):
        with pytest.raises(NoNearAutomorphismError):
            pi_exact(build_complete(5))
        with pytest.raises(NoNearAutomorphismError):
            pi_bruteforce(build_complete(4))

    @pytest.mark.parametrize('g, expected', [
        (ccycle(7), 4), (build_path(6), 8), (cpath(6), 2), (build_cycle(6), 8),
    ], ids=repr)
    def test_transposition_bound(self, g, expected):
        assert transposition_bound(g) == expected
        assert transposition_bound(g) >= pi_exact(g, value_only=True).pi


class TestOracle:

    @pytest.mark.parametrize('g', ORACLE_GRAPHS, ids=repr)
    def test_matches_brute_force(self, g):
        exact = pi_exact(g, collect_witnesses=True)
        brute = pi_bruteforce(g)
        assert exact.pi == brute.pi
        assert exact.witness_count == brute.witness_count == len(exact.witnesses)
        assert set(exact.witnesses) == set(brute.witnesses)

    @pytest.mark.parametrize('g', ORACLE_GRAPHS[:16], ids=repr)
    def test_value_only_agrees(self, g):
        assert pi_exact(g, value_only=True).pi == pi_bruteforce(g).pi

    @pytest.mark.parametrize('g', [ccycle(7), build_path(6), build_cycle(7)], ids=repr)
    def test_witnesses_have_the_minimum(self, g):
        result = pi_exact(g, collect_witnesses=True)
        assert result.witnesses == tuple(sorted(result.witnesses))
        assert all(displacement_value(g, w) == result.pi for w in result.witnesses)


class TestWitnessStructure:

    @pytest.mark.parametrize('g', [ccycle(6), ccycle(7), build_path(6), cpath(6), build_cycle(6)],
                             ids=repr)
    def test_closed_under_inverse_and_symmetries(self, g):
        witnesses = set(near_automorphisms(g))
        autos = automorphisms(g)
        for w in witnesses:
            assert inverse(w) in witnesses
            for a in autos:
                assert compose(a, w) in witnesses
                assert compose(w, a) in witnesses

    @pytest.mark.parametrize('seed', range(5))
    def test_relabelling_keeps_value_and_count(self, seed):
        g = ccycle(7)
        relabel = np.random.default_rng(seed).permutation(g.n)
        moved = build_graph(g.n, [(int(relabel[u]), int(relabel[v])) for u, v in g.edges])
        original, relabelled = pi_exact(g), pi_exact(moved)
        assert (relabelled.pi, relabelled.witness_count) == (original.pi, original.witness_count)

    @pytest.mark.parametrize('n', range(6, 9))
    def test_complemented_cycle_near_automorphisms_are_two_edge_moves(self, n):
        g = ccycle(n)
        symmetries = set(dihedral(n))
        for w in near_automorphisms(g):
            assert w not in symmetries
            report = delta_total(g, w)
            assert report.total == 4
            assert report.edge_flips == 2
            assert sorted(report.per_pair.values()) == [1, 1, 1, 1]
        assert transposition(n, 0, 1) in near_automorphisms(g)


class TestSearchModes:

    def test_workers_do_not_change_results(self):
        g = ccycle(7)
        serial = pi_exact(g, collect_witnesses=True, workers=1)
        parallel = pi_exact(g, collect_witnesses=True, workers=2)
        assert serial.to_dict() == parallel.to_dict()

    @pytest.mark.parametrize('g', [ccycle(7), build_cycle(7), ccycle(8)], ids=repr)
    def test_symmetry_breaking_keeps_count(self, g):
        full = pi_exact(g)
        broken = pi_exact(g, symmetry_breaking=True)
        assert broken.symmetry_broken
        assert (broken.pi, broken.witness_count) == (full.pi, full.witness_count)
        assert broken.nodes_explored < full.nodes_explored

    def test_symmetry_breaking_needs_transitivity(self, caplog):
        g = build_path(6)
        with caplog.at_level(logging.WARNING):
            result = pi_exact(g, symmetry_breaking=True)
        assert not result.symmetry_broken
        assert result.witness_count == pi_exact(g).witness_count
        assert 'not vertex-transitive' in caplog.text

    def test_conflicting_modes(self):
        with pytest.raises(InvalidParameterError):
            pi_exact(ccycle(6), collect_witnesses=True, value_only=True)
        with pytest.raises(InvalidParameterError):
            pi_exact(ccycle(6), collect_witnesses=True, symmetry_breaking=True)

    def test_value_only_explores_less(self):
        g = ccycle(8)
        assert pi_exact(g, value_only=True).nodes_explored <= pi_exact(g).nodes_explored

    def test_budget_exhausted(self):
        with pytest.raises(BudgetExceededError) as info:
            pi_exact(ccycle(7), node_budget=10)
        assert info.value.incumbent == 4
        assert info.value.nodes_explored > 0

    def test_budget_covers_uneven_subtasks(self):
        g = build_path(8)
        full = pi_exact(g)
        within = pi_exact(g, node_budget=full.nodes_explored + 10)
        assert (within.pi, within.witness_count) == (full.pi, full.witness_count)
        assert within.nodes_explored == full.nodes_explored
        assert pi_exact(g, node_budget=full.nodes_explored).pi == full.pi

    def test_budget_applies_to_total(self):
        g = build_path(8)
        full = pi_exact(g)
        with pytest.raises(BudgetExceededError) as info:
            pi_exact(g, node_budget=full.nodes_explored - 1)
        assert info.value.incumbent >= full.pi

    def test_statistics_are_reported(self):
        data = pi_exact(ccycle(6), collect_witnesses=True).to_dict(witness_cap=3)
        assert list(data) == ['graph', 'pi', 'witness_count', 'witnesses', 'nodes_explored', 'pruned']
        assert data['graph'] == {'family': 'complement_cycle', 'n': 6}
        assert len(data['witnesses']) == 3
        assert data['witness_count'] > 3


class TestSymmetries:

    @pytest.mark.parametrize('n', range(5, 9))
    def test_complemented_cycle_symmetries_are_dihedral(self, n):
        assert automorphisms(ccycle(n)) == dihedral(n)

    @pytest.mark.parametrize('n', [9, 10])
    def test_sampled_zero_displacement_is_dihedral(self, n):
        g = ccycle(n)
        symmetries = set(dihedral(n))
        population = list(Population.sampled(5000, 42).permutations(n)) + sorted(symmetries)
        zero = {f for f in population if displacement_value(g, f) == 0}
        assert zero == symmetries

    @pytest.mark.parametrize('g', [build_cycle(6), build_path(5), cpath(6), ccycle(7)] + random_graphs(8),
                             ids=repr)
    def test_matches_vf2(self, g):
        assert set(automorphisms(g)) == vf2_automorphisms(g)

    @pytest.mark.parametrize('g, expected', [
        (build_cycle(6), True), (ccycle(7), True), (build_path(5), False), (cpath(6), False),
    ], ids=repr)
    def test_vertex_transitive(self, g, expected):
        assert is_vertex_transitive(g) == expected


class TestCharacterization:

    @pytest.mark.parametrize('n', [6, 7, 8, 9])
    def test_sets_agree(self, n):
        report = verify_theorem(n)
        assert report.pi == 4
        assert report.equal
        assert report.missing_from_constructed == ()
        assert report.extra_in_constructed == ()
        assert report.oracle_set_size == report.constructed_set_size

    def test_five_vertices_is_reported(self, record_property):
        report = verify_theorem(5)
        record_property('n5_equal', report.equal)
        assert report.pi == 4
        assert report.to_dict()['equal'] == report.equal

    def test_construction_duplicates(self):
        constructed, raw = constructed_near_automorphisms(7)
        assert raw == 2 * 7 * 7 * 4
        assert len(constructed) == len(set(constructed)) < raw

    @pytest.mark.parametrize('n, kwargs', [(4, {}), (10, {}), (8, {'max_n': 7})])
    def test_out_of_range(self, n, kwargs):
        with pytest.raises(InvalidParameterError):
            verify_theorem(n, **kwargs)

    def test_report_json(self):
        data = verify_theorem(6).to_dict(witness_cap=0)
        assert data['equal'] is True
        assert data['missing_count'] == data['extra_count'] == 0
        assert data['missing'] == data['extra'] == []


class TestLemmaChecks:

    @pytest.mark.parametrize('n', [6, 7])
    def test_sandwich_exhaustive(self, n):
        report = check_sandwich_bound(n, Population.exhaustive())
        assert report.passed
        assert report.checked == Population.exhaustive().size(n)
        assert report.applicable > 0

    @pytest.mark.parametrize('n', [8, 9])
    def test_sandwich_sampled(self, n):
        report = check_sandwich_bound(n, Population.sampled(10000, 42))
        assert report.passed
        assert report.checked == 10000

    def test_sandwich_needs_six(self):
        with pytest.raises(InvalidParameterError):
            check_sandwich_bound(5, Population.exhaustive())

    @pytest.mark.parametrize('n', range(5, 13))
    def test_balance_sampled(self, n):
        for g in (ccycle(n), build_cycle(n), build_path(n)):
            assert check_multigraph_balance(g, Population.sampled(1000, 42)).passed

    def test_balance_seed_one(self):
        report = check_multigraph_balance(ccycle(7), Population.sampled(1000, 1))
        assert report.violations == ()
        assert report.checked == 1000

    @pytest.mark.parametrize('g', [ccycle(5), ccycle(6), ccycle(7), build_cycle(5), build_cycle(6),
                                   build_cycle(7), build_path(5), build_path(6), build_path(7)],
                             ids=repr)
    def test_balance_exhaustive(self, g):
        report = check_multigraph_balance(g, Population.exhaustive())
        assert report.passed
        assert report.applicable == report.checked

    @pytest.mark.parametrize('g', [ccycle(7), build_cycle(7), build_path(6), cpath(6)], ids=repr)
    def test_positive_edge(self, g):
        report = check_positive_edge(g, Population.exhaustive())
        assert report.passed
        assert report.applicable == report.checked - len(automorphisms(g))

    @pytest.mark.parametrize('n', range(5, 9))
    def test_minimum_displacement(self, n):
        report = check_minimum_displacement(n, Population.exhaustive())
        assert report.passed
        assert report.applicable == report.checked - 2 * n

    def test_report_json(self):
        report = check_positive_edge(ccycle(6), Population.sampled(50, 3))
        data = report.to_dict()
        assert data['check'] == 'positive_edge'
        assert data['population'] == {'mode': 'sampled', 'count': 50, 'seed': 3}
        assert data['violation_count'] == 0


class TestPopulation:

    def test_seeded_sample_is_reproducible(self):
        first = list(Population.sampled(20, 42).permutations(9))
        second = list(Population.sampled(20, 42).permutations(9))
        other = list(Population.sampled(20, 43).permutations(9))
        assert first == second
        assert first != other

    def test_exhaustive_size(self):
        assert Population.exhaustive().size(6) == 720
        assert len(list(Population.exhaustive().permutations(5))) == 120

    @pytest.mark.parametrize('mode, count, seed', [('sampled', 0, 1), ('sampled', 5, None), ('random', 5, 1)])
    def test_invalid(self, mode, count, seed):
        with pytest.raises(InvalidParameterError):
            Population(mode, count, seed)
