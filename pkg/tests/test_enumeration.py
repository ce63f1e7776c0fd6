"""Class-size computation: closed forms, exact counts, and the sampler.

The exact brute-force table in oracles.py is the reference throughout;
production code never sees it.
"""

import math

import pytest

from ccmselect import (
    DomainError,
    NodeType,
    NonGraphicalSequenceError,
    OracleRefusalError,
    StatisticKind,
    VolumeEstimate,
    VolumeMethod,
    LogValue,
    compute_statistic,
    count_degree_sequence_graphs,
    erdos_gallai_check,
    log_binomial,
    log_volume_degree_distribution,
    log_volume_degree_mixing,
    log_volume_degree_sequence,
    log_volume_edges,
    log_volume_type_mixing,
    oracle_class_table,
    oracle_enumerate,
    statistic_key,
    volume_for_statistic,
)
from conftest import er_graph, typed_types
from oracles import enumerate_classes


def log_count(estimate):
    return estimate.log_count.log_magnitude


class TestLogBinomial:
    def test_known_values(self):
        assert log_binomial(3, 3) == pytest.approx(0.0, abs=1e-12)
        assert log_binomial(6, 2) == pytest.approx(math.log(15), abs=1e-12)
        assert log_binomial(0, 0) == 0.0

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            log_binomial(5, 6)
        with pytest.raises(DomainError):
            log_binomial(5, -1)


class TestGraphicality:
    def test_simple_sequences(self):
        assert erdos_gallai_check([1, 1]) == (True, None)
        assert erdos_gallai_check([2, 2, 2]) == (True, None)
        assert erdos_gallai_check([0, 0, 0]) == (True, None)

    def test_odd_sum_flagged_as_index_zero(self):
        ok, idx = erdos_gallai_check([1, 1, 1])
        assert not ok and idx == 0

    def test_violating_sequence_names_first_bad_index(self):
        # one vertex of degree 3 among loners: k=1 inequality fails
        ok, idx = erdos_gallai_check([3, 1, 0, 0])
        assert not ok and idx == 1

    def test_nongraphical_raises_with_index(self):
        with pytest.raises(NonGraphicalSequenceError) as err:
            log_volume_degree_sequence((3, 1, 0, 0))
        assert err.value.violated_index == 1


class TestClosedForms:
    def test_edges_trivial_values(self):
        assert log_count(log_volume_edges(3, 3)) == pytest.approx(0.0, abs=1e-12)
        assert log_count(log_volume_edges(4, 2)) == pytest.approx(math.log(15), abs=1e-12)

    def test_edges_out_of_range(self):
        with pytest.raises(DomainError):
            log_volume_edges(3, 4)

    def test_type_mixing_values(self):
        assert log_count(log_volume_type_mixing(1, 1, 0, 1, 0)) == 0.0
        assert log_count(log_volume_type_mixing(2, 2, 1, 0, 1)) == pytest.approx(0.0, abs=1e-12)
        assert log_count(log_volume_type_mixing(2, 2, 0, 2, 0)) == pytest.approx(
            math.log(6), abs=1e-12
        )

    def test_type_mixing_block_over_capacity(self):
        with pytest.raises(DomainError):
            log_volume_type_mixing(2, 2, 2, 0, 0)

    def test_exact_methods_report_zero_error(self):
        est = log_volume_edges(10, 7)
        assert est.std_error_log == 0.0 and est.samples == 0

    def test_estimate_invariant_rejects_exact_with_error(self):
        with pytest.raises(DomainError):
            VolumeEstimate(LogValue.from_float(3.0), 0.5, VolumeMethod.EXACT)


class TestExactDegreeCounts:
    def test_single_edge_sequence(self):
        assert log_count(log_volume_degree_sequence((1, 1, 0))) == pytest.approx(0.0, abs=1e-12)

    def test_perfect_matchings_on_four(self):
        assert log_count(log_volume_degree_sequence((1, 1, 1, 1))) == pytest.approx(
            math.log(3), abs=1e-12
        )

    def test_labeled_five_cycles(self):
        assert log_count(log_volume_degree_sequence((2, 2, 2, 2, 2))) == pytest.approx(
            math.log(12), abs=1e-12
        )

    def test_distribution_small_cases(self):
        # one isolated vertex plus one edge on three nodes
        assert log_count(log_volume_degree_distribution((1, 2))) == pytest.approx(
            math.log(3), abs=1e-12
        )
        # triangle is the only graph with three degree-2 vertices
        assert log_count(log_volume_degree_distribution((0, 0, 3))) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_distribution_consistency_checks(self):
        with pytest.raises(DomainError):
            log_volume_degree_distribution((1, 1))  # odd degree sum
        with pytest.raises(DomainError):
            log_volume_degree_distribution((-1, 2))

    def test_degree_mixing_small_cases(self):
        assert log_count(log_volume_degree_mixing({(1, 1): 1}, 2)) == 0.0
        assert log_count(log_volume_degree_mixing({(1, 2): 2}, 3)) == pytest.approx(
            math.log(3), abs=1e-12
        )
        # a lone edge on four nodes leaves two isolated vertices
        assert log_count(log_volume_degree_mixing({(1, 1): 1}, 4)) == pytest.approx(
            math.log(6), abs=1e-12
        )

    def test_degree_mixing_inconsistent_cells(self):
        # three endpoints of degree 2 cannot come from whole vertices
        with pytest.raises(DomainError):
            log_volume_degree_mixing({(2, 2): 1, (1, 2): 1}, 4)

    def test_multinomial_factor_is_representative_independent(self):
        # any ordering of the same degrees realizes the same count
        a = count_degree_sequence_graphs((2, 1, 1, 0))
        b = count_degree_sequence_graphs((0, 1, 2, 1))
        assert a == b


class TestBruteForceTable:
    def test_trivial_edge_classes(self):
        assert oracle_enumerate(3, StatisticKind.EDGE_COUNT, 1) == 3
        assert oracle_enumerate(4, StatisticKind.EDGE_COUNT, 2) == 15

    def test_degree_distribution_class(self):
        assert oracle_enumerate(4, StatisticKind.DEGREE_DISTRIBUTION, (0, 4)) == 3

    def test_refusal_beyond_limit(self):
        with pytest.raises(OracleRefusalError):
            oracle_class_table(9, StatisticKind.EDGE_COUNT)

    @pytest.mark.parametrize("kind", list(StatisticKind))
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_production_table_matches_independent_enumeration(self, n, kind):
        types = typed_types(n, n // 2 + 1) if kind is StatisticKind.TYPE_MIXING else None
        ours = enumerate_classes(n, kind.value, types)
        theirs = oracle_class_table(n, kind, node_types=types)
        assert theirs == ours


class TestSampling:
    def test_seed_required_on_sampling_path(self):
        with pytest.raises(DomainError):
            log_volume_degree_distribution((0, 1, 2, 3), oracle_limit=0)

    def test_reproducible_and_seed_sensitive(self):
        kw = dict(samples=2000, oracle_limit=0)
        a = log_volume_degree_distribution((0, 1, 2, 3), seed=5, **kw)
        b = log_volume_degree_distribution((0, 1, 2, 3), seed=5, **kw)
        c = log_volume_degree_distribution((0, 1, 2, 3), seed=6, **kw)
        assert log_count(a) == log_count(b)
        assert a.std_error_log == b.std_error_log
        assert log_count(a) != log_count(c)

    def test_worker_split_is_deterministic(self):
        kw = dict(samples=4096, seed=77, oracle_limit=0)
        serial = log_volume_degree_distribution((0, 1, 2, 3), jobs=1, **kw)
        split = log_volume_degree_distribution((0, 1, 2, 3), jobs=3, **kw)
        assert log_count(serial) == log_count(split)
        assert serial.std_error_log == split.std_error_log

    def test_sampled_estimate_within_three_errors_of_truth(self):
        exact = enumerate_classes(6, "degdist")[(0, 1, 2, 3)]
        est = log_volume_degree_distribution((0, 1, 2, 3), samples=20_000, seed=9, oracle_limit=0)
        assert est.method is VolumeMethod.IMPORTANCE_SAMPLING
        assert abs(log_count(est) - math.log(exact)) <= 3.0 * est.std_error_log

    def test_error_shrinks_like_root_samples(self):
        small = log_volume_degree_distribution((0, 1, 2, 3), samples=2000, seed=3, oracle_limit=0)
        large = log_volume_degree_distribution((0, 1, 2, 3), samples=8000, seed=3, oracle_limit=0)
        ratio = small.std_error_log / large.std_error_log
        assert 1.3 < ratio < 3.0

    def test_degree_mixing_sampler_against_truth(self):
        table = enumerate_classes(6, "degmix")
        key = ((1, 3, 1), (2, 3, 4), (3, 3, 2))
        cells = {(k, l): c for k, l, c in key}
        est = log_volume_degree_mixing(cells, 6, samples=20_000, seed=9, oracle_limit=0)
        assert abs(log_count(est) - math.log(table[key])) <= 3.0 * est.std_error_log


class TestVolumeDispatch:
    @pytest.mark.parametrize("kind", list(StatisticKind))
    def test_dispatch_agrees_with_direct_calls(self, kind):
        g = er_graph(6, 0.45, 21, n_primary=3)
        sv = compute_statistic(g, kind)
        est = volume_for_statistic(sv)
        table = enumerate_classes(
            6, kind.value, g.node_type if kind is StatisticKind.TYPE_MIXING else None
        )
        assert log_count(est) == pytest.approx(
            math.log(table[statistic_key(sv)]), abs=1e-9
        )
