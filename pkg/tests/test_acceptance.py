"""Acceptance suite.

One test per acceptance criterion; each prints a PASS line with the
measured values (run with ``pytest -s`` to see them).

The corpus-dependent criteria need the public Enron email corpus in the
documented CSV schema (message_id,timestamp,sender,to,cc,bcc with
;-separated recipient lists). Point BCCTRUST_ENRON_CSV at that file to
enable them; they skip otherwise. Counts are checked exactly, with a
documented allowance of 0.5% for address-normalization drift.

The property suite and the determinism criterion are standalone.
"""

from __future__ import annotations

import os
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

from bcctrust import cli, corpus
from bcctrust.centrality import betweenness_centrality, eigenvector_centrality, select_mi, select_mm
from bcctrust.ego import ego_subnetwork
from bcctrust.graph import AddressRegistry, build_trust_graph
from bcctrust.report import summary_report
from bcctrust.search import SuspectList, all_geodesics, common_nodes, hop_distance, run_trust_search
from oracles import (
    adjacency,
    betweenness_by_pair_dependency,
    bfs_levels,
    dense_principal_eigenvector,
    enumerate_geodesics,
    make_graph,
    random_digraph,
    reachable_by_relaxation,
)

ENRON_ENV = "BCCTRUST_ENRON_CSV"
COUNT_DRIFT_ALLOWANCE = 0.005  # documented normalization drift bound

requires_enron = pytest.mark.skipif(
    ENRON_ENV not in os.environ,
    reason=f"set {ENRON_ENV} to the Enron corpus CSV to run the corpus-dependent criteria",
)

# convicted money-laundering suspects; ids are the dataset's own numbering
CRIMINALS = {
    "686": "andrew.fastow@enron.com",
    "687": "andrew.fastow@ljminvestments.com",
    "11010": "lfastow@pop.pdq.net",
    "11009": "lfastow@pdq.net",
    "10068": "kevin.hannon@enron.com",
    "9994": "kenneth.rice@enron.com",
    "15224": "rex.shelby@enron.com",
    "15225": "rex_shelby@enron.net",
    "205": "adnankkhan@hotmail.com",
    "12708": "michael.kopper@enron.com",
    "1369": "ben.glisan@enron.com",
    "8716": "joe.hirko@enron.com",
    "861": "anne.yaeger@enron.com",
}
CRIMINAL_ADDRESSES = list(CRIMINALS.values())

FINANCIAL_MANAGERS = [
    "sherron.watkins@enron.com",
    "andrew.fastow@enron.com",
    "andrew.fastow@ljminvestments.com",
    "ben.glisan@enron.com",
    "rcausey@enron.com",
    "jeffrey.mcmahon@enron.com",
]

MI_ADDRESS = "vince.kaminski@enron.com"
MM_ADDRESS = "sara.shackleton@enron.com"


def _check_count(actual: int, expected: int, what: str) -> None:
    drift = abs(actual - expected) / expected
    assert drift <= COUNT_DRIFT_ALLOWANCE, (
        f"{what}: got {actual}, expected {expected} (drift {drift:.3%})"
    )
    if actual != expected:
        warnings.warn(f"{what}: {actual} vs {expected}, within the documented drift bound")


class EnronData:
    """Parsed corpus, both k-BCC graphs, and both criminal-run networks."""

    def __init__(self, path: str):
        start = time.perf_counter()
        with open(path, encoding="utf-8", newline="") as fh:
            parse = corpus.parse_email_records(fh, "csv")
        self.records = parse.records
        self.skipped = parse.skipped_count
        self.bcc = corpus.filter_bcc_emails(self.records)
        self.at_most, self.above = corpus.partition_by_recipient_count(self.bcc)
        self.ingest_seconds = time.perf_counter() - start
        self.registry = AddressRegistry()
        self.graphs = {
            1: build_trust_graph(corpus.select_k_bcc(self.bcc, 1), self.registry),
            2: build_trust_graph(corpus.select_k_bcc(self.bcc, 2), self.registry),
        }
        self._networks: dict[tuple[int, str], object] = {}

    def network(self, k: int, kind: str):
        if (k, kind) not in self._networks:
            addresses = CRIMINAL_ADDRESSES if kind == "criminal" else FINANCIAL_MANAGERS
            self._networks[(k, kind)] = run_trust_search(
                self.graphs[k], SuspectList.from_addresses(addresses)
            )
        return self._networks[(k, kind)]

    def criminals_in(self, trustnet) -> set[str]:
        present = set()
        for address in CRIMINAL_ADDRESSES:
            node = self.registry.resolve(address)
            if node is not None and trustnet.graph.has_node(node):
                present.add(address)
        return present


@pytest.fixture(scope="module")
def enron():
    return EnronData(os.environ[ENRON_ENV])


@requires_enron
def test_corpus_counts(enron):
    _check_count(len(enron.bcc), 60649, "emails with bcc recipients")
    _check_count(len(enron.above), 34195, "bcc emails with more than 5 recipients")
    _check_count(len(enron.at_most), 26454, "bcc emails with at most 5 recipients")
    assert enron.ingest_seconds < 180, f"ingest+stats took {enron.ingest_seconds:.1f}s"
    print(
        f"PASS: corpus counts bcc={len(enron.bcc)} above={len(enron.above)} "
        f"at_most={len(enron.at_most)} in {enron.ingest_seconds:.1f}s"
    )


@requires_enron
def test_graph_counts(enron):
    g1, g2 = enron.graphs[1], enron.graphs[2]
    _check_count(g1.node_count, 5290, "1-BCC nodes")
    _check_count(g1.edge_count, 17838, "1-BCC edges")
    _check_count(g2.node_count, 3766, "2-BCC nodes")
    _check_count(g2.edge_count, 13486, "2-BCC edges")
    print(
        f"PASS: graph counts 1-BCC {g1.node_count}/{g1.edge_count}, "
        f"2-BCC {g2.node_count}/{g2.edge_count}"
    )


@requires_enron
def test_centrality_identities(enron):
    graph = enron.graphs[1]
    for ego_address in (
        "andrew.fastow@enron.com",
        "lfastow@pop.pdq.net",
        "kevin.hannon@enron.com",
    ):
        ego = enron.registry.resolve(ego_address)
        assert ego is not None and graph.has_node(ego), f"{ego_address} missing from 1-BCC"
        subnet = ego_subnetwork(graph, ego)
        mi = select_mi(subnet.subgraph, exclude=(ego,))
        mm = select_mm(subnet.subgraph, exclude=(ego,))
        assert mi.status == "ok" and enron.registry.reverse_resolve(mi.node) == MI_ADDRESS, ego_address
        assert mm.status == "ok" and enron.registry.reverse_resolve(mm.node) == MM_ADDRESS, ego_address
    print(f"PASS: MI={MI_ADDRESS} and MM={MM_ADDRESS} from all three ego subnetworks")


@requires_enron
def test_algorithm_outcomes_1bcc(enron):
    graph = enron.graphs[1]
    # the two tiny ego subnetworks drop as degenerate
    rice = enron.registry.resolve(CRIMINALS["9994"])
    khan = enron.registry.resolve(CRIMINALS["205"])
    assert rice is not None and graph.has_node(rice), "kenneth rice missing from 1-BCC"
    assert khan is not None and graph.has_node(khan), "a. khan missing from 1-BCC"
    assert ego_subnetwork(graph, rice).subgraph.node_count == 2
    assert ego_subnetwork(graph, khan).subgraph.node_count == 3

    net = enron.network(1, "criminal")
    dropped = {enron.registry.reverse_resolve(e) for e, _ in net.dropped}
    assert CRIMINALS["9994"] in dropped and CRIMINALS["205"] in dropped

    expected = {CRIMINALS["686"], CRIMINALS["11010"], CRIMINALS["10068"]}
    assert enron.criminals_in(net) == expected
    mi = enron.registry.resolve(MI_ADDRESS)
    mm = enron.registry.resolve(MM_ADDRESS)
    for address in expected:
        suspect = enron.registry.resolve(address)
        for central in (mi, mm):
            hops = hop_distance(net, suspect, central)
            assert hops is not None and 2 <= hops <= 5, (address, hops)
    print(f"PASS: 1-BCC network criminals {sorted(expected)} all 2-5 hops from MI and MM")


@requires_enron
def test_algorithm_outcomes_2bcc(enron):
    net = enron.network(2, "criminal")
    expected = {
        CRIMINALS[i] for i in ("686", "687", "11010", "10068", "1369", "9994", "15224")
    }
    assert enron.criminals_in(net) == expected
    hannon = enron.registry.resolve(CRIMINALS["10068"])
    for central_address in (MI_ADDRESS, MM_ADDRESS):
        hops = hop_distance(net, hannon, enron.registry.resolve(central_address))
        assert hops is not None and 2 <= hops <= 4, (central_address, hops)
    report = summary_report(net)
    end_addresses = set(report.end_nodes)
    expected_end = {CRIMINALS[i] for i in ("686", "687", "1369", "15224", "9994")}
    assert end_addresses >= expected_end
    assert CRIMINALS["10068"] not in end_addresses
    assert CRIMINALS["11010"] not in end_addresses
    print(f"PASS: 2-BCC network criminals {sorted(expected)}; end nodes include {sorted(expected_end)}")


@requires_enron
def test_first_suspect_and_common_nodes(enron):
    net1 = enron.network(1, "manager")
    names = {enron.registry.reverse_resolve(int(n)) for n in net1.graph.nodes()}
    assert "andrew.fastow@enron.com" in names
    assert "jeffrey.mcmahon@enron.com" in names
    assert enron.criminals_in(net1) == {"andrew.fastow@enron.com"}

    shared1 = common_nodes(enron.network(1, "criminal"), net1)
    shared1_names = {enron.registry.reverse_resolve(n) for n in shared1}
    assert len(shared1) == 9, sorted(shared1_names)
    for member in (MM_ADDRESS, "andrew.fastow@enron.com", "louise.kitchen@enron.com", MI_ADDRESS):
        assert member in shared1_names

    shared2 = common_nodes(enron.network(2, "criminal"), enron.network(2, "manager"))
    assert len(shared2) == 10, sorted(enron.registry.reverse_resolve(n) for n in shared2)
    print("PASS: first-suspect networks and common-node counts (9 and 10)")


# -- standalone property suite ------------------------------------------------

_property_clock = {"start": None, "budget": 60.0}


@pytest.fixture(scope="module", autouse=True)
def _start_property_clock():
    _property_clock["start"] = time.perf_counter()
    yield


def test_property_betweenness_matches_brute_force():
    rng = np.random.default_rng(20240601)
    for trial in range(200):
        n = int(rng.integers(3, 51))
        edges = random_digraph(rng, n, min(0.9, 2.5 / n))
        graph, ids = make_graph(edges, n=n)
        scores = betweenness_centrality(graph).scores
        expected = betweenness_by_pair_dependency(adjacency(edges, n), n)
        actual = [scores[ids[i]] for i in range(n)]
        np.testing.assert_allclose(actual, expected, atol=1e-9, err_msg=f"trial {trial}")
    print("PASS: Brandes betweenness equals brute force on 200 random digraphs (<=50 nodes)")


def test_property_eigenvector_matches_dense_oracle():
    rng = np.random.default_rng(20240602)
    checked = 0
    while checked < 100:
        n = int(rng.integers(4, 25))
        edges = random_digraph(rng, n, 0.18)
        if not edges:
            continue
        graph, ids = make_graph(edges, n=n)
        result = eigenvector_centrality(graph)
        assert result.converged
        expected = dense_principal_eigenvector(edges, n)
        actual = np.array([result.scores[ids[i]] for i in range(n)])
        np.testing.assert_allclose(actual, expected, atol=1e-6, err_msg=f"case {checked}")
        checked += 1
    print("PASS: eigenvector centrality matches the dense oracle on 100 random graphs")


def test_property_geodesics_match_bounded_dfs():
    rng = np.random.default_rng(20240603)
    for trial in range(40):
        n = int(rng.integers(4, 31))
        edges = random_digraph(rng, n, 0.12)
        graph, ids = make_graph(edges, n=n)
        adj = adjacency(edges, n)
        source, target = (int(x) for x in rng.choice(n, size=2, replace=False))
        expected = {
            tuple(ids[v] for v in p) for p in enumerate_geodesics(adj, source, target)
        }
        actual = all_geodesics(graph, ids[source], ids[target])
        assert actual == expected, f"trial {trial}"
        dist = bfs_levels(adj, source)
        for path in actual:
            assert len(path) - 1 == dist[target]
    print("PASS: all_geodesics equals bounded DFS enumeration with BFS-length paths")


def test_property_ego_components_match_transitive_closure():
    rng = np.random.default_rng(20240604)
    for trial in range(30):
        n = int(rng.integers(3, 45))
        edges = random_digraph(rng, n, 2.0 / n)
        graph, ids = make_graph(edges, n=n)
        ego = int(rng.integers(n))
        net = ego_subnetwork(graph, ids[ego])
        assert net.out_component == {ids[v] for v in reachable_by_relaxation(edges, n, ego)}
        assert net.in_component == {
            ids[v] for v in reachable_by_relaxation(edges, n, ego, reverse=True)
        }
    print("PASS: ego components equal the transitive-closure oracle")


def test_property_trust_network_soundness_and_order_invariance():
    rng = np.random.default_rng(20240605)
    trials = 0
    while trials < 20:
        n = int(rng.integers(8, 30))
        edges = random_digraph(rng, n, 2.5 / n)
        if not edges:
            continue
        graph, ids = make_graph(edges, n=n)
        suspect_count = int(rng.integers(2, 5))
        chosen = rng.choice(graph.nodes(), size=min(suspect_count, graph.node_count), replace=False)
        addresses = [graph.registry.reverse_resolve(int(x)) for x in chosen]
        net = run_trust_search(graph, SuspectList.from_addresses(addresses))

        # provenance soundness: merged edges are exactly the path edges
        path_edges = set()
        for res in net.path_results:
            sub = ego_subnetwork(graph, res.ego).subgraph
            for path in res.paths:
                for u, v in zip(path, path[1:]):
                    assert sub.has_edge(u, v)
                    path_edges.add((u, v))
        assert set(net.graph.edges()) == path_edges
        assert set(net.provenance) == path_edges
        assert all(net.provenance.values())

        # suspect order never changes the merged result
        permuted = list(addresses)
        rng.shuffle(permuted)
        net_permuted = run_trust_search(graph, SuspectList.from_addresses(permuted))
        assert set(net_permuted.graph.edges()) == set(net.graph.edges())
        assert dict(net_permuted.provenance) == dict(net.provenance)
        assert net_permuted.mi_mm == net.mi_mm
        trials += 1
    print("PASS: provenance soundness and suspect-order invariance on randomized runs")


def test_property_suite_runtime():
    elapsed = time.perf_counter() - _property_clock["start"]
    assert elapsed < _property_clock["budget"], f"property suite took {elapsed:.1f}s"
    print(f"PASS: property suite finished in {elapsed:.1f}s (< 60s)")


def test_determinism_full_pipeline(data_dir, tmp_path):
    def run_once(out: Path) -> dict[str, bytes]:
        code = cli.main(
            ["pipeline", "--input", str(data_dir / "corpus.csv"), "--format", "csv",
             "--k", "1", "--suspects", str(data_dir / "suspects.txt"), "--out", str(out)]
        )
        assert code == cli.EXIT_OK
        return {
            str(p.relative_to(out)): p.read_bytes()
            for p in sorted(out.rglob("*"))
            if p.is_file()
        }

    first = run_once(tmp_path / "run1")
    second = run_once(tmp_path / "run2")
    assert first == second
    print("PASS: two consecutive pipeline runs produced byte-identical artifacts")
