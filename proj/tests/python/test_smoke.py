"""Smoke tests for the python bindings: a thin pass over the main
operations, end to end on the bundled fixtures."""

import json
import os
from pathlib import Path

import pytest

import egomap

FIXTURES = Path(os.environ["EGOMAP_FIXTURES_DIR"])


@pytest.fixture(scope="module")
def researcher2():
    return egomap.load_archive(FIXTURES / "researcher2" / "archive.json")


def test_relations_summary(researcher2):
    summary = egomap.relations_summary(researcher2)
    assert (summary.followers, summary.followees, summary.community) == (221, 232, 110)


def test_community_and_graph(researcher2):
    community = egomap.interaction_community(researcher2)
    assert len(community) == 110
    graph = egomap.build_graph(researcher2)
    assert len(graph.nodes) == 110
    assert researcher2.ego.id not in graph.nodes
    for u, v in graph.edges:
        assert u in graph.nodes and v in graph.nodes


def test_archive_round_trip(researcher2, tmp_path):
    path = tmp_path / "copy.json"
    egomap.save_archive(researcher2, path)
    assert egomap.load_archive(path) == researcher2


def test_shares_and_profile(researcher2):
    community = egomap.interaction_community(researcher2)
    coding = egomap.load_coding_sheet(FIXTURES / "researcher2" / "coding.csv", community)
    graph = egomap.build_graph(researcher2)
    ag = egomap.annotate(graph, coding, "Netherlands")

    shares = egomap.category_shares(ag, "affiliation")
    assert shares.total == 110
    assert shares.counts["unknown"] == 6
    non_academic = sum(
        shares.shares[c] for c in ("private_sector", "public_sector", "politician", "ngo")
    )
    assert abs(non_academic * 100 - 45.0) <= 1.0

    undirected = egomap.symmetrize(graph, "any")
    clustering = egomap.cluster(undirected, resolution=1.0, seed=7)
    assert abs(
        clustering.modularity
        - egomap.partition_modularity(undirected, clustering.assignment, 1.0)
    ) < 1e-9

    profile = egomap.classify_profile(ag, clustering)
    assert profile.label == "locally_engaged"


def test_layout_and_exports(researcher2):
    community = egomap.interaction_community(researcher2)
    coding = egomap.load_coding_sheet(FIXTURES / "researcher2" / "coding.csv", community)
    graph = egomap.build_graph(researcher2)
    ag = egomap.annotate(graph, coding, "Netherlands")
    undirected = egomap.symmetrize(graph, "any")
    clustering = egomap.cluster(undirected, resolution=1.0, seed=7)
    positions = egomap.layout(undirected, seed=7, iterations=30)
    assert len(positions.positions) == 110
    again = egomap.layout(undirected, seed=7, iterations=30)
    assert positions.positions == again.positions

    doc = egomap.export_graph(ag, clustering, positions, "graphml")
    assert doc.count("<node ") == 110
    svg = egomap.render_svg(positions, ag, clustering, color_by="affiliation")
    assert svg.startswith("<svg")


def test_synth_determinism():
    spec = (FIXTURES / "synth" / "two_pole_spec.json").read_text()
    archive_a, truth_a = egomap.synth_generate(spec)
    archive_b, truth_b = egomap.synth_generate(spec)
    assert archive_a == archive_b
    assert len(truth_a) == 110
    poles = {entry.pole for entry in truth_a.values()}
    assert poles == {0, 1}
    assert truth_b.keys() == truth_a.keys()


def test_fetch_from_fixture(researcher2):
    budget = egomap.FetchBudget()
    budget.max_requests_per_window = 100000
    fetched = egomap.fetch_from_fixture(
        researcher2, "researcher_2", budget, researcher2.fetched_at
    )
    assert fetched == researcher2


def test_run_pipeline(tmp_path):
    config = {
        "home_country": "Netherlands",
        "archive": str(FIXTURES / "researcher1" / "archive.json"),
        "coding_sheet": str(FIXTURES / "researcher1" / "coding.csv"),
        "output_dir": str(tmp_path / "out"),
        "clustering": {"resolution": 1.0, "seed": 7},
        "layout": {"seed": 7, "iterations": 50},
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    report = json.loads(egomap.run_pipeline(config_path))
    assert report["profile"]["label"] == "globally_academic"
    assert report["relations"]["community"] == 44
    assert (tmp_path / "out" / "network.svg").exists()
    errors = egomap.EgomapError
    with pytest.raises(errors):
        egomap.load_archive(tmp_path / "does_not_exist.json")
