import itertools

import numpy as np
import pytest

from wirecube import (
    Embedding,
    SearchBudget,
    SearchResult,
    anneal_search,
    brute_force_min,
    formula_wl,
    gray_embedding,
    parse_host,
    random_embedding,
    transposition_delta,
    verify_spec,
    wl_direct,
)
import wirecube.search as search_mod

from oracles import bfs_distance_table
from wirecube.host import host_edges
from wirecube.cube import hypercube_edges


def test_budget_validation():
    SearchBudget()
    with pytest.raises(ValueError, match="method"):
        SearchBudget(method="random")
    with pytest.raises(ValueError, match="restarts"):
        SearchBudget(restarts=0)
    with pytest.raises(ValueError, match="iterations"):
        SearchBudget(iterations_per_restart=0)
    with pytest.raises(ValueError, match="temperature"):
        SearchBudget(initial_temperature=0.0)
    with pytest.raises(ValueError, match="cooling"):
        SearchBudget(cooling_rate=1.5)
    with pytest.raises(ValueError, match="seed"):
        SearchBudget(seed=-1)


def _oracle_minimum(text):
    """Exact minimum by permutation scan with BFS distances, nothing shared
    with the library's engines."""
    spec = parse_host(text)
    table = bfs_distance_table(spec.size, host_edges(spec))
    edges = hypercube_edges(spec.n)
    best = None
    for perm in itertools.permutations(range(spec.size)):
        total = sum(int(table[perm[u], perm[v]]) for u, v in edges)
        best = total if best is None else min(best, total)
    return best


def test_brute_force_c4():
    res = brute_force_min(parse_host("C4"), SearchBudget(method="brute"))
    assert res.best_wirelength == 4
    assert res.evaluations == 24
    assert res.matched_formula is True
    assert wl_direct(res.best_embedding).total == 4
    assert res.best_wirelength == _oracle_minimum("C4")


def test_brute_force_p4():
    res = brute_force_min(parse_host("P4"), SearchBudget(method="brute"))
    assert res.best_wirelength == 6
    assert res.best_wirelength == _oracle_minimum("P4")


@pytest.mark.parametrize("text", ["P2", "C4", "P4", "P2xP2"])
def test_brute_force_pruning_preserves_minimum(text):
    spec = parse_host(text)
    budget = SearchBudget(method="brute")
    full = brute_force_min(spec, budget)
    pruned = brute_force_min(spec, budget, fix_origin=True)
    assert pruned.best_wirelength == full.best_wirelength
    assert pruned.evaluations == full.evaluations // spec.size
    assert int(pruned.best_embedding.map[0]) == 0


def test_brute_force_refuses_large_instances():
    with pytest.raises(ValueError, match="too large"):
        brute_force_min(parse_host("C4xC4"), SearchBudget(method="brute"))
    with pytest.raises(ValueError, match="cap above 10"):
        brute_force_min(parse_host("C4xC4"), SearchBudget(method="brute", max_vertices=16))
    # the default cap admits three-dimensional cubes
    res = brute_force_min(parse_host("P2xP2xP2"), SearchBudget(method="brute"))
    assert res.best_wirelength == 12  # every edge has length 1 in the matching grid


def test_anneal_deterministic():
    spec = parse_host("C4xC4")
    budget = SearchBudget(restarts=4, iterations_per_restart=2000, seed=42)
    first = anneal_search(spec, budget)
    second = anneal_search(spec, budget)
    assert first.best_wirelength == second.best_wirelength
    assert np.array_equal(first.best_embedding.map, second.best_embedding.map)
    assert first.evaluations == second.evaluations == 4 * 2000


def test_anneal_seed_changes_stream():
    spec = parse_host("C8xP4")
    a = anneal_search(spec, SearchBudget(restarts=2, iterations_per_restart=500, seed=1))
    b = anneal_search(spec, SearchBudget(restarts=2, iterations_per_restart=500, seed=2))
    # totals may coincide, the walks must not
    assert not np.array_equal(a.best_embedding.map, b.best_embedding.map)


def test_anneal_c4xc4_reaches_formula():
    spec = parse_host("C4xC4")
    res = anneal_search(spec, SearchBudget(restarts=8, iterations_per_restart=20_000, seed=7))
    assert res.best_wirelength >= 32
    seeded = anneal_search(
        spec,
        SearchBudget(restarts=2, iterations_per_restart=1000, seed=7),
        initial=gray_embedding(spec),
    )
    assert seeded.best_wirelength == 32
    assert seeded.matched_formula is True


def test_anneal_never_improves_on_formula():
    spec = parse_host("C8xC4")
    res = anneal_search(
        spec,
        SearchBudget(restarts=4, iterations_per_restart=30_000, seed=11),
        initial=gray_embedding(spec),
    )
    assert res.best_wirelength >= formula_wl(spec)[0] == 112


def test_anneal_rejects_foreign_initial():
    with pytest.raises(ValueError, match="different host"):
        anneal_search(
            parse_host("C4xC4"),
            SearchBudget(restarts=1, iterations_per_restart=10),
            initial=gray_embedding(parse_host("P16")),
        )


def test_python_fallback_matches_jit(monkeypatch):
    spec = parse_host("C8xP4")
    budget = SearchBudget(restarts=2, iterations_per_restart=3000, seed=5)
    jit = anneal_search(spec, budget)
    monkeypatch.setenv("WIRECUBE_NO_JIT", "1")
    search_mod._LOOPS.clear()
    try:
        plain = anneal_search(spec, budget)
    finally:
        monkeypatch.delenv("WIRECUBE_NO_JIT")
        search_mod._LOOPS.clear()
    assert plain.best_wirelength == jit.best_wirelength
    assert np.array_equal(plain.best_embedding.map, jit.best_embedding.map)


def test_thread_count_does_not_change_result(monkeypatch):
    spec = parse_host("P16")
    budget = SearchBudget(restarts=4, iterations_per_restart=2000, seed=3)
    monkeypatch.setenv("WIRECUBE_THREADS", "1")
    serial = anneal_search(spec, budget)
    monkeypatch.setenv("WIRECUBE_THREADS", "3")
    threaded = anneal_search(spec, budget)
    assert serial.best_wirelength == threaded.best_wirelength
    assert np.array_equal(serial.best_embedding.map, threaded.best_embedding.map)


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("WIRECUBE_THREADS", "many")
    with pytest.raises(ValueError, match="WIRECUBE_THREADS"):
        anneal_search(parse_host("C4"), SearchBudget(restarts=1, iterations_per_restart=10))
    monkeypatch.setenv("WIRECUBE_THREADS", "-2")
    with pytest.raises(ValueError, match="non-negative"):
        anneal_search(parse_host("C4"), SearchBudget(restarts=1, iterations_per_restart=10))


@pytest.mark.parametrize("text", ["C8xP4", "P16"])
def test_transposition_delta_matches_recompute(text):
    spec = parse_host(text)
    rng = np.random.default_rng([17, spec.n])
    emb = random_embedding(spec, rng)
    base = wl_direct(emb).total
    for _ in range(1000):
        u, v = rng.integers(0, spec.size, size=2)
        delta = transposition_delta(emb, int(u), int(v))
        swapped = emb.map.copy()
        swapped[u], swapped[v] = swapped[v], swapped[u]
        assert base + delta == wl_direct(Embedding(spec, swapped)).total


def test_transposition_delta_validation():
    emb = gray_embedding(parse_host("C4"))
    assert transposition_delta(emb, 1, 1) == 0
    with pytest.raises(ValueError, match="out of range"):
        transposition_delta(emb, 0, 4)


def test_search_result_as_dict():
    res = brute_force_min(parse_host("C4"), SearchBudget(method="brute"))
    doc = res.as_dict()
    assert doc["best_wirelength"] == 4
    assert doc["matched_formula"] is True
    assert doc["best_embedding"]["host"] == "C4"
    assert sorted(doc["best_embedding"]["map"]) == [0, 1, 2, 3]


def test_verify_quick_passes():
    report = verify_spec(parse_host("C4xC4"), depth="quick")
    assert report.passed
    assert report.host == "C4xC4" and report.depth == "quick"
    names = [c.name for c in report.checks]
    assert "engines_agree" in names
    assert "gray_attains_formula" in names
    assert "brute_minimum" not in names
    doc = report.as_dict()
    assert doc["passed"] is True
    assert all(set(c) >= {"name", "passed", "detail"} for c in doc["checks"])


def test_verify_full_small_host():
    budget = SearchBudget(restarts=2, iterations_per_restart=2000)
    report = verify_spec(parse_host("P8"), depth="full", budget=budget)
    assert report.passed
    names = [c.name for c in report.checks]
    assert "brute_minimum" in names
    assert "anneal_not_below_formula" in names


def test_verify_exponent_one_host():
    # no closed form applies, the structural checks still run and pass
    report = verify_spec(parse_host("P2xC4"), depth="quick")
    assert report.passed
    names = [c.name for c in report.checks]
    assert "gray_attains_formula" not in names
    assert "engines_agree" in names


def test_verify_rejects_bad_depth():
    with pytest.raises(ValueError, match="depth"):
        verify_spec(parse_host("C4"), depth="exhaustive")


def test_verify_deterministic():
    a = verify_spec(parse_host("C8xP4"), depth="quick", seed=9)
    b = verify_spec(parse_host("C8xP4"), depth="quick", seed=9)
    assert a.as_dict() == b.as_dict()


def test_check_result_counterexample_serialization():
    from wirecube.search import CheckResult, VerifyReport

    check = CheckResult("demo", False, "broken", {"vertex": 3})
    report = VerifyReport(host="C4", depth="quick", checks=[check])
    assert not report.passed
    doc = report.as_dict()
    assert doc["checks"][0]["counterexample"] == {"vertex": 3}
