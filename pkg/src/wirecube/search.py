"""Optimality searches and a per-host invariant verification suite.

Brute force enumerates every embedding of tiny hosts exactly; the annealer
runs seeded restart chains of image transpositions with an O(n) incremental
wirelength delta. Both report whether the best value found matches the
closed form. verify_spec bundles the cross-engine and structural checks
into a pass/fail report for one host.
"""

from __future__ import annotations

import itertools
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cube import VertexSubset, block_product, theta
from .host import (
    HostSpec,
    cut_edges,
    cuts,
    host_distance,
    host_edges,
    induced_set,
    separating_cuts,
    unflatten,
)
from .wirelength import (
    Embedding,
    _factor_cut_thetas,
    _flat_distance_sum,
    _wl_direct_batch,
    formula_wl,
    gray_embedding,
    random_embedding,
    wl_cut,
    wl_cut_naive,
    wl_direct,
)


@dataclass
class SearchBudget:
    """Resource limits and RNG seed for the optimality searches."""

    method: str = "anneal"
    max_vertices: int = 8
    restarts: int = 20
    iterations_per_restart: int = 100_000
    initial_temperature: float | None = None
    cooling_rate: float = 0.999
    seed: int = 0

    def __post_init__(self) -> None:
        if self.method not in ("brute", "anneal"):
            raise ValueError(f"method must be 'brute' or 'anneal', got {self.method!r}")
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.iterations_per_restart < 1:
            raise ValueError("iterations_per_restart must be at least 1")
        if self.initial_temperature is not None and not self.initial_temperature > 0.0:
            raise ValueError("initial_temperature must be positive")
        if not 0.0 < self.cooling_rate <= 1.0:
            raise ValueError("cooling_rate must be in (0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass
class SearchResult:
    """Outcome of one search run."""

    best_wirelength: int
    best_embedding: Embedding
    evaluations: int
    matched_formula: bool | None

    def as_dict(self) -> dict:
        return {
            "best_wirelength": int(self.best_wirelength),
            "evaluations": int(self.evaluations),
            "matched_formula": self.matched_formula,
            "best_embedding": self.best_embedding.to_document(),
        }


def _distance_table(spec: HostSpec) -> np.ndarray:
    flat = np.arange(spec.size, dtype=np.int64)
    return _flat_distance_sum(spec, flat[:, None], flat[None, :])


def _formula_match(spec: HostSpec, best: int) -> bool | None:
    if all(f.exponent >= 2 for f in spec.factors):
        return best == formula_wl(spec)[0]
    return None


def brute_force_min(spec: HostSpec, budget: SearchBudget, fix_origin: bool = False) -> SearchResult:
    """Exact minimum wirelength by enumerating embeddings of a tiny host.

    With fix_origin=True only embeddings sending cube vertex 0 to flat host
    index 0 are scanned. That loses no minima: XOR translation by any fixed
    vertex is a cube automorphism, so each embedding has an equal-wirelength
    translate that sends 0 wherever we like.
    """
    if budget.max_vertices > 10:
        raise ValueError("brute-force cap above 10 vertices is not supported")
    size = spec.size
    if size > budget.max_vertices:
        raise ValueError(
            f"instance too large for brute force: {size} vertices exceed the cap"
            f" of {budget.max_vertices}"
        )
    from .cube import hypercube_edges

    table = _distance_table(spec)
    edges = hypercube_edges(spec.n)
    if fix_origin:
        perms = np.array(
            [(0,) + p for p in itertools.permutations(range(1, size))], dtype=np.int64
        )
    else:
        perms = np.array(list(itertools.permutations(range(size))), dtype=np.int64)
    totals = table[perms[:, edges[:, 0]], perms[:, edges[:, 1]]].sum(axis=1)
    idx = int(totals.argmin())
    best_total = int(totals[idx])
    best = Embedding(spec, perms[idx])
    if wl_direct(best).total != best_total:
        raise RuntimeError("distance-table wirelength diverged from the direct engine")
    return SearchResult(
        best_wirelength=best_total,
        best_embedding=best,
        evaluations=int(perms.shape[0]),
        matched_formula=_formula_match(spec, best_total),
    )


def _anneal_loop(pos, start_total, a_arr, b_arr, thresh, n, shifts, masks, sizes, is_cycle):
    # hot loop: also compiled by numba, so keep it to plain indexing and ints
    kf = shifts.shape[0]
    ca = np.empty(kf, np.int64)
    cb = np.empty(kf, np.int64)
    cur = start_total
    best = start_total
    best_pos = pos.copy()
    for it in range(a_arr.shape[0]):
        va = a_arr[it]
        vb = b_arr[it]
        if va == vb:
            continue
        pa = pos[va]
        pb = pos[vb]
        for f in range(kf):
            ca[f] = (pa >> shifts[f]) & masks[f]
            cb[f] = (pb >> shifts[f]) & masks[f]
        delta = 0
        for t in range(n):
            w = va ^ (1 << t)
            if w != vb:
                pw = pos[w]
                for f in range(kf):
                    cw = (pw >> shifts[f]) & masks[f]
                    d_new = cb[f] - cw
                    if d_new < 0:
                        d_new = -d_new
                    d_old = ca[f] - cw
                    if d_old < 0:
                        d_old = -d_old
                    if is_cycle[f]:
                        alt = sizes[f] - d_new
                        if alt < d_new:
                            d_new = alt
                        alt = sizes[f] - d_old
                        if alt < d_old:
                            d_old = alt
                    delta += d_new - d_old
            w = vb ^ (1 << t)
            if w != va:
                pw = pos[w]
                for f in range(kf):
                    cw = (pw >> shifts[f]) & masks[f]
                    d_new = ca[f] - cw
                    if d_new < 0:
                        d_new = -d_new
                    d_old = cb[f] - cw
                    if d_old < 0:
                        d_old = -d_old
                    if is_cycle[f]:
                        alt = sizes[f] - d_new
                        if alt < d_new:
                            d_new = alt
                        alt = sizes[f] - d_old
                        if alt < d_old:
                            d_old = alt
                    delta += d_new - d_old
        if delta <= 0 or delta < thresh[it]:
            pos[va] = pb
            pos[vb] = pa
            cur += delta
            if cur < best:
                best = cur
                best_pos[:] = pos
    return best, best_pos


_LOOPS: dict[bool, object] = {}


def _get_loop():
    """The annealing loop, JIT-compiled unless WIRECUBE_NO_JIT is set."""
    use_python = os.environ.get("WIRECUBE_NO_JIT", "") not in ("", "0")
    if use_python not in _LOOPS:
        if use_python:
            _LOOPS[True] = _anneal_loop
        else:
            try:
                import numba
            except ImportError:
                _LOOPS[False] = _anneal_loop
            else:
                _LOOPS[False] = numba.njit(cache=True, nogil=True)(_anneal_loop)
    return _LOOPS[use_python]


def _worker_count(restarts: int) -> int:
    raw = os.environ.get("WIRECUBE_THREADS", "").strip()
    requested = 0
    if raw:
        try:
            requested = int(raw)
        except ValueError:
            raise ValueError(f"WIRECUBE_THREADS must be an integer, got {raw!r}") from None
        if requested < 0:
            raise ValueError("WIRECUBE_THREADS must be non-negative (0 means auto)")
    if requested == 0:
        requested = os.cpu_count() or 1
    return min(requested, restarts)


def anneal_search(
    spec: HostSpec, budget: SearchBudget, initial: Embedding | None = None
) -> SearchResult:
    """Restart annealing over image transpositions.

    Restart streams are spawned from the budget seed, and proposal pairs and
    acceptance thresholds are drawn up front, so results are reproducible
    and independent of the thread count. Restart 0 starts from `initial`
    when given, all other restarts from random permutations.
    """
    if initial is not None and initial.spec != spec:
        raise ValueError("initial embedding describes a different host")
    size = spec.size
    n = spec.n
    iters = budget.iterations_per_restart
    t0 = budget.initial_temperature if budget.initial_temperature is not None else 2.0 * n
    temps = t0 * budget.cooling_rate ** np.arange(iters, dtype=np.float64)
    shifts = np.array(spec.shifts, dtype=np.int64)
    masks = np.array([f.size - 1 for f in spec.factors], dtype=np.int64)
    sizes = np.array([f.size for f in spec.factors], dtype=np.int64)
    is_cycle = np.array([f.is_cycle for f in spec.factors], dtype=np.bool_)
    children = np.random.SeedSequence(budget.seed).spawn(budget.restarts)
    loop = _get_loop()

    def run_restart(r: int) -> tuple[int, np.ndarray]:
        rng = np.random.default_rng(children[r])
        if r == 0 and initial is not None:
            pos = initial.map.copy()
        else:
            pos = rng.permutation(size).astype(np.int64)
        a_arr = rng.integers(0, size, size=iters, dtype=np.int64)
        b_arr = rng.integers(0, size, size=iters, dtype=np.int64)
        u = rng.random(iters)
        with np.errstate(divide="ignore"):
            thresh = np.where(u > 0.0, -np.log(u), np.inf) * temps
        start = np.int64(_wl_direct_batch(spec, pos[None, :])[0])
        best, best_pos = loop(pos, start, a_arr, b_arr, thresh, n, shifts, masks, sizes, is_cycle)
        return int(best), best_pos

    workers = _worker_count(budget.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_restart, range(budget.restarts)))
    else:
        results = [run_restart(r) for r in range(budget.restarts)]
    best_r = min(range(budget.restarts), key=lambda r: (results[r][0], r))
    best_total, best_pos = results[best_r]
    best = Embedding(spec, best_pos)
    if wl_direct(best).total != best_total:
        raise RuntimeError("incremental wirelength bookkeeping diverged from the direct engine")
    return SearchResult(
        best_wirelength=best_total,
        best_embedding=best,
        evaluations=budget.restarts * iters,
        matched_formula=_formula_match(spec, best_total),
    )


def _flat_dist_scalar(spec: HostSpec, x: int, y: int) -> int:
    d = 0
    for f, s in zip(spec.factors, spec.shifts):
        m = f.size - 1
        dd = abs(((x >> s) & m) - ((y >> s) & m))
        if f.is_cycle:
            dd = min(dd, f.size - dd)
        d += dd
    return d


def transposition_delta(embedding: Embedding, u: int, v: int) -> int:
    """Exact wirelength change from swapping the images of cube vertices u and v."""
    spec = embedding.spec
    for x in (u, v):
        if not 0 <= x < spec.size:
            raise ValueError(f"vertex {x} out of range for a {spec.n}-cube")
    if u == v:
        return 0
    m = embedding.map
    pa = int(m[u])
    pb = int(m[v])
    delta = 0
    for t in range(spec.n):
        w = u ^ (1 << t)
        if w != v:
            pw = int(m[w])
            delta += _flat_dist_scalar(spec, pb, pw) - _flat_dist_scalar(spec, pa, pw)
        w = v ^ (1 << t)
        if w != u:
            pw = int(m[w])
            delta += _flat_dist_scalar(spec, pa, pw) - _flat_dist_scalar(spec, pb, pw)
    return delta


@dataclass
class CheckResult:
    """One named invariant check within a verification report."""

    name: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerifyReport:
    """All checks run against one host."""

    host: str
    depth: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "host": self.host,
            "depth": self.depth,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


# beyond this much cut-engine work per embedding, verify falls back to
# direct-engine-only checks so huge hosts stay tractable
_CUT_WORK_LIMIT = 1 << 28


def verify_spec(
    spec: HostSpec, depth: str = "quick", budget: SearchBudget | None = None, seed: int = 0
) -> VerifyReport:
    """Run the invariant suite against one host; `full` adds search checks."""
    if depth not in ("quick", "full"):
        raise ValueError(f"depth must be 'quick' or 'full', got {depth!r}")
    rng = np.random.default_rng([seed, zlib.crc32(str(spec).encode())])
    checks: list[CheckResult] = []

    def run(name, fn):
        try:
            passed, detail, counter = fn()
        except Exception as exc:  # a crashed check is a failed check, not a crashed report
            checks.append(CheckResult(name, False, f"raised {type(exc).__name__}: {exc}"))
        else:
            checks.append(CheckResult(name, bool(passed), detail, counter))

    formula_total: int | None = None
    formula_terms = None
    if all(f.exponent >= 2 for f in spec.factors):
        formula_total, formula_terms = formula_wl(spec)
    gray = gray_embedding(spec)
    cut_work = sum(f.cut_count for f in spec.factors) * spec.size

    def check_gray_perm():
        gray_embedding(spec)  # construction validates the permutation
        return True, f"{spec.size} images, all distinct", None

    run("gray_is_permutation", check_gray_perm)

    def check_engines():
        if cut_work > _CUT_WORK_LIMIT:
            return True, "skipped: cut engine too slow for this host size", None
        count = max(2, min(50 if depth == "quick" else 200, (1 << 22) // spec.size))
        pool = [gray] + [random_embedding(spec, rng) for _ in range(count)]
        for e in pool:
            d = wl_direct(e).total
            c = wl_cut(e).total
            if d != c:
                return False, f"direct {d} != cut_sum {c}", {
                    "embedding": e.to_document(),
                    "direct": d,
                    "cut_sum": c,
                }
        return True, f"direct == cut_sum on {len(pool)} embeddings", None

    run("engines_agree", check_engines)

    def check_sweep_vs_scan():
        if cut_work > (_CUT_WORK_LIMIT >> 2):
            return True, "skipped: membership scan too slow for this host size", None
        for e in (gray, random_embedding(spec, rng), random_embedding(spec, rng)):
            if wl_cut(e).per_cut != wl_cut_naive(e).per_cut:
                return False, "incremental sweep disagrees with the membership scan", {
                    "embedding": e.to_document()
                }
        return True, "per-cut values match on 3 embeddings", None

    run("cut_sweep_matches_scan", check_sweep_vs_scan)

    if formula_total is not None:

        def check_formula():
            d = wl_direct(gray).total
            if d != formula_total:
                return False, f"gray wirelength {d} != closed form {formula_total}", {
                    "embedding": gray.to_document(),
                    "direct": d,
                    "formula": formula_total,
                }
            if cut_work <= _CUT_WORK_LIMIT:
                for term in formula_terms:
                    got = sum(_factor_cut_thetas(gray, term.factor))
                    if got != term.value:
                        return (
                            False,
                            f"factor {term.factor} cut sum {got} != term {term.value}",
                            None,
                        )
            return True, f"gray embedding attains {formula_total}", None

        run("gray_attains_formula", check_formula)

    def check_structure():
        all_cuts = cuts(spec)
        expect = sum(f.cut_count for f in spec.factors)
        if len(all_cuts) != expect:
            return False, f"{len(all_cuts)} cuts, expected {expect}", None
        for cut in all_cuts:
            iset = induced_set(spec, cut)
            f = spec.factors[cut.factor - 1]
            want = (f.size // 2 if f.is_cycle else cut.index) << (spec.n - f.exponent)
            if iset.size != want:
                return False, f"induced set size {iset.size} != {want} at {cut}", None
        return True, f"{expect} cuts with the expected side sizes", None

    run("cuts_well_formed", check_structure)

    def check_separation():
        if spec.size <= 256:
            flat = np.arange(spec.size, dtype=np.int64)
            dist = _flat_distance_sum(spec, flat[:, None], flat[None, :])
            sep = np.zeros((spec.size, spec.size), dtype=np.int64)
            for cut in cuts(spec):
                m = induced_set(spec, cut).mask()
                sep += np.logical_xor.outer(m, m)
            if not np.array_equal(sep, dist):
                bad = np.argwhere(sep != dist)[0]
                return False, "separation count != distance", {
                    "x": list(unflatten(int(bad[0]), spec)),
                    "y": list(unflatten(int(bad[1]), spec)),
                    "separating": int(sep[bad[0], bad[1]]),
                    "distance": int(dist[bad[0], bad[1]]),
                }
            return True, f"exhaustive over {spec.size}x{spec.size} coordinate pairs", None
        count = 500
        for _ in range(count):
            hx, hy = (int(t) for t in rng.integers(0, spec.size, size=2))
            x, y = unflatten(hx, spec), unflatten(hy, spec)
            if len(separating_cuts(spec, x, y)) != host_distance(spec, x, y):
                return False, "separation count != distance", {"x": list(x), "y": list(y)}
        return True, f"{count} sampled coordinate pairs", None

    run("separating_cuts_count_distance", check_separation)

    def check_partition():
        if spec.size > 256:
            return True, "skipped: host too large for the explicit edge partition", None
        all_edges = host_edges(spec)
        union = np.concatenate([cut_edges(spec, cut) for cut in cuts(spec)], axis=0)
        if union.shape[0] != all_edges.shape[0]:
            return (
                False,
                f"cut edges total {union.shape[0]} != host edges {all_edges.shape[0]}",
                None,
            )
        have = {tuple(map(int, row)) for row in all_edges}
        got = {tuple(map(int, row)) for row in union}
        if have != got:
            return False, "cut edge union differs from the host edge set", None
        return True, f"{all_edges.shape[0]} edges, each in exactly one cut", None

    run("cuts_partition_edges", check_partition)

    def check_components():
        if spec.size > 128:
            return True, "skipped: host too large for the component check", None
        all_pairs = [tuple(map(int, row)) for row in host_edges(spec)]
        for cut in cuts(spec):
            removed = {tuple(map(int, row)) for row in cut_edges(spec, cut)}
            parent = list(range(spec.size))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in all_pairs:
                if (a, b) not in removed:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
            mask = induced_set(spec, cut).mask()
            inside = {find(x) for x in range(spec.size) if mask[x]}
            outside = {find(x) for x in range(spec.size) if not mask[x]}
            if len(inside) != 1 or len(outside) != 1 or inside == outside:
                return False, f"cut {cut} does not split the host into its two sides", None
        return True, "every cut yields exactly its two induced components", None

    run("cut_splits_two_components", check_components)

    def check_theta_complement():
        for _ in range(20):
            sub = VertexSubset(spec.n, rng.random(spec.size) < rng.random())
            if theta(sub) != theta(sub.complement()):
                return False, "theta differs on a complement", {"vertices": sub.vertices()}
        return True, "20 random subsets", None

    run("theta_complement", check_theta_complement)

    def check_block_swap():
        if spec.n < 2:
            return True, "skipped: needs dimension >= 2", None
        for _ in range(30):
            n1 = int(rng.integers(1, spec.n))
            n2 = spec.n - n1
            s1 = VertexSubset(n1, rng.random(1 << n1) < rng.random())
            s2 = VertexSubset(n2, rng.random(1 << n2) < rng.random())
            if theta(block_product(s1, s2)) != theta(block_product(s2, s1)):
                return False, "swapping the blocks changed theta", {
                    "first": s1.vertices(),
                    "second": s2.vertices(),
                    "split": [n1, n2],
                }
        return True, "30 random block pairs", None

    run("block_swap_theta", check_block_swap)

    if formula_total is not None:

        def check_random_bound():
            count = max(4, min(100 if depth == "quick" else 200, (1 << 24) // spec.size))
            for _ in range(count):
                e = random_embedding(spec, rng)
                total = wl_direct(e).total
                if total < formula_total:
                    return (
                        False,
                        f"random embedding beat the closed form: {total} < {formula_total}",
                        {"embedding": e.to_document(), "total": total},
                    )
            return True, f"{count} random embeddings, none below {formula_total}", None

        run("random_not_below_formula", check_random_bound)

    if depth == "full":

        def check_brute():
            cap = budget.max_vertices if budget is not None else 8
            if spec.size > cap:
                return True, f"skipped: {spec.size} vertices exceed the brute cap {cap}", None
            bb = budget if budget is not None else SearchBudget(method="brute", max_vertices=cap)
            res = brute_force_min(spec, bb)
            g = wl_direct(gray).total
            if g != res.best_wirelength:
                return False, f"gray {g} != brute minimum {res.best_wirelength}", {
                    "best": res.best_embedding.to_document()
                }
            if formula_total is not None and res.best_wirelength != formula_total:
                return (
                    False,
                    f"brute minimum {res.best_wirelength} != closed form {formula_total}",
                    None,
                )
            return True, f"minimum {res.best_wirelength} over {res.evaluations} embeddings", None

        run("brute_minimum", check_brute)

        def check_anneal():
            bb = (
                budget
                if budget is not None
                else SearchBudget(restarts=5, iterations_per_restart=20_000, seed=seed)
            )
            res = anneal_search(spec, bb, initial=gray)
            if formula_total is None:
                return True, f"best found {res.best_wirelength} (no closed form)", None
            if res.best_wirelength < formula_total:
                return (
                    False,
                    f"anneal went below the closed form: {res.best_wirelength} < {formula_total}",
                    {"embedding": res.best_embedding.to_document(), "total": res.best_wirelength},
                )
            return True, f"anneal best {res.best_wirelength} >= closed form {formula_total}", None

        run("anneal_not_below_formula", check_anneal)

    return VerifyReport(host=str(spec), depth=depth, checks=checks)
