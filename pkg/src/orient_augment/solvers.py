"""Solver entry points: verifier, brute-force oracle, and the two
branching solvers (budget-bounded augmentation in oriented and directed
mode).

The oracle and both solvers agree on the problem: given a connected plane
graph ``D`` and budget ``k``, find a minimum set of new arcs, embedded
crossing-free inside faces of ``D``, whose addition makes ``D`` strongly
connected while keeping it plane and simple in the requested mode
(``oriented``: no loops, parallels, or digons; ``directed``: digons
allowed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from . import completion_enum as ce
from . import dijoin as dj
from . import face_analysis as fa
from . import plane_graph as pg
from . import strongconn as sc
from .errors import BudgetTooLargeForOracle, Disconnected

DEFAULT_ORACLE_LIMITS = (10, 4)  # max vertices, max budget


@dataclass
class SolveStats:
    branches: int = 0
    dijoin_calls: int = 0
    trials: int = 0
    seed: Optional[int] = None
    extra: dict = field(default_factory=dict)


@dataclass
class SolveReport:
    verdict: bool
    optimum: Optional[int]
    witness: Optional[pg.Completion]
    mode: str
    k: int
    stats: SolveStats = field(default_factory=SolveStats)

    def to_json_dict(self) -> dict:
        wit = None
        if self.witness is not None:
            wit = [
                {
                    "face": a.face,
                    "tail": {"vertex": a.tail.vertex, "position": a.tail.position},
                    "head": {"vertex": a.head.vertex, "position": a.head.position},
                }
                for a in self.witness.arcs
            ]
        return {
            "verdict": "yes" if self.verdict else "no",
            "optimum": self.optimum,
            "witness": wit,
            "mode": self.mode,
            "k": self.k,
            "statistics": {
                "branches": self.stats.branches,
                "dijoin_calls": self.stats.dijoin_calls,
                "trials": self.stats.trials,
            },
            "seed": self.stats.seed,
        }


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_solution(
    D: pg.PlaneDigraph,
    completion: pg.Completion,
    mode: Optional[str] = None,
) -> tuple[bool, str]:
    """True iff the completion embeds legally in ``mode`` and the result is
    strongly connected.  Never raises; the diagnostic names the failure."""
    mode = mode or pg.MODE_ORIENTED
    try:
        augmented = pg.insert_arcs(D, completion, mode=mode)
    except Exception as exc:
        return False, f"{type(exc).__name__}: {exc}"
    if not sc.is_strong(augmented):
        return False, "NotStrong: augmented graph has several components"
    return True, "ok"


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def _closure(n: int, adj: list[int]) -> list[int]:
    reach = [adj[v] | (1 << v) for v in range(n)]
    changed = True
    while changed:
        changed = False
        for v in range(n):
            r = reach[v]
            acc = r
            w = r
            while w:
                b = w & (-w)
                acc |= reach[b.bit_length() - 1]
                w ^= b
            if acc != r:
                reach[v] = acc
                changed = True
    return reach


def _terminal_bound(n: int, adj: list[int]) -> tuple[int, bool]:
    """(lower bound on remaining arcs, already strong)."""
    reach = _closure(n, adj)
    full = (1 << n) - 1
    if all(r == full for r in reach):
        return 0, True
    comp_id = [-1] * n
    comps = 0
    for v in range(n):
        if comp_id[v] != -1:
            continue
        for w in range(v, n):
            if comp_id[w] == -1 and (reach[v] >> w) & 1 and (reach[w] >> v) & 1:
                comp_id[w] = comps
        comps += 1
    has_in = [False] * comps
    has_out = [False] * comps
    for v in range(n):
        w = adj[v]
        while w:
            b = w & (-w)
            t = b.bit_length() - 1
            w ^= b
            if comp_id[v] != comp_id[t]:
                has_out[comp_id[v]] = True
                has_in[comp_id[t]] = True
    sources = sum(1 for c in range(comps) if not has_in[c])
    sinks = sum(1 for c in range(comps) if not has_out[c])
    return max(sources, sinks, 1), False


@dataclass(frozen=True)
class _Candidate:
    face: int
    pos_t: int
    pos_h: int
    u: int
    v: int
    dart_t: int
    dart_h: int
    pair_key: tuple[int, int]  # unordered component pair of the host graph


def oracle_candidates(D: pg.PlaneDigraph, mode: str) -> list[_Candidate]:
    """All completion arcs a minimal solution may use: angle pairs whose
    vertices lie in distinct strong components, with no loop and no
    mode-violating duplicate against the host graph."""
    comp = sc.scc(D).component
    ordered, unordered = D.adjacency()
    out: list[_Candidate] = []
    for f in range(D.f):
        walk = D.faces[f]
        r = len(walk)
        verts = [D.dart_vertex(d) for d in walk]
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                u, v = verts[i], verts[j]
                if u == v or comp[u] == comp[v]:
                    continue
                if mode == pg.MODE_ORIENTED:
                    key = (u, v) if u <= v else (v, u)
                    if key in unordered:
                        continue
                else:
                    if (u, v) in ordered:
                        continue
                cu, cv = comp[u], comp[v]
                out.append(
                    _Candidate(
                        face=f,
                        pos_t=i,
                        pos_h=j,
                        u=u,
                        v=v,
                        dart_t=walk[i],
                        dart_h=walk[j],
                        pair_key=(cu, cv) if cu <= cv else (cv, cu),
                    )
                )
    return out


def brute_solve(
    D: pg.PlaneDigraph,
    k: int,
    mode: str = pg.MODE_ORIENTED,
    limits: tuple[int, int] = DEFAULT_ORACLE_LIMITS,
) -> SolveReport:
    """Exact minimum augmentation by pruned exhaustive search.

    Intended for tiny instances; raises ``BudgetTooLargeForOracle`` above
    the configured limits.  Candidate arcs are restricted to pairs of
    distinct strong components with at most one arc per unordered
    component pair (any minimum solution has this form), and crossings and
    duplicates are pruned incrementally.
    """
    if D.n > limits[0] or k > limits[1]:
        raise BudgetTooLargeForOracle(
            f"oracle limits are n<={limits[0]}, k<={limits[1]}"
        )
    if not D.connected:
        raise Disconnected("oracle requires a connected underlying graph")

    base_adj = [0] * D.n
    for u, v in D.arcs:
        if u != v:
            base_adj[u] |= 1 << v

    lb0, strong0 = _terminal_bound(D.n, base_adj)
    if strong0:
        return SolveReport(
            verdict=True, optimum=0, witness=pg.EMPTY_COMPLETION,
            mode=mode, k=k,
        )

    cands = oracle_candidates(D, mode)
    face_len = [len(w) for w in D.faces]
    ncand = len(cands)
    witness: Optional[list[_Candidate]] = None

    def dfs(start: int, budget: int, adj: list[int], chosen: list[_Candidate],
            used_pairs: set, lb: int) -> bool:
        nonlocal witness
        if lb == 0:
            witness = list(chosen)
            return True
        if lb > budget:
            return False
        for idx in range(start, ncand):
            c = cands[idx]
            if c.pair_key in used_pairs:
                continue
            ok = True
            for o in chosen:
                if o.face == c.face and pg.chords_cross(
                    face_len[c.face], o.pos_t, o.pos_h, c.pos_t, c.pos_h
                ):
                    ok = False
                    break
            if not ok:
                continue
            adj2 = list(adj)
            adj2[c.u] |= 1 << c.v
            lb2, strong2 = _terminal_bound(D.n, adj2)
            if strong2:
                lb2 = 0
            chosen.append(c)
            used_pairs.add(c.pair_key)
            if dfs(idx + 1, budget - 1, adj2, chosen, used_pairs, lb2):
                return True
            chosen.pop()
            used_pairs.discard(c.pair_key)
        return False

    for b in range(1, k + 1):
        if lb0 > b:
            continue
        if dfs(0, b, base_adj, [], set(), lb0):
            comp = D.completion_from_darts(
                [(c.dart_t, c.dart_h) for c in witness]
            )
            return SolveReport(
                verdict=True, optimum=len(witness), witness=comp, mode=mode, k=k,
            )
    return SolveReport(verdict=False, optimum=None, witness=None, mode=mode, k=k)


# ---------------------------------------------------------------------------
# oriented-mode branching solver
# ---------------------------------------------------------------------------

# Largest simple-face candidate list observed over the exhaustive corpus;
# tests/test_acceptance.py re-measures and fails if it grows past this.
PINNED_SIMPLE_CANDIDATE_BOUND = 700

MC_DELTA = 0.05


def default_trials(k: int) -> int:
    return max(1, math.ceil(PINNED_SIMPLE_CANDIDATE_BOUND ** k * math.log(1 / MC_DELTA)))


class _BranchView:
    """Adjacency-level view of the host graph plus chosen branch arcs; no
    re-embedding is needed to reason about the branch."""

    def __init__(self, D: pg.PlaneDigraph, pairs: list[tuple[int, int]]):
        self.D = D
        self.pairs = pairs
        ordered, unordered = D.adjacency()
        self.ordered = set(ordered) | set(pairs)
        self.unordered = set(unordered) | {
            (u, v) if u <= v else (v, u) for (u, v) in pairs
        }

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.ordered

    def underlying_adjacent(self, u: int, v: int) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.unordered

    def is_strong(self) -> bool:
        arcs = list(self.D.arcs) + self.pairs
        comp = sc.scc_of_arcs(self.D.n, arcs)
        return max(comp) == 0 if comp else True

    def terminal_masks(self):
        arcs = list(self.D.arcs) + self.pairs
        comp = sc.scc_of_arcs(self.D.n, arcs)
        ncomp = max(comp) + 1
        has_in = [False] * ncomp
        has_out = [False] * ncomp
        masks = [0] * ncomp
        for v, c in enumerate(comp):
            masks[c] |= 1 << v
        for u, v in arcs:
            if comp[u] != comp[v]:
                has_out[comp[u]] = True
                has_in[comp[v]] = True
        sources = [masks[c] for c in range(ncomp) if not has_in[c]]
        sinks = [masks[c] for c in range(ncomp) if not has_out[c]]
        return sources, sinks


def _covers_terminals(masks, allowed: dict[int, pg.Completion]) -> bool:
    """Necessary condition for the allowed arcs to complete the branch:
    every source component must receive a head, every sink must emit a
    tail."""
    arcs = [a.ends for comp in allowed.values() for a in comp.arcs]
    sources, sinks = masks
    for m in sources:
        if not any(((m >> v) & 1) and not ((m >> u) & 1) for u, v in arcs):
            return False
    for m in sinks:
        if not any(((m >> u) & 1) and not ((m >> v) & 1) for u, v in arcs):
            return False
    return True


def _allowed_on_branch(
    view: _BranchView,
    face: int,
    comp: pg.Completion,
    arc_mode: str,
) -> Optional[pg.Completion]:
    """Drop candidate arcs the branch made illegal; the rest stay valid
    because branch arcs live in other faces."""
    pairs = []
    for a in comp.arcs:
        u, v = a.ends
        if arc_mode == pg.MODE_ORIENTED:
            if view.underlying_adjacent(u, v):
                continue
        else:
            if view.has_arc(u, v):
                continue
        pairs.append((a.tail.dart, a.head.dart))
    if not pairs:
        return None
    if len(pairs) == len(comp.arcs):
        return comp
    return view.D.completion_from_darts(pairs)


def _simple_exhaustive(
    D: pg.PlaneDigraph,
    view: _BranchView,
    cands: dict[int, list[pg.Completion]],
    budget: int,
    stats: SolveStats,
    arc_mode: str = pg.MODE_ORIENTED,
) -> Optional[pg.Completion]:
    """Minimum completion within the candidate faces making the branch
    strong, by enumerating every face subset of size at most ``budget``
    and every candidate assignment on it."""
    import itertools

    faces = sorted(f for f in cands if cands[f])
    masks = view.terminal_masks()
    best: Optional[pg.Completion] = None
    for size in range(1, min(budget, len(faces)) + 1):
        if best is not None and len(best.arcs) <= size - 1:
            break
        for subset in itertools.combinations(faces, size):
            for assignment in itertools.product(*(cands[f] for f in subset)):
                allowed = {}
                for f, comp in zip(subset, assignment):
                    translated = _allowed_on_branch(view, f, comp, arc_mode)
                    if translated is not None:
                        allowed[f] = translated
                if not allowed or not _covers_terminals(masks, allowed):
                    continue
                cap = budget if best is None else min(budget, len(best.arcs) - 1)
                if cap <= 0:
                    return best
                inst = dj.build_auxiliary_with_extra(
                    D, view.pairs, allowed, cap, subdivision=False
                )
                stats.dijoin_calls += 1
                y = dj.solve_auxiliary(inst)
                if y:
                    ext = dj.extract_solution(inst, y)
                    if best is None or len(ext.arcs) < len(best.arcs):
                        best = ext
    return best


def _simple_montecarlo(
    D: pg.PlaneDigraph,
    view: _BranchView,
    cands: dict[int, list[pg.Completion]],
    budget: int,
    trials: int,
    rng: random.Random,
    stats: SolveStats,
) -> Optional[pg.Completion]:
    faces = sorted(f for f in cands if cands[f])
    if not faces:
        return None
    best: Optional[pg.Completion] = None
    for _ in range(trials):
        stats.trials += 1
        allowed = {}
        for f in faces:
            comp = rng.choice(cands[f])
            translated = _allowed_on_branch(view, f, comp, pg.MODE_ORIENTED)
            if translated is not None:
                allowed[f] = translated
        cap = budget if best is None else min(budget, len(best.arcs) - 1)
        if cap <= 0:
            break
        if not allowed:
            continue
        inst = dj.build_auxiliary_with_extra(
            D, view.pairs, allowed, cap, subdivision=False
        )
        stats.dijoin_calls += 1
        y = dj.solve_auxiliary(inst)
        if y:
            ext = dj.extract_solution(inst, y)
            if best is None or len(ext.arcs) < len(best.arcs):
                best = ext
    return best


def solve_oriented(
    D: pg.PlaneDigraph,
    k: int,
    method: str = "exhaustive",
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> SolveReport:
    """Minimum oriented augmentation within budget ``k``.

    Branches over all supported completions of the alternating faces; the
    remainder lives in the instance's simple faces and is resolved through
    the candidate-arc dijoin reduction, either exhaustively over candidate
    assignments (exact) or by uniform random assignment per trial
    (``method="montecarlo"``: a yes is always certified, a no may err).
    """
    if not D.connected:
        raise Disconnected("solver requires a connected underlying graph")
    stats = SolveStats(seed=seed)
    report = lambda verdict, opt, wit: SolveReport(
        verdict=verdict, optimum=opt, witness=wit,
        mode=pg.MODE_ORIENTED, k=k, stats=stats,
    )
    if sc.is_strong(D):
        return report(True, 0, pg.EMPTY_COMPLETION)
    if k <= 0:
        return report(False, None, None)
    # the exhaustive mode is exact and deterministic, so its outcomes are
    # budget-monotone facts about the instance and can be reused
    memo = D._analysis_cache.setdefault(
        "oriented_memo", {"opt": None, "witness": None, "no_at": 0}
    )
    if method == "exhaustive":
        if memo["opt"] is not None:
            if memo["opt"] <= k:
                return report(True, memo["opt"], memo["witness"])
            return report(False, None, None)
        if k <= memo["no_at"]:
            return report(False, None, None)
    part = sc.scc(D)
    if part.terminal_count > 2 * k:
        return report(False, None, None)
    if fa.alternating_terminal_sum(D) >= 8 * k:
        return report(False, None, None)

    simple_cands = {
        f: ce.simple_face_candidates(D, f) for f in fa.simple_faces(D)
    }
    rng = random.Random(seed)
    if trials is None:
        trials = default_trials(k)

    best: Optional[pg.Completion] = None
    branches = sorted(
        ce.alternating_branches(D, k, minimal_only=True),
        key=lambda parts: sum(len(c) for c in parts),
    )
    for parts in branches:
        stats.branches += 1
        size_af = sum(len(c) for c in parts)
        if best is not None and size_af >= len(best.arcs):
            break  # branches are size-sorted
        af_arcs = [a for c in parts for a in c.arcs]
        view = _BranchView(D, [a.ends for a in af_arcs])
        if view.is_strong():
            cand = D.completion_from_darts(
                [(a.tail.dart, a.head.dart) for a in af_arcs]
            )
            ok, diag = verify_solution(D, cand, pg.MODE_ORIENTED)
            if not ok:  # pragma: no cover - guarded by construction
                raise AssertionError(f"invalid branch witness: {diag}")
            if best is None or len(cand.arcs) < len(best.arcs):
                best = cand
            continue
        rem = k - size_af
        if best is not None:
            rem = min(rem, len(best.arcs) - size_af - 1)
        if rem <= 0:
            continue
        if method == "exhaustive":
            found = _simple_exhaustive(D, view, simple_cands, rem, stats)
        else:
            found = _simple_montecarlo(
                D, view, simple_cands, rem, trials, rng, stats
            )
        if found is not None:
            pairs = [(a.tail.dart, a.head.dart) for a in af_arcs] + [
                (a.tail.dart, a.head.dart) for a in found.arcs
            ]
            cand = D.completion_from_darts(pairs)
            ok, diag = verify_solution(D, cand, pg.MODE_ORIENTED)
            if not ok:  # pragma: no cover - guarded by construction
                raise AssertionError(f"solver produced invalid witness: {diag}")
            if best is None or len(cand.arcs) < len(best.arcs):
                best = cand
    if best is not None:
        if method == "exhaustive":
            memo["opt"] = len(best.arcs)
            memo["witness"] = best
        return report(True, len(best.arcs), best)
    if method == "exhaustive":
        memo["no_at"] = max(memo["no_at"], k)
    else:
        # a no may err; report the per-branch confidence of the sampling
        p = PINNED_SIMPLE_CANDIDATE_BOUND ** (-k)
        stats.extra["no_confidence"] = 1.0 - (1.0 - p) ** max(trials, 1)
    return report(False, None, None)


# ---------------------------------------------------------------------------
# digon-allowed branching solver
# ---------------------------------------------------------------------------


def _solve_directed_part(
    part: pg.PlaneDigraph, kmax: int, stats: SolveStats
) -> Optional[tuple[int, list[tuple[int, int]]]]:
    """Minimum augmentation of one loopless acyclic part, as (size, dart
    pairs), or None when it exceeds ``kmax``."""
    if sc.is_strong(part):
        return 0, []
    spart = sc.scc(part)
    if spart.terminal_count > 2 * kmax:
        return None
    lt_sum = fa.alternating_terminal_sum(part)
    if lt_sum >= 8 * kmax:
        return None  # any positive budget-b instance has lt_sum < 8b <= 8*kmax
    af = fa.alternating_faces(part)
    sf = fa.simple_faces(part)
    cands = {
        f: [c for c in ce.directed_supported_completions(part, f, 1) if c.arcs]
        for f in sf
    }
    best: Optional[list[tuple[int, int]]] = None
    for parts_choice in sorted(
        ce.directed_joint_branches(part, af, kmax),
        key=lambda ps: sum(len(c) for c in ps),
    ):
        stats.branches += 1
        size_af = sum(len(c) for c in parts_choice)
        if best is not None and size_af >= len(best):
            break
        af_arcs = [a for c in parts_choice for a in c.arcs]
        af_pairs = [(a.tail.dart, a.head.dart) for a in af_arcs]
        view = _BranchView(part, [a.ends for a in af_arcs])
        if view.is_strong():
            if best is None or size_af < len(best):
                best = af_pairs
            continue
        rem = kmax - size_af
        if best is not None:
            rem = min(rem, len(best) - size_af - 1)
        if rem <= 0:
            continue
        found = _simple_exhaustive(
            part, view, cands, rem, stats, arc_mode=pg.MODE_DIRECTED
        )
        if found is not None:
            pairs = af_pairs + [
                (a.tail.dart, a.head.dart) for a in found.arcs
            ]
            if best is None or len(pairs) < len(best):
                best = pairs
    if best is None:
        return None
    return len(best), best


def solve_directed(D: pg.PlaneDigraph, k: int) -> SolveReport:
    """Minimum digon-allowed augmentation within budget ``k``.

    Pipeline: contract strong components (plane-preserving), split the
    DAG-with-loops along its loops, solve each loopless part by branching
    over digon-allowed completions of alternating faces plus the dijoin
    step on simple faces, then recombine budgets and lift the witness back.
    """
    if not D.connected:
        raise Disconnected("solver requires a connected underlying graph")
    stats = SolveStats()
    report = lambda verdict, opt, wit: SolveReport(
        verdict=verdict, optimum=opt, witness=wit,
        mode=pg.MODE_DIRECTED, k=k, stats=stats,
    )
    if sc.is_strong(D):
        return report(True, 0, pg.EMPTY_COMPLETION)
    if k <= 0:
        return report(False, None, None)
    memo = D._analysis_cache.setdefault(
        "directed_memo", {"opt": None, "witness": None, "no_at": 0}
    )
    if memo["opt"] is not None:
        if memo["opt"] <= k:
            return report(True, memo["opt"], memo["witness"])
        return report(False, None, None)
    if k <= memo["no_at"]:
        return report(False, None, None)
    cond = sc.condense(D)
    recipe = sc.split_loops(cond.condensed)
    total = 0
    part_solutions: list[list[tuple[int, int]]] = []
    for sp_part in recipe.parts:
        res = _solve_directed_part(sp_part.graph, k - total, stats)
        if res is None:
            memo["no_at"] = max(memo["no_at"], k)
            return report(False, None, None)
        size, pairs = res
        total += size
        part_solutions.append(pairs)
        if total > k:
            memo["no_at"] = max(memo["no_at"], k)
            return report(False, None, None)
    # recombine across parts and lift through the condensation
    pairs_on_condensed = []
    for sp_part, sol in zip(recipe.parts, part_solutions):
        for dt, dh in sol:
            pairs_on_condensed.append(
                (
                    2 * sp_part.arc_back[dt >> 1] + (dt & 1),
                    2 * sp_part.arc_back[dh >> 1] + (dh & 1),
                )
            )
    x_c = cond.condensed.completion_from_darts(pairs_on_condensed)
    witness = sc.lift_solution(cond, x_c)
    ok, diag = verify_solution(D, witness, pg.MODE_DIRECTED)
    if not ok:  # pragma: no cover - guarded by construction
        raise AssertionError(f"directed witness failed verification: {diag}")
    memo["opt"] = total
    memo["witness"] = witness
    return report(True, total, witness)
