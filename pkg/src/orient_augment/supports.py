"""Candidate angle families that bound where maximally shifted completion
endpoints can sit on an interval.

For an interval ``I`` of a face, the left family of level ``q`` contains
angle sets of size ``q``; a completion whose endpoints on ``I`` cannot be
shifted left occupies exactly one of them (and symmetrically for right).
Families grow by two rules: append the next angle after the current
rightmost member, or jump to the first angle past it whose vertex is not
adjacent to the unique common neighbour of the two angles at the frontier.
Adjacency is underlying adjacency in the host graph: any existing arc,
whatever its orientation or embedding, blocks a shift because the shifted
arc would duplicate it or close a digon.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import plane_graph as pg
from .errors import MultipleCommonNeighbours
from .face_analysis import Interval

LEFT = "left"
RIGHT = "right"

# test hook: number of adjacency queries issued by family construction
ADJACENCY_QUERIES = 0


def _adjacent(D: pg.PlaneDigraph, u: int, v: int) -> bool:
    global ADJACENCY_QUERIES
    ADJACENCY_QUERIES += 1
    if u == v:
        return False
    return D.underlying_adjacent(u, v)


@dataclass(frozen=True)
class SupportFamily:
    face: int
    side: str
    q: int
    interval_positions: tuple[int, ...]
    members: tuple[frozenset[int], ...]   # frozensets of boundary positions

    def __len__(self) -> int:
        return len(self.members)

    def angles(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.members:
            out |= b
        return frozenset(out)


def common_neighbour(
    D: pg.PlaneDigraph, face: int, pos_a: int, pos_b: int
) -> Optional[int]:
    """The unique common neighbour of two consecutive boundary vertices
    within the face's vertex set, or None.

    Two common neighbours would contradict the outerplanarity of the
    structure induced on a face, so that case raises
    ``MultipleCommonNeighbours`` as a bug guard.
    """
    walk = D.faces[face]
    va = D.dart_vertex(walk[pos_a])
    vb = D.dart_vertex(walk[pos_b])
    face_vertices = set(D.dart_vertex(d) for d in walk)
    found = None
    for u in sorted(face_vertices):
        if u == va or u == vb:
            continue
        if _adjacent(D, u, va) and _adjacent(D, u, vb):
            if found is not None:
                raise MultipleCommonNeighbours(
                    f"face {face}: {va},{vb} share neighbours {found} and {u}"
                )
            found = u
    return found


def _family(
    D: pg.PlaneDigraph, face: int, positions: tuple[int, ...], q: int
) -> tuple[frozenset[int], ...]:
    """Left family over ``positions`` ordered left to right."""
    walk = D.faces[face]
    vert = [D.dart_vertex(walk[p]) for p in positions]
    r = len(positions)
    if r == 0 or q < 1:
        return ()

    def leftmost_non_neighbour(u: int, start_idx: int) -> Optional[int]:
        for h in range(start_idx, r):
            if not _adjacent(D, u, vert[h]):
                return h
        return None

    level: list[tuple[int, ...]] = [(0,)]
    if r >= 2:
        level.append((1,))
        u = common_neighbour(D, face, positions[0], positions[1])
        if u is not None:
            h = leftmost_non_neighbour(u, 0)
            if h is not None and (h,) not in level:
                level.append((h,))
    for _ in range(q - 1):
        nxt: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        for b in level:
            i = b[-1]
            if i + 1 < r:
                cand = b + (i + 1,)
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
                u = common_neighbour(D, face, positions[i], positions[i + 1])
                if u is not None:
                    h = leftmost_non_neighbour(u, i + 1)
                    if h is not None:
                        cand = b + (h,)
                        if cand not in seen and h not in b:
                            seen.add(cand)
                            nxt.append(cand)
        level = nxt
    return tuple(frozenset(positions[i] for i in b) for b in level)


def left_supports(
    D: pg.PlaneDigraph, interval: Interval, q: int
) -> SupportFamily:
    key = ("supL", interval.face, interval.positions, q)
    cached = D._analysis_cache.get(key)
    if cached is None:
        cached = SupportFamily(
            face=interval.face,
            side=LEFT,
            q=q,
            interval_positions=interval.positions,
            members=_family(D, interval.face, interval.positions, q),
        )
        D._analysis_cache[key] = cached
    return cached


def right_supports(
    D: pg.PlaneDigraph, interval: Interval, q: int
) -> SupportFamily:
    key = ("supR", interval.face, interval.positions, q)
    cached = D._analysis_cache.get(key)
    if cached is None:
        reversed_positions = tuple(reversed(interval.positions))
        cached = SupportFamily(
            face=interval.face,
            side=RIGHT,
            q=q,
            interval_positions=interval.positions,
            members=_family(D, interval.face, reversed_positions, q),
        )
        D._analysis_cache[key] = cached
    return cached


def support_pool(D: pg.PlaneDigraph, interval: Interval, q_max: int) -> set[int]:
    """Union of all member angles of both families up to level ``q_max``;
    every supported completion's endpoints on the interval lie in it."""
    pool: set[int] = set()
    q_cap = min(q_max, len(interval.positions))
    for q in range(1, q_cap + 1):
        pool |= left_supports(D, interval, q).angles()
        pool |= right_supports(D, interval, q).angles()
    return pool


def is_supported_on_interval(
    D: pg.PlaneDigraph, interval: Interval, endpoint_positions: list[int]
) -> bool:
    """Check the defining condition: the distinct endpoint angles are
    covered by one left member united with one right member, both of level
    equal to the number of distinct angles."""
    w = frozenset(endpoint_positions)
    if not w:
        return True
    q = len(w)
    if q > len(interval.positions):
        return False
    lefts = left_supports(D, interval, q).members
    rights = right_supports(D, interval, q).members
    for bl in lefts:
        rest = w - bl
        if not rest:
            return True
        for br in rights:
            if rest <= br:
                return True
    return False
