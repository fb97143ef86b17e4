"""Greedy and exact best responses.

Both rest on one decomposition: every temporal path leaving agent v uses
exactly one v-incident edge, its first hop.  For an endpoint w the
continuation cover

    cover[w] = nodes reachable from w using labels >= label({v, w})
               in the created graph with v removed

does not depend on v's own strategy.  v's reach under strategy S is then
{v} | in-neighbor covers | union of cover[w] for w in S, so evaluating any
strategy is a few bitmask unions and exact best response is a minimum set
cover over fixed candidate masks.
"""

from __future__ import annotations

from .core import TemporalGraph
from .errors import SearchSpaceExceeded
from .game import CostVector, StrategyProfile

DEFAULT_BUDGET = 10_000_000


class _AgentView:
    """Per-agent cover data for one (host, profile, v) evaluation."""

    __slots__ = ("n", "v", "covers", "in_mask", "base", "cur_mask", "cur_cost")

    def __init__(self, host: TemporalGraph, profile: StrategyProfile, v: int):
        n = host.n
        if not (0 <= v < n):
            raise ValueError(f"agent {v} out of range")
        rest_arcs: dict[tuple[int, int], int] = {}
        in_neighbors = []
        for u in range(n):
            if u == v:
                continue
            for w in profile.strategies[u]:
                if w == v:
                    in_neighbors.append(u)
                else:
                    label = host.label(u, w)
                    if label is None:
                        raise ValueError(f"profile arc ({u}, {w}) has no host pair")
                    rest_arcs[(u, w)] = label
        from .game import DirectedTemporalGraph

        rest = DirectedTemporalGraph(n, rest_arcs).undirected()
        covers = [0] * n
        for w in range(n):
            if w == v:
                continue
            label = host.label(v, w)
            if label is None:
                raise ValueError(f"host pair ({v}, {w}) missing; host must be complete")
            covers[w] = rest.reach_mask(w, start_label=label)
        self.n = n
        self.v = v
        self.covers = covers
        self.base = 1 << v
        in_mask = 0
        for u in in_neighbors:
            in_mask |= covers[u]
        self.in_mask = in_mask
        cur = self.base | in_mask
        for w in profile.strategies[v]:
            cur |= covers[w]
        self.cur_mask = cur
        self.cur_cost = CostVector(n - cur.bit_count(), len(profile.strategies[v]))

    def strategy_cost(self, strategy) -> CostVector:
        mask = self.base | self.in_mask
        for w in strategy:
            mask |= self.covers[w]
        return CostVector(self.n - mask.bit_count(), len(strategy))


def greedy_best_response(
    host: TemporalGraph, profile: StrategyProfile, v: int
) -> tuple[frozenset[int], bool]:
    """Best single-arc addition or deletion for v, else the current strategy.

    Returns (strategy, improved).  Ties among equally good moves go to the
    lexicographically smallest resulting endpoint set.  Uses at most n
    single-source reachability sweeps.
    """
    view = _AgentView(host, profile, v)
    current = profile.strategies[v]
    best_cost = view.cur_cost
    best_strategy: tuple[int, ...] | None = None
    candidates: list[tuple[int, ...]] = []
    for w in sorted(current):
        candidates.append(tuple(sorted(current - {w})))
    for w in range(view.n):
        if w != v and w not in current:
            candidates.append(tuple(sorted(current | {w})))
    for cand in candidates:
        cost = view.strategy_cost(cand)
        if cost < best_cost or (
            cost == best_cost and best_strategy is not None and cand < best_strategy
        ):
            best_cost = cost
            best_strategy = cand
    if best_strategy is None:
        return current, False
    return frozenset(best_strategy), True


def _choose_element(rem: int, cands: list[tuple[int, int]], start: int) -> tuple[int, int]:
    """Uncovered element with the fewest remaining covering candidates.

    Returns (bit, count); count 0 means the remainder is uncoverable.
    """
    best_bit, best_count = -1, -1
    probe = rem
    while probe:
        low = probe & -probe
        probe ^= low
        count = 0
        for i in range(start, len(cands)):
            if cands[i][1] & low:
                count += 1
                if best_count != -1 and count >= best_count:
                    break
        if count == 0:
            return low, 0
        if best_count == -1 or count < best_count:
            best_bit, best_count = low, count
    return best_bit, best_count


def _exists_cover(
    rem: int, cands: list[tuple[int, int]], start: int, r: int, state: list[int]
) -> bool:
    """Can candidates[start:] cover rem with at most r sets?"""
    state[0] += 1
    if state[0] > state[1]:
        raise SearchSpaceExceeded(
            f"exact search exceeded budget of {state[1]} cover evaluations"
        )
    if rem == 0:
        return True
    if r == 0:
        return False
    max_pop = 0
    for i in range(start, len(cands)):
        gain = (cands[i][1] & rem).bit_count()
        if gain > max_pop:
            max_pop = gain
    if max_pop * r < rem.bit_count():
        return False
    bit, count = _choose_element(rem, cands, start)
    if count == 0:
        return False
    for i in range(start, len(cands)):
        if cands[i][1] & bit:
            if _exists_cover(rem & ~cands[i][1], cands, start, r - 1, state):
                return True
    return False


def _lex_min_cover(
    universe: int, cands: list[tuple[int, int]], size: int, state: list[int]
) -> list[int]:
    """Lexicographically smallest endpoint set among covers of exactly `size`.

    Fix the smallest feasible candidate, then recheck completability with the
    remaining budget restricted to later candidates; minimum covers always
    list each member as contributing, so skipping non-contributing candidates
    is safe.
    """
    chosen: list[int] = []
    rem = universe
    start = 0
    for slot in range(size):
        placed = False
        for i in range(start, len(cands)):
            node, mask = cands[i]
            if mask & rem == 0:
                continue
            if _exists_cover(rem & ~mask, cands, i + 1, size - slot - 1, state):
                chosen.append(node)
                rem &= ~mask
                start = i + 1
                placed = True
                break
        if not placed:
            raise AssertionError("cover completion failed after existence was proven")
    return chosen


def exact_best_response(
    host: TemporalGraph,
    profile: StrategyProfile,
    v: int,
    budget_cap: int = DEFAULT_BUDGET,
) -> tuple[frozenset[int], CostVector]:
    """Cost-minimal strategy for v, holding everyone else fixed.

    On complete hosts a full cover always exists, so the optimum reaches
    everything and minimizes bought arcs: a minimum set cover over the
    candidate masks.  Sizes are tried in ascending order and the search stops
    at the first feasible size, so unreached-dominance pruning is implicit;
    returns the current strategy when nothing strictly better exists.

    Raises SearchSpaceExceeded when more than budget_cap cover evaluations
    would be needed to prove optimality.
    """
    view = _AgentView(host, profile, v)
    current = profile.strategies[v]
    n = view.n
    full = (1 << n) - 1
    universe = full & ~(view.base | view.in_mask)
    if universe == 0:
        if current:
            return frozenset(), CostVector(0, 0)
        return current, view.cur_cost
    cands = []
    for w in range(n):
        if w != v and view.covers[w] & universe:
            cands.append((w, view.covers[w] & universe))
    cap = len(current) - 1 if view.cur_cost.unreached == 0 else len(cands)
    max_pop = max(((m & universe).bit_count() for _, m in cands), default=0)
    if max_pop == 0:
        return current, view.cur_cost
    lower = -(-universe.bit_count() // max_pop)
    state = [0, budget_cap]
    found: int | None = None
    for r in range(lower, cap + 1):
        if _exists_cover(universe, cands, 0, r, state):
            found = r
            break
    if found is None:
        return current, view.cur_cost
    strategy = _lex_min_cover(universe, cands, found, state)
    return frozenset(strategy), CostVector(0, found)
