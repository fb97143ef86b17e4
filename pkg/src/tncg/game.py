"""Game model: strategy profiles, created graphs, and cost vectors.

Agents are the nodes of a complete temporal host graph.  Each agent v picks a
strategy S_v of endpoints to buy arcs to; arc (v, w) inherits the host label
of pair {v, w}.  Reachability in the created graph ignores arc directions,
directions only track who pays.

Costs are lexicographic pairs (unreached, edges): an agent first minimizes
the number of nodes it cannot reach, then the number of arcs it buys.  This
is the limit of |S_v| + K * unreached for any K > n - 1; `numeric` exposes
that scalar view for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

from .core import TemporalGraph, mask_to_set, norm_pair


@total_ordering
@dataclass(frozen=True)
class CostVector:
    unreached: int
    edges: int

    def key(self) -> tuple[int, int]:
        return (self.unreached, self.edges)

    def __lt__(self, other: "CostVector") -> bool:
        return self.key() < other.key()

    def numeric(self, k: int | float) -> int | float:
        """Scalar cost |edges| + k * unreached; equivalent order for k > n-1."""
        return self.edges + k * self.unreached

    def as_dict(self, k: int | None = None) -> dict:
        d = {"unreached": self.unreached, "edges": self.edges}
        if k is not None:
            d["numeric"] = self.numeric(k)
        return d

    def __add__(self, other: "CostVector") -> "CostVector":
        return CostVector(self.unreached + other.unreached, self.edges + other.edges)


class StrategyProfile:
    """Immutable tuple of per-agent endpoint sets.

    strategies[v] is a frozenset not containing v; endpoints lie in range(n).
    """

    __slots__ = ("n", "strategies")

    def __init__(self, n: int, strategies: Sequence[Iterable[int]] | Mapping[int, Iterable[int]]):
        if isinstance(strategies, Mapping):
            seq: list[Iterable[int]] = [strategies.get(v, ()) for v in range(n)]
        else:
            seq = list(strategies)
            if len(seq) != n:
                raise ValueError(f"expected {n} strategies, got {len(seq)}")
        built = []
        for v, s in enumerate(seq):
            fs = frozenset(s)
            for w in fs:
                if not (0 <= w < n):
                    raise ValueError(f"agent {v}: endpoint {w} out of range")
            if v in fs:
                raise ValueError(f"agent {v} buys an arc to itself")
            built.append(fs)
        self.n = n
        self.strategies = tuple(built)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.strategies[v]

    def with_strategy(self, v: int, s: Iterable[int]) -> "StrategyProfile":
        seq = list(self.strategies)
        seq[v] = frozenset(s)
        return StrategyProfile(self.n, seq)

    def arcs(self) -> list[tuple[int, int]]:
        """All bought arcs (owner, endpoint), ascending."""
        return [(v, w) for v in range(self.n) for w in sorted(self.strategies[v])]

    @property
    def arc_count(self) -> int:
        return sum(len(s) for s in self.strategies)

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Hashable exact representation, used as a dynamics state key."""
        return tuple(tuple(sorted(s)) for s in self.strategies)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StrategyProfile)
            and self.n == other.n
            and self.strategies == other.strategies
        )

    def __hash__(self):
        return hash((self.n, self.strategies))

    def __repr__(self):
        return f"StrategyProfile(n={self.n}, arcs={self.arc_count})"


def empty_profile(n: int) -> StrategyProfile:
    return StrategyProfile(n, [() for _ in range(n)])


class DirectedTemporalGraph:
    """Directed arcs with labels; the created graph of a profile.

    Antiparallel arcs may coexist but must agree on their label (they always
    do when labels come from one host pair).
    """

    __slots__ = ("n", "arcs")

    def __init__(self, n: int, arcs: Mapping[tuple[int, int], int]):
        for (u, v), label in arcs.items():
            if u == v:
                raise ValueError(f"self-loop arc at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range")
            if label < 1:
                raise ValueError(f"arc ({u}, {v}) has invalid label {label}")
        self.n = n
        self.arcs = dict(arcs)

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_antiparallel(self) -> bool:
        return any((v, u) in self.arcs for (u, v) in self.arcs)

    def undirected(self) -> TemporalGraph:
        edges: dict[tuple[int, int], int] = {}
        for (u, v), label in self.arcs.items():
            p = norm_pair(u, v)
            if edges.setdefault(p, label) != label:
                raise ValueError(f"antiparallel arcs on {p} disagree on label")
        return TemporalGraph(self.n, edges)


def created_graph(host: TemporalGraph, profile: StrategyProfile) -> DirectedTemporalGraph:
    """Directed created graph: arc (v, w) per w in S_v, labels from the host."""
    if profile.n != host.n:
        raise ValueError(f"profile n={profile.n} does not match host n={host.n}")
    arcs: dict[tuple[int, int], int] = {}
    for v in range(profile.n):
        for w in profile.strategies[v]:
            label = host.label(v, w)
            if label is None:
                raise ValueError(f"arc ({v}, {w}) has no host pair")
            arcs[(v, w)] = label
    return DirectedTemporalGraph(host.n, arcs)


def undirected_created(host: TemporalGraph, profile: StrategyProfile) -> TemporalGraph:
    return created_graph(host, profile).undirected()


def agent_cost(host: TemporalGraph, profile: StrategyProfile, v: int) -> CostVector:
    g = undirected_created(host, profile)
    unreached = host.n - bin(g.reach_mask(v)).count("1")
    return CostVector(unreached, len(profile.strategies[v]))


def social_cost(host: TemporalGraph, profile: StrategyProfile) -> CostVector:
    """Sum of agent costs; the edges component equals the total arc count."""
    g = undirected_created(host, profile)
    unreached = sum(host.n - bin(g.reach_mask(v)).count("1") for v in range(host.n))
    return CostVector(unreached, profile.arc_count)


def reach_sets(host: TemporalGraph, profile: StrategyProfile) -> list[set[int]]:
    g = undirected_created(host, profile)
    return [mask_to_set(g.reach_mask(v)) for v in range(host.n)]
