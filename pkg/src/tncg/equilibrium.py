"""Equilibrium verification and structural audits.

check_ge / check_ne decide stability against single-edge moves and arbitrary
strategy changes respectively.  The remaining operations are detectors for
structural facts about equilibria: necessary sets, the five-node forbidden
configuration, the dense-graph large-node witness, edge-count bounds, and the
relabeling that turns any greedy equilibrium into a Nash equilibrium.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import TemporalGraph, mask_to_set
from .errors import PreconditionViolated
from .game import (
    CostVector,
    DirectedTemporalGraph,
    StrategyProfile,
    agent_cost,
    created_graph,
)
from .responses import DEFAULT_BUDGET, exact_best_response, greedy_best_response


@dataclass(frozen=True)
class BoundsReport:
    n: int
    t: int
    arcs: int
    arc_bound: int                # t * (n - 2)
    arc_bound_applies: bool       # the bound is only claimed for n > 2, t > 1
    arc_bound_ok: bool
    dense_threshold: float        # sqrt(6) * n^1.5 + n, for display
    dense_ok: bool                # arcs strictly below the threshold (exact test)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "arcs": self.arcs,
            "arc_bound": self.arc_bound,
            "arc_bound_applies": self.arc_bound_applies,
            "arc_bound_ok": self.arc_bound_ok,
            "dense_threshold": self.dense_threshold,
            "dense_ok": self.dense_ok,
        }


@dataclass(frozen=True)
class ForbiddenStructure:
    """Witness nodes and arcs of the excluded five-node configuration."""

    z: int
    u1: int
    u2: int
    x: int
    y: int
    e1x: tuple[int, int]
    e1y: tuple[int, int]
    e2x: tuple[int, int]
    e2y: tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "z": self.z, "u1": self.u1, "u2": self.u2, "x": self.x, "y": self.y,
            "e1x": list(self.e1x), "e1y": list(self.e1y),
            "e2x": list(self.e2x), "e2y": list(self.e2y),
        }


@dataclass(frozen=True)
class ProfileAudit:
    antiparallel_free: bool
    bounds: BoundsReport
    necessary_ok: bool            # every arc has a non-empty necessary set
    forbidden: Optional[ForbiddenStructure]

    @property
    def ok(self) -> bool:
        bounds_ok = self.bounds.dense_ok and (
            self.bounds.arc_bound_ok or not self.bounds.arc_bound_applies
        )
        return (
            self.antiparallel_free
            and bounds_ok
            and self.necessary_ok
            and self.forbidden is None
        )

    def as_dict(self) -> dict:
        return {
            "antiparallel_free": self.antiparallel_free,
            "bounds": self.bounds.as_dict(),
            "necessary_ok": self.necessary_ok,
            "forbidden": self.forbidden.as_dict() if self.forbidden else None,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class EquilibriumReport:
    mode: str                     # "ne" or "ge"
    stable: bool
    witness: Optional[tuple[int, tuple[int, ...]]]
    agent_costs: tuple[CostVector, ...]
    audit: Optional[ProfileAudit] = None

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "stable": self.stable,
            "witness": (
                None
                if self.witness is None
                else {"agent": self.witness[0], "strategy": list(self.witness[1])}
            ),
            "agent_costs": [c.as_dict() for c in self.agent_costs],
            "audit": self.audit.as_dict() if self.audit else None,
        }


def check_ge(
    host: TemporalGraph, profile: StrategyProfile, audit: bool = False
) -> EquilibriumReport:
    """Stable iff no agent has an improving single-arc addition or deletion.

    The witness is the first improving agent in ascending order, with its
    best greedy move.
    """
    witness = None
    costs = []
    for v in range(host.n):
        costs.append(agent_cost(host, profile, v))
        if witness is None:
            strategy, improved = greedy_best_response(host, profile, v)
            if improved:
                witness = (v, tuple(sorted(strategy)))
    return EquilibriumReport(
        mode="ge",
        stable=witness is None,
        witness=witness,
        agent_costs=tuple(costs),
        audit=audit_profile(host, profile) if audit else None,
    )


def check_ne(
    host: TemporalGraph,
    profile: StrategyProfile,
    budget_cap: int = DEFAULT_BUDGET,
    audit: bool = False,
) -> EquilibriumReport:
    """Stable iff no agent has any improving strategy (exact best responses)."""
    witness = None
    costs = []
    for v in range(host.n):
        cur = agent_cost(host, profile, v)
        costs.append(cur)
        if witness is None:
            strategy, cost = exact_best_response(host, profile, v, budget_cap=budget_cap)
            if cost < cur:
                witness = (v, tuple(sorted(strategy)))
    return EquilibriumReport(
        mode="ne",
        stable=witness is None,
        witness=witness,
        agent_costs=tuple(costs),
        audit=audit_profile(host, profile) if audit else None,
    )


def necessary_set(
    host: TemporalGraph, profile: StrategyProfile, u: int, w: int
) -> set[int]:
    """A_G(e) for arc e=(u, w): nodes u reaches only through its arc e.

    Removing the arc removes the undirected pair only when the antiparallel
    twin is absent; with the twin present the set is empty.
    """
    if w not in profile.strategies[u]:
        raise ValueError(f"arc ({u}, {w}) is not present in the profile")
    g = created_graph(host, profile)
    before = g.undirected().reach_mask(u)
    arcs = dict(g.arcs)
    del arcs[(u, w)]
    after = DirectedTemporalGraph(g.n, arcs).undirected().reach_mask(u)
    return mask_to_set(before & ~after)


def _necessary_masks(
    host: TemporalGraph, profile: StrategyProfile
) -> dict[tuple[int, int], int]:
    g = created_graph(host, profile)
    und = g.undirected()
    out: dict[tuple[int, int], int] = {}
    reach_cache: dict[int, int] = {}
    for (u, w) in g.arcs:
        if u not in reach_cache:
            reach_cache[u] = und.reach_mask(u)
        arcs = dict(g.arcs)
        del arcs[(u, w)]
        after = DirectedTemporalGraph(g.n, arcs).undirected().reach_mask(u)
        out[(u, w)] = reach_cache[u] & ~after
    return out


def find_forbidden_structure(
    host: TemporalGraph, profile: StrategyProfile
) -> Optional[ForbiddenStructure]:
    """Search for the five-node configuration no profile may contain.

    A witness consists of z, two distinct neighbors u1, u2 of z in the created
    graph, and four pairwise distinct arcs e_ij (i per agent, j per target)
    such that e_ij is bought by u_i, is not the {z, u_i} edge, carries a label
    >= label({z, u_i}), and target j lies in the necessary set of e_ij, for
    two distinct targets x != y.  Returns the first witness in ascending scan
    order, or None; a None on every input is the expected outcome.
    """
    g = created_graph(host, profile)
    und = g.undirected()
    a_masks = _necessary_masks(host, profile)
    neighbor_sets: list[list[int]] = [[] for _ in range(host.n)]
    for (a, b) in und.edges:
        neighbor_sets[a].append(b)
        neighbor_sets[b].append(a)
    for z in range(host.n):
        nbrs = sorted(neighbor_sets[z])
        if len(nbrs) < 2:
            continue
        # per neighbor u: arcs owned by u, excluding the {z,u} pair, with
        # label >= label({z,u}) and a non-empty necessary set
        cand: dict[int, list[tuple[tuple[int, int], int]]] = {}
        for u in nbrs:
            zu_label = und.label(z, u)
            lst = []
            for w in sorted(profile.strategies[u]):
                if w == z:
                    continue
                arc = (u, w)
                if g.arcs[arc] >= zu_label and a_masks[arc]:
                    lst.append((arc, a_masks[arc]))
            cand[u] = lst
        for u1 in nbrs:
            for u2 in nbrs:
                if u1 == u2 or not cand[u1] or not cand[u2]:
                    continue
                hit = _match_targets(cand[u1], cand[u2], host.n)
                if hit is not None:
                    x, y, e1x, e1y, e2x, e2y = hit
                    return ForbiddenStructure(z, u1, u2, x, y, e1x, e1y, e2x, e2y)
    return None


def _match_targets(c1, c2, n):
    """Two targets x < y, each in a necessary set of both agents, with the
    two arcs per agent distinct."""
    t1: dict[int, list[tuple[int, int]]] = {}
    t2: dict[int, list[tuple[int, int]]] = {}
    for arc, mask in c1:
        for node in mask_to_set(mask):
            t1.setdefault(node, []).append(arc)
    for arc, mask in c2:
        for node in mask_to_set(mask):
            t2.setdefault(node, []).append(arc)
    common = sorted(set(t1) & set(t2))
    for xi in range(len(common)):
        for yi in range(xi + 1, len(common)):
            x, y = common[xi], common[yi]
            pick1 = _distinct_pair(t1[x], t1[y])
            pick2 = _distinct_pair(t2[x], t2[y])
            if pick1 and pick2:
                return x, y, pick1[0], pick1[1], pick2[0], pick2[1]
    return None


def _distinct_pair(arcs_x, arcs_y):
    for a in arcs_x:
        for b in arcs_y:
            if a != b:
                return a, b
    return None


def _dense_below_threshold(n: int, arcs: int) -> bool:
    """Exact test for arcs < sqrt(6) * n^1.5 + n using integer arithmetic."""
    if arcs <= n:
        return True
    return (arcs - n) ** 2 < 6 * n**3


def _ceil_sqrt_over(y: int, d: int) -> int:
    """ceil(sqrt(y) / d) for non-negative integers, exactly."""
    s = math.isqrt(y)
    if s * s == y and s % d == 0:
        return s // d
    return s // d + 1


@dataclass(frozen=True)
class LargeNodeWitness:
    z: int
    members: tuple[int, ...]
    trimmed: dict[int, tuple[tuple[int, int], ...]]   # u -> its set E_u of arcs

    def as_dict(self) -> dict:
        return {
            "z": self.z,
            "members": list(self.members),
            "trimmed": {str(u): [list(a) for a in arcs] for u, arcs in self.trimmed.items()},
        }


def find_large_node(g: DirectedTemporalGraph) -> LargeNodeWitness:
    """Dense-graph witness: a node z with ceil(sqrt(6n)/3) in-neighbors that
    each keep >= (2/3)sqrt(6n) other out-arcs labeled at least their arc to z.

    Constructive procedure: per node, trim the ceil((2/3)sqrt(6n)) out-arcs
    with the largest labels (ties broken toward smaller endpoints); by
    pigeonhole the trimmed graph has a node z of in-degree >= ceil(sqrt(6n)/3),
    and each surviving in-neighbor's trimmed arcs form its set E_u.

    Raises PreconditionViolated below the sqrt(6)*n^1.5 + n arc threshold.
    """
    n = g.n
    arcs = g.arc_count
    if _dense_below_threshold(n, arcs):
        raise PreconditionViolated(
            f"{arcs} arcs is below the density threshold "
            f"{math.sqrt(6) * n ** 1.5 + n:.2f} for n={n}"
        )
    trim_count = _ceil_sqrt_over(24 * n, 3)     # ceil((2/3) sqrt(6n))
    m_size = _ceil_sqrt_over(6 * n, 3)          # ceil((1/3) sqrt(6n))
    out_arcs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, w) in g.arcs:
        out_arcs[u].append((u, w))
    kept: dict[tuple[int, int], int] = {}
    removed: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u in range(n):
        ordered = sorted(out_arcs[u], key=lambda a: (-g.arcs[a], a[1]))
        removed[u] = ordered[:trim_count]
        for a in ordered[trim_count:]:
            kept[a] = g.arcs[a]
    indeg = [0] * n
    for (_, w) in kept:
        indeg[w] += 1
    z = max(range(n), key=lambda v: (indeg[v], -v))
    if indeg[z] < m_size:
        raise AssertionError(
            "pigeonhole failure: max trimmed in-degree below the guaranteed bound"
        )
    members = sorted(u for (u, w) in kept if w == z)[:m_size]
    trimmed = {u: tuple(sorted(removed[u])) for u in members}
    return LargeNodeWitness(z, tuple(members), trimmed)


def verify_large_node(g: DirectedTemporalGraph, witness: LargeNodeWitness) -> bool:
    """Independent re-check of the three witness conditions by enumeration."""
    n = g.n
    if len(set(witness.members)) != _ceil_sqrt_over(6 * n, 3):
        return False
    for u in witness.members:
        if (u, witness.z) not in g.arcs:
            return False
        eu = witness.trimmed.get(u, ())
        # at least (2/3) sqrt(6n) arcs, exactly: 9 * |E_u|^2 >= 24n
        if 9 * len(eu) ** 2 < 24 * n or len(set(eu)) != len(eu):
            return False
        base_label = g.arcs[(u, witness.z)]
        for (a, b) in eu:
            if a != u or b == witness.z or (a, b) not in g.arcs:
                return False
            if g.arcs[(a, b)] < base_label:
                return False
    return True


def audit_edge_bounds(host: TemporalGraph, profile: StrategyProfile) -> BoundsReport:
    """Edge-count bounds a greedy equilibrium must satisfy.

    The t(n-2) bound is claimed for n > 2, t > 1; outside that range it is
    reported as not applicable.  The density bound (strictly fewer than
    sqrt(6)*n^1.5 + n arcs) holds for every equilibrium.
    """
    n = host.n
    t = host.lifetime
    arcs = profile.arc_count
    applies = n > 2 and t > 1
    bound = t * (n - 2)
    return BoundsReport(
        n=n,
        t=t,
        arcs=arcs,
        arc_bound=bound,
        arc_bound_applies=applies,
        arc_bound_ok=arcs <= bound,
        dense_threshold=math.sqrt(6) * n**1.5 + n,
        dense_ok=_dense_below_threshold(n, arcs),
    )


def audit_profile(host: TemporalGraph, profile: StrategyProfile) -> ProfileAudit:
    g = created_graph(host, profile)
    masks = _necessary_masks(host, profile)
    return ProfileAudit(
        antiparallel_free=not g.has_antiparallel(),
        bounds=audit_edge_bounds(host, profile),
        necessary_ok=all(masks[a] for a in masks),
        forbidden=find_forbidden_structure(host, profile),
    )


def freeze_relabel(host: TemporalGraph, profile: StrategyProfile) -> TemporalGraph:
    """New host where every pair outside the created graph gets label t+1.

    Created arcs keep their labels, so the profile's reachability and social
    cost are unchanged; a greedy equilibrium becomes a Nash equilibrium on
    the new host.  The result can skip intermediate labels; compress_labels
    restores consecutiveness when a strict host value is needed.
    """
    t = host.lifetime
    created = created_graph(host, profile).undirected()
    edges = {
        p: (label if p in created.edges else t + 1)
        for p, label in host.edges.items()
    }
    return TemporalGraph(host.n, edges)
