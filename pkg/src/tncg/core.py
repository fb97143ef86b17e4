"""Temporal graphs and reachability primitives.

A temporal graph is an undirected graph where every edge carries a single
integer time label >= 1.  A temporal path is a simple path whose edge labels
are non-decreasing along the walk; traversal itself takes no time, so several
edges of the same label may be used in sequence.

Node sets are manipulated as bitmasks (Python ints) in the hot paths; the
public API exchanges ordinary sets.
"""

from __future__ import annotations

from typing import Iterable, Mapping

Pair = tuple[int, int]

# Running count of single-source reachability sweeps, for operation-count
# assertions in tests.  Cheap enough to keep always-on.
_REACH_EVALS = 0


def reach_evaluations() -> int:
    return _REACH_EVALS


def reset_reach_evaluations() -> None:
    global _REACH_EVALS
    _REACH_EVALS = 0


def norm_pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


class TemporalGraph:
    """Immutable undirected graph with one integer label per edge.

    `edges` maps normalized pairs (u, v) with u < v to labels >= 1.  Instances
    must not be mutated after construction: per-label component masks are
    cached lazily and would go stale.
    """

    __slots__ = ("n", "edges", "_comps")

    def __init__(self, n: int, edges: Mapping[tuple[int, int], int]):
        if n < 1:
            raise ValueError(f"node count must be >= 1, got {n}")
        norm: dict[Pair, int] = {}
        for (u, v), label in edges.items():
            p = norm_pair(u, v)
            if not (0 <= p[0] and p[1] < n):
                raise ValueError(f"edge {p} out of range for n={n}")
            if not isinstance(label, int) or isinstance(label, bool) or label < 1:
                raise ValueError(f"edge {p} has invalid label {label!r}")
            if p in norm and norm[p] != label:
                raise ValueError(f"edge {p} given conflicting labels")
            norm[p] = label
        self.n = n
        self.edges = norm
        self._comps: list[tuple[int, list[int]]] | None = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def lifetime(self) -> int:
        """Largest label present (0 for an edgeless graph)."""
        return max(self.edges.values(), default=0)

    def label(self, u: int, v: int) -> int | None:
        return self.edges.get(norm_pair(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return norm_pair(u, v) in self.edges

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def validate_host(self) -> None:
        """Hosts must be complete with labels exactly {1..lifetime}.

        Raises ValueError on the first violation found.
        """
        if not self.is_complete():
            raise ValueError(
                f"host must be complete: {self.edge_count} edges, "
                f"expected {self.n * (self.n - 1) // 2}"
            )
        present = set(self.edges.values())
        if present:
            t = max(present)
            missing = set(range(1, t + 1)) - present
            if missing:
                raise ValueError(
                    f"host labels must be consecutive 1..{t}; missing {sorted(missing)}"
                )

    def without_edge(self, u: int, v: int) -> "TemporalGraph":
        p = norm_pair(u, v)
        if p not in self.edges:
            raise ValueError(f"edge {p} not present")
        rest = dict(self.edges)
        del rest[p]
        return TemporalGraph(self.n, rest)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TemporalGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.edges.items())))

    def __repr__(self):
        return f"TemporalGraph(n={self.n}, edges={self.edge_count}, lifetime={self.lifetime})"

    def _class_components(self) -> list[tuple[int, list[int]]]:
        """Per label, bitmasks of the connected components of that label class.

        Singleton components are dropped; they can never extend a reach set.
        Ascending label order.
        """
        if self._comps is not None:
            return self._comps
        by_label: dict[int, list[Pair]] = {}
        for p, label in self.edges.items():
            by_label.setdefault(label, []).append(p)
        out: list[tuple[int, list[int]]] = []
        for label in sorted(by_label):
            parent: dict[int, int] = {}

            def find(a: int) -> int:
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for u, v in by_label[label]:
                parent.setdefault(u, u)
                parent.setdefault(v, v)
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            masks: dict[int, int] = {}
            for node in parent:
                masks[find(node)] = masks.get(find(node), 0) | (1 << node)
            out.append((label, sorted(masks.values())))
        self._comps = out
        return out

    def reach_mask(self, u: int, start_label: int = 1) -> int:
        """Bitmask of nodes temporally reachable from u.

        Only labels >= start_label may be used.  One ascending sweep over the
        label classes suffices: within a class every edge is reusable, so the
        reached set grows by whole components, and labels never decrease
        along a temporal path.
        """
        global _REACH_EVALS
        _REACH_EVALS += 1
        if not (0 <= u < self.n):
            raise ValueError(f"node {u} out of range")
        reached = 1 << u
        for label, comps in self._class_components():
            if label < start_label:
                continue
            for comp in comps:
                if comp & reached:
                    reached |= comp
        return reached

    def reach(self, u: int) -> set[int]:
        return mask_to_set(self.reach_mask(u))


def mask_to_set(mask: int) -> set[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return out


def set_to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def reach(g: TemporalGraph, u: int) -> set[int]:
    """Set of nodes temporally reachable from u (always includes u)."""
    return g.reach(u)


def is_temporal_path(g: TemporalGraph, nodes: list[int]) -> bool:
    """True iff `nodes` is a simple path in g with non-decreasing labels."""
    if len(nodes) != len(set(nodes)):
        return False
    if len(nodes) == 1:
        return 0 <= nodes[0] < g.n
    last = 0
    for a, b in zip(nodes, nodes[1:]):
        label = g.label(a, b)
        if label is None or label < last:
            return False
        last = label
    return True


def is_temporally_connected(g: TemporalGraph) -> bool:
    """True iff every node temporally reaches every other node."""
    full = (1 << g.n) - 1
    return all(g.reach_mask(u) == full for u in range(g.n))


def is_temporal_spanner(host: TemporalGraph, sub: TemporalGraph) -> bool:
    """True iff sub keeps host's node set temporally connected.

    sub must be a label-preserving subgraph of host (same n, every sub edge
    present in host with an equal label); anything else raises ValueError.
    """
    if sub.n != host.n:
        raise ValueError(f"node count mismatch: sub has {sub.n}, host has {host.n}")
    for p, label in sub.edges.items():
        if host.edges.get(p) != label:
            raise ValueError(f"edge {p} (label {label}) not in host with equal label")
    return is_temporally_connected(sub)


def is_minimal_spanner(host: TemporalGraph, sub: TemporalGraph) -> bool:
    """True iff sub is a spanner and dropping any single edge breaks it."""
    if not is_temporal_spanner(host, sub):
        return False
    for p in sub.edges:
        if is_temporally_connected(sub.without_edge(*p)):
            return False
    return True


def compress_labels(g: TemporalGraph) -> TemporalGraph:
    """Renumber labels order-preservingly onto {1..k}.

    Temporal paths are invariant under any order-preserving relabeling, so
    reachability is unchanged.
    """
    present = sorted(set(g.edges.values()))
    remap = {label: i + 1 for i, label in enumerate(present)}
    return TemporalGraph(g.n, {p: remap[label] for p, label in g.edges.items()})
