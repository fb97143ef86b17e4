"""Instance generators: every named family plus random hosts.

Node numbering conventions are fixed per generator so outputs are
deterministic and golden-testable.  Arc ownership is likewise fixed where the
underlying claim does not depend on it.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Optional

from .core import TemporalGraph, compress_labels
from .game import StrategyProfile

_UNION_FIND_HELP = None  # module uses small inline union-find loops


class SetCoverInstance:
    """Universe {1..k}, m non-empty subsets, optional candidate cover.

    The cover, when present, must actually cover the universe (indices are
    1-based into the set list).
    """

    __slots__ = ("k", "sets", "cover")

    def __init__(
        self,
        k: int,
        sets: Iterable[Iterable[int]],
        cover: Optional[Iterable[int]] = None,
    ):
        if k < 1:
            raise ValueError(f"universe size must be >= 1, got {k}")
        built = tuple(frozenset(s) for s in sets)
        if not built:
            raise ValueError("at least one set is required")
        for i, s in enumerate(built, start=1):
            if not s:
                raise ValueError(f"set {i} is empty")
            if not s <= set(range(1, k + 1)):
                raise ValueError(f"set {i} contains elements outside 1..{k}")
        self.k = k
        self.sets = built
        if cover is None:
            self.cover = None
        else:
            c = frozenset(cover)
            if not c <= set(range(1, len(built) + 1)):
                raise ValueError("cover indices must lie in 1..m")
            if not self.is_cover(c):
                raise ValueError("supplied index set is not a cover")
            self.cover = c

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1))

    def is_cover(self, indices: Iterable[int]) -> bool:
        covered: set[int] = set()
        for i in indices:
            covered |= self.sets[i - 1]
        return covered >= self.universe

    def min_cover(self) -> tuple[int, tuple[int, ...]]:
        """Exhaustive minimum cover; lexicographically smallest witness.

        Raises ValueError when the sets do not cover the universe at all.
        """
        indices = range(1, self.m + 1)
        for r in range(0, self.m + 1):
            for combo in combinations(indices, r):
                if self.is_cover(combo):
                    return r, combo
        raise ValueError("instance is not coverable: set union misses elements")

    def __eq__(self, other):
        return (
            isinstance(other, SetCoverInstance)
            and (self.k, self.sets, self.cover) == (other.k, other.sets, other.cover)
        )

    def __repr__(self):
        return f"SetCoverInstance(k={self.k}, m={self.m}, cover={self.cover})"


class ReductionLayout:
    """Node-index map for a set-cover reduction instance."""

    __slots__ = ("x", "a", "set_nodes", "elem_nodes", "v_nodes", "w_nodes")

    def __init__(self, x, a, set_nodes, elem_nodes, v_nodes, w_nodes):
        self.x = x
        self.a = a
        self.set_nodes = tuple(set_nodes)
        self.elem_nodes = tuple(elem_nodes)
        self.v_nodes = dict(v_nodes)
        self.w_nodes = dict(w_nodes)

    def as_dict(self) -> dict:
        return {
            "x": self.x,
            "a": self.a,
            "set_nodes": list(self.set_nodes),
            "elem_nodes": list(self.elem_nodes),
            "v_nodes": {f"{i},{j}": node for (i, j), node in sorted(self.v_nodes.items())},
            "w_nodes": {str(i): node for i, node in sorted(self.w_nodes.items())},
        }


def _spanning_tree_of_class(n: int, class_edges: list[tuple[int, int]]):
    """Lexicographic Kruskal over one label class; None if it does not span."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for (u, v) in sorted(class_edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
    if len(tree) != n - 1:
        return None
    return tree


def gen_hypercube(d: int) -> tuple[TemporalGraph, StrategyProfile]:
    """Hypercube lower-bound family on n = 2^d nodes.

    Host pairs differing in exactly one bit position i get label i+1; every
    other pair gets label d+1.  Each hypercube edge is bought by its
    numerically smaller endpoint.
    """
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    n = 1 << d
    edges = {}
    strategies: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            x = u ^ v
            if x & (x - 1) == 0:
                edges[(u, v)] = x.bit_length()
                strategies[u].add(v)
            else:
                edges[(u, v)] = d + 1
    return TemporalGraph(n, edges), StrategyProfile(n, strategies)


def gen_t2_family(n: int) -> tuple[TemporalGraph, StrategyProfile]:
    """Lifetime-2 equilibrium family with 2(n-2) arcs, tight for the
    t(n-2) edge bound.

    Nodes 0,1,2 form a path bought as (0,1), (1,2); every remaining node j
    hangs off it via arcs (2,j) and (j,0).  Pair {1,2} and pairs {0,j} carry
    label 1; everything else label 2.
    """
    if n < 5:
        raise ValueError(f"need n >= 5, got {n}")
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) == (1, 2) or (u == 0 and v >= 3):
                edges[(u, v)] = 1
            else:
                edges[(u, v)] = 2
    strategies: list[set[int]] = [set() for _ in range(n)]
    strategies[0] = {1}
    strategies[1] = {2}
    strategies[2] = set(range(3, n))
    for j in range(3, n):
        strategies[j] = {0}
    return TemporalGraph(n, edges), StrategyProfile(n, strategies)


def gen_br_cycle() -> tuple[TemporalGraph, StrategyProfile, list[int]]:
    """Start state of the greedy best-response cycle on 8 nodes.

    Nodes 0..5 are the ring agents, 6 the contested endpoint, 7 the hub that
    buys to every ring agent.  Scheduling agents [0, 2, 4, 0, 2, 4] under the
    greedy rule toggles their arcs to node 6 and returns to this exact
    profile after six strictly improving moves.
    """
    drawn = {
        (0, 1): 2, (1, 2): 1,          # ring arcs bought by 1
        (2, 3): 2, (3, 4): 1,          # bought by 3
        (4, 5): 2, (0, 5): 1,          # bought by 5
        (0, 6): 3, (4, 6): 3,          # contested endpoint arcs
        (2, 6): 3,                     # host pair only; not bought initially
    }
    for i in range(6):
        drawn[(i, 7)] = 4
    n = 8
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            edges[(u, v)] = drawn.get((u, v), 5)
    strategies: list[set[int]] = [set() for _ in range(n)]
    strategies[1] = {0, 2}
    strategies[3] = {2, 4}
    strategies[5] = {4, 0}
    strategies[0] = {6}
    strategies[4] = {6}
    strategies[7] = {0, 1, 2, 3, 4, 5}
    schedule = [0, 2, 4, 0, 2, 4]
    return TemporalGraph(n, edges), StrategyProfile(n, strategies), schedule


def gen_reduction_br(sc: SetCoverInstance) -> tuple[TemporalGraph, StrategyProfile, ReductionLayout]:
    """Best-response hardness instance: x's optimum equals a minimum cover.

    Nodes: x=0, set nodes 1..m, element nodes m+1..m+k, then one node per
    (set, member) incidence.  Host labels: 1 on every x-incident pair and on
    matching set-to-incidence pairs, else 2.  The created graph chains the
    set nodes and connects each incidence node to its set and element; every
    undirected edge is bought by its smaller endpoint, and x buys nothing.
    """
    m, k = sc.m, sc.k
    set_node = {i: i for i in range(1, m + 1)}
    elem_node = {j: m + j for j in range(1, k + 1)}
    v_nodes = {}
    nxt = m + k + 1
    for i in range(1, m + 1):
        for j in sorted(sc.sets[i - 1]):
            v_nodes[(i, j)] = nxt
            nxt += 1
    n = nxt
    label_one: set[tuple[int, int]] = set()
    for w in range(1, n):
        label_one.add((0, w))
    for (i, j), node in v_nodes.items():
        label_one.add(tuple(sorted((set_node[i], node))))
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            edges[(u, v)] = 1 if (u, v) in label_one else 2
    strategies: list[set[int]] = [set() for _ in range(n)]
    for i in range(1, m):
        strategies[set_node[i]].add(set_node[i + 1])
    for (i, j), node in v_nodes.items():
        strategies[set_node[i]].add(node)        # set node is the smaller index
        strategies[elem_node[j]].add(node)
    layout = ReductionLayout(
        x=0,
        a=None,
        set_nodes=[set_node[i] for i in range(1, m + 1)],
        elem_nodes=[elem_node[j] for j in range(1, k + 1)],
        v_nodes=v_nodes,
        w_nodes={},
    )
    return TemporalGraph(n, edges), StrategyProfile(n, strategies), layout


def gen_reduction_ne(sc: SetCoverInstance) -> tuple[TemporalGraph, StrategyProfile, ReductionLayout]:
    """Equilibrium hardness instance: NE iff the supplied cover is minimum.

    Nodes: x=0, helper a=1, set nodes, element nodes, incidence nodes, and
    one w node per set outside the cover.  x buys exactly the cover; every
    other agent plays a best response by construction.  Labels follow the
    three-case scheme over {1,2,3}; when the cover is all of M no label-1
    pair exists and the labels are compressed to stay consecutive.

    The equivalence needs every set to be a proper subset of the universe: a
    full set outside the cover reaches all elements through its own incidence
    nodes and everything else through a at time 3, so its w arc stops being
    a best response.  gen_random_setcover only emits proper subsets.
    """
    if sc.cover is None:
        raise ValueError("instance must carry a candidate cover")
    m, k = sc.m, sc.k
    cover = sc.cover
    outside = [i for i in range(1, m + 1) if i not in cover]
    set_node = {i: 1 + i for i in range(1, m + 1)}
    elem_node = {j: m + 1 + j for j in range(1, k + 1)}
    v_nodes = {}
    nxt = m + k + 2
    for i in range(1, m + 1):
        for j in sorted(sc.sets[i - 1]):
            v_nodes[(i, j)] = nxt
            nxt += 1
    w_nodes = {}
    for i in outside:
        w_nodes[i] = nxt
        nxt += 1
    n = nxt
    x, a = 0, 1

    def pair(u, v):
        return (u, v) if u < v else (v, u)

    label = {}
    # case 1: a set outside the cover with x, its w node, or one of its
    # incidence nodes
    for i in outside:
        label[pair(set_node[i], x)] = 1
        label[pair(set_node[i], w_nodes[i])] = 1
        for j in sorted(sc.sets[i - 1]):
            label[pair(set_node[i], v_nodes[(i, j)])] = 1
    # case 2: a cover set with x or one of its incidence nodes; w-to-x;
    # last element to a; the element chain
    for i in sorted(cover):
        label[pair(set_node[i], x)] = 2
        for j in sorted(sc.sets[i - 1]):
            label[pair(set_node[i], v_nodes[(i, j)])] = 2
    for i in outside:
        label[pair(w_nodes[i], x)] = 2
    label[pair(elem_node[k], a)] = 2
    for j in range(1, k):
        label[pair(elem_node[j], elem_node[j + 1])] = 2
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            edges[(u, v)] = label.get((u, v), 3)

    strategies: list[set[int]] = [set() for _ in range(n)]
    strategies[x] = {set_node[i] for i in sorted(cover)}
    strategies[a] = {x} | {set_node[i] for i in range(1, m + 1)} | {w_nodes[i] for i in outside}
    for j in range(1, k):
        strategies[elem_node[j]].add(elem_node[j + 1])
    strategies[elem_node[k]].add(a)
    for (i, j), node in v_nodes.items():
        strategies[node].add(set_node[i])
        strategies[elem_node[j]].add(node)
    for i in outside:
        strategies[set_node[i]].add(w_nodes[i])
        strategies[w_nodes[i]].add(x)

    host = TemporalGraph(n, edges)
    if not outside:
        host = compress_labels(host)
    layout = ReductionLayout(
        x=x,
        a=a,
        set_nodes=[set_node[i] for i in range(1, m + 1)],
        elem_nodes=[elem_node[j] for j in range(1, k + 1)],
        v_nodes=v_nodes,
        w_nodes=w_nodes,
    )
    return host, StrategyProfile(n, strategies), layout


def gen_t2_equilibrium(host: TemporalGraph) -> StrategyProfile:
    """Spanning-tree equilibrium on a complete host of lifetime <= 2.

    One of the two label classes always contains a spanning connected
    subgraph on a complete host; a spanning tree of that class, each edge
    bought by the child in a rooted orientation from node 0, is a Nash
    equilibrium.  Lifetime-1 hosts (every pair label 1) are the degenerate
    case of the same argument.
    """
    host.validate_host()
    t = host.lifetime
    if t > 2:
        raise ValueError(f"host lifetime must be <= 2, got {t}")
    by_label: dict[int, list[tuple[int, int]]] = {}
    for p, lab in host.edges.items():
        by_label.setdefault(lab, []).append(p)
    tree = None
    for lab in sorted(by_label):
        tree = _spanning_tree_of_class(host.n, by_label[lab])
        if tree is not None:
            break
    if tree is None:
        raise AssertionError(
            "no monochromatic spanning tree; impossible on a complete host"
        )
    adj: dict[int, list[int]] = {u: [] for u in range(host.n)}
    for (u, v) in tree:
        adj[u].append(v)
        adj[v].append(u)
    parent = {0: None}
    order = [0]
    for node in order:
        for nxt in sorted(adj[node]):
            if nxt not in parent:
                parent[nxt] = node
                order.append(nxt)
    strategies: list[set[int]] = [set() for _ in range(host.n)]
    for child, par in parent.items():
        if par is not None:
            strategies[child].add(par)
    return StrategyProfile(host.n, strategies)


def gen_random_host(n: int, t: int, seed: int) -> TemporalGraph:
    """Complete host with labels uniform in {1..t}, compressed to be
    consecutive; deterministic in seed."""
    max_t = n * (n - 1) // 2
    if not (1 <= t <= max_t):
        raise ValueError(f"need 1 <= t <= {max_t}, got {t}")
    rng = random.Random(seed)
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            edges[(u, v)] = rng.randint(1, t)
    return compress_labels(TemporalGraph(n, edges))


def gen_random_profile(host: TemporalGraph, arc_count: int, seed: int) -> StrategyProfile:
    """Uniformly sampled distinct arcs; experiment plumbing."""
    population = [
        (u, v) for u in range(host.n) for v in range(host.n) if u != v
    ]
    if not (0 <= arc_count <= len(population)):
        raise ValueError(f"arc count {arc_count} out of range")
    rng = random.Random(seed)
    strategies: list[set[int]] = [set() for _ in range(host.n)]
    for (u, v) in rng.sample(population, arc_count):
        strategies[u].add(v)
    return StrategyProfile(host.n, strategies)


def gen_random_directed(n: int, arc_count: int, t: int, seed: int):
    """Standalone random directed temporal graph; experiment plumbing."""
    from .game import DirectedTemporalGraph

    population = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not (0 <= arc_count <= len(population)):
        raise ValueError(f"arc count {arc_count} out of range")
    rng = random.Random(seed)
    arcs = {}
    for (u, v) in rng.sample(population, arc_count):
        arcs[(u, v)] = rng.randint(1, t)
    return DirectedTemporalGraph(n, arcs)


def gen_random_setcover(
    k_max: int, m_max: int, seed: int, k_min: int = 2, m_min: int = 2
) -> SetCoverInstance:
    """Random coverable instance; membership is an unbiased coin per element,
    sets resampled until non-empty and proper (a set equal to the whole
    universe collapses the equilibrium reduction, see gen_reduction_ne), then
    uncovered elements are patched in without filling any set."""
    rng = random.Random(seed)
    k = rng.randint(max(k_min, 2), k_max)
    m = rng.randint(max(m_min, 2), m_max)
    sets: list[set[int]] = []
    for _ in range(m):
        s = {j for j in range(1, k + 1) if rng.random() < 0.5}
        while not (0 < len(s) < k):
            s = {j for j in range(1, k + 1) if rng.random() < 0.5}
        sets.append(s)
    covered = set().union(*sets)
    for j in range(1, k + 1):
        if j in covered:
            continue
        hosts = [i for i in range(m) if len(sets[i]) < k - 1]
        if hosts:
            sets[rng.choice(hosts)].add(j)
        else:
            # every set is the universe minus j; replant one as {j}
            sets[rng.randrange(m)] = {j}
    return SetCoverInstance(k, sets)
