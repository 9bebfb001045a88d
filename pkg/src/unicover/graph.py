"""Multigraph representation, cut enumeration, contraction and structural classifiers.

All arithmetic on weights is exact (fractions.Fraction).  Graphs are immutable
after construction; every operation returns new values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

EdgeMultiset = Dict[int, int]          # edge id -> multiplicity >= 0
EdgeVector = Dict[int, Fraction]       # edge id -> exact rational >= 0

BRUTE_FORCE_VERTEX_LIMIT = 20


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Fraction
    id: int

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        seen: Set[int] = set()
        for e in self.edges:
            if e.u == e.v:
                raise GraphError(f"self-loop on vertex {e.u} (edge e{e.id})")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge e{e.id} endpoint out of range")
            if e.weight < 0:
                raise GraphError(f"edge e{e.id} has negative weight")
            if e.id in seen:
                raise GraphError(f"duplicate edge id e{e.id}")
            seen.add(e.id)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_by_id(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"no edge with id e{eid}")

    def edge_ids(self) -> List[int]:
        return [e.id for e in self.edges]

    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """adj[v] = list of (neighbour, edge id)."""
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        return adj

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def incident(self, v: int) -> List[int]:
        return [e.id for e in self.edges if v in (e.u, e.v)]

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def with_weights(self, weights: Mapping[int, Fraction]) -> "Multigraph":
        return Multigraph(self.n, tuple(
            Edge(e.u, e.v, Fraction(weights[e.id]), e.id) for e in self.edges))


@dataclass(frozen=True)
class NodeWeights:
    f: Tuple[Fraction, ...]

    def __post_init__(self):
        for i, w in enumerate(self.f):
            if w <= 0:
                raise GraphError(f"node weight of vertex {i} must be positive")

    def total(self) -> Fraction:
        return sum(self.f, Fraction(0))

    def induced_graph(self, G: Multigraph) -> Multigraph:
        if len(self.f) != G.n:
            raise GraphError("node weight vector length mismatch")
        return G.with_weights({e.id: self.f[e.u] + self.f[e.v] for e in G.edges})


@dataclass(frozen=True)
class Cut:
    shore: Tuple[int, ...]        # canonical side, contains vertex 0
    edge_ids: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class CutFamily:
    cuts: Tuple[Cut, ...]

    def __len__(self) -> int:
        return len(self.cuts)

    def of_size(self, *sizes: int) -> List[Cut]:
        return [c for c in self.cuts if c.size in sizes]


def connected_components(n: int, edges: Iterable[Tuple[int, int]]) -> List[List[int]]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ra, rb = find(u), find(v)
        if ra != rb:
            parent[ra] = rb
    comps: Dict[int, List[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def is_connected(G: Multigraph) -> bool:
    return len(connected_components(G.n, ((e.u, e.v) for e in G.edges))) == 1


def is_bipartite(G: Multigraph) -> Tuple[bool, Optional[List[int]]]:
    """Returns (bipartite, colouring or odd-cycle witness as None)."""
    colour = [-1] * G.n
    adj = G.adjacency()
    for s in range(G.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False, None
    return True, colour


def cut_edges(G: Multigraph, shore: Iterable[int]) -> FrozenSet[int]:
    side = set(shore)
    return frozenset(e.id for e in G.edges if (e.u in side) != (e.v in side))


def enumerate_cuts_upto(G: Multigraph, k: int) -> CutFamily:
    """All cuts delta(S) with |delta(S)| <= k, each edge set once.

    Brute force over vertex shores; shores are canonicalized to the side
    containing vertex 0.
    """
    if k > 4:
        raise GraphError("cut enumeration is limited to k <= 4")
    if not is_connected(G):
        raise GraphError("disconnected input")
    if G.n > BRUTE_FORCE_VERTEX_LIMIT:
        raise GraphError(f"brute-force cut enumeration capped at n <= {BRUTE_FORCE_VERTEX_LIMIT}")
    incid: List[List[int]] = [[] for _ in range(G.n)]
    for e in G.edges:
        incid[e.u].append(e.id)
        incid[e.v].append(e.id)
    found: Dict[FrozenSet[int], Tuple[int, ...]] = {}
    rest = list(range(1, G.n))
    for size in range(0, G.n - 1):
        for extra in itertools.combinations(rest, size):
            shore = (0,) + extra
            if len(shore) == G.n:
                continue
            ids = cut_edges(G, shore)
            if len(ids) <= k and ids not in found:
                found[ids] = shore
    cuts = tuple(sorted((Cut(shore, ids) for ids, shore in found.items()),
                        key=lambda c: (c.size, sorted(c.edge_ids), c.shore)))
    return CutFamily(cuts)


def edge_connectivity(G: Multigraph) -> int:
    """Exact edge connectivity (number of edges in a global min cut)."""
    if G.n < 2:
        return 0
    value, _ = min_cut_unit(G)
    return value


def min_cut_unit(G: Multigraph) -> Tuple[int, Tuple[int, ...]]:
    from .lp import min_cut  # deferred to avoid an import cycle
    cap = {e.id: Fraction(1) for e in G.edges}
    value, shore = min_cut(G, cap)
    return int(value), shore


def contract(G: Multigraph, F: EdgeMultiset) -> Tuple[Multigraph, Dict[int, int]]:
    """G/F: contract the edges of F, drop self-loops, keep parallel edges.

    Surviving edges keep their ids; the returned map sends each surviving id to
    its parent id (identity, provided for interface stability).
    """
    ids = {e.id for e in G.edges}
    for eid in F:
        if eid not in ids:
            raise GraphError(f"edge e{eid} not in graph")
    shrink = [(e.u, e.v) for e in G.edges if F.get(e.id, 0) > 0]
    comps = connected_components(G.n, shrink)
    rep: Dict[int, int] = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            rep[v] = idx
    new_edges = tuple(
        Edge(rep[e.u], rep[e.v], e.weight, e.id)
        for e in G.edges if rep[e.u] != rep[e.v])
    H = Multigraph(len(comps), new_edges)
    return H, {e.id: e.id for e in new_edges}


def multiset_degrees(G: Multigraph, H: EdgeMultiset) -> List[int]:
    deg = [0] * G.n
    for e in G.edges:
        mult = H.get(e.id, 0)
        deg[e.u] += mult
        deg[e.v] += mult
    return deg


def multiset_weight(G: Multigraph, H: EdgeMultiset) -> Fraction:
    total = Fraction(0)
    for e in G.edges:
        total += e.weight * H.get(e.id, 0)
    return total


def multiset_union(*parts: EdgeMultiset) -> EdgeMultiset:
    out: EdgeMultiset = {}
    for part in parts:
        for eid, mult in part.items():
            if mult:
                out[eid] = out.get(eid, 0) + mult
    return out


def _spanning_connected(G: Multigraph, H: EdgeMultiset) -> bool:
    comps = connected_components(
        G.n, ((e.u, e.v) for e in G.edges if H.get(e.id, 0) > 0))
    return len(comps) == 1


def _two_edge_connected(G: Multigraph, H: EdgeMultiset) -> bool:
    """Spanning and 2-edge-connected as a multigraph (no bridges)."""
    if not _spanning_connected(G, H):
        return False
    for e in G.edges:
        if H.get(e.id, 0) == 1:
            rest = {eid: m for eid, m in H.items() if eid != e.id}
            if not _spanning_connected(G, rest):
                return False
    return True


def classify(G: Multigraph, H: EdgeMultiset) -> Set[str]:
    """Multi-label structural classification of an edge multiset.

    Labels: tour, twoec-multigraph, connector, cycle-cover.  Empty set means
    no label applies.
    """
    for eid, mult in H.items():
        if mult < 0:
            raise GraphError("negative multiplicity")
    active = {eid: m for eid, m in H.items() if m > 0}
    labels: Set[str] = set()
    if G.n == 1:
        if not active:
            return {"tour", "twoec-multigraph", "connector"}
    deg = multiset_degrees(G, active)
    spanning = _spanning_connected(G, active)
    if spanning and all(d % 2 == 0 for d in deg):
        labels.add("tour")
    if spanning and _two_edge_connected(G, active):
        labels.add("twoec-multigraph")
    if spanning and all(m <= 2 for m in active.values()):
        labels.add("connector")
    if all(m <= 1 for m in active.values()) and all(d == 2 for d in deg):
        labels.add("cycle-cover")
    return labels


PROFILES = ("cubic-3ec", "subcubic-2ec", "bipartite-cubic-3ec", "4regular-4ec")


@dataclass(frozen=True)
class StructureReport:
    profile: str
    passed: bool
    degrees: Tuple[int, ...]
    edge_connectivity: int
    bipartite: bool
    violation: Optional[str] = None


def validate_structure(G: Multigraph, profile: str) -> StructureReport:
    if profile not in PROFILES:
        raise GraphError(f"unknown profile {profile!r}")
    if G.n == 0:
        raise GraphError("empty graph")
    deg = G.degrees()
    bip, _ = is_bipartite(G)
    conn = edge_connectivity(G) if G.n >= 2 else 0

    def report(violation: Optional[str]) -> StructureReport:
        return StructureReport(profile, violation is None, tuple(deg), conn, bip, violation)

    need_degree = {"cubic-3ec": 3, "bipartite-cubic-3ec": 3, "4regular-4ec": 4}
    if profile in need_degree:
        want = need_degree[profile]
        for v, d in enumerate(deg):
            if d != want:
                return report(f"vertex {v} has degree {d}")
    else:  # subcubic-2ec
        for v, d in enumerate(deg):
            if d > 3:
                return report(f"vertex {v} has degree {d}")
    need_conn = {"cubic-3ec": 3, "bipartite-cubic-3ec": 3, "subcubic-2ec": 2, "4regular-4ec": 4}[profile]
    if conn < need_conn:
        if G.n < 2 or not is_connected(G):
            return report("disconnected input")
        value, shore = min_cut_unit(G)
        ids = sorted(cut_edges(G, shore))
        names = "{" + ",".join(f"e{i}" for i in ids) + "}"
        return report(f"{value}-edge cut {names}")
    if profile == "bipartite-cubic-3ec" and not bip:
        return report("odd cycle found")
    return report(None)
