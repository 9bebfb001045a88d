"""Convex decomposition of edge vectors into combinatorial objects.

All decompositions run exact column generation: a rational simplex master over
the generated objects plus an exact pricing routine (minimum spanning tree,
minimum T-join via shortest paths and a matching DP, maximum-weight connector,
exhaustive minimum 1-cover).  Optimality of the pricing step proves optimality
of the master over the full object class, so a failed decomposition is a
genuine infeasibility, not a search artifact.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import (EdgeMultiset, EdgeVector, GraphError, Multigraph,
                    classify, connected_components, multiset_union)
from .lp import MembershipResult, membership, one_edge_cuts
from .simplex import Tableau

ZERO = Fraction(0)
ONE = Fraction(1)

CanonicalObject = Tuple[Tuple[int, int], ...]   # sorted ((edge id, multiplicity), ...)


class DecompositionError(GraphError):
    def __init__(self, message: str, membership_failure: Optional[MembershipResult] = None):
        super().__init__(message)
        self.membership_failure = membership_failure


def canonical(obj: EdgeMultiset) -> CanonicalObject:
    return tuple(sorted((eid, m) for eid, m in obj.items() if m > 0))


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    edges: CanonicalObject
    labels: FrozenSet[str]

    def multiset(self) -> EdgeMultiset:
        return dict(self.edges)


@dataclass(frozen=True)
class ConvexCombination:
    terms: Tuple[Term, ...]
    target: Tuple[Tuple[int, Fraction], ...]    # edge id -> target value, sorted
    relation: str                               # "equals" | "dominated-by"

    def target_vector(self) -> EdgeVector:
        return {eid: v for eid, v in self.target}

    def coverage(self) -> EdgeVector:
        out: EdgeVector = {}
        for t in self.terms:
            for eid, mult in t.edges:
                out[eid] = out.get(eid, ZERO) + t.coefficient * mult
        return out


def make_combination(G: Multigraph, terms: Sequence[Tuple[Fraction, EdgeMultiset]],
                     target: EdgeVector, relation: str) -> ConvexCombination:
    merged: Dict[CanonicalObject, Fraction] = {}
    for coeff, obj in terms:
        if coeff <= 0:
            continue
        key = canonical(obj)
        merged[key] = merged.get(key, ZERO) + coeff
    out = tuple(Term(coeff, key, frozenset(classify(G, dict(key))))
                for key, coeff in sorted(merged.items()))
    tgt = tuple(sorted((eid, Fraction(v)) for eid, v in target.items()))
    return ConvexCombination(out, tgt, relation)


def verify_combination(G: Multigraph, comb: ConvexCombination,
                       required_label: Optional[str] = None) -> None:
    total = sum((t.coefficient for t in comb.terms), ZERO)
    if total != 1:
        raise DecompositionError(f"coefficients sum to {total}, not 1")
    target = comb.target_vector()
    cover = comb.coverage()
    for eid in set(cover) | set(target):
        lhs = cover.get(eid, ZERO)
        rhs = target.get(eid, ZERO)
        if comb.relation == "equals" and lhs != rhs:
            raise DecompositionError(f"coverage {lhs} != target {rhs} on e{eid}")
        if comb.relation == "dominated-by" and lhs > rhs:
            raise DecompositionError(f"coverage {lhs} exceeds target {rhs} on e{eid}")
    if required_label is not None:
        for t in comb.terms:
            if required_label not in t.labels:
                raise DecompositionError(
                    f"term {t.edges} is not a {required_label} (labels: {sorted(t.labels)})")
    if len(comb.terms) > G.m + 1:
        raise DecompositionError(
            f"{len(comb.terms)} terms exceed the Caratheodory bound {G.m + 1}")


# ---------------------------------------------------------------------------
# Caratheodory reduction


def caratheodory_reduce(terms: List[Tuple[Fraction, EdgeMultiset]],
                        limit: int) -> List[Tuple[Fraction, EdgeMultiset]]:
    """Reduce to at most `limit` terms, preserving the exact coverage vector
    and the coefficient sum.  Terms are a subset of the input objects."""
    merged: Dict[CanonicalObject, Fraction] = {}
    for coeff, obj in terms:
        if coeff > 0:
            key = canonical(obj)
            merged[key] = merged.get(key, ZERO) + coeff
    work = sorted(merged.items())
    while len(work) > limit:
        ids = sorted({eid for key, _ in work for eid, _ in key})
        rowindex = {eid: i for i, eid in enumerate(ids)}
        nrows = len(ids) + 1
        take = min(len(work), nrows + 1)
        cols = []
        for key, _ in work[:take]:
            col = [ZERO] * nrows
            for eid, mult in key:
                col[rowindex[eid]] = Fraction(mult)
            col[-1] = ONE
            cols.append(col)
        d = _kernel_vector(cols, nrows)
        if d is None:
            # The first `take` columns are independent; rotate and retry.
            work = work[1:] + work[:1]
            continue
        # Step lambda -> lambda - t*d until some coefficient hits zero.
        t_best = None
        for j, dj in enumerate(d):
            if dj > 0:
                t = work[j][1] / dj
                if t_best is None or t < t_best:
                    t_best = t
        if t_best is None:
            d = [-v for v in d]
            for j, dj in enumerate(d):
                if dj > 0:
                    t = work[j][1] / dj
                    if t_best is None or t < t_best:
                        t_best = t
        assert t_best is not None
        new_work = []
        for j, (key, coeff) in enumerate(work):
            c = coeff - (t_best * d[j] if j < len(d) else ZERO)
            if c > 0:
                new_work.append((key, c))
        assert len(new_work) < len(work)
        work = new_work
    return [(coeff, dict(key)) for key, coeff in work]


def _kernel_vector(cols: List[List[Fraction]], nrows: int) -> Optional[List[Fraction]]:
    """A nonzero vector d with sum_j d_j col_j = 0, or None if independent."""
    k = len(cols)
    # Augment each column with its combination bookkeeping.
    vecs = [list(col) for col in cols]
    combos = [[ONE if i == j else ZERO for i in range(k)] for j in range(k)]
    pivots: List[Tuple[int, int]] = []   # (row, column index into processed)
    processed: List[int] = []
    for j in range(k):
        v = vecs[j]
        cmb = combos[j]
        for (prow, pj) in pivots:
            factor = v[prow]
            if factor:
                pv = vecs[pj]
                pc = combos[pj]
                for r in range(nrows):
                    if pv[r]:
                        v[r] -= factor * pv[r]
                for r in range(k):
                    if pc[r]:
                        cmb[r] -= factor * pc[r]
        pivot_row = next((r for r in range(nrows) if v[r]), None)
        if pivot_row is None:
            if any(cmb):
                return cmb
            continue
        inv = ONE / v[pivot_row]
        for r in range(nrows):
            v[r] *= inv
        for r in range(k):
            cmb[r] *= inv
        pivots.append((pivot_row, j))
        processed.append(j)
    return None


# ---------------------------------------------------------------------------
# Column generation masters


def _dominated_master(target_rows: List[Tuple[int, Fraction]],
                      price: Callable[[Dict[int, Fraction]], Tuple[Fraction, EdgeMultiset]],
                      ) -> List[Tuple[Fraction, EdgeMultiset]]:
    """max sum(lambda) s.t. sum(lambda * chi) <= target; returns unscaled lambdas.

    `price` gets nonnegative edge weights and must return an exact minimum
    weight object of the class (weight, multiset).
    """
    ids = [eid for eid, _ in target_rows]
    index = {eid: i for i, eid in enumerate(ids)}
    m = len(ids)
    tab = Tableau([v for _, v in target_rows])
    for i in range(m):
        col = [ZERO] * m
        col[i] = ONE
        tab.add_column(col, ZERO)     # slack
    tab.set_initial_basis()
    objects: List[EdgeMultiset] = []
    known: Set[CanonicalObject] = set()
    while True:
        tab.optimize()
        y = tab.duals([1] * m)
        weights = {eid: -y[index[eid]] for eid in ids}
        value, obj = price(weights)
        if value >= 1:
            break
        key = canonical(obj)
        if key in known:
            raise RuntimeError("pricing returned a known column; solver bug")
        known.add(key)
        objects.append(dict(key))
        col = [ZERO] * m
        for eid, mult in key:
            col[index[eid]] = Fraction(mult)
        tab.add_column(col, -ONE)
    lambdas = tab.solution(m + len(objects))[m:]
    return [(lam, obj) for lam, obj in zip(lambdas, objects) if lam > 0]


def _equality_master(target_rows: List[Tuple[int, Fraction]],
                     price_max: Callable[[Dict[int, Fraction]], Tuple[Fraction, EdgeMultiset]],
                     ) -> Optional[List[Tuple[Fraction, EdgeMultiset]]]:
    """Find lambda >= 0, sum = 1, sum(lambda * chi) = target; None if impossible.

    `price_max` gets arbitrary-sign edge weights and must return an exact
    maximum weight object of the class.
    """
    ids = [eid for eid, _ in target_rows]
    index = {eid: i for i, eid in enumerate(ids)}
    m = len(ids)
    nrows = m + 1                      # + convexity row
    tab = Tableau([v for _, v in target_rows] + [ONE])
    for i in range(nrows):
        col = [ZERO] * nrows
        col[i] = ONE
        tab.add_column(col, ONE)       # artificial, cost 1
    tab.set_initial_basis()
    objects: List[EdgeMultiset] = []
    known: Set[CanonicalObject] = set()
    artificials = set(range(nrows))
    while True:
        tab.optimize(forbidden=artificials if tab.obj == 0 else None)
        y = tab.duals([1] * nrows)
        weights = {eid: y[index[eid]] for eid in ids}
        mu = y[-1]
        value, obj = price_max(weights)
        if value <= -mu:
            break
        key = canonical(obj)
        if key in known:
            raise RuntimeError("pricing returned a known column; solver bug")
        known.add(key)
        objects.append(dict(key))
        col = [ZERO] * nrows
        for eid, mult in key:
            col[index[eid]] = Fraction(mult)
        col[-1] = ONE
        tab.add_column(col, ZERO)
    if tab.obj != 0:
        return None
    lambdas = tab.solution(nrows + len(objects))[nrows:]
    return [(lam, obj) for lam, obj in zip(lambdas, objects) if lam > 0]


# ---------------------------------------------------------------------------
# Pricing routines


def _mst_price(G: Multigraph, support: Set[int]
               ) -> Callable[[Dict[int, Fraction]], Tuple[Fraction, EdgeMultiset]]:
    edges = sorted((e for e in G.edges if e.id in support), key=lambda e: e.id)

    def price(weights: Dict[int, Fraction]) -> Tuple[Fraction, EdgeMultiset]:
        order = sorted(edges, key=lambda e: (weights.get(e.id, ZERO), e.id))
        parent = list(range(G.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        tree: EdgeMultiset = {}
        total = ZERO
        for e in order:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
                tree[e.id] = 1
                total += weights.get(e.id, ZERO)
        if len(tree) != G.n - 1:
            raise DecompositionError("support does not contain a spanning tree")
        return total, tree

    return price


def min_tjoin(G: Multigraph, weights: Dict[int, Fraction], T: Set[int],
              support: Optional[Set[int]] = None) -> Tuple[Fraction, EdgeMultiset]:
    """Exact minimum weight T-join (nonnegative weights): shortest paths
    between T-vertices plus an exact matching DP, symmetric difference."""
    if len(T) % 2 == 1:
        raise GraphError("odd |T|")
    if not T:
        return ZERO, {}
    allowed = support if support is not None else set(weights)
    scale = lcm(*[Fraction(weights[eid]).denominator for eid in allowed]) if allowed else 1
    iw = {eid: int(Fraction(weights[eid]) * scale) for eid in allowed}
    adj: List[List[Tuple[int, int, int]]] = [[] for _ in range(G.n)]
    for e in G.edges:
        if e.id in allowed:
            adj[e.u].append((e.v, iw[e.id], e.id))
            adj[e.v].append((e.u, iw[e.id], e.id))
    terms = sorted(T)
    tindex = {v: i for i, v in enumerate(terms)}
    INF = float("inf")
    dist_rows: List[List[int]] = []
    paths: Dict[Tuple[int, int], List[int]] = {}
    for s in terms:
        dist = [INF] * G.n
        prev_edge: List[Optional[Tuple[int, int]]] = [None] * G.n
        dist[s] = 0
        heap = [(0, s)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for w, cost, eid in adj[v]:
                nd = d + cost
                if nd < dist[w]:
                    dist[w] = nd
                    prev_edge[w] = (v, eid)
                    heapq.heappush(heap, (nd, w))
        dist_rows.append([dist[t] for t in terms])
        for t in terms:
            if t != s and dist[t] < INF:
                path = []
                v = t
                while v != s:
                    pv, eid = prev_edge[v]
                    path.append(eid)
                    v = pv
                paths[(s, t)] = path
    t = len(terms)
    full = (1 << t) - 1
    dp: List[Optional[int]] = [None] * (1 << t)
    choice: List[Optional[Tuple[int, int]]] = [None] * (1 << t)
    dp[0] = 0
    for mask in range(1 << t):
        if dp[mask] is None or mask == full:
            continue
        free = ~mask & full
        i = (free & -free).bit_length() - 1
        rest = free & ~(1 << i)
        j = rest
        while j:
            jb = j & -j
            jidx = jb.bit_length() - 1
            d = dist_rows[i][jidx]
            if d < INF:
                nm = mask | (1 << i) | jb
                nv = dp[mask] + d
                if dp[nm] is None or nv < dp[nm]:
                    dp[nm] = nv
                    choice[nm] = (i, jidx)
            j ^= jb
    if dp[full] is None:
        raise DecompositionError("T vertices not connected in the support")
    join: Dict[int, int] = {}
    mask = full
    while mask:
        i, j = choice[mask]
        for eid in paths[(terms[i], terms[j])]:
            join[eid] = join.get(eid, 0) ^ 1
        mask &= ~(1 << i) & ~(1 << j)
    join = {eid: 1 for eid, m in join.items() if m}
    total = sum((Fraction(weights[eid]) for eid in join), ZERO)
    return total, join


def _connector_price_max(G: Multigraph, support: Set[int]
                         ) -> Callable[[Dict[int, Fraction]], Tuple[Fraction, EdgeMultiset]]:
    edges = [e for e in G.edges if e.id in support]

    def price(weights: Dict[int, Fraction]) -> Tuple[Fraction, EdgeMultiset]:
        obj: EdgeMultiset = {}
        total = ZERO
        parent = list(range(G.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in edges:
            w = weights.get(e.id, ZERO)
            if w > 0:
                obj[e.id] = 2
                total += 2 * w
                ru, rv = find(e.u), find(e.v)
                if ru != rv:
                    parent[ru] = rv
        # Connect the remaining components with a maximum weight forest.
        order = sorted(edges, key=lambda e: (-weights.get(e.id, ZERO), e.id))
        for e in order:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
                obj[e.id] = obj.get(e.id, 0) + 1
                total += weights.get(e.id, ZERO)
        roots = {find(v) for v in range(G.n)}
        if len(roots) != 1:
            raise DecompositionError("graph is disconnected")
        return total, obj

    return price


def _one_cover_price(G: Multigraph, F: EdgeMultiset, candidate_ids: Set[int]
                     ) -> Callable[[Dict[int, Fraction]], Tuple[Fraction, EdgeMultiset]]:
    cuts = one_edge_cuts(G, F)
    shores = [set(shore) for shore, _ in cuts]
    relevant: List[int] = sorted(
        eid for eid in candidate_ids
        if any((G.edge_by_id(eid).u in s) != (G.edge_by_id(eid).v in s) for s in shores))
    if len(relevant) > 22:
        raise DecompositionError("exhaustive 1-cover pricing capped at 22 candidate edges")
    masks: List[int] = []
    for s in shores:
        mask = 0
        for i, eid in enumerate(relevant):
            e = G.edge_by_id(eid)
            if (e.u in s) != (e.v in s):
                mask |= 1 << i
        if mask == 0:
            raise DecompositionError("a 1-edge cut of F has no candidate cover edge")
        masks.append(mask)
    k = len(relevant)
    full = (1 << len(shores)) - 1

    def price(weights: Dict[int, Fraction]) -> Tuple[Fraction, EdgeMultiset]:
        if not shores:
            return ZERO, {}
        best = None
        best_sub = 0
        for sub in range(1 << k):
            covered = 0
            for ci, mask in enumerate(masks):
                if mask & sub:
                    covered |= 1 << ci
            if covered != full:
                continue
            w = sum((weights.get(relevant[i], ZERO)
                     for i in range(k) if sub & (1 << i)), ZERO)
            if best is None or w < best or (w == best and sub < best_sub):
                best = w
                best_sub = sub
        assert best is not None
        return best, {relevant[i]: 1 for i in range(k) if best_sub & (1 << i)}

    return price


# ---------------------------------------------------------------------------
# Public decompositions


def _require(result: MembershipResult) -> None:
    if not result.inside:
        raise DecompositionError(
            f"input vector is outside {result.polyhedron}: {result.detail}", result)


def decompose_spanning_trees(G: Multigraph, x: EdgeVector) -> ConvexCombination:
    """Spanning trees of the support of x, dominated by x."""
    _require(membership(G, x, "subtour"))
    support = {eid for eid, v in x.items() if v > 0}
    rows = sorted((eid, x[eid]) for eid in support)
    raw = _dominated_master(rows, _mst_price(G, support))
    sigma = sum((lam for lam, _ in raw), ZERO)
    if sigma < 1:
        raise DecompositionError(f"tree packing value {sigma} < 1; x not in the dominant")
    terms = [(lam / sigma, obj) for lam, obj in raw]
    terms = caratheodory_reduce(terms, G.m + 1)
    return make_combination(G, terms, dict(x), "dominated-by")


def decompose_tjoins(G: Multigraph, x: EdgeVector, T: Set[int]) -> ConvexCombination:
    """T-joins dominated by x, for x in the T-join dominant."""
    if len(T) % 2 == 1:
        raise GraphError("odd |T|")
    if not T:
        return make_combination(G, [(ONE, {})], dict(x), "dominated-by")
    support = {eid for eid, v in x.items() if v > 0}
    rows = sorted((eid, x[eid]) for eid in support)

    def price(weights: Dict[int, Fraction]) -> Tuple[Fraction, EdgeMultiset]:
        return min_tjoin(G, weights, T, support=support)

    raw = _dominated_master(rows, price)
    sigma = sum((lam for lam, _ in raw), ZERO)
    if sigma < 1:
        check = membership(G, x, "tjoin-up", T=T)
        raise DecompositionError(
            f"T-join packing value {sigma} < 1; x not in the dominant "
            f"({check.detail})", check if not check.inside else None)
    terms = [(lam / sigma, obj) for lam, obj in raw]
    terms = caratheodory_reduce(terms, G.m + 1)
    return make_combination(G, terms, dict(x), "dominated-by")


def clip_at_two(x: EdgeVector) -> EdgeVector:
    return {eid: min(v, Fraction(2)) for eid, v in x.items()}


def decompose_connectors(G: Multigraph, x: EdgeVector) -> ConvexCombination:
    """Equality decomposition of x (clipped at 2) into connectors of G."""
    _require(membership(G, x, "subtour"))
    xbar = {eid: v for eid, v in clip_at_two(x).items() if v > 0}
    rows = sorted(xbar.items())
    raw = _equality_master(rows, _connector_price_max(G, set(xbar)))
    if raw is None:
        raise DecompositionError("x is not in the connector polytope")
    terms = caratheodory_reduce(raw, G.m + 1)
    comb = make_combination(G, terms, xbar, "equals")
    for t in comb.terms:
        if "connector" not in t.labels:
            raise DecompositionError(f"non-connector term {t.edges}")
    return comb


def decompose_one_covers(G: Multigraph, F: EdgeMultiset, y: EdgeVector,
                         alpha: Fraction) -> ConvexCombination:
    """1-covers of the connector F dominated by (2/(1+alpha)) * y."""
    alpha = Fraction(alpha)
    if not (0 < alpha <= 1):
        raise GraphError("alpha must be in (0, 1]")
    for eid, v in y.items():
        if v != 0 and v < alpha:
            raise DecompositionError(f"y_e{eid} = {v} violates the alpha threshold {alpha}")
    factor = Fraction(2, 1) / (1 + alpha)
    target = {eid: factor * v for eid, v in y.items() if v > 0}
    cuts = one_edge_cuts(G, F)
    if not cuts:
        return make_combination(G, [(ONE, {})], target, "dominated-by")
    check = membership(G, y, "cover", F=F)
    if not check.inside:
        raise DecompositionError(f"y is outside Cover(G, F): {check.detail}", check)
    rows = sorted(target.items())
    price = _one_cover_price(G, F, set(target))
    raw = _dominated_master(rows, price)
    sigma = sum((lam for lam, _ in raw), ZERO)
    if sigma < 1:
        raise DecompositionError(f"1-cover packing value {sigma} < 1")
    terms = [(lam / sigma, obj) for lam, obj in raw]
    terms = caratheodory_reduce(terms, G.m + 1)
    comb = make_combination(G, terms, target, "dominated-by")
    shores = [set(shore) for shore, _ in cuts]
    for t in comb.terms:
        chosen = t.multiset()
        for s in shores:
            if not any((G.edge_by_id(eid).u in s) != (G.edge_by_id(eid).v in s)
                       for eid in chosen):
                raise DecompositionError("term fails to cover a 1-edge cut of F")
    return comb


def wolsey_tours(G: Multigraph, x: EdgeVector) -> ConvexCombination:
    """Tours dominated by (3/2) x: spanning trees of x, each completed with
    parity-fixing joins drawn from x/2 (polyhedral Christofides)."""
    _require(membership(G, x, "subtour"))
    trees = decompose_spanning_trees(G, x)
    half = {eid: v / 2 for eid, v in x.items()}
    terms: List[Tuple[Fraction, EdgeMultiset]] = []
    for tree_term in trees.terms:
        tree = tree_term.multiset()
        deg = [0] * G.n
        for e in G.edges:
            mult = tree.get(e.id, 0)
            deg[e.u] += mult
            deg[e.v] += mult
        odd = {v for v in range(G.n) if deg[v] % 2 == 1}
        joins = decompose_tjoins(G, half, odd)
        for join_term in joins.terms:
            tour = multiset_union(tree, join_term.multiset())
            terms.append((tree_term.coefficient * join_term.coefficient, tour))
    target = {eid: Fraction(3, 2) * v for eid, v in x.items()}
    terms = caratheodory_reduce(terms, G.m + 1)
    comb = make_combination(G, terms, target, "dominated-by")
    for t in comb.terms:
        if "tour" not in t.labels:
            raise DecompositionError(f"non-tour term {t.edges}")
    return comb
