"""Non-uniform hypergraphs on vertex set {1..n} and the combinatorics used
by the Lagrangian machinery: colex order, initial segments, induced
subgraphs, left-compression, cliques and link structures, plus a small
text format for reading and writing instances.

Edges are stored per cardinality level as strictly increasing tuples, each
level kept in colex order.  Instances are treated as immutable; every
operation returns a new Hypergraph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Edge = tuple[int, ...]


class HypergraphFormatError(ValueError):
    """Raised on malformed hypergraph text, with the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def colex_key(edge: Iterable[int]) -> int:
    """Integer whose binary comparison realizes colex order on finite sets."""
    return sum(1 << v for v in edge)


def colex_less(a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff set a precedes set b in colex order (max of the symmetric
    difference lies in b).  Works across different cardinalities."""
    sa, sb = frozenset(a), frozenset(b)
    if sa == sb:
        raise ValueError("colex_less requires distinct sets")
    return max(sa ^ sb) in sb


def validate_types(types: Iterable[int]) -> tuple[int, ...]:
    """Normalize a collection of edge cardinalities to a sorted tuple."""
    out = tuple(sorted(types))
    if not out:
        raise ValueError("edge type set must be nonempty")
    for r in out:
        if not isinstance(r, (int, np.integer)) or isinstance(r, bool) or r < 1:
            raise ValueError(f"edge cardinality must be a positive integer, got {r!r}")
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate cardinalities in type set {out}")
    return tuple(int(r) for r in out)


def _canonical_edge(edge: Iterable[int], n: int) -> Edge:
    vs = tuple(int(v) for v in edge)
    if not vs:
        raise ValueError("empty edge")
    if len(set(vs)) != len(vs):
        raise ValueError(f"edge {vs} repeats a vertex")
    for v in vs:
        if v < 1 or v > n:
            raise ValueError(f"vertex {v} outside 1..{n}")
    return tuple(sorted(vs))


class Hypergraph:
    """A hypergraph on vertices 1..n with edges grouped by cardinality."""

    __slots__ = ("n", "_levels", "_sets", "_arrays")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        grouped: dict[int, set[Edge]] = {}
        for raw in edges:
            e = _canonical_edge(raw, n)
            bucket = grouped.setdefault(len(e), set())
            if e in bucket:
                raise ValueError(f"duplicate edge {e}")
            bucket.add(e)
        self._levels: dict[int, tuple[Edge, ...]] = {
            r: tuple(sorted(grouped[r], key=colex_key)) for r in sorted(grouped)
        }
        self._sets: dict[int, frozenset[Edge]] = {
            r: frozenset(es) for r, es in self._levels.items()
        }
        self._arrays: dict[int, np.ndarray] = {}

    @property
    def edge_types(self) -> tuple[int, ...]:
        """Sorted cardinalities that carry at least one edge."""
        return tuple(self._levels)

    def level(self, r: int) -> tuple[Edge, ...]:
        return self._levels.get(r, ())

    def level_set(self, r: int) -> frozenset[Edge]:
        return self._sets.get(r, frozenset())

    def edges(self) -> Iterator[Edge]:
        for r in self._levels:
            yield from self._levels[r]

    def edge_count(self, r: int | None = None) -> int:
        if r is not None:
            return len(self._levels.get(r, ()))
        return sum(len(es) for es in self._levels.values())

    def has_edge(self, edge: Iterable[int]) -> bool:
        e = tuple(sorted(int(v) for v in edge))
        return e in self._sets.get(len(e), frozenset())

    def level_array(self, r: int) -> np.ndarray:
        """Edge list of a level as a 0-based int64 matrix (m_r, r), cached."""
        arr = self._arrays.get(r)
        if arr is None:
            arr = np.asarray(self._levels[r], dtype=np.int64) - 1
            arr.flags.writeable = False
            self._arrays[r] = arr
        return arr

    def covered_vertices(self) -> frozenset[int]:
        """Vertices contained in at least one edge of any cardinality."""
        return frozenset(v for e in self.edges() for v in e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self._levels == other._levels

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._levels.items())))

    def __repr__(self) -> str:
        total = self.edge_count()
        return f"Hypergraph(n={self.n}, edges={total}, types={self.edge_types})"


def complete(types: Iterable[int], n: int) -> Hypergraph:
    """Complete hypergraph on [n] whose edges are all subsets with
    cardinality in the given type set."""
    ts = validate_types(types)
    if n < ts[-1]:
        raise ValueError(f"need n >= {ts[-1]} for type set {ts}, got {n}")
    edges = [c for r in ts for c in itertools.combinations(range(1, n + 1), r)]
    return Hypergraph(n, edges)


def colex_first_m(types: Iterable[int], m: int) -> Hypergraph:
    """The m colex-smallest sets whose cardinality lies in the type set.

    The vertex count of the result is the largest vertex actually used.
    """
    ts = validate_types(types)
    if m < 1:
        raise ValueError("m must be at least 1")
    horizon = ts[-1]
    while sum(_binom(horizon, r) for r in ts) < m:
        horizon += 1
    pool = [c for r in ts for c in itertools.combinations(range(1, horizon + 1), r)]
    pool.sort(key=colex_key)
    chosen = pool[:m]
    n = max(v for e in chosen for v in e)
    return Hypergraph(n, chosen)


def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def induced(H: Hypergraph, W: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Subgraph induced on W with vertices relabeled 1..|W| preserving order.

    Returns the subgraph and the old-to-new vertex map.
    """
    Ws = sorted(set(int(v) for v in W))
    for v in Ws:
        if v < 1 or v > H.n:
            raise ValueError(f"vertex {v} outside 1..{H.n}")
    relabel = {v: k + 1 for k, v in enumerate(Ws)}
    keep = set(Ws)
    edges = [
        tuple(relabel[v] for v in e)
        for e in H.edges()
        if keep.issuperset(e)
    ]
    return Hypergraph(len(Ws), edges), relabel


def isolated_vertices(H: Hypergraph) -> frozenset[int]:
    """Vertices carrying a singleton edge but lying in no larger edge."""
    singles = {e[0] for e in H.level(1)}
    if not singles:
        return frozenset()
    covered = {
        v
        for r in H.edge_types
        if r >= 2
        for e in H.level(r)
        for v in e
    }
    return frozenset(singles - covered)


def compress_edge(edge: Iterable[int], i: int, j: int) -> Edge:
    """Replace j with i in the edge when i is absent and j present."""
    if i >= j:
        raise ValueError(f"compression requires i < j, got i={i}, j={j}")
    if i < 1:
        raise ValueError("vertices must be positive")
    e = tuple(sorted(int(v) for v in edge))
    if j in e and i not in e:
        return tuple(sorted([v for v in e if v != j] + [i]))
    return e


def compress_set(H: Hypergraph, i: int, j: int) -> Hypergraph:
    """Left-compression of the edge set: each edge maps j to i unless the
    image already exists, in which case both survive.  Edge counts per
    level are preserved."""
    if i >= j:
        raise ValueError(f"compression requires i < j, got i={i}, j={j}")
    if i < 1 or j > H.n:
        raise ValueError(f"compression pair ({i},{j}) outside 1..{H.n}")
    edges: list[Edge] = []
    for r in H.edge_types:
        lset = H.level_set(r)
        image = {compress_edge(e, i, j) for e in lset}
        kept = {e for e in lset if compress_edge(e, i, j) in lset}
        merged = image | kept
        if len(merged) != len(lset):
            raise AssertionError("compression changed an edge count")
        edges.extend(merged)
    return Hypergraph(H.n, edges)


def is_left_compressed(H: Hypergraph) -> bool:
    """True iff every level is a downset in the coordinatewise dominance
    order, equivalently iff every compression fixes H."""
    for r in H.edge_types:
        lset = H.level_set(r)
        for e in lset:
            prev = 0
            for p, v in enumerate(e):
                if v - 1 > prev:
                    if e[:p] + (v - 1,) + e[p + 1:] not in lset:
                        return False
                prev = v
    return True


def left_compress_fixpoint(H: Hypergraph) -> Hypergraph:
    """Apply compressions in lexicographic (i, j) order, restarting after
    each change, until no compression moves an edge."""
    cur = H
    changed = True
    while changed:
        changed = False
        for i in range(1, cur.n):
            for j in range(i + 1, cur.n + 1):
                nxt = compress_set(cur, i, j)
                if nxt != cur:
                    cur = nxt
                    changed = True
                    break
            if changed:
                break
    return cur


def _clique_extension_ok(H: Hypergraph, types: Sequence[int], W: Sequence[int], v: int) -> bool:
    # All subsets of W+{v} through v with cardinality in types must be edges.
    for q in types:
        if q - 1 > len(W):
            continue
        lset = H.level_set(q)
        for S in itertools.combinations(W, q - 1):
            if tuple(sorted(S + (v,))) not in lset:
                return False
    return True


def max_clique(H: Hypergraph, types: Iterable[int] | None = None) -> tuple[int, tuple[int, ...]]:
    """Largest W whose subsets of every cardinality in `types` are all
    edges, by exact branch and bound.  Returns (order, witness); order 0
    with an empty witness when no W of size >= max(types) qualifies.
    """
    ts = validate_types(types) if types is not None else H.edge_types
    for q in ts:
        if q not in H.edge_types:
            raise ValueError(f"type {q} carries no edges in {H!r}")
    qmax = ts[-1]
    verts = list(range(1, H.n + 1))
    if 1 in ts:
        singles = {e[0] for e in H.level(1)}
        verts = [v for v in verts if v in singles]
    best_order = 0
    best_witness: tuple[int, ...] = ()

    def extend(W: list[int], cand: list[int]) -> None:
        nonlocal best_order, best_witness
        if len(W) >= qmax and len(W) > best_order:
            best_order = len(W)
            best_witness = tuple(W)
        for idx, v in enumerate(cand):
            if len(W) + len(cand) - idx <= best_order:
                break
            if _clique_extension_ok(H, ts, W, v):
                W.append(v)
                extend(W, cand[idx + 1:])
                W.pop()

    extend([], verts)
    return best_order, best_witness


def max_clique_order(H: Hypergraph, types: Iterable[int] | None = None) -> int:
    """Order of the largest clique realizing every cardinality in `types`."""
    return max_clique(H, types)[0]


def greedy_maximal_cliques(H: Hypergraph, types: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """One greedily grown maximal clique per seed vertex, deduplicated.
    Used as warm starts; not guaranteed maximum."""
    ts = validate_types(types) if types is not None else H.edge_types
    if not ts:
        return []
    out: list[tuple[int, ...]] = []
    seen = set()
    for seed in range(1, H.n + 1):
        if not _clique_extension_ok(H, ts, [], seed):
            continue
        W = [seed]
        for u in range(1, H.n + 1):
            if u != seed and _clique_extension_ok(H, ts, W, u):
                W.append(u)
                W.sort()
        key = tuple(W)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


@dataclass(frozen=True)
class LinkSets:
    """Link structure of a vertex i (optionally relative to a second
    vertex j), per cardinality level r of the parent hypergraph:

      link[r]           sets A with A+{i} an edge, i not in A
      pair_link[r]      sets B with B+{i,j} an edge (None without j)
      exclusive_link[r] sets A in link[r], j not in A, A+{j} not an edge

    Level-1 membership shows up as the empty tuple.
    """

    i: int
    j: int | None
    link: Mapping[int, frozenset[Edge]]
    pair_link: Mapping[int, frozenset[Edge]] | None
    exclusive_link: Mapping[int, frozenset[Edge]] | None


def link_sets(H: Hypergraph, i: int, j: int | None = None) -> LinkSets:
    """Compute the link of i and, when j is given, the joint and exclusive
    links used in compression arguments."""
    if i < 1 or i > H.n:
        raise ValueError(f"vertex {i} outside 1..{H.n}")
    if j is not None:
        if j < 1 or j > H.n:
            raise ValueError(f"vertex {j} outside 1..{H.n}")
        if j == i:
            raise ValueError("link pair requires distinct vertices")

    link: dict[int, frozenset[Edge]] = {}
    pair: dict[int, frozenset[Edge]] = {}
    excl: dict[int, frozenset[Edge]] = {}
    for r in H.edge_types:
        lset = H.level_set(r)
        link_i = frozenset(
            tuple(v for v in e if v != i) for e in lset if i in e
        )
        link[r] = link_i
        if j is not None:
            pair[r] = frozenset(
                tuple(v for v in e if v != i and v != j)
                for e in lset
                if i in e and j in e
            )
            link_j = {tuple(v for v in e if v != j) for e in lset if j in e}
            excl[r] = frozenset(
                A for A in link_i if j not in A and A not in link_j
            )
    if j is None:
        return LinkSets(i, None, link, None, None)
    return LinkSets(i, j, link, pair, excl)


# ---------------------------------------------------------------------------
# Text format: comment lines start with '#', the first data line is
# "vertices N", every further data line is one edge as increasing vertex
# indices separated by whitespace.


def parse_hypergraph(text: str) -> Hypergraph:
    n: int | None = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if n is None:
            if tokens[0] != "vertices" or len(tokens) != 2:
                raise HypergraphFormatError(
                    "expected 'vertices N' as the first data line", lineno
                )
            try:
                n = int(tokens[1])
            except ValueError:
                raise HypergraphFormatError(
                    f"bad vertex count {tokens[1]!r}", lineno
                ) from None
            if n < 0:
                raise HypergraphFormatError("vertex count must be nonnegative", lineno)
            continue
        try:
            vs = tuple(int(tok) for tok in tokens)
        except ValueError:
            raise HypergraphFormatError(
                f"edge line is not whitespace-separated integers: {stripped!r}", lineno
            ) from None
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise HypergraphFormatError(
                f"edge {vs} is not strictly increasing", lineno
            )
        if any(v < 1 or v > n for v in vs):
            raise HypergraphFormatError(
                f"edge {vs} uses a vertex outside 1..{n}", lineno
            )
        if vs in seen:
            raise HypergraphFormatError(f"duplicate edge {vs}", lineno)
        seen.add(vs)
        edges.append(vs)
    if n is None:
        raise HypergraphFormatError("no 'vertices N' line found")
    return Hypergraph(n, edges)


def format_hypergraph(H: Hypergraph) -> str:
    """Render in the text format: levels by increasing cardinality, edges
    in colex order within each level."""
    lines = [f"vertices {H.n}"]
    for r in H.edge_types:
        for e in H.level(r):
            lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def read_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hypergraph(H))
