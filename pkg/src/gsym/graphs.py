"""Graph data model, named family constructors, combinators, and I/O.

Vertices are 0-based everywhere.  Graphs are immutable values: every
combinator returns a new Graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import ContractError, GraphParseError, SizeCapError

# Exhaustive-oracle operations refuse beyond this vertex count.
EXHAUSTIVE_CAP = 64
# Numeric (floating-point) operations refuse beyond this vertex count.
NUMERIC_CAP = 4096


def _normalize_edge(i, j):
    if i == j:
        raise ContractError(f"self-loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph with an optional distinguished root vertex."""

    n: int
    edges: frozenset = field(default_factory=frozenset)
    root: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ContractError("vertex count must be non-negative")
        if self.n > NUMERIC_CAP:
            raise SizeCapError(f"graphs are capped at n <= {NUMERIC_CAP}, got {self.n}")
        edges = frozenset(_normalize_edge(i, j) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        for i, j in edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ContractError(f"edge ({i},{j}) out of range for n={self.n}")
        if self.root is not None and not (0 <= self.root < self.n):
            raise ContractError(f"root {self.root} out of range for n={self.n}")

    # -- basic views ------------------------------------------------------

    def adjacency(self):
        """0-1 integer adjacency matrix; symmetric with zero diagonal."""
        d = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            d[i, j] = 1
            d[j, i] = 1
        return d

    def neighbors(self, i):
        return sorted(j for j in range(self.n) if self.has_edge(i, j))

    def adjacency_lists(self):
        adj = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]

    def has_edge(self, i, j):
        return i != j and ((i, j) if i < j else (j, i)) in self.edges

    def degree(self, i):
        return sum(1 for e in self.edges if i in e)

    def with_root(self, root):
        return Graph(self.n, self.edges, root)

    def __repr__(self):
        root = "" if self.root is None else f", root={self.root}"
        return f"Graph(n={self.n}, m={len(self.edges)}{root})"


# -- named families --------------------------------------------------------


def empty_graph(n):
    return Graph(n)


def complete(n):
    """K_n."""
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle(n):
    """C_n, n >= 3."""
    if n < 3:
        raise ContractError("cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def segment(n, root=None):
    """Path graph on n vertices."""
    if n < 1:
        raise ContractError("segment needs at least 1 vertex")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)), root)


def hypercube(k):
    """The k-cube on 2^k vertices; vertices are bitmasks."""
    if k < 1:
        raise ContractError("hypercube needs dimension >= 1")
    n = 1 << k
    edges = set()
    for v in range(n):
        for b in range(k):
            edges.add(_normalize_edge(v, v ^ (1 << b)))
    return Graph(n, frozenset(edges))


def kneser(n, s):
    """K(n,s): s-subsets of an n-set, joined when disjoint."""
    if s < 1 or s > n:
        raise ContractError(f"Kneser K({n},{s}) requires 1 <= s <= n")
    verts = list(combinations(range(n), s))
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for a, b in combinations(verts, 2):
        if not set(a) & set(b):
            edges.add(_normalize_edge(index[a], index[b]))
    return Graph(len(verts), frozenset(edges))


def petersen():
    """The Petersen graph, realized as the Kneser graph K(5,2)."""
    return kneser(5, 2)


def prism(g):
    """Prism over g: the Cartesian product K_2 x g."""
    return product(complete(2), g, "cartesian")


def cycle_with_chords(n, k):
    """C_n^k: the n-cycle with all chords of length k added."""
    if n < 3:
        raise ContractError("cycle with chords needs at least 3 vertices")
    if not (2 <= k <= n // 2):
        raise ContractError(f"chord length must satisfy 2 <= k <= {n // 2}")
    edges = set((i, (i + 1) % n) for i in range(n))
    for i in range(n):
        edges.add(_normalize_edge(i, (i + k) % n))
    return Graph(n, frozenset(_normalize_edge(*e) for e in edges))


def wheel(n):
    """C_n^+ for even n: the cycle with its antipodal spokes."""
    if n % 2 != 0 or n < 4:
        raise ContractError("wheel C_n^+ needs even n >= 4")
    edges = set((i, (i + 1) % n) for i in range(n))
    for i in range(n // 2):
        edges.add(_normalize_edge(i, i + n // 2))
    return Graph(n, frozenset(edges))


def _path_edges(indices):
    return [(indices[i], indices[i + 1]) for i in range(len(indices) - 1)]


def ade(tag, size):
    """ADE Dynkin-type graphs with the distinguished vertex as root 0.

    tag is one of A, At, D, Dt, E6, E7, E8, E6t, E7t, E8t (the t suffix
    marks the affine/extended version; "A~" style spellings are accepted).
    For A the size is the number of vertices (>= 2); for At the (even)
    number of vertices (>= 4); for D the number of vertices (>= 3); for Dt
    the index n of D~_n, which has n+1 vertices (n >= 4).
    """
    tag = tag.replace("~", "t").replace("̃", "t")
    if tag == "A":
        if size < 2:
            raise ContractError("A_n needs n >= 2 vertices")
        return segment(size, root=0)
    if tag == "At":
        if size < 4 or size % 2 != 0:
            raise ContractError("A~_2n needs an even vertex count >= 4")
        return Graph(size, cycle(size).edges, root=0)
    if tag == "D":
        # Path 0..size-2 with an extra vertex hanging off vertex size-3.
        if size < 3:
            raise ContractError("D_n needs n >= 3 vertices")
        edges = _path_edges(list(range(size - 1)))
        edges.append((size - 3, size - 1))
        return Graph(size, frozenset(edges), root=0)
    if tag == "Dt":
        # D~_n on n+1 vertices: central path with a fork at both ends.
        n = size
        if n < 4:
            raise ContractError("D~_n needs n >= 4")
        center = list(range(2, n - 1))  # n-3 central vertices
        edges = _path_edges(center)
        edges += [(0, center[0]), (1, center[0]), (center[-1], n - 1), (center[-1], n)]
        return Graph(n + 1, frozenset(edges), root=0)
    if tag in ("E6", "E7", "E8"):
        length = {"E6": 5, "E7": 6, "E8": 7}[tag]
        forks = {"E6": 2, "E7": 3, "E8": 4}[tag]
        edges = _path_edges(list(range(length)))
        edges.append((forks, length))
        return Graph(length + 1, frozenset(edges), root=0)
    if tag == "E6t":
        # Three arms of length 2 from a center; root at one arm tip.
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
        return Graph(7, frozenset(edges), root=0)
    if tag == "E7t":
        edges = _path_edges(list(range(7)))
        edges.append((3, 7))
        return Graph(8, frozenset(edges), root=0)
    if tag == "E8t":
        edges = _path_edges(list(range(8)))
        edges.append((5, 8))
        return Graph(9, frozenset(edges), root=0)
    raise ContractError(f"unknown ADE tag {tag!r}")


# -- combinators -----------------------------------------------------------


def complement(g):
    """Complement within all unordered pairs; satisfies d + d^c = J - I."""
    all_pairs = set(combinations(range(g.n), 2))
    return Graph(g.n, frozenset(all_pairs - set(g.edges)), g.root)


def disjoint_union(g, h):
    """Vertex-disjoint union, g's vertices first."""
    edges = set(g.edges)
    edges.update((i + g.n, j + g.n) for i, j in h.edges)
    return Graph(g.n + h.n, frozenset(edges), g.root)


def copies(k, g):
    """k disjoint copies of g."""
    if k < 1:
        raise ContractError("copies needs k >= 1")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def product(g, h, kind):
    """Direct, Cartesian, or lexicographic product; (i, a) -> i*|h| + a."""
    if kind not in ("direct", "cartesian", "lexicographic"):
        raise ContractError(f"unknown product kind {kind!r}")
    n = g.n * h.n
    edges = set()
    for i in range(g.n):
        for j in range(g.n):
            for a in range(h.n):
                for b in range(h.n):
                    u, v = i * h.n + a, j * h.n + b
                    if u >= v:
                        continue
                    gij = g.has_edge(i, j)
                    hab = h.has_edge(a, b)
                    if kind == "direct":
                        joined = gij and hab
                    elif kind == "cartesian":
                        joined = (i == j and hab) or (gij and a == b)
                    else:
                        joined = hab or (a == b and gij)
                    if joined:
                        edges.add((u, v))
    return Graph(n, frozenset(edges))


# -- statistics ------------------------------------------------------------


def components(g):
    """Connected components as sorted vertex lists, in order of least vertex."""
    seen = [False] * g.n
    adj = g.adjacency_lists()
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g):
    return g.n <= 1 or len(components(g)) == 1


def basic_stats(g):
    """Valences, regularity flag, and connected components."""
    valences = [g.degree(i) for i in range(g.n)]
    return {
        "valences": valences,
        "is_regular": len(set(valences)) <= 1,
        "components": components(g),
    }


def is_bipartite(g):
    """Two-colorability by BFS."""
    color = [None] * g.n
    adj = g.adjacency_lists()
    for s in range(g.n):
        if color[s] is not None:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if color[w] is None:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


# -- I/O --------------------------------------------------------------------


def parse(text):
    """Parse the edge-list format: first line "N M", then M lines "i j".

    Lines starting with '#' are ignored.  Raises GraphParseError with a
    line number on malformed input.
    """
    lines = text.split("\n")
    header = None
    edges = []
    m_expected = None
    n = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError("expected header 'N M'", lineno)
            try:
                n, m_expected = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("header entries must be integers", lineno)
            if n < 0 or m_expected < 0:
                raise GraphParseError("header entries must be non-negative", lineno)
            header = lineno
            continue
        if len(parts) != 2:
            raise GraphParseError("expected edge 'i j'", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("edge endpoints must be integers", lineno)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphParseError(f"vertex out of range [0,{n})", lineno)
        if i == j:
            raise GraphParseError("self-loop not allowed", lineno)
        e = _normalize_edge(i, j)
        if e in edges:
            raise GraphParseError(f"duplicate edge {i} {j}", lineno)
        edges.append(e)
    if header is None:
        raise GraphParseError("empty input, expected header 'N M'", 1)
    if len(edges) != m_expected:
        raise GraphParseError(
            f"header announced {m_expected} edges, found {len(edges)}", header
        )
    return Graph(n, frozenset(edges))


def serialize(g):
    """Edge-list text; parse(serialize(g)) == g up to the root."""
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{i} {j}" for i, j in sorted(g.edges))
    return "\n".join(lines) + "\n"


def to_json(g):
    return json.dumps(
        {"n": g.n, "edges": [list(e) for e in sorted(g.edges)], "root": g.root}
    )


def from_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}")
    try:
        return Graph(obj["n"], frozenset(tuple(e) for e in obj["edges"]), obj.get("root"))
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"invalid graph JSON: {exc}")


# -- CLI family grammar ------------------------------------------------------

_FAMILY_DOC = """\
k<N> c<N> segment<N> cube<K> petersen empty<N> wheel<N>
kneser:<n>,<s> copies:<k>,<family> chord:<N>,<k> prism:<family>
ade:<tag>,<size> with tag in {a, at, d, dt, e6, e7, e8, e6t, e7t, e8t}
"""


def build(spec):
    """Build a graph from the CLI family grammar, e.g. 'k4', 'kneser:5,2'."""
    spec = spec.strip().lower()
    if spec == "petersen":
        return petersen()
    if ":" in spec:
        name, _, args = spec.partition(":")
        parts = [a.strip() for a in args.split(",")]
        if name == "kneser" and len(parts) == 2:
            return kneser(int(parts[0]), int(parts[1]))
        if name == "copies" and len(parts) == 2:
            return copies(int(parts[0]), build(parts[1]))
        if name == "chord" and len(parts) == 2:
            return cycle_with_chords(int(parts[0]), int(parts[1]))
        if name == "prism" and len(parts) == 1:
            return prism(build(parts[0]))
        if name == "ade" and len(parts) == 2:
            return ade(parts[0].upper().replace("AT", "At").replace("DT", "Dt")
                       .replace("E6T", "E6t").replace("E7T", "E7t").replace("E8T", "E8t"),
                       int(parts[1]))
        raise ContractError(f"bad family spec {spec!r}; known forms:\n{_FAMILY_DOC}")
    for prefix, ctor in (
        ("segment", segment),
        ("cube", hypercube),
        ("empty", empty_graph),
        ("wheel", wheel),
        ("k", complete),
        ("c", cycle),
    ):
        if spec.startswith(prefix) and spec[len(prefix):].isdigit():
            return ctor(int(spec[len(prefix):]))
    raise ContractError(f"bad family spec {spec!r}; known forms:\n{_FAMILY_DOC}")
