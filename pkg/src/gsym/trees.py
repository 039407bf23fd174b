"""Prufer bijection, Cayley counting, and spanning-tree counters.

Tree counts are exact big integers; the spectral spanning-tree method is
floating point and only ever cross-checked against the exact routes.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ContractError, SizeCapError
from .exact import bareiss_det
from .graphs import Graph, components, is_connected
from .spectral import circulant_symbol, eigen_sym, fourier_eigenvalues, laplacian


def is_tree(g):
    return g.n >= 1 and len(g.edges) == g.n - 1 and is_connected(g)


def prufer_encode(g):
    """Prufer sequence: repeatedly remove the smallest-labelled leaf and
    record its neighbour, stopping at two vertices."""
    if g.n < 2:
        raise ContractError("prufer_encode needs at least 2 vertices")
    if not is_tree(g):
        raise ContractError("prufer_encode needs a tree")
    adj = {i: set(js) for i, js in enumerate(g.adjacency_lists())}
    seq = []
    import heapq

    leaves = [v for v in adj if len(adj[v]) == 1]
    heapq.heapify(leaves)
    remaining = g.n
    while remaining > 2:
        leaf = heapq.heappop(leaves)
        neighbor = next(iter(adj[leaf]))
        seq.append(neighbor)
        adj[neighbor].discard(leaf)
        del adj[leaf]
        remaining -= 1
        if len(adj[neighbor]) == 1:
            heapq.heappush(leaves, neighbor)
    return seq


def prufer_decode(seq, n):
    """Inverse algorithm: valence bookkeeping, smallest valence-1 vertex wins."""
    if n < 2:
        raise ContractError("prufer_decode needs n >= 2")
    if len(seq) != n - 2:
        raise ContractError(f"sequence must have length n-2 = {n - 2}")
    if any(not (0 <= a < n) for a in seq):
        raise ContractError("sequence entries out of range")
    valence = [1] * n
    for a in seq:
        valence[a] += 1
    import heapq

    leaves = [v for v in range(n) if valence[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(a, leaf), max(a, leaf)))
        valence[leaf] -= 1
        valence[a] -= 1
        if valence[a] == 1:
            heapq.heappush(leaves, a)
    u, v = sorted(leaves)[:2]
    edges.append((u, v))
    return Graph(n, frozenset(edges))


def count_labeled_trees(n):
    """Cayley's formula n^(n-2), with the n = 1, 2 values defined as 1."""
    if n < 1:
        raise ContractError("n must be >= 1")
    return 1 if n <= 2 else n ** (n - 2)


def count_with_valences(valences):
    """Number of labelled trees with the given valence sequence."""
    n = len(valences)
    if n < 2:
        raise ContractError("need at least 2 valences")
    if any(v < 1 for v in valences):
        raise ContractError("valences must be >= 1")
    if sum(v - 1 for v in valences) != n - 2:
        raise ContractError("valences must satisfy sum(v_i - 1) = n - 2")
    out = math.factorial(n - 2)
    for v in valences:
        out //= math.factorial(v - 1)
    return out


def enumerate_labeled_trees(n):
    """All labelled trees on n vertices via Prufer decoding (n <= 7)."""
    if n > 7:
        raise SizeCapError("tree enumeration is capped at n <= 7")
    if n < 1:
        raise ContractError("n must be >= 1")
    if n == 1:
        return [Graph(1)]
    if n == 2:
        return [Graph(2, frozenset([(0, 1)]))]
    from itertools import product as iproduct

    return [prufer_decode(list(seq), n) for seq in iproduct(range(n), repeat=n - 2)]


# -- spanning-tree counting -----------------------------------------------------


def _cofactor_count(g, row=0, col=0):
    lap = laplacian(g)
    n = g.n
    rows = [
        [int(lap[i][j]) for j in range(n) if j != col]
        for i in range(n)
        if i != row
    ]
    sign = -1 if (row + col) % 2 else 1
    return sign * bareiss_det(rows)


def spanning_tree_count(g, method="cofactor"):
    """Number of spanning trees: exact 'cofactor', float 'spectral' or
    'circulant' (the latter requires a circulant adjacency matrix)."""
    if not is_connected(g):
        raise ContractError("spanning_tree_count needs a connected graph; "
                            "a disconnected graph has 0 spanning trees")
    if g.n == 1:
        return 1 if method == "cofactor" else 1.0
    if method == "cofactor":
        return int(_cofactor_count(g))
    if method == "spectral":
        dec = eigen_sym(laplacian(g).astype(float))
        prod = 1.0
        for lam, mult in zip(dec.eigenvalues, dec.multiplicities):
            if abs(lam) > dec.tol * 10 + 1e-9:
                prod *= lam**mult
        return prod / g.n
    if method == "circulant":
        gamma = circulant_symbol(g.adjacency())
        if gamma is None:
            raise ContractError("circulant method needs a circulant adjacency matrix")
        q = fourier_eigenvalues(gamma)
        k = q[0].real
        prod = 1.0 + 0.0j
        for mu in q[1:]:
            prod *= k - mu
        return prod.real / g.n
    raise ContractError(f"unknown method {method!r}")


def all_signed_minors_equal(g):
    """Check every signed minor (-1)^(i+j) det(L^(ij)) equals the cofactor count."""
    base = _cofactor_count(g)
    for i in range(g.n):
        for j in range(g.n):
            if _cofactor_count(g, i, j) != base:
                return False
    return True


def enumerate_spanning_trees(g):
    """Exact spanning-tree count by deletion-contraction (<= 24 edges).

    This is the independent oracle for the Kirchhoff cofactor route; it never
    touches the Laplacian.
    """
    if len(g.edges) > 24:
        raise SizeCapError("deletion-contraction is capped at 24 edges")
    if g.n == 0:
        return 0
    if not is_connected(g):
        return 0
    # Work on a multigraph: vertex count + edge multiset as pairs.
    edges = [tuple(e) for e in g.edges]
    return _del_contract(g.n, edges)


def _del_contract(n, edges):
    if n == 1:
        return 1
    if len(edges) < n - 1:
        return 0
    if len(edges) == n - 1:
        return 1 if _connected_multi(n, edges) else 0
    # Pick an edge; count = delete + contract.
    e = edges[0]
    rest = edges[1:]
    deleted = _del_contract(n, rest) if _connected_multi(n, rest) else 0
    u, v = e
    contracted = []
    for a, b in rest:
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            contracted.append((a2, b2))
    # Relabel to keep vertices 0..n-2 after removing v.
    relabel = {}
    nxt = 0
    for w in range(n):
        if w == v:
            continue
        relabel[w] = nxt
        nxt += 1
    contracted = [(relabel[a], relabel[b]) for a, b in contracted]
    return deleted + _del_contract(n - 1, contracted)


def _connected_multi(n, edges):
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n
