"""Graph families and shortest-path metrics.

Everything here feeds the metric layer: a graph becomes a finite metric
space via breadth-first search from every vertex. The generated families
(cycles, complete and complete bipartite graphs, hypercubes, the Petersen
graph, circulants) are all vertex-transitive, so their path metrics have the
row-permutation property. Two Platonic solids ship as edge-list data files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from math import gcd

import numpy as np

from .errors import BadParamsError, DisconnectedError, UnknownFamilyError
from .metric import FiniteMetricSpace, _readonly

SOLIDS = ("dodecahedron", "icosahedron")

FAMILIES = ("cycle", "complete", "complete_bipartite", "hypercube", "petersen", "circulant")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")


def adjacency(g: Graph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def path_metric(g: Graph) -> FiniteMetricSpace:
    """Shortest-path distance matrix via BFS from every vertex.

    Distances are integers stored exactly; the result is a metric by
    construction, so the triangle-inequality revalidation is skipped.
    """
    if g.n < 2:
        raise ValueError("a metric space needs at least 2 vertices")
    adj = adjacency(g)
    n = g.n
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[s, w] < 0:
                        dist[s, w] = dist[s, u] + 1
                        nxt.append(w)
            frontier = nxt
        if np.any(dist[s] < 0):
            t = int(np.argmax(dist[s] < 0))
            raise DisconnectedError(f"no path between vertices {s} and {t}")
    labels = g.labels if g.labels is not None else tuple(str(i) for i in range(n))
    return FiniteMetricSpace(labels=tuple(labels), dist=_readonly(dist.astype(float)))


def gen_family(family: str, *params) -> Graph:
    """Build a named parametric graph family.

    cycle(n>=3), complete(n>=2), complete_bipartite(n>=1) for the balanced
    two-sided graph, hypercube(n>=1) in binary-counting vertex order,
    petersen, circulant(n, offsets) connecting i ~ i +/- s mod n.
    """
    if family == "cycle":
        (n,) = _int_params(params, 1, family)
        if n < 3:
            raise BadParamsError("cycle needs n >= 3")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if family == "complete":
        (n,) = _int_params(params, 1, family)
        if n < 2:
            raise BadParamsError("complete graph needs n >= 2")
        return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))
    if family == "complete_bipartite":
        (n,) = _int_params(params, 1, family)
        if n < 1:
            raise BadParamsError("complete bipartite needs n >= 1")
        return Graph(2 * n, tuple((i, n + j) for i in range(n) for j in range(n)))
    if family == "hypercube":
        (n,) = _int_params(params, 1, family)
        if not 1 <= n <= 12:
            raise BadParamsError("hypercube dimension must be in 1..12")
        size = 1 << n
        edges = tuple(
            (i, i ^ (1 << b)) for i in range(size) for b in range(n) if i < (i ^ (1 << b))
        )
        labels = tuple(format(i, f"0{n}b") for i in range(size))
        return Graph(size, edges, labels=labels)
    if family == "petersen":
        if params:
            raise BadParamsError("petersen takes no parameters")
        edges = []
        for i in range(5):
            edges.append((i, (i + 1) % 5))
            edges.append((5 + i, 5 + (i + 2) % 5))
            edges.append((i, i + 5))
        return Graph(10, tuple(edges))
    if family == "circulant":
        if len(params) != 2:
            raise BadParamsError("circulant needs (n, offsets)")
        n = int(params[0])
        offsets = sorted({int(s) for s in params[1]})
        if n < 3:
            raise BadParamsError("circulant needs n >= 3")
        if not offsets:
            raise BadParamsError("circulant needs at least one offset")
        if any(not 1 <= s <= n // 2 for s in offsets):
            raise BadParamsError(f"circulant offsets must lie in 1..{n // 2}")
        g = n
        for s in offsets:
            g = gcd(g, s)
        if g > 1:
            raise BadParamsError(f"offsets {offsets} generate a disconnected circulant (gcd {g})")
        edges = {tuple(sorted((i, (i + s) % n))) for i in range(n) for s in offsets}
        return Graph(n, tuple(sorted(edges)))
    raise UnknownFamilyError(f"unknown graph family {family!r} (known: {', '.join(FAMILIES)})")


def _int_params(params, count, family):
    if len(params) != count:
        raise BadParamsError(f"{family} takes {count} parameter(s), got {len(params)}")
    return tuple(int(p) for p in params)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: first line the vertex count, then one
    'u v' pair per line (0-indexed). Blank lines and '#' comments allowed."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge list")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, tuple(edges))


def load_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def load_solid(name: str) -> Graph:
    if name not in SOLIDS:
        raise UnknownFamilyError(f"unknown solid {name!r} (bundled: {', '.join(SOLIDS)})")
    text = resources.files("roundness.data").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    return parse_edge_list(text)
