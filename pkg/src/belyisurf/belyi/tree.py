"""Bicolored plane trees.

A vertex's multiplicity is its degree minus one.  Black vertices carry the
critical value -1 (0 in the unit convention), white ones +1.  The cyclic
order at a vertex is the order of its adjacency list.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .signature import BelyiSignature

BLACK, WHITE = "black", "white"


class TreeError(ValueError):
    pass


@dataclass
class PlaneTree:
    colors: list[str] = field(default_factory=list)
    adj: list[list[int]] = field(default_factory=list)
    # distinguished vertices, when known: w0 (white critical) and u
    marks: dict[str, int] = field(default_factory=dict)

    def add_vertex(self, color: str) -> int:
        if color not in (BLACK, WHITE):
            raise TreeError(f"bad color {color!r}")
        self.colors.append(color)
        self.adj.append([])
        return len(self.colors) - 1

    def add_edge(self, a: int, b: int) -> None:
        if self.colors[a] == self.colors[b]:
            raise TreeError("edge joins two vertices of the same color")
        self.adj[a].append(b)
        self.adj[b].append(a)

    def add_leaves(self, v: int, k: int) -> None:
        other = WHITE if self.colors[v] == BLACK else BLACK
        for _ in range(k):
            self.add_edge(v, self.add_vertex(other))

    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n_vertices) for b in self.adj[a] if a < b]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def multiplicity(self, v: int) -> int:
        return self.degree(v) - 1

    def critical_vertices(self) -> list[int]:
        return [v for v in range(self.n_vertices) if self.degree(v) >= 2]

    def multiplicity_multiset(self) -> Counter:
        """Counter over (color, multiplicity) of critical vertices."""
        return Counter((self.colors[v], self.multiplicity(v)) for v in self.critical_vertices())

    def validate(self) -> None:
        n = self.n_vertices
        if n == 0:
            raise TreeError("empty tree")
        if self.n_edges != n - 1:
            raise TreeError("edge count is not vertices - 1")
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if self.colors[w] == self.colors[v]:
                    raise TreeError("improper bicoloring")
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise TreeError("tree is disconnected")

    def root(self) -> int:
        """The white critical vertex w0 (largest degree, earliest on ties)."""
        if "w0" in self.marks:
            return self.marks["w0"]
        whites = [v for v in self.critical_vertices() if self.colors[v] == WHITE]
        if not whites:
            raise TreeError("tree has no white critical vertex")
        return max(whites, key=lambda v: (self.degree(v), -v))

    # -- canonical forms ----------------------------------------------------
    def _code(self, v: int, parent: int | None, plane: bool) -> str:
        nbrs = self.adj[v]
        if parent is not None and plane:
            k = nbrs.index(parent)
            nbrs = nbrs[k + 1 :] + nbrs[:k]
        kids = [self._code(w, v, plane) for w in nbrs if w != parent]
        if not plane:
            kids.sort()
        return self.colors[v][0] + "(" + "".join(kids) + ")"

    def _root_code(self, r: int, plane: bool) -> str:
        if not plane:
            return self._code(r, None, False)
        nbrs = self.adj[r]
        kid = [self._code(w, r, True) for w in nbrs]
        rots = ["".join(kid[i:] + kid[:i]) for i in range(len(kid))] or [""]
        return self.colors[r][0] + "(" + min(rots) + ")"

    def canonical_code(self, plane: bool = False) -> str:
        """Isomorphism invariant of the bicolored tree.

        With ``plane=True`` the cyclic order at each vertex is respected
        (isomorphism of plane trees preserving colors and orientation).
        """
        whites = [v for v in self.critical_vertices() if self.colors[v] == WHITE]
        roots = whites or list(range(self.n_vertices))
        return min(self._root_code(r, plane) for r in roots)

    def isomorphic(self, other: "PlaneTree", plane: bool = False) -> bool:
        return self.canonical_code(plane) == other.canonical_code(plane)

    # -- serialization ------------------------------------------------------
    def to_tree_v1(self) -> str:
        lines = ["tree v1"]
        for v, c in enumerate(self.colors):
            lines.append(f"vertex {v} {c}")
        # listing each vertex's incident edges in cyclic order fixes the embedding
        lines.extend(f"edge {a} {b}" for a, b in self._ordered_edges())
        for name, v in sorted(self.marks.items()):
            lines.append(f"mark {name} {v}")
        return "\n".join(lines) + "\n"

    def _ordered_edges(self) -> list[tuple[int, int]]:
        # DFS from vertex 0 emitting edges in cyclic order; reading them back
        # in this order reproduces every adjacency list up to rotation
        out, seen = [], set()

        def visit(v, parent):
            nbrs = self.adj[v]
            if parent is not None:
                k = nbrs.index(parent)
                nbrs = nbrs[k + 1 :] + nbrs[:k]
            for w in nbrs:
                e = (min(v, w), max(v, w))
                if e not in seen:
                    seen.add(e)
                    out.append((v, w))
                    visit(w, v)

        if self.n_vertices:
            visit(0, None)
        return out

    @classmethod
    def from_tree_v1(cls, text: str) -> "PlaneTree":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != ["tree", "v1"]:
            raise TreeError("missing 'tree v1' header")
        t = cls()
        edges = []
        for parts in lines[1:]:
            if parts[0] == "vertex":
                if int(parts[1]) != t.n_vertices:
                    raise TreeError("vertex ids must be consecutive from 0")
                t.add_vertex(parts[2])
            elif parts[0] == "edge":
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "mark":
                t.marks[parts[1]] = int(parts[2])
            else:
                raise TreeError(f"unrecognized line {' '.join(parts)!r}")
        # rebuild cyclic orders: parent first, then children in listed order
        for a, b in edges:
            t.add_edge(a, b)
        t.validate()
        return t

    def to_dot(self, name: str = "tree") -> str:
        lines = [f"graph {name} {{", "  node [shape=circle, style=filled, label=\"\"];"]
        for v, c in enumerate(self.colors):
            font = "white" if c == BLACK else "black"
            lines.append(f'  v{v} [fillcolor={c}, color=black, fontcolor={font}];')
        for a, b in self.edges():
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- constructions ---------------------------------------------------------

def star_tree(black_arms: list[int], u_leaves: int | None, black_leaves: int = 0) -> PlaneTree:
    """Central white w0 joined to blacks with the given numbers of white
    leaves, optionally to a black u with ``u_leaves`` white leaves, and to
    ``black_leaves`` black leaves.  Cyclic order at w0: arms, u, leaves."""
    t = PlaneTree()
    w0 = t.add_vertex(WHITE)
    t.marks["w0"] = w0
    for k in black_arms:
        b = t.add_vertex(BLACK)
        t.add_edge(w0, b)
        t.add_leaves(b, k)
    if u_leaves is not None:
        u = t.add_vertex(BLACK)
        t.add_edge(w0, u)
        t.add_leaves(u, u_leaves)
        t.marks["u"] = u
    t.add_leaves(w0, black_leaves)
    return t


def grow(t: PlaneTree, k: int, exclude: tuple[int, ...] = ()) -> PlaneTree:
    """Add k leaves of the opposite color to every non-leaf vertex not excluded."""
    targets = [v for v in range(t.n_vertices) if t.degree(v) >= 2 and v not in exclude]
    for v in targets:
        t.add_leaves(v, k)
    return t


def chebyshev_tree(d: int) -> PlaneTree:
    """Path with d edges; T_d's critical values alternate -1/+1 starting at w = 1 (value +1)."""
    t = PlaneTree()
    prev = t.add_vertex(WHITE)
    for i in range(d):
        v = t.add_vertex(BLACK if i % 2 == 0 else WHITE)
        t.add_edge(prev, v)
        prev = v
    return t


def two_vertex_tree(nu: int) -> PlaneTree:
    t = star_tree([nu], None, black_leaves=nu)
    return t


def G_tree(a: int, b: int, c: int) -> PlaneTree:
    """Tree of G_{a,b,c}: w0 of degree b joined to u (a-1 leaves) and b-1 blacks (c-1 leaves each)."""
    return star_tree([c - 1] * (b - 1), a - 1)


def build_tree(sig: BelyiSignature) -> PlaneTree:
    p = sig.params
    if sig.family == "B1":
        m, n = p["m"], p["n"]
        t = star_tree([3 * m - 1] * (3 * m), None)
        grow(t, 3 * n)
    elif sig.family == "B2":
        j, n, m, l = p["j"], p["n"], p["m"], p["l"]
        b = 3 * l + j + 1
        t = star_tree([b - 1] * (b - 1), 3 * m + j - 1)
        grow(t, 3 * n, exclude=(t.marks["u"],))
    elif sig.family == "B3":
        x, pp, n = p["x"], p["p"], p["n"]
        nu0, z = sig.initial[1], sig.initial[2]
        t = star_tree([nu0] * (pp - 1), z, black_leaves=x)
        grow(t, 3 * n, exclude=(t.marks["u"],))
    elif sig.family == "TwoVertex":
        t = two_vertex_tree(p["nu"])
    elif sig.family == "G":
        t = G_tree(p["a"], p["b"], p["c"])
    else:
        raise TreeError(f"no tree construction for family {sig.family}")
    t.validate()
    _check_against_signature(t, sig)
    return t


def expected_multiset(sig: BelyiSignature) -> Counter:
    if sig.family == "G":
        a, b, c = sig.params["a"], sig.params["b"], sig.params["c"]
        out = Counter({(BLACK, c - 1): b - 1})
        out[(WHITE, b - 1)] += 1
        if a >= 2:
            out[(BLACK, a - 1)] += 1
        return +out
    out = Counter({(BLACK, sig.nu): sig.s - 1, (WHITE, sig.nu): 1})
    if sig.eps >= 1:
        out[(BLACK, sig.eps)] += 1
    return out


def _check_against_signature(t: PlaneTree, sig: BelyiSignature) -> None:
    if t.n_edges != sig.d:
        raise TreeError(f"{sig.label}: tree has {t.n_edges} edges, expected {sig.d}")
    if t.multiplicity_multiset() != expected_multiset(sig):
        raise TreeError(f"{sig.label}: multiplicity multiset {dict(t.multiplicity_multiset())} mismatch")


def coincidence_check(sig_a: BelyiSignature, sig_b: BelyiSignature, plane: bool = False) -> bool:
    return build_tree(sig_a).isomorphic(build_tree(sig_b), plane=plane)
