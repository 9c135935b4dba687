"""Ordered graphs omitting cliques: enumeration, copy search, canonization.

Ordered graph isomorphism is fixed as order-preserving isomorphism.  On a
fixed ordered vertex set that collapses to vertex identity, so enumerating
one representative per isomorphism class is the same as enumerating labeled
clique-free graphs; copy search looks for vertex subsets whose induced graph
equals the pattern under the unique order-preserving bijection.

The canonization theorem for these classes says equivalence relations on the
copies of A inside a large enough host are projection relations on some copy
of B.  The host is taken as an input (the theorem gives no bound for how
large it must be), and the engine does the exhaustive search, small index
sets first.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from . import core
from .canonize import CapExceeded, EqRel, project_I


@dataclass(frozen=True)
class OrderedGraph:
    """Graph on the ordered vertex set 0..n-1; edges are (u, v) with u < v."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u},{v}) on {self.n} vertices")

    @classmethod
    def of(cls, n, edges) -> "OrderedGraph":
        return cls(n, frozenset(tuple(sorted(e)) for e in edges))

    def has_edge(self, u, v) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def induced(self, vertices) -> "OrderedGraph":
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        return OrderedGraph(len(vs), frozenset(
            (pos[u], pos[v]) for u, v in self.edges
            if u in pos and v in pos))

    def to_json(self):
        return {"n": self.n, "edges": sorted(list(e) for e in self.edges)}

    @classmethod
    def from_json(cls, data) -> "OrderedGraph":
        return cls.of(data["n"], [tuple(e) for e in data["edges"]])


@dataclass(frozen=True)
class CopySet:
    """Vertex subsets of a host each inducing the pattern order-isomorphically."""

    copies: tuple


def omits_clique(g: OrderedGraph, q: int) -> bool:
    """No q vertices pairwise adjacent, checked exhaustively."""
    if q < 2:
        raise core.PreconditionViolated("clique size must be at least 2")
    for vs in combinations(range(g.n), q):
        if all(g.has_edge(u, v) for u, v in combinations(vs, 2)):
            return False
    return True


def enumerate_class(n: int, q: int, cap: int = 6) -> list:
    """All graphs on the ordered vertex set 0..n-1 omitting a q-clique.

    Order-preserving isomorphism on a fixed ordered vertex set is the
    identity, so these labeled graphs are exactly one representative per
    isomorphism class.  Deterministic edge-mask order."""
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds the enumeration cap {cap}")
    slots = list(combinations(range(n), 2))
    out = []
    for mask in range(1 << len(slots)):
        edges = frozenset(e for i, e in enumerate(slots) if mask >> i & 1)
        g = OrderedGraph(n, edges)
        if omits_clique(g, q):
            out.append(g)
    return out


def copies(pattern: OrderedGraph, host: OrderedGraph) -> CopySet:
    """All vertex subsets of the host inducing the pattern."""
    if pattern.n > host.n:
        raise core.PreconditionViolated("pattern larger than host")
    found = []
    for vs in combinations(range(host.n), pattern.n):
        if host.induced(vs) == pattern:
            found.append(vs)
    return CopySet(tuple(found))


def graph_canonize(relation: EqRel, pattern: OrderedGraph,
                   middle: OrderedGraph, host: OrderedGraph,
                   clique_bound: Optional[int] = None) -> Optional[tuple]:
    """Search for (I, B') with B' a copy of ``middle`` in the host on which
    the relation restricted to copies of ``pattern`` is "equal projections
    of the vertex tuples to I".

    The host plays the role of the theorem's "large enough" graph and is
    supplied by the caller.  Small index sets are tried first; determinism
    comes from the total order on candidates.  None means no witness inside
    this host, which refutes nothing.
    """
    if clique_bound is not None:
        for g in (pattern, middle, host):
            if not omits_clique(g, clique_bound):
                raise core.PreconditionViolated(
                    f"graph fails to omit {clique_bound}-cliques")
    if not copies(pattern, middle).copies:
        raise core.PreconditionViolated("pattern does not embed in middle")
    middle_copies = copies(middle, host).copies
    if not middle_copies:
        raise core.PreconditionViolated("middle does not embed in host")
    if set(relation.domain) != set(copies(pattern, host).copies):
        raise ValueError("relation domain is not the copy set of the pattern")
    label = relation.label_map()

    for size in range(pattern.n + 1):
        for I in combinations(range(pattern.n), size):
            for bprime in middle_copies:
                inside = set(bprime)
                local = [a for a in relation.domain if set(a) <= inside]
                ok = True
                seen_fwd, seen_bwd = {}, {}
                for a in local:
                    key_l, key_p = label[a], project_I(a, I)
                    if seen_fwd.setdefault(key_l, key_p) != key_p or \
                            seen_bwd.setdefault(key_p, key_l) != key_l:
                        ok = False
                        break
                if ok:
                    return (I, bprime)
    return None


@dataclass(frozen=True)
class ArrowResult:
    kind: str  # "zero-homogeneous" / "one-clique" / "neither"
    witness: Optional[tuple] = None


def arrow_check(coloring: Callable, s: int, n: int, ground: int) -> ArrowResult:
    """Asymmetric partition check for a 2-coloring of the pairs of
    {0..ground-1}: an s-set with all pairs colored 0, else an n-set with all
    pairs colored 1, else neither.

    The first shape is searched first (documented priority); at finite scale
    "neither" is a legitimate outcome.
    """
    if s > ground or n > ground:
        raise core.PreconditionViolated("witness sizes exceed the ground")
    for vs in combinations(range(ground), s):
        if all(coloring((u, v)) == 0 for u, v in combinations(vs, 2)):
            return ArrowResult("zero-homogeneous", vs)
    for vs in combinations(range(ground), n):
        if all(coloring((u, v)) == 1 for u, v in combinations(vs, 2)):
            return ArrowResult("one-clique", vs)
    return ArrowResult("neither")
