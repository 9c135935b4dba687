"""Symbolic subsets of omega^k with decidable tensor-ideal membership.

A rank-1 symbolic set is finite or cofinite, given by its explicit support
or explicit complement.  A rank-(k+1) set assigns rank-k fibers to finitely
many exceptional first coordinates and one tail fiber to all the rest.  The
representation is closed under complement, union and intersection, and it
decides membership in the recursively-defined tensor ideals ("all but
finitely many fibers small") by looking at the tail alone.

Ultrafilters enter only through their trace on the finite/cofinite algebra:
a principal oracle accepts the sets containing its point, and the cofinite
kernel accepts exactly the cofinite sets -- which is all any nonprincipal
ultrafilter can say about representable sets.  That trace is enough to
decide iterated-product membership: the finitely many exceptional fibers
and oracles are evaluated one by one, and the tail pair settles cofinitely
many coordinates uniformly.
"""

from dataclasses import dataclass
from typing import Mapping, Optional

from . import core
from .canonize import CapExceeded
from .ellentuck import BarrierDescriptor, KUniform

FINITE = "finite"
COFINITE = "cofinite"


class RankMismatch(core.WorkbenchError):
    """Binary operation applied to symbolic sets of different ranks."""


@dataclass(frozen=True)
class SymbolicSet:
    """Eventually-constant recursive description of a subset of omega^rank."""

    rank: int
    form: Optional[str] = None            # rank 1 only
    support: Optional[frozenset] = None   # rank 1 only
    exceptions: Optional[tuple] = None    # rank >= 2: ((i, fiber), ...) sorted
    tail: Optional["SymbolicSet"] = None  # rank >= 2

    @classmethod
    def finite(cls, elements) -> "SymbolicSet":
        return cls(1, form=FINITE, support=frozenset(elements))

    @classmethod
    def cofinite(cls, excluded) -> "SymbolicSet":
        return cls(1, form=COFINITE, support=frozenset(excluded))

    @classmethod
    def layered(cls, exceptions: Mapping, tail: "SymbolicSet") -> "SymbolicSet":
        """Rank-(k+1) set from a fiber map and a tail fiber; exceptional
        fibers equal to the tail are dropped so equal sets compare equal."""
        kept = tuple(sorted((i, f) for i, f in dict(exceptions).items()
                            if f != tail))
        for _, fiber in kept:
            if fiber.rank != tail.rank:
                raise RankMismatch("fiber ranks differ from the tail rank")
        return cls(tail.rank + 1, exceptions=kept, tail=tail)

    @classmethod
    def empty(cls, rank: int) -> "SymbolicSet":
        s = cls.finite(())
        for _ in range(rank - 1):
            s = cls.layered({}, s)
        return s

    @classmethod
    def full(cls, rank: int) -> "SymbolicSet":
        s = cls.cofinite(())
        for _ in range(rank - 1):
            s = cls.layered({}, s)
        return s

    def fiber(self, i: int) -> "SymbolicSet":
        if self.rank < 2:
            raise RankMismatch("rank-1 sets have no fibers")
        for j, f in self.exceptions:
            if j == i:
                return f
        return self.tail

    def contains(self, point) -> bool:
        """Pointwise membership of a rank-length tuple of naturals."""
        if len(point) != self.rank:
            raise RankMismatch(f"point of length {len(point)} in rank {self.rank}")
        if self.rank == 1:
            inside = point[0] in self.support
            return inside if self.form == FINITE else not inside
        return self.fiber(point[0]).contains(point[1:])

    def to_json(self):
        if self.rank == 1:
            return {"rank": 1, "form": self.form,
                    "support": sorted(self.support)}
        return {"rank": self.rank,
                "exceptions": [[i, f.to_json()] for i, f in self.exceptions],
                "tail": self.tail.to_json()}

    @classmethod
    def from_json(cls, data) -> "SymbolicSet":
        if data["rank"] == 1:
            if data["form"] == FINITE:
                return cls.finite(data["support"])
            return cls.cofinite(data["support"])
        return cls.layered(
            {i: cls.from_json(f) for i, f in data["exceptions"]},
            cls.from_json(data["tail"]))


def _combine1(a: SymbolicSet, b: SymbolicSet, op: str) -> SymbolicSet:
    fa, fb = a.form == FINITE, b.form == FINITE
    if op == "union":
        if fa and fb:
            return SymbolicSet.finite(a.support | b.support)
        if fa:
            return SymbolicSet.cofinite(b.support - a.support)
        if fb:
            return SymbolicSet.cofinite(a.support - b.support)
        return SymbolicSet.cofinite(a.support & b.support)
    if fa and fb:
        return SymbolicSet.finite(a.support & b.support)
    if fa:
        return SymbolicSet.finite(a.support - b.support)
    if fb:
        return SymbolicSet.finite(b.support - a.support)
    return SymbolicSet.cofinite(a.support | b.support)


def sym_complement(s: SymbolicSet) -> SymbolicSet:
    if s.rank == 1:
        form = COFINITE if s.form == FINITE else FINITE
        return SymbolicSet(1, form=form, support=s.support)
    return SymbolicSet.layered(
        {i: sym_complement(f) for i, f in s.exceptions},
        sym_complement(s.tail))


def _merge(a: SymbolicSet, b: SymbolicSet, op: str) -> SymbolicSet:
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank}")
    if a.rank == 1:
        return _combine1(a, b, op)
    keys = {i for i, _ in a.exceptions} | {i for i, _ in b.exceptions}
    return SymbolicSet.layered(
        {i: _merge(a.fiber(i), b.fiber(i), op) for i in keys},
        _merge(a.tail, b.tail, op))


def sym_union(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return _merge(a, b, "union")


def sym_intersect(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return _merge(a, b, "intersect")


def in_fin_tensor(s: SymbolicSet) -> bool:
    """Membership in the rank-fold tensor ideal: a rank-1 set is small iff
    finite; a higher-rank set is small iff its tail fiber is, the finitely
    many exceptional fibers being irrelevant."""
    if s.rank == 1:
        return s.form == FINITE
    return in_fin_tensor(s.tail)


def positive_paper(s: SymbolicSet) -> bool:
    """The strong coideal predicate at rank 2: all but finitely many fibers
    infinite, which for this representation is exactly "the tail fiber is
    cofinite".  Implies not-in-the-ideal; only that direction is asserted
    by the laws (the two predicates differ on sets with infinitely many
    fibers of each kind, which this representation cannot express)."""
    if s.rank != 2:
        raise core.PreconditionViolated("coideal predicate is for rank 2")
    return s.tail.form == COFINITE


PRINCIPAL = "principal"
COFINITE_KERNEL = "cofinite-kernel"


@dataclass(frozen=True)
class UltrafilterOracle:
    """Total membership decider on rank-1 symbolic sets.

    ``principal(x)`` accepts the sets containing x.  ``cofinite_kernel()``
    accepts exactly the cofinite sets: the trace any nonprincipal
    ultrafilter leaves on the finite/cofinite algebra.
    """

    kind: str
    point: Optional[int] = None

    @classmethod
    def principal(cls, point: int) -> "UltrafilterOracle":
        return cls(PRINCIPAL, point)

    @classmethod
    def cofinite_kernel(cls) -> "UltrafilterOracle":
        return cls(COFINITE_KERNEL)

    def accepts(self, s: SymbolicSet) -> bool:
        if s.rank != 1:
            raise RankMismatch("oracles decide rank-1 sets")
        if self.kind == PRINCIPAL:
            return s.contains((self.point,))
        return s.form == COFINITE

    def to_json(self):
        if self.kind == PRINCIPAL:
            return {"kind": self.kind, "point": self.point}
        return {"kind": self.kind}


def fubini_member(a: SymbolicSet, u: UltrafilterOracle,
                  v_default: UltrafilterOracle,
                  v_exceptions: Optional[Mapping] = None) -> bool:
    """Iterated-product membership: is the set of first coordinates whose
    fiber the coordinate's oracle accepts itself accepted by ``u``?

    Decidable because the set has finitely many exceptional fibers and the
    oracle family finitely many exceptional members: outside both exception
    sets the verdict is the constant tail-fiber/default-oracle verdict, so
    the inner set is itself finite or cofinite.
    """
    if a.rank != 2:
        raise core.PreconditionViolated("product membership is for rank 2")
    v_exceptions = dict(v_exceptions or {})
    special = {i for i, _ in a.exceptions} | set(v_exceptions)
    tail_verdict = v_default.accepts(a.tail)
    disagree = frozenset(
        i for i in special
        if v_exceptions.get(i, v_default).accepts(a.fiber(i)) != tail_verdict)
    if tail_verdict:
        inner = SymbolicSet.cofinite(disagree)
    else:
        inner = SymbolicSet.finite(disagree)
    return u.accepts(inner)


def upper_triangle(depth: int) -> SymbolicSet:
    """Eventually-constant stand-in for {(n, j) : n < j}.

    The true triangle has a different fiber at every n, which the
    representation cannot carry; this proxy matches it exactly on the first
    ``depth`` fibers and stays cofinite-form beyond, so every oracle verdict
    that only depends on fibers being cofinite (or on points below
    ``depth``) agrees with the true set.
    """
    return SymbolicSet.layered(
        {i: SymbolicSet.cofinite(range(i + 1)) for i in range(depth)},
        SymbolicSet.cofinite(range(depth + 1)))


def barrier_base(rank: int, cap: int = 16) -> BarrierDescriptor:
    """The uniform barrier serving as base set for the rank-fold iterated
    product: k-subsets of the ground stand for the k-dimensional upper
    corner, rank 2 being the pairs/upper-triangle correspondence."""
    if rank > cap:
        raise CapExceeded(f"rank {rank} exceeds cap {cap}")
    if rank < 0:
        raise core.PreconditionViolated("rank must be nonnegative")
    return KUniform(rank)
