"""The Ellentuck space at finite truncation, with fronts and barriers.

Members of the classical space are infinite sets of naturals; the n-th
approximation is the set of the n smallest elements.  Here a member is a
finite strictly increasing tuple together with its prefix chain, and the
finitization order is plain containment (the definition is flexible; this
binding fixes containment and documents it).

Barriers are carried in two forms: a :class:`FlatFamily` is an explicit
finite list of finite subsets of a ground interval [0, N), and a
:class:`BarrierDescriptor` is the rank recursion that generates uniform
barriers -- the k-subsets barrier at rank k, and node-indexed families
"{n} followed by a member of the n-th child above n" for higher ranks, of
which the Schreier family {a : |a| = min(a) + 1} is the canonical example.

``front_coverage`` distinguishes a genuine failure to be a front from one
attributable to truncation: an avoiding path that dies at the ground
boundary is indeterminate, while an avoiding path strictly inside the
interior that no family member is long enough to ever catch is a real
counterexample.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence, Union

from . import core
from .canonize import HomogeneousSet


class RankTooLargeForGround(core.WorkbenchError):
    """A node-indexed barrier has no members at all inside the ground."""


@dataclass(frozen=True)
class EllApprox:
    """Finite approximation of an Ellentuck-space member."""

    elements: tuple

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.elements, self.elements[1:])):
            raise ValueError("elements must be strictly increasing")

    def __len__(self):
        return len(self.elements)


class EllentuckBinding(core.SpaceBinding):
    """Space of increasing tuples of naturals; le_fin is containment."""

    space = "ellentuck"

    def empty(self):
        return EllApprox(())

    def length(self, a):
        self._check(a)
        return len(a.elements)

    def restrict(self, a, m):
        self._check(a)
        return EllApprox(a.elements[:m])

    def le_fin(self, a, b):
        self._check(a)
        self._check(b)
        return set(a.elements) <= set(b.elements)

    def extensions(self, a, n, source):
        self._check(a)
        self._check(source)
        if not set(a.elements) <= set(source.elements):
            return []
        need = n - len(a.elements)
        if need < 0:
            return []
        floor = a.elements[-1] if a.elements else -1
        above = [x for x in source.elements if x > floor]
        return [EllApprox(a.elements + extra)
                for extra in combinations(above, need)]

    def within_range(self, a, source):
        self._check(a)
        if not a.elements:
            return True
        return bool(source.elements) and a.elements[-1] <= source.elements[-1]

    def payload(self, a):
        return list(a.elements)

    def paste(self, prefix, source_top):
        floor = prefix.elements[-1] if prefix.elements else -1
        tail = tuple(x for x in source_top.elements if x > floor)
        return EllApprox(prefix.elements + tail)

    def _check(self, a):
        if not isinstance(a, EllApprox):
            raise core.ApproximationFromWrongSpace(
                f"{type(a).__name__} is not an Ellentuck approximation")

    def member(self, elements) -> core.TruncatedMember:
        return self.truncate(EllApprox(tuple(sorted(elements))))


@dataclass(frozen=True)
class KUniform:
    """Uniform barrier of finite rank k: all k-subsets of the ground."""

    k: int


@dataclass(frozen=True)
class NodeIndexed:
    """Barrier built by the rank recursion: members are {n} followed by a
    member of the n-th child family, living strictly above n.

    ``explicit`` overrides finitely many children; ``tail`` generates the
    rest as a total function of the index, so constant-rank families and
    rank-increasing families like the Schreier barrier share one shape.
    """

    explicit: tuple = ()  # tuple of (index, descriptor) pairs
    tail: Callable = None

    def child(self, n: int) -> "BarrierDescriptor":
        for i, d in self.explicit:
            if i == n:
                return d
        return self.tail(n)


BarrierDescriptor = Union[KUniform, NodeIndexed]


@dataclass(frozen=True)
class FlatFamily:
    """Explicit finite family of finite subsets of a ground interval,
    each member a sorted tuple, the family sorted; duplicate-free."""

    members: tuple

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be sorted and duplicate-free")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def to_json(self):
        return [list(a) for a in self.members]

    @classmethod
    def of(cls, members) -> "FlatFamily":
        return cls(tuple(sorted({tuple(sorted(a)) for a in members})))


def make_schreier() -> BarrierDescriptor:
    """The family {a : |a| = min(a) + 1}: the node at n carries the uniform
    rank-n barrier above n."""
    return NodeIndexed(explicit=(), tail=lambda n: KUniform(n))


def rank(d: BarrierDescriptor, probe: int = 8) -> Optional[int]:
    """Rank of the descriptor; None for unbounded (rank-omega style) growth.

    Node-indexed ranks are judged from the children at 0..probe-1: constant
    child ranks give that rank plus one, strictly increasing give None.
    """
    if isinstance(d, KUniform):
        return d.k
    child_ranks = [rank(d.child(n), probe) for n in range(probe)]
    if any(r is None for r in child_ranks):
        return None
    if len(set(child_ranks)) == 1:
        return child_ranks[0] + 1
    if all(a < b for a, b in zip(child_ranks, child_ranks[1:])):
        return None
    raise ValueError("child ranks are neither constant nor strictly increasing")


def _flatten(d: BarrierDescriptor, lo: int, n: int):
    if isinstance(d, KUniform):
        yield from combinations(range(lo, n), d.k)
        return
    for i in range(lo, n):
        for a in _flatten(d.child(i), i + 1, n):
            yield (i,) + a


def flatten(d: BarrierDescriptor, n: int) -> FlatFamily:
    """All members of the described barrier contained in [0, n).

    A node-indexed descriptor whose every child comes up empty inside the
    ground is reported as RankTooLargeForGround rather than silently
    returning the empty family.
    """
    if n < 1:
        raise core.PreconditionViolated("ground must have at least one point")
    members = tuple(sorted(set(_flatten(d, 0, n))))
    if not members and isinstance(d, NodeIndexed):
        raise RankTooLargeForGround(
            f"no member of the node-indexed family fits in [0,{n})")
    return FlatFamily(members)


def is_nash_williams(family: FlatFamily) -> bool:
    """No member is a proper initial segment of another (under the
    increasing enumerations)."""
    members = set(family.members)
    for b in family:
        for cut in range(len(b)):
            if b[:cut] in members:
                return False
    return True


def is_sperner(family: FlatFamily) -> bool:
    """No member is a strict subset of another."""
    sets = [set(a) for a in family]
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            if i != j and x < y:
                return False
    return True


@dataclass(frozen=True)
class Coverage:
    verdict: str  # core.PASS-style: "covered" / "counterexample" / "indeterminate"
    path: Optional[tuple] = None


COVERED = "covered"
COUNTEREXAMPLE = "counterexample"
INDETERMINATE = "indeterminate"


def front_coverage(family: FlatFamily, n: int) -> Coverage:
    """Does every increasing path through [0, n) meet an initial segment of
    the family?

    Walks all paths.  A path with no family prefix that cannot be extended
    inside the ground ran off the truncation: indeterminate.  A path that
    still has room but that no family member is long enough to ever cover
    (all its prefixes miss, and every member is at most its length) is a
    genuine counterexample; by completeness of the flat family below n no
    extension of that path, inside the ground or beyond, can be caught.
    """
    members = set(family.members)
    if any(max(a, default=-1) >= n for a in members):
        raise core.PreconditionViolated("family member outside the ground")
    longest = max((len(a) for a in members), default=0)

    indeterminate_seen = False
    stack = [()]
    while stack:
        path = stack.pop()
        if any(path[:cut] in members for cut in range(len(path) + 1)):
            continue
        frontier = range((path[-1] + 1) if path else 0, n)
        if not frontier:
            indeterminate_seen = True
            continue
        if len(path) >= longest:
            return Coverage(COUNTEREXAMPLE, path)
        stack.extend(path + (x,) for x in reversed(frontier))
    if indeterminate_seen:
        return Coverage(INDETERMINATE)
    return Coverage(COVERED)


def homogenize(family: FlatFamily, coloring: Mapping, target_size: int,
               ground: int) -> Optional[HomogeneousSet]:
    """Exhaustive search for a target_size subset M of [0, ground) with
    every family member inside M bearing one color.

    ``coloring`` maps each member to a color; totality over the family is
    required.  Returns the deterministic-least witness, or None when no
    subset of the ground works (legitimate: the Nash-Williams theorem only
    promises witnesses inside infinite sets).
    """
    if target_size < 1:
        raise core.PreconditionViolated("target size must be at least 1")
    missing = [a for a in family if a not in coloring]
    if missing:
        raise core.PreconditionViolated(f"coloring not total: misses {missing[0]}")
    for M in combinations(range(ground), target_size):
        inside = set(M)
        colors = {coloring[a] for a in family if set(a) <= inside}
        if len(colors) <= 1:
            return HomogeneousSet(M, colors.pop() if colors else 0)
    return None
