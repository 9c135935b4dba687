"""Brute-force canonization engines for equivalence relations on finite families.

The Erdos-Rado theorem says every equivalence relation on the k-subsets of an
infinite set is, on some infinite subset, a projection relation: a ~ b iff a
and b agree on a fixed index set I.  The Pudlak-Rodl theorem generalizes this
to barriers, with irreducible functions playing the role of the projections.
Both theorems are pure existence statements; this module finds the witnesses
by exhaustive search on small ground sets, together with the finite Ramsey
searches the witness constructions rely on.

Searches return the deterministic-least witness (ground set lexicographic,
then index set by size then lexicographic), or ``None`` when no witness fits
the ground set.  ``None`` is a legitimate answer at finite scale -- the
theorems only promise witnesses on infinite ground sets.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Optional, Sequence


class ArityMismatch(ValueError):
    """Projection index set does not fit the tuple it is applied to."""


class CapExceeded(RuntimeError):
    """An exhaustive search ran past its configured cap."""


@dataclass(frozen=True)
class HomogeneousSet:
    """A set all of whose relevant tuples got one color."""

    elements: tuple
    color: int


@dataclass(frozen=True)
class EqRel:
    """Equivalence relation on a finite family, stored as a labeling.

    Two domain elements are equivalent iff they carry the same label.  Labels
    need not be contiguous.  Domain elements are sorted tuples.
    """

    domain: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.domain) != len(self.labels):
            raise ValueError("domain and labels must run in parallel")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain has duplicates")

    @classmethod
    def from_function(cls, domain: Iterable, fn: Callable) -> "EqRel":
        dom = tuple(sorted(tuple(a) for a in domain))
        return cls(dom, tuple(fn(a) for a in dom))

    def label_map(self) -> dict:
        return dict(zip(self.domain, self.labels))

    def to_json(self):
        return {"domain": [list(a) for a in self.domain],
                "labels": list(self.labels)}


@dataclass(frozen=True)
class IrreducibleMap:
    """Candidate canonizing function: a table a -> phi(a) with phi(a) a subset of a."""

    table: tuple  # tuple of (element, image) pairs, sorted by element

    def __post_init__(self):
        for a, img in self.table:
            if not set(img) <= set(a):
                raise ValueError(f"image {img} is not a subset of {a}")

    @classmethod
    def from_dict(cls, mapping: dict) -> "IrreducibleMap":
        return cls(tuple(sorted((tuple(a), tuple(sorted(img)))
                                for a, img in mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.table)

    def __call__(self, a):
        return self.as_dict()[tuple(a)]


def project_I(a: Sequence[int], index_set: Iterable[int]) -> tuple:
    """Project the increasing enumeration of ``a`` to the positions in ``index_set``."""
    a = tuple(sorted(a))
    idx = sorted(index_set)
    if any(i < 0 or i >= len(a) for i in idx):
        raise ArityMismatch(f"index set {idx} does not fit a {len(a)}-tuple")
    return tuple(a[i] for i in idx)


def _index_sets(k: int):
    """All subsets of {0..k-1}, by size then lexicographically."""
    for size in range(k + 1):
        yield from combinations(range(k), size)


def _partitions_agree(elements, key1: Callable, key2: Callable) -> bool:
    """True iff key1 and key2 induce the same partition of ``elements``."""
    forward = {}
    backward = {}
    for x in elements:
        a, b = key1(x), key2(x)
        if forward.setdefault(a, b) != b:
            return False
        if backward.setdefault(b, a) != a:
            return False
    return True


def er_canonize(relation: EqRel, m: int) -> Optional[tuple]:
    """Find (M, I) with |M| = m such that the relation restricted to [M]^k
    is exactly "equal projections to I".

    The domain of ``relation`` must be all k-subsets of its ground set.
    Returns the deterministic-least witness (M lexicographic, then I by size
    then lexicographic), or None when no witness fits the ground set.
    """
    if not relation.domain:
        raise ValueError("empty domain")
    k = len(relation.domain[0])
    ground = sorted({x for a in relation.domain for x in a})
    if m < k:
        raise ValueError(f"target size {m} below arity {k}")
    expected = set(combinations(ground, k))
    if set(relation.domain) != expected:
        raise ValueError("domain is not the full k-subset family of its ground set")
    label = relation.label_map()

    for M in combinations(ground, m):
        tuples = list(combinations(M, k))
        for I in _index_sets(k):
            if _partitions_agree(tuples, lambda a: label[a],
                                 lambda a: project_I(a, I)):
                return (M, I)
    return None


def er_canonize_oracle(relation: EqRel, m: int) -> Optional[tuple]:
    """Independent naive double-loop check of the same search space.

    Kept deliberately separate from :func:`er_canonize` (no shared predicate)
    so the two can cross-validate each other in tests.
    """
    k = len(relation.domain[0])
    ground = sorted({x for a in relation.domain for x in a})
    label = relation.label_map()
    for M in combinations(ground, m):
        for size in range(k + 1):
            for I in combinations(range(k), size):
                ok = True
                for a in combinations(M, k):
                    for b in combinations(M, k):
                        same_label = label[a] == label[b]
                        same_proj = tuple(a[i] for i in I) == tuple(b[i] for i in I)
                        if same_label != same_proj:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return (M, I)
    return None


def is_irreducible(phi: IrreducibleMap) -> bool:
    """phi(a) is a subset of a, and distinct images are never subset-comparable."""
    images = [set(img) for _, img in phi.table]
    for a, img in phi.table:
        if not set(img) <= set(a):
            return False
    for i, x in enumerate(images):
        for j, y in enumerate(images):
            if x != y and x <= y:
                return False
    return True


def _nash_williams(members) -> bool:
    for a in members:
        for b in members:
            if a != b and len(a) < len(b) and tuple(b[: len(a)]) == tuple(a):
                return False
    return True


def pr_canonize(relation: EqRel, m: int, ground: Sequence[int],
                table_budget: int = 200_000) -> Optional[tuple]:
    """Find (M, phi) with phi irreducible canonizing the relation on the
    members contained in M.

    Projection-shaped maps are tried first (one index set per member size,
    mirroring how irreducible maps arise as projections); an unrestricted
    table search under ``table_budget`` is the fallback.  Returns the
    deterministic-least witness or None.
    """
    members = relation.domain
    if not _nash_williams(members):
        raise ValueError("domain family is not Nash-Williams")
    label = relation.label_map()

    for M in combinations(sorted(ground), m):
        mset = set(M)
        restricted = [a for a in members if set(a) <= mset]

        def canonizes(phi_dict):
            return _partitions_agree(restricted, lambda a: label[a],
                                     lambda a: phi_dict[a])

        sizes = sorted({len(a) for a in restricted})
        choice_lists = [list(_index_sets(s)) for s in sizes]
        for assignment in product(*choice_lists):
            by_size = dict(zip(sizes, assignment))
            phi_dict = {a: project_I(a, by_size[len(a)]) for a in restricted}
            phi = IrreducibleMap.from_dict(phi_dict)
            if is_irreducible(phi) and canonizes(phi_dict):
                return (M, phi)

        # Unrestricted fallback: every table a -> subset of a, budget-capped.
        subset_lists = [[tuple(sorted(s)) for size in range(len(a) + 1)
                         for s in combinations(sorted(a), size)] for a in restricted]
        total = 1
        for lst in subset_lists:
            total *= len(lst)
            if total > table_budget:
                break
        if total > table_budget:
            continue
        for images in product(*subset_lists):
            phi_dict = dict(zip(restricted, images))
            phi = IrreducibleMap.from_dict(phi_dict)
            if is_irreducible(phi) and canonizes(phi_dict):
                return (M, phi)
    return None


def ramsey_witness(l: int, r: int, coloring: Callable, j: int
                   ) -> Optional[HomogeneousSet]:
    """Least j-subset of {0..l-1} all of whose r-subsets get one color, else None.

    ``coloring`` must be a pure function of the sorted r-tuple.
    """
    if j > l:
        return None
    for M in combinations(range(l), j):
        colors = {coloring(t) for t in combinations(M, r)}
        if len(colors) <= 1:
            return HomogeneousSet(M, colors.pop() if colors else 0)
    return None


def min_ramsey(j: int, r: int, q: int, cap: int) -> int:
    """Least l <= cap such that every q-coloring of the r-subsets of {0..l-1}
    admits a j-homogeneous set, verified by exhaustion over all colorings.

    Feasible only for tiny parameters; raises CapExceeded past the cap.
    """
    for l in range(1, cap + 1):
        tuples = list(combinations(range(l), r))
        ok = True
        for assignment in product(range(q), repeat=len(tuples)):
            table = dict(zip(tuples, assignment))
            if ramsey_witness(l, r, lambda t: table[t], j) is None:
                ok = False
                break
        if ok:
            return l
    raise CapExceeded(f"no witness up to cap {cap}")
