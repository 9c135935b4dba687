"""Square-block space (and its higher-dimensional cousins).

A member is a sequence of height-two blocks whose maximal nodes form a
square grid: block n has a spine at position k_n and an (n+1) x (n+1) grid
of maximal nodes indexed by a row set and a column set, each an (n+1)-subset
of the k_n + 1 slots.  Spines strictly increase.

Canonical equivalence relations on position-n blocks are induced by pairs of
subtree masks of the ambient block of the one-dimensional space, in exactly
five shapes: both masks trivial (project to the root), both spines (project
to the spine), a leaves mask against a spine (project the rows), a spine
against a leaves mask (project the columns), and two leaves masks (project
the full grid).  Pairs outside the five shapes are rejected rather than
given invented semantics.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import core
from .canonize import project_I
from .trees import (MASK_LEAVES, MASK_ROOT, MASK_SPINE, ROOT, SPINE,
                    SubtreeMask, enumerate_subtrees, leaves_mask)


class UnlistedMaskPair(core.WorkbenchError):
    """The mask pair matches none of the five canonical projection shapes."""


@dataclass(frozen=True)
class H2Block:
    index: int
    spine: int
    rows: tuple
    cols: tuple

    def nodes(self) -> frozenset:
        return frozenset([(), (self.spine,)]) | \
            frozenset((self.spine, (i, j)) for i in self.rows for j in self.cols)

    def to_json(self):
        return {"spine": self.spine, "rows": list(self.rows),
                "cols": list(self.cols)}


@dataclass(frozen=True)
class H2Member:
    blocks: tuple

    @property
    def depth(self):
        return len(self.blocks)

    def to_json(self):
        return [b.to_json() for b in self.blocks]


def _check_axis(axis, position, spine, name):
    from .trees import StructureError
    if len(axis) != position + 1:
        raise StructureError(position, f"{name} count is not position + 1")
    if list(axis) != sorted(set(axis)):
        raise StructureError(position, f"{name} not strictly increasing")
    if any(i < 0 or i > spine for i in axis):
        raise StructureError(position, f"{name} outside the spine's slot range")


def validate_h2(m: H2Member) -> None:
    """Raise StructureError naming the first violated clause."""
    from .trees import StructureError
    last_spine = -1
    for pos, b in enumerate(m.blocks):
        if b.index != pos:
            raise StructureError(pos, "index does not match position")
        _check_axis(b.rows, pos, b.spine, "rows")
        _check_axis(b.cols, pos, b.spine, "cols")
        if b.spine <= last_spine:
            raise StructureError(pos, "spines not strictly increasing")
        last_spine = b.spine


def identity_h2(depth: int) -> H2Member:
    return H2Member(tuple(
        H2Block(n, n, tuple(range(n + 1)), tuple(range(n + 1)))
        for n in range(depth)))


@dataclass(frozen=True)
class MaskPair:
    rows: SubtreeMask
    cols: SubtreeMask

    @property
    def shape(self) -> str:
        kinds = (self.rows.kind, self.cols.kind)
        return {
            (MASK_ROOT, MASK_ROOT): "root",
            (MASK_SPINE, MASK_SPINE): "spine",
            (MASK_LEAVES, MASK_SPINE): "rows",
            (MASK_SPINE, MASK_LEAVES): "cols",
            (MASK_LEAVES, MASK_LEAVES): "grid",
        }.get(kinds, "unlisted")

    def to_json(self):
        return {"rows": self.rows.to_json(), "cols": self.cols.to_json()}


def pi_pair(block: H2Block, pair: MaskPair) -> frozenset:
    """Project a block through one of the five canonical shapes.

    Row/column projections produce one-dimensional leaf nodes (the same
    values the one-dimensional space's mask projection produces on the
    corresponding row or column block); the grid shape produces the product
    of the two index projections.
    """
    shape = pair.shape
    if shape == "unlisted":
        raise UnlistedMaskPair(
            f"pair of kinds ({pair.rows.kind}, {pair.cols.kind})")
    for mask in (pair.rows, pair.cols):
        if mask.kind == MASK_LEAVES and \
                any(i > block.index for i in mask.leaf_indices):
            from .trees import MaskArityMismatch
            raise MaskArityMismatch(
                f"mask indices {mask.leaf_indices} exceed position {block.index}")
    if shape == "root":
        return frozenset([()])
    base = frozenset([(), (block.spine,)])
    if shape == "spine":
        return base
    if shape == "rows":
        picked = project_I(block.rows, pair.rows.leaf_indices)
        return base | frozenset((block.spine, i) for i in picked)
    if shape == "cols":
        picked = project_I(block.cols, pair.cols.leaf_indices)
        return base | frozenset((block.spine, j) for j in picked)
    rows = project_I(block.rows, pair.rows.leaf_indices)
    cols = project_I(block.cols, pair.cols.leaf_indices)
    return base | frozenset((block.spine, (i, j)) for i in rows for j in cols)


def eq_canonical_h2(a: H2Block, b: H2Block, pair: MaskPair) -> bool:
    return pi_pair(a, pair) == pi_pair(b, pair)


def enumerate_mask_pairs(n: int) -> list:
    """All mask pairs of the five canonical shapes for position n:
    2 + 2(2^(n+1) - 1) + (2^(n+1) - 1)^2 of them, in a fixed order."""
    leafy = [m for m in enumerate_subtrees(n) if m.kind == MASK_LEAVES]
    pairs = [MaskPair(ROOT, ROOT), MaskPair(SPINE, SPINE)]
    pairs.extend(MaskPair(m, SPINE) for m in leafy)
    pairs.extend(MaskPair(SPINE, m) for m in leafy)
    pairs.extend(MaskPair(m0, m1) for m0 in leafy for m1 in leafy)
    return pairs


def enumerate_blocks(position: int, max_spine: int) -> list:
    """All valid blocks at a position with spine bounded by max_spine."""
    out = []
    for spine in range(position, max_spine + 1):
        slots = range(spine + 1)
        for rows in combinations(slots, position + 1):
            for cols in combinations(slots, position + 1):
                out.append(H2Block(position, spine, rows, cols))
    return out


# Higher-dimensional generalization: block = spine plus k axis index sets,
# each of size position + 1.  Only validation and the full-grid projection
# have canonical shapes here; the mixed projection grammar is specific to
# dimension two.

@dataclass(frozen=True)
class HkBlock:
    index: int
    spine: int
    axes: tuple  # k tuples, each of length index + 1

    def to_json(self):
        return {"spine": self.spine, "axes": [list(a) for a in self.axes]}


@dataclass(frozen=True)
class HkMember:
    dimension: int
    blocks: tuple


def validate_hk(m: HkMember) -> None:
    from .trees import StructureError
    last_spine = -1
    for pos, b in enumerate(m.blocks):
        if b.index != pos:
            raise StructureError(pos, "index does not match position")
        if len(b.axes) != m.dimension:
            raise StructureError(pos, "axis count differs from dimension")
        for i, axis in enumerate(b.axes):
            _check_axis(axis, pos, b.spine, f"axis {i}")
        if b.spine <= last_spine:
            raise StructureError(pos, "spines not strictly increasing")
        last_spine = b.spine


def pi_grid(block: HkBlock, index_sets: tuple) -> frozenset:
    """Full-grid projection: project every axis through its index set and
    take the product of the images."""
    if len(index_sets) != len(block.axes):
        raise UnlistedMaskPair("one index set per axis is required")
    images = [project_I(axis, idx)
              for axis, idx in zip(block.axes, index_sets)]
    points = [()]
    for img in images:
        points = [p + (v,) for p in points for v in img]
    return frozenset([(), (block.spine,)]) | \
        frozenset((block.spine, p) for p in points)


class H2Binding(core.SpaceBinding):
    """Binding of the square-block space; le_fin is node containment, which
    for grid blocks is spine equality with row and column containment."""

    space = "h2"

    def empty(self):
        return ()

    def length(self, a):
        self._check(a)
        return len(a)

    def restrict(self, a, m):
        return a[:m]

    def _nodes(self, a):
        nodes = set()
        for b in a:
            nodes |= b.nodes()
        return nodes

    def le_fin(self, a, b):
        self._check(a)
        self._check(b)
        return self._nodes(a) <= self._nodes(b)

    def extensions(self, a, n, source):
        self._check(a)
        self._check(source)
        if not self.le_fin(a, source):
            return []
        if n < len(a):
            return []
        out = []

        def extend(prefix, from_spine):
            if len(prefix) == n:
                out.append(tuple(prefix))
                return
            pos = len(prefix)
            for src in source:
                if src.spine <= from_spine or len(src.rows) < pos + 1 \
                        or len(src.cols) < pos + 1:
                    continue
                for rows in combinations(src.rows, pos + 1):
                    for cols in combinations(src.cols, pos + 1):
                        prefix.append(H2Block(pos, src.spine, rows, cols))
                        extend(prefix, src.spine)
                        prefix.pop()

        last = a[-1].spine if a else -1
        extend(list(a), last)
        return sorted(out, key=self.sort_key)

    def within_range(self, a, source):
        self._check(a)
        if not a:
            return True
        if not source:
            return False
        return a[-1].spine <= source[-1].spine

    def payload(self, a):
        return [b.to_json() for b in a]

    def paste(self, prefix, source_top):
        blocks = list(prefix)
        floor = blocks[-1].spine if blocks else -1
        for src in source_top:
            pos = len(blocks)
            if src.spine > floor and len(src.rows) >= pos + 1 \
                    and len(src.cols) >= pos + 1:
                blocks.append(H2Block(pos, src.spine,
                                      src.rows[: pos + 1], src.cols[: pos + 1]))
                floor = src.spine
        return tuple(blocks)

    def _check(self, a):
        if not isinstance(a, tuple) or \
                any(not isinstance(b, H2Block) for b in a):
            raise core.ApproximationFromWrongSpace(
                "expected a tuple of grid blocks")

    def member(self, m: H2Member) -> core.TruncatedMember:
        validate_h2(m)
        return self.truncate(m.blocks)
