"""The block-tree space behind weakly Ramsey ultrafilters, in full finite detail.

A member is a sequence of height-two blocks: block n sits inside the ambient
tree at a spine position k_n (the level-1 node), carries n+1 maximal nodes
chosen from the k_n + 1 slots below the spine, and spines strictly increase
along the sequence.  The n-th approximation of a member is its first n
blocks, and the finitization order is "is a subtree of" (node containment).

Canonical equivalence relations on position-n blocks are projections to
subtree masks of the ambient n-th block: the root alone, root plus spine, or
root, spine and a nonempty subset of the leaf slots -- 2^(n+1) + 1 masks in
all.  The pigeonhole construction for this space is fully constructive: build
a fused member block by block through finite Ramsey witnesses, then keep the
color class that recurs most and thin the survivors back to the required
leaf counts.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Sequence

from . import core
from .canonize import ramsey_witness


class StructureError(core.WorkbenchError):
    """A block sequence violates the member invariants."""

    def __init__(self, position, clause):
        self.position = position
        self.clause = clause
        super().__init__(f"block {position}: {clause}")


class MaskArityMismatch(core.WorkbenchError):
    """A subtree mask indexes leaf slots the block position does not have."""


class InsufficientTruncation(core.WorkbenchError):
    """The staged pigeonhole construction ran out of blocks."""

    def __init__(self, stage, needed_depth, position):
        self.stage = stage
        self.needed_depth = needed_depth
        self.position = position
        super().__init__(
            f"stage {stage} stalled at position {position}; "
            f"a truncation of depth >= {needed_depth} is needed")


@dataclass(frozen=True)
class R1Block:
    """One finite height-two tree: position ``index`` in its member, spine
    node at ``spine``, maximal nodes at the ``leaves`` slots below it."""

    index: int
    spine: int
    leaves: tuple

    def nodes(self) -> frozenset:
        return frozenset([(), (self.spine,)]) | \
            frozenset((self.spine, i) for i in self.leaves)

    def to_json(self):
        return {"spine": self.spine, "leaves": list(self.leaves)}


@dataclass(frozen=True)
class R1Member:
    blocks: tuple

    @property
    def depth(self):
        return len(self.blocks)

    def to_json(self):
        return [b.to_json() for b in self.blocks]


def _check_block(b: R1Block, position: int):
    if b.index != position:
        raise StructureError(position, "index does not match position")
    if len(b.leaves) != position + 1:
        raise StructureError(position, "leaf count is not position + 1")
    if list(b.leaves) != sorted(set(b.leaves)):
        raise StructureError(position, "leaves not strictly increasing")
    if any(i < 0 or i > b.spine for i in b.leaves):
        raise StructureError(position, "leaf outside the spine's slot range")


def validate_member(m: R1Member) -> None:
    """Raise StructureError naming the first violated clause."""
    last_spine = -1
    for pos, b in enumerate(m.blocks):
        _check_block(b, pos)
        if b.spine <= last_spine:
            raise StructureError(pos, "spines not strictly increasing")
        last_spine = b.spine


def identity_member(depth: int) -> R1Member:
    """The member that copies the ambient tree: block n has spine n and all
    n + 1 leaf slots."""
    return R1Member(tuple(R1Block(n, n, tuple(range(n + 1)))
                          for n in range(depth)))


MASK_ROOT = "root"
MASK_SPINE = "spine"
MASK_LEAVES = "leaves"


@dataclass(frozen=True)
class SubtreeMask:
    """A subtree of the ambient block at some position: the root alone, the
    root and spine, or root, spine and a nonempty set of leaf-slot indices."""

    kind: str
    leaf_indices: tuple = ()

    def __post_init__(self):
        if self.kind not in (MASK_ROOT, MASK_SPINE, MASK_LEAVES):
            raise ValueError(f"unknown mask kind {self.kind!r}")
        if self.kind == MASK_LEAVES and not self.leaf_indices:
            raise ValueError("leaves mask needs a nonempty index set")
        if self.kind != MASK_LEAVES and self.leaf_indices:
            raise ValueError("only leaves masks carry indices")

    def to_json(self):
        if self.kind == MASK_LEAVES:
            return {"kind": self.kind, "indices": list(self.leaf_indices)}
        return {"kind": self.kind}


ROOT = SubtreeMask(MASK_ROOT)
SPINE = SubtreeMask(MASK_SPINE)


def leaves_mask(indices) -> SubtreeMask:
    return SubtreeMask(MASK_LEAVES, tuple(sorted(indices)))


def enumerate_subtrees(n: int) -> list:
    """All subtree masks of the ambient block at position n: exactly
    2^(n+1) + 1 of them."""
    masks = [ROOT, SPINE]
    for size in range(1, n + 2):
        for idx in combinations(range(n + 1), size):
            masks.append(leaves_mask(idx))
    return masks


def pi_T(block: R1Block, mask: SubtreeMask) -> frozenset:
    """Project a block to the nodes in the same position as the mask: the
    image of the mask under the tree isomorphism onto the block."""
    if mask.kind == MASK_LEAVES and \
            any(i > block.index for i in mask.leaf_indices):
        raise MaskArityMismatch(
            f"mask indices {mask.leaf_indices} exceed position {block.index}")
    if mask.kind == MASK_ROOT:
        return frozenset([()])
    base = frozenset([(), (block.spine,)])
    if mask.kind == MASK_SPINE:
        return base
    return base | frozenset((block.spine, block.leaves[j])
                            for j in mask.leaf_indices)


def eq_ET(a: R1Block, b: R1Block, mask: SubtreeMask) -> bool:
    """Canonical equivalence at a block position: equal mask projections."""
    return pi_T(a, mask) == pi_T(b, mask)


def position_blocks_within(member: R1Member, k: int, m: int) -> list:
    """All position-k blocks embeddable in ``member`` beyond position m:
    a block with k+1 leaves drawn from a single block at position >= m."""
    out = []
    for pos in range(m, member.depth):
        b = member.blocks[pos]
        for sub in combinations(b.leaves, k + 1):
            out.append(R1Block(k, b.spine, sub))
    return out


@dataclass(frozen=True)
class A4Construction:
    """Result of the staged pigeonhole construction, with the recurrence
    bookkeeping that stands in for "infinitely many blocks of one color"."""

    member: R1Member
    color: int
    color_counts: tuple  # sorted (color, count) pairs over the fused blocks
    source_positions: tuple


def a4_r1_construct(member: R1Member, k: int, coloring: Callable, m: int,
                    colors: int = 2) -> A4Construction:
    """Prefix-preserving homogeneous thinning for colorings of position-k
    blocks.

    Stage one builds a fused sequence block by block: for each target
    position j >= m it scans the unused blocks of ``member`` for one whose
    leaves contain a (j+1)-subset on which the induced coloring of
    (k+1)-leaf subsets is constant (a finite Ramsey witness); a block that
    fails for some j can never serve a larger j, so the scan pointer only
    moves forward.  Stage two keeps the color class recurring most often
    among the fused blocks (ties to the smallest color), reindexes the
    survivors, and thins each to the leaf count its new position requires.

    The result Z keeps the first m blocks of ``member``, sits below it, and
    the coloring is constant on every position-k block embeddable in Z
    beyond position m.  Raises InsufficientTruncation when stage one cannot
    produce a single constrained block.
    """
    validate_member(member)
    if m > member.depth:
        raise InsufficientTruncation(1, m, m)
    fused = []  # (source position, leaf subset, color or None)
    pointer = m
    j = m
    while pointer < member.depth:
        src = member.blocks[pointer]
        if j < k:
            # Too few leaves for any position-k block: unconstrained.
            fused.append((pointer, src.leaves[:j + 1], None))
            pointer += 1
            j += 1
            continue
        leaves = src.leaves

        def induced(idx_tuple):
            chosen = tuple(leaves[i] for i in idx_tuple)
            return coloring(R1Block(k, src.spine, chosen))

        witness = ramsey_witness(len(leaves), k + 1, induced, j + 1)
        pointer += 1
        if witness is None:
            continue
        chosen = tuple(leaves[i] for i in witness.elements)
        fused.append((pointer - 1, chosen, witness.color))
        j += 1

    constrained = [(pos, sub, c) for pos, sub, c in fused if c is not None]
    if not constrained:
        raise InsufficientTruncation(1, member.depth + 1, j)
    counts = {}
    for _, _, c in constrained:
        counts[c] = counts.get(c, 0) + 1
    best = max(counts.values())
    keep_color = min(c for c, v in counts.items() if v == best)

    selected = [(pos, sub, c) for pos, sub, c in fused
                if c is None or c == keep_color]
    blocks = list(member.blocks[:m])
    for offset, (pos, sub, _) in enumerate(selected):
        position = m + offset
        spine = member.blocks[pos].spine
        blocks.append(R1Block(position, spine, sub[: position + 1]))
    result = R1Member(tuple(blocks))
    validate_member(result)
    return A4Construction(
        member=result, color=keep_color,
        color_counts=tuple(sorted(counts.items())),
        source_positions=tuple(pos for pos, _, _ in selected))


def r1_almost_reduces(Y: R1Member, X: R1Member):
    """Blockwise almost reduction: from some position on, every block of Y
    is a subtree of a block of X (the containing positions are then
    automatically strictly increasing, since spines match and increase)."""
    def contained(block):
        for other in X.blocks:
            if other.spine == block.spine and \
                    set(block.leaves) <= set(other.leaves):
                return True
        return False

    ok = [contained(b) for b in Y.blocks]
    for m in range(Y.depth):
        if all(ok[m:]):
            return core.Holds(m)
    return core.FailsUpToDepth(Y.depth)


class R1Binding(core.SpaceBinding):
    """Binding of the block-tree space to the abstract truncated interface.

    Approximations are prefixes (tuples of blocks); le_fin is node
    containment of the underlying finite trees.
    """

    space = "r1"

    def empty(self):
        return ()

    def length(self, a):
        self._check(a)
        return len(a)

    def restrict(self, a, m):
        self._check(a)
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
                if src.spine <= from_spine or len(src.leaves) < pos + 1:
                    continue
                for sub in combinations(src.leaves, pos + 1):
                    prefix.append(R1Block(pos, src.spine, sub))
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
            if src.spine > floor and len(src.leaves) >= pos + 1:
                blocks.append(R1Block(pos, src.spine, src.leaves[: pos + 1]))
                floor = src.spine
        return tuple(blocks)

    def _check(self, a):
        if not isinstance(a, tuple) or \
                any(not isinstance(b, R1Block) for b in a):
            raise core.ApproximationFromWrongSpace(
                "expected a tuple of blocks")

    def member(self, m: R1Member) -> core.TruncatedMember:
        validate_member(m)
        return self.truncate(m.blocks)

    def as_member(self, B: core.TruncatedMember) -> R1Member:
        return R1Member(B.top)
