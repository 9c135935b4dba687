"""Abstract interface for a topological Ramsey space at finite truncation.

A space is presented by a :class:`SpaceBinding`: finite approximations with a
restriction map, the quasi-order ``le_fin`` on approximations, and an
enumerator of extensions drawn from a given truncated member.  Infinite
members are everywhere replaced by :class:`TruncatedMember` values (a depth-N
chain of approximations), and every operation the classical theory quantifies
over infinite objects returns a three-valued verdict: holds, fails with a
witness, or indeterminate at this depth.

The checkers here cover the four axioms of topological Ramsey space theory
(A.1 approximation coherence, A.2 the finitization quasi-order, A.3
amalgamation, A.4 the pigeonhole principle), basic open sets, depth, and the
almost-reduction order used for sigma-closed forcing.

All values are immutable and every operation is a pure function of its
inputs.  Searches and reports enumerate candidates in a fixed documented
order (canonical serialization of payloads), so results are reproducible.
"""

import abc
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

PASS = "PASS"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
INDETERMINATE = "INDETERMINATE"

DEFAULT_NODE_CAP = 10 ** 6


class WorkbenchError(Exception):
    """Base class for errors raised by the workbench."""


class ApproximationFromWrongSpace(WorkbenchError):
    """An approximation was handed to a binding that cannot interpret it."""


class DepthExceeded(WorkbenchError):
    """A basic open set was requested past the truncation depth."""


class PreconditionViolated(WorkbenchError):
    """A documented precondition does not hold."""


def canonical_json(obj) -> str:
    """Stable serialization: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class TruncatedMember:
    """A depth-N prefix standing in for an infinite member.

    ``chain`` holds the strictly increasing approximations r_0, r_1, ..., r_N;
    the final entry is the whole visible part of the member.
    """

    space: str
    chain: tuple

    @property
    def depth(self) -> int:
        return len(self.chain) - 1

    @property
    def top(self):
        return self.chain[-1]

    def approximation(self, n: int):
        return self.chain[n]


@dataclass(frozen=True)
class Depth:
    """depth_B(a): least n with a le_fin r_n(B), or unbounded within truncation."""

    value: Optional[int] = None

    @classmethod
    def finite(cls, n: int) -> "Depth":
        return cls(n)

    @classmethod
    def unbounded(cls) -> "Depth":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class Holds:
    witness: Any


@dataclass(frozen=True)
class FailsUpToDepth:
    depth: int


@dataclass(frozen=True)
class A4Witness:
    member: TruncatedMember
    side: str  # "inside" or "outside"


@dataclass(frozen=True)
class NotFoundWithinTruncation:
    reason: str  # "search-exhausted" or "budget-exhausted"


class SpaceBinding(abc.ABC):
    """Concrete presentation of one space at finite truncation.

    Approximations are opaque immutable values; the binding knows how to
    measure, restrict, compare and extend them.  ``le_fin`` must be reflexive
    and transitive; each binding documents its choice (the definition is
    flexible for most spaces).
    """

    space: str = "abstract"

    @abc.abstractmethod
    def empty(self):
        """The unique length-0 approximation."""

    @abc.abstractmethod
    def length(self, a) -> int:
        """The n with a = r_n(a)."""

    @abc.abstractmethod
    def restrict(self, a, m: int):
        """r_m(a) for m <= length(a)."""

    @abc.abstractmethod
    def le_fin(self, a, b) -> bool:
        """The finitization quasi-order on approximations."""

    @abc.abstractmethod
    def extensions(self, a, n: int, source) -> list:
        """All length-n approximations b with a an initial segment of b and
        b le_fin ``source`` (a top approximation supplying the material).
        Finite, duplicate-free, deterministic order."""

    @abc.abstractmethod
    def within_range(self, a, source) -> bool:
        """Whether ``source``'s truncation can assess ``a`` at all; False
        means membership of ``a`` below source is indeterminate, not refuted."""

    @abc.abstractmethod
    def payload(self, a):
        """JSON-able canonical payload of an approximation."""

    def paste(self, prefix, source_top):
        """Optional: a top approximation extending ``prefix`` with material
        taken from ``source_top`` (used by the A.3(b) witness search)."""
        return None

    # Derived helpers ----------------------------------------------------

    def is_prefix(self, a, b) -> bool:
        return self.length(a) <= self.length(b) and \
            self.restrict(b, self.length(a)) == a

    def sort_key(self, a) -> str:
        return canonical_json(self.payload(a))

    def member_le(self, A: "TruncatedMember", B: "TruncatedMember") -> bool:
        """The space's quasi-order on members, judged on visible parts."""
        return self.le_fin(A.top, B.top)

    def truncate(self, top) -> TruncatedMember:
        """Build the approximation chain r_0 .. r_N below ``top``."""
        n = self.length(top)
        if n < 1:
            raise PreconditionViolated("truncated members need depth >= 1")
        chain = tuple(self.restrict(top, m) for m in range(n + 1))
        if chain[0] != self.empty():
            raise PreconditionViolated("r_0 is not the empty approximation")
        for m in range(n + 1):
            if self.restrict(chain[n], m) != chain[m]:
                raise PreconditionViolated("restriction coherence fails")
        return TruncatedMember(self.space, chain)

    def member_payload(self, B: TruncatedMember):
        return {"space": self.space, "depth": B.depth,
                "top": self.payload(B.top)}

    def check_member(self, B: TruncatedMember) -> None:
        if B.space != self.space:
            raise ApproximationFromWrongSpace(
                f"member of space {B.space!r} given to {self.space!r}")


def depth_of(binding: SpaceBinding, a, B: TruncatedMember) -> Depth:
    """Least n with a le_fin r_n(B), scanned up to the truncation depth."""
    binding.check_member(B)
    for n in range(B.depth + 1):
        if binding.le_fin(a, B.approximation(n)):
            return Depth.finite(n)
    return Depth.unbounded()


def basic_open(binding: SpaceBinding, a, B: TruncatedMember, n: int) -> list:
    """The b of length n with a an initial segment of b and b le_fin B."""
    binding.check_member(B)
    if n > B.depth:
        raise DepthExceeded(f"requested length {n} > truncation depth {B.depth}")
    if n < binding.length(a):
        raise PreconditionViolated("basic open below the length of a")
    return binding.extensions(a, n, B.top)


@dataclass
class ClauseReport:
    clause: str
    verdict: str
    checked: int = 0
    indeterminate: int = 0
    witness: Any = None
    note: str = ""

    def to_json(self):
        out = {"clause": self.clause, "verdict": self.verdict,
               "checked": self.checked, "indeterminate": self.indeterminate}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    space: str
    clauses: list = field(default_factory=list)

    def add(self, clause: ClauseReport):
        self.clauses.append(clause)

    @property
    def failures(self) -> list:
        return [c for c in self.clauses if c.verdict == COUNTEREXAMPLE]

    @property
    def all_pass(self) -> bool:
        return all(c.verdict == PASS for c in self.clauses)

    def to_json(self):
        return {"space": self.space,
                "clauses": [c.to_json() for c in self.clauses]}


def _harvest(binding: SpaceBinding, sample) -> list:
    """All approximations living inside some sample member, sorted by
    (length, canonical payload)."""
    seen = {}
    for B in sample:
        for n in range(B.depth + 1):
            for a in binding.extensions(binding.empty(), n, B.top):
                seen[binding.sort_key(a)] = a
    return [a for _, a in sorted(seen.items(),
                                 key=lambda kv: (binding.length(kv[1]), kv[0]))]


def _clause(report, name, decisive, indet, witness=None, note=""):
    if witness is not None:
        verdict = COUNTEREXAMPLE
    elif decisive == 0 and indet > 0:
        verdict = INDETERMINATE
    else:
        verdict = PASS
    report.add(ClauseReport(name, verdict, checked=decisive + indet,
                            indeterminate=indet, witness=witness, note=note))


def check_axioms_A123(binding: SpaceBinding, sample: list,
                      harvest_cap: int = 5000) -> AxiomReport:
    """Exhaustively check axioms A.1, A.2 and A.3 over a sample of truncated
    members.

    Each clause reports PASS, COUNTEREXAMPLE with a witness, or INDETERMINATE
    when every checkable instance was depth-limited.  Indeterminacy is a
    verdict, not an error: an existential clause whose witness may live past
    the truncation can never be refuted here.
    """
    if not sample:
        raise PreconditionViolated("empty sample")
    for B in sample:
        binding.check_member(B)
    report = AxiomReport(binding.space)
    pool = _harvest(binding, sample)
    if len(pool) > harvest_cap:
        pool = pool[:harvest_cap]

    # A.1(a): r_0(A) is the empty approximation.
    witness = None
    for B in sample:
        if B.approximation(0) != binding.empty():
            witness = binding.member_payload(B)
            break
    _clause(report, "A1a", len(sample), 0, witness)

    # A.1(b): distinct members differ at some level.  Two truncations that
    # agree on their whole common chain cannot be told apart here.
    decisive = indet = 0
    for i, A in enumerate(sample):
        for B in sample[i + 1:]:
            if A == B:
                continue
            common = min(A.depth, B.depth)
            if any(A.approximation(n) != B.approximation(n)
                   for n in range(common + 1)):
                decisive += 1
            else:
                indet += 1
    _clause(report, "A1b", decisive, indet,
            note="prefix pairs are depth-limited")

    # A.1(c): r_n(A) = r_m(B) forces n = m and agreement below.
    decisive = indet = 0
    witness = None
    for A in sample:
        for B in sample:
            for n in range(A.depth + 1):
                for m in range(B.depth + 1):
                    if A.approximation(n) != B.approximation(m):
                        continue
                    decisive += 1
                    if n != m or any(A.approximation(k) != B.approximation(k)
                                     for k in range(n)):
                        witness = {"A": binding.member_payload(A),
                                   "B": binding.member_payload(B),
                                   "n": n, "m": m}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    _clause(report, "A1c", decisive, indet, witness)

    # A.2 reflexivity/transitivity of le_fin on the harvested pool (the
    # quasi-order requirement), spot-checked exhaustively at this scale.
    witness = None
    decisive = 0
    for a in pool:
        decisive += 1
        if not binding.le_fin(a, a):
            witness = {"a": binding.payload(a), "violates": "reflexivity"}
            break
    if witness is None:
        rel = [(a, b) for a in pool for b in pool if binding.le_fin(a, b)]
        le = {(binding.sort_key(a), binding.sort_key(b)) for a, b in rel}
        for a, b in rel:
            for c in pool:
                decisive += 1
                if (binding.sort_key(b), binding.sort_key(c)) in le and \
                        (binding.sort_key(a), binding.sort_key(c)) not in le:
                    witness = {"a": binding.payload(a), "b": binding.payload(b),
                               "c": binding.payload(c),
                               "violates": "transitivity"}
                    break
            if witness:
                break
    _clause(report, "A2-quasiorder", decisive, 0, witness)

    # A.2(a): predecessor sets under le_fin are finite.  Within a truncation
    # everything in sight is finite, so only the harvested universe is counted.
    counts = {binding.sort_key(b): sum(1 for a in pool if binding.le_fin(a, b))
              for b in pool}
    _clause(report, "A2a", len(counts), 0, None,
            note="finiteness is not refutable at finite truncation; "
                 "predecessor counts over the harvested pool recorded")

    # A.2(b): A <= B iff every r_n(A) sits le_fin-below some r_m(B).
    decisive = indet = 0
    witness = None
    for A in sample:
        for B in sample:
            member = binding.member_le(A, B)
            failing_n = None
            for n in range(A.depth + 1):
                if not any(binding.le_fin(A.approximation(n), B.approximation(m))
                           for m in range(B.depth + 1)):
                    failing_n = n
                    break
            componentwise = failing_n is None
            decisive += 1
            if member != componentwise:
                witness = {"A": binding.member_payload(A),
                           "B": binding.member_payload(B),
                           "member_le": member, "failing_n": failing_n}
                break
        if witness:
            break
    _clause(report, "A2b", decisive, indet, witness)

    # A.2(c): a initial segment of b and b le_fin c give a prefix d of c
    # with a le_fin d.
    decisive = indet = 0
    witness = None
    for b in pool:
        prefixes = [binding.restrict(b, m) for m in range(binding.length(b))]
        for c in pool:
            if not binding.le_fin(b, c):
                continue
            for a in prefixes:
                decisive += 1
                if not any(binding.le_fin(a, binding.restrict(c, m))
                           for m in range(binding.length(c) + 1)):
                    witness = {"a": binding.payload(a), "b": binding.payload(b),
                               "c": binding.payload(c)}
                    break
            if witness:
                break
        if witness:
            break
    _clause(report, "A2c", decisive, indet, witness)

    # A.3(a): finite depth makes [a, A] nonempty for every A below B agreeing
    # with B up to that depth.  A genuine counterexample is a failing to embed
    # at its own length; running out of extension room is depth-limited.
    decisive = indet = 0
    witness = None
    for B in sample:
        for a in pool:
            d = depth_of(binding, a, B)
            if not d.is_finite:
                continue
            for A in sample:
                if not binding.member_le(A, B):
                    continue
                if d.value > A.depth or \
                        A.approximation(d.value) != B.approximation(d.value):
                    continue
                if not binding.extensions(a, binding.length(a), A.top):
                    witness = {"a": binding.payload(a),
                               "A": binding.member_payload(A),
                               "B": binding.member_payload(B)}
                    break
                full = True
                for n in range(binding.length(a) + 1, A.depth + 1):
                    if not binding.extensions(a, n, A.top):
                        full = False
                        break
                if full:
                    decisive += 1
                else:
                    indet += 1
            if witness:
                break
        if witness:
            break
    _clause(report, "A3a", decisive, indet, witness,
            note="emptiness above the length of a is depth-limited")

    # A.3(b): inside [a, A] some A' below B refines the cone.  Existential:
    # verified via the canonical paste witness or another sample member;
    # absence within truncation is indeterminate, never a counterexample.
    decisive = indet = 0
    for A in sample:
        for B in sample:
            if not binding.member_le(A, B):
                continue
            for a in pool:
                if not binding.extensions(a, binding.length(a), A.top):
                    continue
                d = depth_of(binding, a, B)
                if not d.is_finite:
                    continue
                prefix = B.approximation(d.value)
                candidates = []
                pasted = binding.paste(prefix, A.top)
                if pasted is not None and binding.length(pasted) >= 1:
                    candidates.append(pasted)
                candidates.extend(
                    C.top for C in sample
                    if binding.member_le(C, B) and d.value <= C.depth
                    and C.approximation(d.value) == prefix)
                found = False
                for top in candidates:
                    if not binding.extensions(a, binding.length(a), top):
                        continue
                    limit = min(binding.length(top), A.depth)
                    if all(set(map(binding.sort_key,
                                   binding.extensions(a, n, top)))
                           <= set(map(binding.sort_key,
                                      binding.extensions(a, n, A.top)))
                           for n in range(binding.length(a), limit + 1)):
                        found = True
                        break
                if found:
                    decisive += 1
                else:
                    indet += 1
    _clause(report, "A3b", decisive, indet, None,
            note="existential clause; unfound witnesses are depth-limited")

    return report


def check_A4(binding: SpaceBinding, a, B: TruncatedMember,
             predicate: Callable, node_cap: int = DEFAULT_NODE_CAP):
    """Pigeonhole search: a member A below B, agreeing with B up to
    depth_B(a), on which the one-step extensions of ``a`` land entirely
    inside or entirely outside the predicate.

    Depth-first search over chains of approximations extending r_n(B) inside
    B.  A chain is pruned as soon as its visible extension set of ``a`` is
    two-colored; extension sets only grow along a chain, so the pruning
    loses no witness.  Returned is the first chain, in the deterministic
    depth-first order (children by canonical payload), that has a nonempty
    one-colored extension set and no compatible proper extension -- the
    deepest witness along the least branch.  The predicate must be pure; its
    values are memoized per call.
    """
    binding.check_member(B)
    d = depth_of(binding, a, B)
    if not d.is_finite:
        raise PreconditionViolated("depth of a below B is unbounded")
    root = B.approximation(d.value)
    target = binding.length(a) + 1
    budget = [node_cap]
    cache = {}

    def verdict(b):
        if b not in cache:
            cache[b] = bool(predicate(b))
        return cache[b]

    def side_of(top):
        ext = binding.extensions(a, target, top)
        if not ext:
            return None, True
        seen = set()
        for b in ext:
            seen.add(verdict(b))
            if len(seen) > 1:
                return None, False
        return ("inside" if seen.pop() else "outside"), True

    WITNESS, EXHAUSTED, INCOMPATIBLE, BUDGET = range(4)

    def dfs(top):
        budget[0] -= 1
        if budget[0] < 0:
            return BUDGET, None
        side, compatible = side_of(top)
        if not compatible:
            return INCOMPATIBLE, None
        children = binding.extensions(top, binding.length(top) + 1, B.top) \
            if binding.length(top) < B.depth else []
        compatible_child = False
        for child in children:
            status, w = dfs(child)
            if status == WITNESS:
                return WITNESS, w
            if status == BUDGET:
                return BUDGET, None
            if status == EXHAUSTED:
                compatible_child = True
        if not compatible_child and side is not None and \
                binding.length(top) >= 1:
            return WITNESS, A4Witness(binding.truncate(top), side)
        return EXHAUSTED, None

    status, w = dfs(root)
    if status == WITNESS:
        return w
    return NotFoundWithinTruncation(
        "budget-exhausted" if status == BUDGET else "search-exhausted")


def almost_reduces(binding: SpaceBinding, Y: TruncatedMember,
                   X: TruncatedMember):
    """Almost-reduction verdict: Holds(a) when some approximation a inside Y
    has every assessable basic-open extension below Y also below X; otherwise
    FailsUpToDepth.

    Extensions reaching past X's truncation are skipped rather than counted
    as violations -- the verdict speaks only about the visible fragment.
    Witness candidates are tried by (length, canonical payload), so the
    least witness is returned.
    """
    binding.check_member(Y)
    binding.check_member(X)
    horizon = min(Y.depth, X.depth)
    for a in _harvest(binding, [Y]):
        if not binding.le_fin(a, X.top):
            continue
        ok = True
        for n in range(binding.length(a), horizon + 1):
            inside_x = set(map(binding.sort_key,
                               binding.extensions(a, n, X.top)))
            for b in binding.extensions(a, n, Y.top):
                if binding.sort_key(b) in inside_x:
                    continue
                if binding.within_range(b, X.top):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return Holds(binding.payload(a))
    return FailsUpToDepth(horizon)
