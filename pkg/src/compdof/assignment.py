"""
Message assignments for the K-user interference channel with CoMP.

A message assignment lists, for every receiver ``i`` in ``1..K``, the
transmit set ``T_i`` of transmitters that know message ``W_i``. The
cooperation order ``m`` bounds ``|T_i|``. Equivalently, an assignment is a
bipartite graph between transmitters and messages with message degree at
most ``m``.

Indices exposed by this module are 1-based. Internally, transmitter ``j``
and message ``i`` map to bit ``j - 1`` and bit ``i - 1`` of integer masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from ._rng import substream
from .errors import BudgetExceededError, InfeasibleSpecError, InvalidAssignmentError

GENERATOR_KINDS = (
    "identity",
    "full",
    "successive",
    "local_random",
    "uniform_random",
    "matching_union",
)

CANONICAL_CAP = 6


@dataclass(frozen=True)
class MessageAssignment:
    """K transmit sets under cooperation order ``m``.

    Construction never fails on out-of-range content; use :func:`validate`
    to check the invariants. ``transmit_sets[i - 1]`` is ``T_i``.
    """

    k: int
    m: int
    transmit_sets: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self, "transmit_sets", tuple(frozenset(int(j) for j in t) for t in self.transmit_sets)
        )

    def __str__(self):
        sets = ", ".join("{" + ",".join(map(str, sorted(t))) + "}" for t in self.transmit_sets)
        return f"MessageAssignment(k={self.k}, m={self.m}, T=({sets}))"

    def transmit_set(self, i: int) -> frozenset:
        return self.transmit_sets[i - 1]

    def message_masks(self) -> list[int]:
        """Bitmask of transmitters for each message (entry i-1 encodes T_i)."""
        return [sum(1 << (j - 1) for j in t) for t in self.transmit_sets]

    def transmitter_masks(self) -> list[int]:
        """Bitmask of carried messages for each transmitter (entry j-1 encodes C_{j})."""
        out = [0] * self.k
        for i, t in enumerate(self.transmit_sets):
            for j in t:
                out[j - 1] |= 1 << i
        return out

    def biadjacency(self) -> np.ndarray:
        """Boolean matrix with rows = transmitters, columns = messages."""
        adj = np.zeros((self.k, self.k), dtype=bool)
        for i, t in enumerate(self.transmit_sets):
            for j in t:
                adj[j - 1, i] = True
        return adj

    def with_edge(self, message: int, transmitter: int, m: Optional[int] = None) -> "MessageAssignment":
        """Copy with ``transmitter`` added to ``T_message``."""
        sets = list(self.transmit_sets)
        sets[message - 1] = sets[message - 1] | {transmitter}
        return MessageAssignment(self.k, self.m if m is None else m, sets)


@dataclass(frozen=True)
class Violation:
    index: Optional[int]
    rule: str
    detail: str

    def __str__(self):
        where = "" if self.index is None else f"T_{self.index}: "
        return f"{where}{self.detail} [{self.rule}]"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple = ()

    def __bool__(self):
        return self.valid


def _is_int(x):
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def validate(assignment) -> ValidationReport:
    """Report every violated invariant of ``assignment``.

    Accepts anything with ``k``, ``m`` and ``transmit_sets`` attributes;
    violations are returned as data, never raised.
    """
    found = []
    k = getattr(assignment, "k", None)
    m = getattr(assignment, "m", None)
    sets = getattr(assignment, "transmit_sets", None)

    if not _is_int(k) or k < 1:
        found.append(Violation(None, "k_positive", f"k must be a positive integer, got {k!r}"))
        k = None
    if not _is_int(m) or m < 1:
        found.append(Violation(None, "m_positive", f"m must be a positive integer, got {m!r}"))
        m = None
    if k is not None and m is not None and m > k:
        found.append(Violation(None, "m_le_k", f"m={m} exceeds k={k}"))

    if sets is None:
        found.append(Violation(None, "transmit_sets", "missing transmit sets"))
        return ValidationReport(False, tuple(found))
    sets = list(sets)
    if k is not None and len(sets) != k:
        found.append(
            Violation(None, "count", f"expected {k} transmit sets, got {len(sets)}")
        )

    for i, t in enumerate(sets, start=1):
        t = list(t)
        if not t:
            found.append(Violation(i, "nonempty", f"T_{i} is empty"))
        if m is not None and len(set(t)) > m:
            found.append(Violation(i, "size", f"|T_{i}|={len(set(t))} > m={m}"))
        bad = sorted(j for j in set(t) if not _is_int(j) or k is None or not 1 <= j <= k)
        if bad and k is not None:
            found.append(Violation(i, "range", f"T_{i} has indices outside 1..{k}: {bad}"))

    return ValidationReport(not found, tuple(found))


def require_valid(assignment: MessageAssignment) -> MessageAssignment:
    report = validate(assignment)
    if not report.valid:
        raise InvalidAssignmentError(report)
    return assignment


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of an assignment family.

    ``radius`` applies to ``local_random`` only and ``wraparound`` to
    ``successive`` only; leave them ``None`` otherwise. For ``full`` the
    cooperation order of the result is always ``k``.
    """

    kind: str
    k: int
    m: int = 1
    radius: Optional[int] = None
    wraparound: Optional[bool] = None


def check_spec(spec: GeneratorSpec) -> None:
    """Raise :class:`InfeasibleSpecError` if ``spec`` cannot be generated."""
    if spec.kind not in GENERATOR_KINDS:
        raise InfeasibleSpecError(f"unknown generator kind {spec.kind!r}")
    if not _is_int(spec.k) or spec.k < 1:
        raise InfeasibleSpecError(f"k must be a positive integer, got {spec.k!r}")
    if spec.kind != "full":
        if not _is_int(spec.m) or spec.m < 1:
            raise InfeasibleSpecError(f"m must be a positive integer, got {spec.m!r}")
        if spec.m > spec.k:
            raise InfeasibleSpecError(f"m={spec.m} exceeds k={spec.k}")
    if spec.radius is not None and spec.kind != "local_random":
        raise InfeasibleSpecError(f"radius is only meaningful for local_random, not {spec.kind}")
    if spec.wraparound is not None and spec.kind != "successive":
        raise InfeasibleSpecError(f"wraparound is only meaningful for successive, not {spec.kind}")
    if spec.kind == "local_random":
        if spec.radius is None or not _is_int(spec.radius) or spec.radius < 0:
            raise InfeasibleSpecError(f"local_random needs a radius >= 0, got {spec.radius!r}")
        for i in range(1, spec.k + 1):
            lo, hi = max(1, i - spec.radius), min(spec.k, i + spec.radius)
            if hi < lo:
                raise InfeasibleSpecError(f"empty local window for message {i}", index=i)


def random_subset_upto(rng: np.random.Generator, pool: Sequence[int], m: int) -> frozenset:
    """Uniform draw from the nonempty subsets of ``pool`` with at most ``m`` elements."""
    w = len(pool)
    counts = [comb(w, s) for s in range(1, min(m, w) + 1)]
    u = int(rng.integers(sum(counts)))
    size = 1
    for c in counts:
        if u < c:
            break
        u -= c
        size += 1
    picked = rng.choice(len(pool), size=size, replace=False)
    return frozenset(pool[p] for p in picked)


def random_matchings(k: int, m: int, rng: np.random.Generator) -> list[np.ndarray]:
    """``m`` independent uniform perfect matchings between messages and transmitters.

    Entry ``p[i]`` of each permutation is the 0-based transmitter matched to
    message ``i + 1``.
    """
    return [rng.permutation(k) for _ in range(m)]


def _generate(spec: GeneratorSpec, rng: np.random.Generator) -> MessageAssignment:
    k, m = spec.k, spec.m
    kind = spec.kind
    if kind == "identity":
        sets = [{i} for i in range(1, k + 1)]
    elif kind == "full":
        return MessageAssignment(k, k, [range(1, k + 1)] * k)
    elif kind == "successive":
        if spec.wraparound:
            sets = [{(i - 1 + d) % k + 1 for d in range(m)} for i in range(1, k + 1)]
        else:
            sets = [set(range(i, min(i + m - 1, k) + 1)) for i in range(1, k + 1)]
    elif kind == "local_random":
        r = spec.radius
        sets = [
            random_subset_upto(rng, range(max(1, i - r), min(k, i + r) + 1), m)
            for i in range(1, k + 1)
        ]
    elif kind == "uniform_random":
        pool = range(1, k + 1)
        sets = [random_subset_upto(rng, pool, m) for _ in range(k)]
    else:  # matching_union
        perms = random_matchings(k, m, rng)
        sets = [{int(p[i]) + 1 for p in perms} for i in range(k)]
    return MessageAssignment(k, m, sets)


def generate(spec: GeneratorSpec, seed: int = 0, trial: Optional[int] = None) -> MessageAssignment:
    """Draw an assignment from the family described by ``spec``.

    The result is a deterministic function of ``(spec, seed, trial)``.
    Passing ``trial`` selects an independent substream, which is how
    repeated experiments derive one assignment per trial.
    """
    check_spec(spec)
    rng = substream(seed) if trial is None else substream(seed, trial)
    return _generate(spec, rng)


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def _canonical_rows(k: int, msg_masks: Sequence[int]) -> tuple:
    # Column c of the permuted matrix occupies bit (k - 1 - c), so row-major
    # lexicographic order of sorted rows equals tuple order of sorted ints.
    best = None
    used = [False] * k

    def dfs(depth, prefixes):
        nonlocal best
        shift = k - depth
        bound = tuple(sorted(p << shift for p in prefixes))
        if best is not None and bound > best:
            return
        if depth == k:
            best = bound
            return
        for t in range(k):
            if used[t]:
                continue
            used[t] = True
            dfs(depth + 1, [(p << 1) | ((mm >> t) & 1) for p, mm in zip(prefixes, msg_masks)])
            used[t] = False

    dfs(0, [0] * len(msg_masks))
    return best


def canonical_form(assignment: MessageAssignment, cap: int = CANONICAL_CAP) -> MessageAssignment:
    """Isomorphism-class representative of the transmitter/message graph.

    Returns the relabeling whose adjacency matrix (rows = messages, columns
    = transmitters) is lexicographically smallest over all independent
    permutations of both label sets. Two assignments get equal canonical
    forms iff their bipartite graphs are isomorphic.
    """
    require_valid(assignment)
    k = assignment.k
    if k > cap:
        raise BudgetExceededError(
            f"canonical form is capped at k={cap} (got k={k}); run without deduplication instead"
        )
    rows = _canonical_rows(k, assignment.message_masks())
    sets = [{c + 1 for c in range(k) if (row >> (k - 1 - c)) & 1} for row in rows]
    return MessageAssignment(k, assignment.m, sets)


def all_assignments(k: int, m: int) -> Iterable[MessageAssignment]:
    """Every valid assignment with ``k`` users and cooperation order ``m``."""
    pool = [frozenset(c) for s in range(1, m + 1) for c in combinations(range(1, k + 1), s)]
    for sets in product(pool, repeat=k):
        yield MessageAssignment(k, m, sets)
