"""
Neighbourhood sizes, expansion profiles and the cut-set DoF bound.

For a set ``S`` of transmitters, ``C_S`` is the set of messages known to at
least one member of ``S``; in the transmitter/message bipartite graph it is
the neighbourhood ``N(S)``. The bound computed here is

    B = min over S of max(|C_S|, K - |S|),

and the expansion profile ``e(i)`` is the smallest ``|C_S|`` over sets with
``|S| = i``, so that ``B = min_i max(K - i, e(i))``.

Exact computations enumerate all ``2**K`` transmitter subsets as integer
masks, building every neighbourhood from a smaller one with a single OR.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Optional

import numpy as np

from ._rng import substream
from .assignment import MessageAssignment, require_valid
from .errors import (
    BudgetExceededError,
    IndexRangeError,
    MalformedProfileError,
    UnderdeterminedError,
)

EXACT_CAP = 24
RANK_RTOL = 1e-9


@dataclass(frozen=True)
class ExpansionProfile:
    """Minimum neighbourhood size per transmitter-subset cardinality.

    ``e[i]`` for ``i = 0..k``. In ``sampled`` mode each entry is an upper
    estimate of the exact value.
    """

    k: int
    e: tuple
    mode: str = "exact"
    samples_per_size: Optional[int] = None

    def candidates(self) -> tuple:
        """``max(K - i, e[i])`` for every cardinality ``i``."""
        return tuple(max(self.k - i, ei) for i, ei in enumerate(self.e))


@dataclass(frozen=True)
class BoundResult:
    value: int
    witness_set: frozenset
    i_min: int
    mode: str = "exact"


def _check_indices(k, s, what="transmitter"):
    s = frozenset(int(x) for x in s)
    bad = sorted(x for x in s if not 1 <= x <= k)
    if bad:
        raise IndexRangeError(f"{what} indices outside 1..{k}: {bad}")
    return s


def carried_messages(assignment: MessageAssignment, s: Iterable[int]) -> frozenset:
    """Messages carried by at least one transmitter in ``s`` (the set ``C_S``)."""
    s = _check_indices(assignment.k, s)
    return frozenset(i for i, t in enumerate(assignment.transmit_sets, start=1) if t & s)


def mask_to_set(mask: int) -> frozenset:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


def subset_neighbourhoods(assignment: MessageAssignment):
    """Neighbourhood size and subset size for every transmitter mask.

    Returns ``(carried, sizes)``, two ``uint8`` arrays of length ``2**K``
    indexed by mask (bit ``j - 1`` set means transmitter ``j`` is in the set).
    """
    k = assignment.k
    tx = assignment.transmitter_masks()
    nb = np.zeros(1 << k, dtype=np.uint32)
    for j in range(k):
        half = 1 << j
        np.bitwise_or(nb[:half], np.uint32(tx[j]), out=nb[half : 2 * half])
    carried = np.bitwise_count(nb)
    sizes = np.bitwise_count(np.arange(1 << k, dtype=np.uint32))
    return carried, sizes


def _check_cap(k, cap):
    if k > cap:
        raise BudgetExceededError(
            f"exact enumeration is capped at K={cap} (got K={k}); use sampled mode instead"
        )


def _exact_profile(assignment):
    carried, sizes = subset_neighbourhoods(assignment)
    e = np.full(assignment.k + 1, assignment.k, dtype=np.int64)
    np.minimum.at(e, sizes, carried)
    return tuple(int(x) for x in e)


def _sampled_profile(assignment, samples, seed):
    k = assignment.k
    adj = assignment.biadjacency()
    tx = assignment.transmitter_masks()
    raw = [0]
    for i in range(1, k + 1):
        if comb(k, i) <= samples:
            # fewer subsets than the sample budget: enumerate them all
            best = k
            for c in combinations(range(k), i):
                mask = 0
                for j in c:
                    mask |= tx[j]
                best = min(best, mask.bit_count())
            raw.append(best)
            continue
        rng = substream(seed, i)
        picks = np.argsort(rng.random((samples, k)), axis=1)[:, :i]
        sizes = adj[picks].any(axis=1).sum(axis=1)
        raw.append(int(sizes.min()))
    # Suffix minima restore monotonicity; each entry still dominates the exact e.
    e = list(raw)
    for i in range(k - 1, -1, -1):
        e[i] = min(e[i], e[i + 1])
    return tuple(e)


def expansion_profile(
    assignment: MessageAssignment,
    mode: str = "exact",
    samples_per_size: int = 1000,
    seed: int = 0,
    cap: int = EXACT_CAP,
) -> ExpansionProfile:
    """Compute ``e(0..K)`` exactly or by random sampling of subsets.

    Sampled mode takes the minimum over ``samples_per_size`` uniform subsets
    of each size, so every entry is an upper estimate. Sizes with at most
    ``samples_per_size`` subsets are enumerated outright.
    """
    require_valid(assignment)
    if mode == "exact":
        _check_cap(assignment.k, cap)
        return ExpansionProfile(assignment.k, _exact_profile(assignment), "exact")
    if mode != "sampled":
        raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    if samples_per_size < 1:
        raise ValueError("samples_per_size must be positive")
    e = _sampled_profile(assignment, int(samples_per_size), seed)
    return ExpansionProfile(assignment.k, e, "sampled", int(samples_per_size))


def _bit_reverse(masks, k):
    rev = np.zeros_like(masks)
    for b in range(k):
        rev |= ((masks >> b) & 1) << (k - 1 - b)
    return rev


def dof_upper_bound(assignment: MessageAssignment, cap: int = EXACT_CAP) -> BoundResult:
    """Exact ``B = min_S max(|C_S|, K - |S|)`` with a witness set.

    Among optimal sets the witness has the fewest transmitters, then the
    lexicographically smallest sorted index tuple.
    """
    require_valid(assignment)
    k = assignment.k
    _check_cap(k, cap)
    carried, sizes = subset_neighbourhoods(assignment)
    cand = np.maximum(carried.astype(np.int16), k - sizes.astype(np.int16))
    value = int(cand.min())
    hits = np.flatnonzero(cand == value).astype(np.int64)
    i_min = int(sizes[hits].min())
    hits = hits[sizes[hits] == i_min]
    # For equal-size sets, the lexicographically smallest tuple is the one with
    # the largest mask once transmitter 1 is made the most significant bit.
    best = int(hits[np.argmax(_bit_reverse(hits, k))])
    return BoundResult(value, mask_to_set(best), i_min, "exact")


def i_min_of_profile(profile: ExpansionProfile) -> tuple:
    """Smallest minimiser of ``max(K - i, e[i])`` and the minimum itself."""
    k, e = profile.k, tuple(profile.e)
    if len(e) != k + 1:
        raise MalformedProfileError(f"profile for K={k} needs {k + 1} entries, got {len(e)}")
    if e[0] != 0:
        raise MalformedProfileError(f"e[0] must be 0, got {e[0]}")
    if any(x < 0 or x > k for x in e):
        raise MalformedProfileError(f"entries must lie in 0..{k}: {e}")
    if any(a > b for a, b in zip(e, e[1:])):
        raise MalformedProfileError(f"profile is not non-decreasing: {e}")
    cands = profile.candidates()
    value = min(cands)
    return cands.index(value), value


def numerical_rank(a, rtol: float = RANK_RTOL) -> int:
    """Rank by Gaussian elimination with scaled partial pivoting.

    A pivot counts only if it exceeds ``rtol`` times the largest entry of
    ``a`` in magnitude.
    """
    a = np.array(a, dtype=float, copy=True)
    rows, cols = a.shape
    if a.size == 0:
        return 0
    tol = rtol * np.abs(a).max()
    scale = np.abs(a).max(axis=1)
    scale[scale == 0] = 1.0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c]) / scale[r:]))
        if abs(a[p, c]) <= tol:
            continue
        a[[r, p]] = a[[p, r]]
        scale[[r, p]] = scale[[p, r]]
        a[r + 1 :] -= np.outer(a[r + 1 :, c] / a[r, c], a[r])
        r += 1
    return r


def reconstruction_check(k: int, s, a, trials: int = 100, seed: int = 0) -> bool:
    """Check that receivers ``a`` can resolve the transmitters outside ``s``.

    For each trial a ``k x k`` channel matrix with i.i.d. standard normal
    entries is drawn; the rows of receivers in ``a`` restricted to the
    columns of transmitters outside ``s`` must have full column rank.
    """
    s = _check_indices(k, s)
    a = _check_indices(k, a, "message")
    unknown = [j - 1 for j in range(1, k + 1) if j not in s]
    if len(a) < len(unknown):
        raise UnderdeterminedError(
            f"underdetermined: {len(a)} equations for {len(unknown)} unknowns"
        )
    rows = [i - 1 for i in sorted(a)]
    for t in range(trials):
        h = substream(seed, t).standard_normal((k, k))
        if numerical_rank(h[np.ix_(rows, unknown)]) != len(unknown):
            return False
    return True
