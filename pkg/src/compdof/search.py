"""
Search for assignments with a large cut-set bound, and finite-K expander
experiments.

``eta_out`` is the largest bound ``B`` over all assignments with cooperation
order ``m``. Exhaustive search gives it exactly for tiny ``k``; random search
over unions of perfect matchings gives a lower estimate at desk scale.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Optional, Sequence

from ._rng import check_seed
from .assignment import (
    GeneratorSpec,
    MessageAssignment,
    _canonical_rows,
    generate,
    require_valid,
)
from .errors import BudgetExceededError
from .expansion import EXACT_CAP, dof_upper_bound, expansion_profile, subset_neighbourhoods

DEFAULT_ALPHAS = (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2))
EXHAUSTIVE_BUDGET = 60_000
DEDUP_MAX_K = 6
EXPERIMENT_BUDGET = 10**6


@dataclass(frozen=True)
class SearchReport:
    k: int
    m: int
    best_value: int
    best_assignment: MessageAssignment
    method: str
    trials_or_count: int
    seed: Optional[int] = None
    elapsed: float = 0.0
    dedup_hits: Optional[int] = None

    @property
    def ratio(self) -> Fraction:
        """Per-user value ``best_value / k``."""
        return Fraction(self.best_value, self.k)


@dataclass(frozen=True)
class ExpansionExperiment:
    k: int
    m: int
    epsilon: Fraction
    trials: int
    seed: int
    successes: int
    min_ratio_per_trial: tuple
    success_per_trial: tuple = ()


def assignment_space_size(k: int, m: int) -> int:
    """Number of assignments of nonempty transmit sets of size at most ``m``."""
    return sum(comb(k, s) for s in range(1, m + 1)) ** k


def default_exhaustive_cap(m: int) -> int:
    return 6 if m == 1 else 4


def eta_out_exact(
    k: int,
    m: int,
    budget: int = EXHAUSTIVE_BUDGET,
    dedup: bool = True,
    max_k: Optional[int] = None,
) -> SearchReport:
    """Exact ``eta_out(k, m)`` by exhaustive enumeration.

    Transmit sets are enumerated as multisets (``B`` ignores message labels);
    with ``dedup`` the remaining transmitter relabelings are removed through
    canonical forms. ``k`` above ``max_k`` (default 4, or 6 when ``m = 1``)
    is refused outright. ``budget`` caps the number of multisets scanned;
    past it a :class:`BudgetExceededError` carries the partial report with
    ``method="random"``, since it is only a lower estimate.
    """
    if k < 1 or not 1 <= m <= k:
        raise ValueError(f"need 1 <= m <= k, got k={k}, m={m}")
    max_k = default_exhaustive_cap(m) if max_k is None else max_k
    if k > max_k:
        raise BudgetExceededError(
            f"exhaustive search is capped at k={max_k} for m={m}; raise the cap or use random search"
        )
    start = time.perf_counter()
    total = assignment_space_size(k, m)
    dedup = dedup and k <= DEDUP_MAX_K
    pool = [frozenset(c) for s in range(1, m + 1) for c in combinations(range(1, k + 1), s)]

    best_value, best = -1, None
    seen = set()
    hits = 0
    scanned = 0
    for sets in combinations_with_replacement(pool, k):
        if scanned >= budget:
            partial = SearchReport(
                k, m, best_value, best, "random", scanned, None, time.perf_counter() - start, hits
            )
            raise BudgetExceededError(
                f"assignment space has {total} members, over the budget of {budget}", partial=partial
            )
        scanned += 1
        a = MessageAssignment(k, m, sets)
        if dedup:
            key = _canonical_rows(k, a.message_masks())
            if key in seen:
                hits += 1
                continue
            seen.add(key)
        value = dof_upper_bound(a).value
        if value > best_value:
            best_value, best = value, a
    return SearchReport(
        k, m, best_value, best, "exhaustive", total, None, time.perf_counter() - start, hits if dedup else 0
    )


def eta_out_random(
    k: int,
    m: int,
    trials: int,
    seed: int = 0,
    generator: str = "matching_union",
    include: Sequence[MessageAssignment] = (),
    cap: int = EXACT_CAP,
) -> SearchReport:
    """Largest exact ``B`` over ``trials`` random assignments.

    Trial ``t`` uses the independent substream ``(seed, t)``. Assignments in
    ``include`` are scored before the random trials, and ties keep the
    earliest assignment.
    """
    if generator not in ("matching_union", "uniform_random"):
        raise ValueError(f"generator must be matching_union or uniform_random, got {generator!r}")
    check_seed(seed)
    if k > cap:
        raise BudgetExceededError(f"exact bound per trial is capped at K={cap} (got K={k})")
    start = time.perf_counter()
    spec = GeneratorSpec(generator, k, m)

    def candidates():
        yield from include
        for t in range(trials):
            yield generate(spec, seed, trial=t)

    best_value, best = -1, None
    for a in candidates():
        if a.k != k:
            raise ValueError(f"included assignment has k={a.k}, expected {k}")
        value = dof_upper_bound(a, cap=cap).value
        if value > best_value:
            best_value, best = value, a
    return SearchReport(
        k, m, best_value, best, "random", trials + len(include), seed, time.perf_counter() - start
    )


def _nearest_int(x: Fraction) -> int:
    # ties round down so that alpha <= 1/2 never lands above K // 2
    return math.ceil(x - Fraction(1, 2))


def expansion_ratio(
    assignment: MessageAssignment, alphas: Iterable = DEFAULT_ALPHAS, cap: int = EXACT_CAP
) -> dict:
    """``e(i)/i`` with ``i = round(alpha K)`` for each alpha in ``(0, 1/2]``."""
    require_valid(assignment)
    k = assignment.k
    sizes = {}
    for alpha in alphas:
        alpha = Fraction(alpha)
        i = _nearest_int(alpha * k)
        if not 0 < alpha <= Fraction(1, 2) or not 1 <= i <= k // 2:
            raise ValueError(f"alpha={alpha} gives |A|={i}, outside 1..{k // 2}")
        sizes[alpha] = i
    e = expansion_profile(assignment, cap=cap).e
    return {alpha: Fraction(e[i], i) for alpha, i in sizes.items()}


def binary_entropy(p: float) -> float:
    if p in (0, 1):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _fraction_in_open_unit(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return eps


def epsilon_threshold(epsilon) -> float:
    """``2 H(eps) / (-eps log2(1 - eps))``, the union-bound cooperation order threshold.

    Any integer cooperation order strictly above it makes the union-bound
    exponent negative.
    """
    eps = float(_fraction_in_open_unit(epsilon))
    return 2 * binary_entropy(eps) / (-eps * math.log2(1 - eps))


def min_cooperation_order(epsilon) -> int:
    """Smallest integer strictly greater than :func:`epsilon_threshold`."""
    return math.floor(epsilon_threshold(epsilon)) + 1


def min_neighbourhood_of_size(assignment: MessageAssignment, size: int) -> int:
    """Exact ``e(size)`` by enumerating subsets of that size only."""
    k = assignment.k
    if k <= 20:
        carried, sizes = subset_neighbourhoods(assignment)
        return int(carried[sizes == size].min())
    tx = assignment.transmitter_masks()
    best = k
    for c in combinations(tx, size):
        mask = 0
        for t in c:
            mask |= t
        best = min(best, mask.bit_count())
    return best


def epsilon_experiment(
    k: int,
    m: int,
    epsilon,
    trials: int,
    seed: int = 0,
    budget: int = EXPERIMENT_BUDGET,
) -> ExpansionExperiment:
    """Count matching-union graphs in which every ``eps K`` transmitters reach more than ``(1 - eps)K`` messages.

    Each trial checks all ``C(K, eps K)`` transmitter subsets exactly.
    """
    eps = _fraction_in_open_unit(epsilon)
    check_seed(seed)
    size = eps * k
    if size.denominator != 1:
        raise ValueError(f"eps*K = {size} is not an integer")
    size = int(size)
    if comb(k, size) > budget:
        raise BudgetExceededError(
            f"C({k},{size}) = {comb(k, size)} subsets per trial exceeds {budget}; use a smaller K"
        )
    spec = GeneratorSpec("matching_union", k, m)
    ratios, flags = [], []
    for t in range(trials):
        e_size = min_neighbourhood_of_size(generate(spec, seed, trial=t), size)
        flags.append(e_size > k - size)
        ratios.append(Fraction(e_size, size))
    return ExpansionExperiment(k, m, eps, trials, seed, sum(flags), tuple(ratios), tuple(flags))
