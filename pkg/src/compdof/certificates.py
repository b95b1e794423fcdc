"""
Greedy certificate sets for the cut-set DoF bound.

A certificate is a transmitter set ``S`` with ``|C_S| <= K - |S|``; it
proves ``B <= K - |S|`` on its own. The constructors below grow such a set
one transmitter at a time:

* the basis picks a transmitter carrying at most ``M`` messages, which
  exists by counting incidences;
* each general step keeps ``|C_S| <= (M - 1)|S| + 1``;
* for ``M = 3`` a second phase keeps ``|C_S| <= |S| + (K + 1)/4 + 1``.

Every choice takes the smallest feasible transmitter index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .assignment import MessageAssignment, require_valid
from .errors import PreconditionError
from .expansion import _check_indices, mask_to_set


@dataclass(frozen=True)
class TraceStep:
    added: int
    carried_after: int


@dataclass(frozen=True)
class GreedyTrace:
    steps: tuple
    final_set: frozenset
    final_carried: int


@dataclass(frozen=True)
class CertificateSet:
    set_s: frozenset
    carried: int
    implied_bound: int
    trace: GreedyTrace
    kind: str


def _set_mask(s):
    return sum(1 << (j - 1) for j in s)


def _carried_mask(tx, s_mask):
    out = 0
    j = 0
    while s_mask:
        if s_mask & 1:
            out |= tx[j]
        s_mask >>= 1
        j += 1
    return out


def _first_within(tx, s_mask, carried, bound):
    """Smallest transmitter outside ``s_mask`` whose addition keeps |C| <= bound."""
    for j in range(len(tx)):
        if (s_mask >> j) & 1:
            continue
        if (carried | tx[j]).bit_count() <= bound:
            return j + 1
    return None


def _basis(tx, m):
    for j, mask in enumerate(tx, start=1):
        if mask.bit_count() <= m:
            return j, mask.bit_count()
    raise AssertionError("no transmitter carries at most m messages; incidence count is inconsistent")


def find_basis(assignment: MessageAssignment) -> tuple:
    """Smallest transmitter ``j`` with ``|C_{j}| <= M``, and that count."""
    require_valid(assignment)
    return _basis(assignment.transmitter_masks(), assignment.m)


def _step(tx, s_mask, carried, bound, what):
    j = _first_within(tx, s_mask, carried, bound)
    if j is None:
        raise AssertionError(f"{what}: no transmitter keeps |C| <= {bound}")
    carried |= tx[j - 1]
    return j, carried


def extend_step(assignment: MessageAssignment, a: Iterable[int]) -> tuple:
    """Add one transmitter to ``a`` keeping ``|C| <= (M - 1)(n + 1) + 1``.

    Requires ``M >= 2``, ``n = |a| < K`` and ``|C_a| <= (M - 1)n + 1``.
    Returns ``(b, TraceStep)``.
    """
    require_valid(assignment)
    k, m = assignment.k, assignment.m
    a = _check_indices(k, a)
    n = len(a)
    if m < 2:
        raise PreconditionError(f"extend_step needs M >= 2, got M={m}")
    if n >= k:
        raise PreconditionError(f"|a|={n} must be smaller than K={k}")
    tx = assignment.transmitter_masks()
    s_mask = _set_mask(a)
    carried = _carried_mask(tx, s_mask)
    if carried.bit_count() > (m - 1) * n + 1:
        raise PreconditionError(
            f"|C_a|={carried.bit_count()} exceeds (M-1)n+1={(m - 1) * n + 1}"
        )
    j, carried = _step(tx, s_mask, carried, (m - 1) * (n + 1) + 1, "extend_step")
    return a | {j}, TraceStep(j, carried.bit_count())


def extend_step_m3(assignment: MessageAssignment, a: Iterable[int], k_param: int | None = None) -> tuple:
    """Second-phase step for ``M = 3``: keep ``|C| <= (n + 1) + (K + 1)/4 + 1``.

    ``k_param`` is the ``K`` entering ``(K + 1)/4`` and defaults to the
    assignment's ``k``. Requires ``(K + 1)/4 <= n < K`` and
    ``|C_a| <= n + (K + 1)/4 + 1``.
    """
    require_valid(assignment)
    k, m = assignment.k, assignment.m
    if m != 3:
        raise PreconditionError(f"extend_step_m3 needs M=3, got M={m}")
    kp = k if k_param is None else k_param
    if (kp + 1) % 4:
        raise PreconditionError(f"(K+1)/4 must be an integer, got K={kp}")
    q = (kp + 1) // 4
    a = _check_indices(k, a)
    n = len(a)
    if n < q:
        raise PreconditionError(f"n={n} < (K+1)/4={q}")
    if n >= k:
        raise PreconditionError(f"|a|={n} must be smaller than K={k}")
    tx = assignment.transmitter_masks()
    s_mask = _set_mask(a)
    carried = _carried_mask(tx, s_mask)
    if carried.bit_count() > n + q + 1:
        raise PreconditionError(f"|C_a|={carried.bit_count()} exceeds n+(K+1)/4+1={n + q + 1}")
    j, carried = _step(tx, s_mask, carried, n + q + 2, "extend_step_m3")
    return a | {j}, TraceStep(j, carried.bit_count())


def truncation_size(k: int, m: int) -> int:
    """Largest ``x <= K`` with ``(x - 1)/M`` an integer."""
    return k - (k - 1) % m


def _grow_general(tx, m, size):
    """Basis plus general steps until ``size`` transmitters; yields (j, carried_mask)."""
    if size == 0:
        return
    j, _ = _basis(tx, m)
    s_mask = 1 << (j - 1)
    carried = tx[j - 1]
    yield j, carried
    for n in range(1, size):
        j, carried = _step(tx, s_mask, carried, (m - 1) * (n + 1) + 1, "general step")
        s_mask |= 1 << (j - 1)
        yield j, carried


def construct_certificate(assignment: MessageAssignment) -> CertificateSet:
    """Certificate of size ``n = (x - 1)/M`` implying ``B <= K - n``.

    ``x`` is ``K`` when ``(K - 1)/M`` is an integer. Otherwise the greedy
    runs on the first ``x`` users only (transmit sets cut to ``1..x``) and
    the remaining ``K - x`` users are charged one unit each, giving
    ``(x(M - 1) + 1)/M + (K - x)``. The trace reports ``|C_S|`` on the full
    assignment.
    """
    require_valid(assignment)
    k, m = assignment.k, assignment.m
    if m < 2:
        raise PreconditionError("construct_certificate needs M >= 2 (with M = 1 the bound is ceil(K/2) directly)")
    x = truncation_size(k, m)
    n = (x - 1) // m
    full = assignment.transmitter_masks()
    low = (1 << x) - 1
    sub = [full[j] & low for j in range(x)]

    steps = []
    s_mask = 0
    for j, _ in _grow_general(sub, m, n):
        s_mask |= 1 << (j - 1)
        steps.append(TraceStep(j, _carried_mask(full, s_mask).bit_count()))

    set_s = mask_to_set(s_mask)
    carried = _carried_mask(full, s_mask).bit_count()
    trace = GreedyTrace(tuple(steps), set_s, carried)
    return CertificateSet(set_s, carried, k - n, trace, "greedy")


def m3_admissible(k: int) -> bool:
    return k >= 7 and k % 8 == 7


def construct_certificate_m3(assignment: MessageAssignment) -> CertificateSet:
    """Two-phase certificate for ``M = 3`` implying ``B <= 5(K + 1)/8``.

    Needs ``K = 7 (mod 8)``. Phase one grows ``x1 = (K + 1)/4`` transmitters
    with general steps; phase two adds ``x2 = (K - 7)/8`` more with the
    ``M = 3`` step, ending at ``|C_S| <= x3 = K - x1 - x2``.
    """
    require_valid(assignment)
    k, m = assignment.k, assignment.m
    if m != 3:
        raise PreconditionError(f"construct_certificate_m3 needs M=3, got M={m}")
    if not m3_admissible(k):
        raise PreconditionError(
            f"K={k} is not admissible: need (K+1)/4 an even positive integer, i.e. K = 7 (mod 8)"
        )
    x1, x2 = (k + 1) // 4, (k - 7) // 8
    x3 = 2 * x1 + 1 + x2
    tx = assignment.transmitter_masks()

    steps = []
    s_mask = 0
    carried = 0
    for j, carried in _grow_general(tx, 3, x1):
        s_mask |= 1 << (j - 1)
        steps.append(TraceStep(j, carried.bit_count()))
    for n in range(x1, x1 + x2):
        j, carried = _step(tx, s_mask, carried, n + x1 + 2, "m3 step")
        s_mask |= 1 << (j - 1)
        steps.append(TraceStep(j, carried.bit_count()))

    set_s = mask_to_set(s_mask)
    trace = GreedyTrace(tuple(steps), set_s, carried.bit_count())
    return CertificateSet(set_s, carried.bit_count(), x3, trace, "two_phase_m3")


def m3_padded_bound(k: int) -> tuple:
    """Nearest admissible ``K' <= K`` and the bound ``5(K'+1)/8 + (K - K')``."""
    if k < 7:
        raise PreconditionError(f"no admissible K' <= {k}; the smallest is 7")
    kp = k - (k - 7) % 8
    return kp, 5 * (kp + 1) // 8 + (k - kp)


def general_cap(k: int, m: int) -> Fraction:
    """``(K(M - 1) + M + 1)/M``, the bound valid for every ``M >= 2`` assignment."""
    return Fraction(k * (m - 1) + m + 1, m)


def check_counting_inequalities(k: int, m: int, n: int, s_size: int, variant: str = "general") -> bool:
    """Evaluate the counting inequality behind a greedy step.

    ``general``: ``M(K - s) < (K - n)((M - 1)(n + 1) + 2 - s)`` under
    ``K >= (M - 1)(n + 1) + 1``, ``M >= 2``, ``0 <= s <= (M - 1)n + 1``.

    ``m3``: ``3(K - s) < (K - n)(n + (K + 1)/4 + 3 - s)`` under ``M = 3``,
    ``(K + 1)/4 <= n``, ``K > n + (K + 1)/4 + 2``, ``0 <= s <= n + (K + 1)/4 + 1``.

    Inputs outside these ranges raise :class:`PreconditionError`.
    """
    if n < 0 or s_size < 0:
        raise PreconditionError("n and s must be nonnegative")
    if variant == "general":
        if m < 2:
            raise PreconditionError(f"M={m} < 2")
        if k < (m - 1) * (n + 1) + 1:
            raise PreconditionError(f"K={k} < (M-1)(n+1)+1={(m - 1) * (n + 1) + 1}")
        if s_size > (m - 1) * n + 1:
            raise PreconditionError(f"s={s_size} > (M-1)n+1={(m - 1) * n + 1}")
        return m * (k - s_size) < (k - n) * ((m - 1) * (n + 1) + 2 - s_size)
    if variant == "m3":
        if m != 3:
            raise PreconditionError(f"m3 variant needs M=3, got {m}")
        if (k + 1) % 4:
            raise PreconditionError(f"(K+1)/4 is not an integer for K={k}")
        q = (k + 1) // 4
        if n < q:
            raise PreconditionError(f"n={n} < (K+1)/4={q}")
        if k <= n + q + 2:
            raise PreconditionError(f"K={k} <= n+(K+1)/4+2={n + q + 2}")
        if s_size > n + q + 1:
            raise PreconditionError(f"s={s_size} > n+(K+1)/4+1={n + q + 1}")
        return 3 * (k - s_size) < (k - n) * (n + q + 3 - s_size)
    raise ValueError(f"unknown variant {variant!r}")


def admissible_grid(variant: str, k_values: Iterable[int], m_values: Iterable[int] = (3,)) -> Iterator[tuple]:
    """Every admissible ``(k, m, n, s)`` for :func:`check_counting_inequalities`."""
    m_values = tuple(m_values)
    for k in k_values:
        if variant == "general":
            for m in m_values:
                n = 0
                while k >= (m - 1) * (n + 1) + 1:
                    for s in range(0, (m - 1) * n + 2):
                        yield k, m, n, s
                    n += 1
        elif variant == "m3":
            if (k + 1) % 4:
                continue
            q = (k + 1) // 4
            for n in range(q, k):
                if k <= n + q + 2:
                    break
                for s in range(0, n + q + 2):
                    yield k, 3, n, s
        else:
            raise ValueError(f"unknown variant {variant!r}")
