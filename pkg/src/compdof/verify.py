"""
Finite-K verification suites for the bounds, certificates, counting
inequalities and expander experiments.

Each check returns a :class:`CheckResult` with the observed values; a check
passes only if its assertion holds and it finishes inside its time limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil
from typing import Callable, Optional

from .assignment import GeneratorSpec, MessageAssignment, all_assignments, generate
from .certificates import (
    admissible_grid,
    check_counting_inequalities,
    construct_certificate,
    construct_certificate_m3,
    general_cap,
)
from .errors import UnderdeterminedError
from .expansion import (
    carried_messages,
    dof_upper_bound,
    expansion_profile,
    i_min_of_profile,
    reconstruction_check,
)
from .search import epsilon_experiment, epsilon_threshold, eta_out_exact, eta_out_random

SUITES = ("bounds", "certificates", "inequalities", "expanders", "all")


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    observed: str
    elapsed: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.criterion:2d} {self.name}: {self.observed} ({self.elapsed:.2f}s / {self.limit:g}s)"


@dataclass(frozen=True)
class VerificationReport:
    results: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 4


def _run(criterion, name, limit, fn: Callable[[], tuple]) -> CheckResult:
    start = time.perf_counter()
    ok, observed = fn()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok = False
        observed = f"{observed}; exceeded time limit"
    return CheckResult(criterion, name, bool(ok), observed, elapsed, limit)


def five_user_window() -> MessageAssignment:
    """Five users, message ``i`` at transmitters ``i - 1`` and ``i``."""
    return MessageAssignment(5, 2, [{1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}])


def brute_force_bound(a: MessageAssignment) -> int:
    """``min_S max(|C_S|, K - |S|)`` by direct set enumeration."""
    k = a.k
    best = k
    for size in range(k + 1):
        for s in combinations(range(1, k + 1), size):
            s = set(s)
            c = sum(1 for t in a.transmit_sets if t & s)
            best = min(best, max(c, k - size))
    return best


def brute_force_eta_out(k: int, m: int) -> int:
    """Maximum of :func:`brute_force_bound` over every ordered assignment."""
    pool = [frozenset(c) for s in range(1, m + 1) for c in combinations(range(1, k + 1), s)]
    return max(brute_force_bound(MessageAssignment(k, m, sets)) for sets in product(pool, repeat=k))


# ---------------------------------------------------------------------------
# individual criteria
# ---------------------------------------------------------------------------


def check_identity_half(seed=0, trials=None):
    def body():
        bad = [k for k in range(2, 17)
               if dof_upper_bound(generate(GeneratorSpec("identity", k))).value != ceil(k / 2)]
        return not bad, f"B(identity) = ceil(K/2) for K=2..16; mismatches {bad}"

    return _run(1, "identity baseline", 1.0, body)


def check_five_user_cut(seed=0, trials=None):
    def body():
        a = five_user_window()
        c = carried_messages(a, {1, 2})
        cand = max(len(c), a.k - 2)
        b = dof_upper_bound(a).value
        ok = c == {1, 2, 3} and cand == 3 and b <= 3
        return ok, f"C_{{1,2}}={sorted(c)}, candidate={cand}, B={b}"

    return _run(2, "five-user cut set", 1.0, body)


def check_m2_certificates(seed=0, trials=None):
    trials = 200 if trials is None else trials

    def body():
        worst = {}
        for k in (5, 9, 13, 17):
            spec = GeneratorSpec("uniform_random", k, 2)
            half = (k + 1) // 2
            for t in range(trials):
                a = generate(spec, seed, trial=t)
                cert = construct_certificate(a)
                if len(cert.set_s) != (k - 1) // 2 or cert.carried > half or cert.implied_bound != half:
                    return False, f"K={k} trial {t}: certificate {sorted(cert.set_s)} carries {cert.carried}"
                if k <= 13:
                    b = dof_upper_bound(a).value
                    if b > half:
                        return False, f"K={k} trial {t}: B={b} > {half}"
                    worst[k] = max(worst.get(k, 0), b)
        return True, f"{trials} trials per K; certificates hold; max B {worst}"

    return _run(3, "M=2 certificates and (K+1)/2 bound", 120.0, body)


def check_general_cap(seed=0, trials=None):
    trials = 500 if trials is None else trials

    def body():
        count = 0
        for k in (2, 3, 4):
            for a in all_assignments(k, 2):
                count += 1
                if dof_upper_bound(a).value > general_cap(k, 2):
                    return False, f"exhaustive K={k}: {a} exceeds the cap"
        for m in (2, 3, 4):
            ks = list(range(m, 21))
            for t in range(trials):
                k = ks[t % len(ks)]
                kind = "uniform_random" if t % 2 == 0 else "matching_union"
                a = generate(GeneratorSpec(kind, k, m), seed, trial=t)
                count += 1
                b = dof_upper_bound(a).value
                if b > general_cap(k, m):
                    return False, f"{a}: B={b} > {general_cap(k, m)}"
        return True, f"B <= (K(M-1)+M+1)/M on {count} assignments"

    return _run(4, "general-M cap", 300.0, body)


def check_m3_certificates(seed=0, trials=None):
    trials = 200 if trials is None else trials

    def body():
        max_b15 = 0
        for k in (7, 15, 23):
            spec = GeneratorSpec("uniform_random", k, 3)
            target = 5 * (k + 1) // 8
            for t in range(trials):
                a = generate(spec, seed, trial=t)
                cert = construct_certificate_m3(a)
                if cert.carried > target or k - len(cert.set_s) != target or cert.implied_bound != target:
                    return False, f"K={k} trial {t}: carried {cert.carried}, |S|={len(cert.set_s)}"
                if k == 15:
                    b = dof_upper_bound(a).value
                    max_b15 = max(max_b15, b)
                    if b > 10:
                        return False, f"K=15 trial {t}: B={b} > 10"
        return True, f"{trials} trials per K; certificates hold; max B at K=15 is {max_b15}"

    return _run(5, "M=3 certificates and 5(K+1)/8 bound", 300.0, body)


def check_local(seed=0, trials=None):
    trials = 100 if trials is None else trials

    def body():
        k, m = 20, 3
        worst = {}
        for r in (1, 2, 3):
            spec = GeneratorSpec("local_random", k, m, radius=r)
            for t in range(trials):
                b = dof_upper_bound(generate(spec, seed, trial=t)).value
                worst[r] = max(worst.get(r, 0), b)
                if b > ceil(k / 2) + r:
                    return False, f"r={r} trial {t}: B={b} > {ceil(k / 2) + r}"
        return True, f"max B per radius {worst} (limits 10+r)"

    return _run(6, "local cooperation", 300.0, body)


def check_expander(seed=0, trials=None):
    trials = 200 if trials is None else trials

    def body():
        rep = eta_out_random(16, 3, trials, seed, "matching_union")
        return rep.best_value >= 9, f"best B over {trials} matching unions at K=16, M=3: {rep.best_value}"

    return _run(7, "expander shadow", 600.0, body)


def check_epsilon(seed=0, trials=None):
    trials = 100 if trials is None else trials

    def body():
        thr = epsilon_threshold(Fraction(1, 2))
        x = epsilon_experiment(12, 5, Fraction(1, 2), trials, seed)
        return thr == 4.0 and x.successes >= 1, f"threshold(1/2)={thr}; successes {x.successes}/{trials}"

    return _run(8, "full-cooperation threshold", 60.0, body)


def check_grids(seed=0, trials=None):
    def body():
        n_gen = n_m3 = 0
        for g in admissible_grid("general", range(1, 41), range(2, 7)):
            n_gen += 1
            if not check_counting_inequalities(*g, variant="general"):
                return False, f"general inequality fails at (K,M,n,s)={g}"
        for g in admissible_grid("m3", range(7, 64, 8)):
            n_m3 += 1
            if not check_counting_inequalities(*g, variant="m3"):
                return False, f"m3 inequality fails at (K,M,n,s)={g}"
        return True, f"{n_gen} general and {n_m3} m3 grid points true"

    return _run(9, "counting inequality grids", 60.0, body)


def _oracle_sample(seed, t):
    k = 1 + t % 12
    m = 1 + (t // 12) % k
    kind = ("uniform_random", "matching_union", "local_random")[t % 3]
    spec = GeneratorSpec(kind, k, m, radius=1 + t % 3 if kind == "local_random" else None)
    return generate(spec, seed, trial=t)


def check_oracle_equivalence(seed=0, trials=None):
    trials = 500 if trials is None else trials

    def body():
        for t in range(trials):
            a = _oracle_sample(seed, t)
            exact = expansion_profile(a)
            b = dof_upper_bound(a).value
            _, v = i_min_of_profile(exact)
            if b != v:
                return False, f"trial {t}: B={b} but profile gives {v}"
            sampled = expansion_profile(a, "sampled", samples_per_size=8, seed=seed + t)
            if any(s < e for s, e in zip(sampled.e, exact.e)):
                return False, f"trial {t}: sampled {sampled.e} below exact {exact.e}"
        return True, f"{trials} assignments with K<=12 agree; sampled dominates exact"

    return _run(10, "oracle equivalence", 120.0, body)


def check_atlas(seed=0, trials=None):
    def body():
        expected = {(3, 1): 2, (2, 1): 1, (4, 2): 3}
        got = {}
        for (k, m), want in expected.items():
            v = eta_out_exact(k, m).best_value
            oracle = brute_force_eta_out(k, m)
            got[(k, m)] = (v, oracle)
            if not v == oracle == want:
                return False, f"eta_out({k},{m}) = {v}, brute force {oracle}, expected {want}"
        return True, "eta_out (search, brute force): " + ", ".join(f"{km}={vo}" for km, vo in got.items())

    return _run(11, "tiny-K eta_out atlas", 300.0, body)


def check_genericity(seed=0, trials=None):
    trials = 100 if trials is None else trials

    def body():
        ok = reconstruction_check(5, {1, 2}, {1, 2, 3}, trials, seed)
        try:
            reconstruction_check(5, {1, 2}, {1, 2}, trials, seed)
            under = False
        except UnderdeterminedError:
            under = True
        return ok and under, f"full rank in {trials} trials: {ok}; underdetermined rejected: {under}"

    return _run(12, "generic reconstruction", 1.0, body)


CHECKS = {
    1: check_identity_half,
    2: check_five_user_cut,
    3: check_m2_certificates,
    4: check_general_cap,
    5: check_m3_certificates,
    6: check_local,
    7: check_expander,
    8: check_epsilon,
    9: check_grids,
    10: check_oracle_equivalence,
    11: check_atlas,
    12: check_genericity,
}

SUITE_CHECKS = {
    "bounds": (1, 2, 4, 6, 10, 11, 12),
    "certificates": (3, 5),
    "inequalities": (9,),
    "expanders": (7, 8),
    "all": tuple(sorted(CHECKS)),
}


def run_verification(suite: str = "all", seed: int = 0, trials: Optional[int] = None) -> VerificationReport:
    """Run a verification suite; ``trials`` overrides every randomized trial count."""
    if suite not in SUITE_CHECKS:
        raise ValueError(f"suite must be one of {', '.join(SUITES)}")
    return VerificationReport(tuple(CHECKS[c](seed, trials) for c in SUITE_CHECKS[suite]))
