"""Input generators, bound audits and the benchmark harness."""
from __future__ import annotations

import csv
import gc
import io
import json
import statistics
from dataclasses import asdict, dataclass

from .enumerator import count_distinct_as_words, run_enumeration
from .opcore import Sequence

MASK64 = (1 << 64) - 1
CSV_COLUMNS = ("n", "sigma", "distinct", "occurrences", "candidates",
               "maxPerSuffix", "t_build_ms", "t_enum_ms")


class BoundViolation(AssertionError):
    pass


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014); identical output on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform in [0, bound) by rejection."""
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            v = self.next()
            if v < limit:
                return v % bound


def generate_lower_bound_family(sigma: int, k: int) -> Sequence:
    """1^k 2^k ... sigma^k."""
    if sigma < 1 or k < 1:
        raise ValueError("sigma and k must be positive")
    return Sequence(tuple(c for c in range(1, sigma + 1) for _ in range(k)), sigma)


def expected_family_count(sigma: int, k: int) -> int:
    """Claimed number of distinct op-squares in the family string.

    For sigma >= 3 this is the sum over i <= sigma/2 of (sigma*k - 2ik + 1).
    For sigma <= 2 it is floor(k/2), which counts the words 1^(2i); those are
    regular squares, so for sigma = 1 the true count is 0.
    """
    if sigma <= 2:
        return k // 2
    n = sigma * k
    return sum(n - 2 * i * k + 1 for i in range(1, sigma // 2 + 1))


def generate_random(n: int, sigma: int, seed: int) -> Sequence:
    if n < 1 or not 1 <= sigma <= n:
        raise ValueError("need n >= 1 and 1 <= sigma <= n")
    rng = SplitMix64(seed)
    return Sequence(tuple(1 + rng.below(sigma) for _ in range(n)), sigma)


def lower_bound_target(sigma: int, n: int) -> int:
    return sigma * n // 12


def upper_bound_cap(sigma: int, n: int) -> int:
    return n * (64 * sigma + 3)


def per_suffix_prefix_cap(sigma: int) -> int:
    return 64 * sigma + 3


@dataclass
class BoundReport:
    n: int
    sigma: int
    distinctCount: int
    occurrenceCount: int
    candidateTotal: int
    perSuffixCandidateMax: int
    maxPrefixSquares: int
    lowerBoundTarget: int
    upperBoundCap: int
    t_build_ms: float
    t_enum_ms: float
    family_k: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    def csv_row(self) -> list:
        return [self.n, self.sigma, self.distinctCount, self.occurrenceCount,
                self.candidateTotal, self.perSuffixCandidateMax,
                f"{self.t_build_ms:.3f}", f"{self.t_enum_ms:.3f}"]


def _timed_run(s: Sequence):
    # collector pauses would otherwise land at random points, as in timeit
    gc.collect()
    gc.disable()
    try:
        return run_enumeration(s)
    finally:
        gc.enable()


def _build_report(s: Sequence, result, builds: list, enums: list,
                  family_k: int | None) -> BoundReport:
    n, sigma = len(s), s.sigma
    distinct = count_distinct_as_words(result.occurrences, s)
    per_start: dict = {}
    for occ in result.occurrences:
        per_start[occ.start] = per_start.get(occ.start, 0) + 1
    report = BoundReport(
        n=n,
        sigma=sigma,
        distinctCount=distinct,
        occurrenceCount=len(result.occurrences),
        candidateTotal=result.candidate_total,
        perSuffixCandidateMax=result.per_suffix_max,
        maxPrefixSquares=max(per_start.values(), default=0),
        lowerBoundTarget=lower_bound_target(sigma, n),
        upperBoundCap=upper_bound_cap(sigma, n),
        t_build_ms=1000 * statistics.median(builds),
        t_enum_ms=1000 * statistics.median(enums),
        family_k=family_k,
    )
    if report.maxPrefixSquares > per_suffix_prefix_cap(sigma):
        raise BoundViolation(f"a suffix has {report.maxPrefixSquares} op-square prefixes "
                             f"> 64*sigma+3 = {per_suffix_prefix_cap(sigma)}")
    if distinct > report.upperBoundCap:
        raise BoundViolation(f"distinct count {distinct} > n(64 sigma + 3) = {report.upperBoundCap}")
    if family_k is not None and (sigma >= 3 or family_k >= 2) and distinct < report.lowerBoundTarget:
        raise BoundViolation(f"family({sigma},{family_k}): distinct count {distinct} "
                             f"< floor(sigma n / 12) = {report.lowerBoundTarget}")
    return report


def audit_bounds(s: Sequence, family_k: int | None = None, repeat: int = 1) -> BoundReport:
    """Enumerate, count, and check the bound constants.

    ``family_k`` marks s as the lower-bound family string with block length k,
    which switches on the lower-bound check. Timings are medians over
    ``repeat`` runs.
    """
    builds, enums = [], []
    result = None
    for _ in range(max(1, repeat)):
        result = _timed_run(s)
        builds.append(result.t_build)
        enums.append(result.t_enum)
    return _build_report(s, result, builds, enums, family_k)


def sweep(sigmas, ns, family: bool = True, seed: int = 0, repeat: int = 1):
    """One BoundReport per (sigma, n) case, in input order.

    Family cases use k = n // sigma, so the actual length is sigma * k.
    Repetitions are interleaved across cases (round r of every case before
    round r + 1), so a slow stretch on the machine does not land on one size
    only. Reports are produced after all rounds finish.
    """
    cases = []
    for sigma in sigmas:
        for n in ns:
            if family:
                k = max(1, n // sigma)
                cases.append((generate_lower_bound_family(sigma, k), k))
            else:
                cases.append((generate_random(n, sigma, seed), None))
    builds = [[] for _ in cases]
    enums = [[] for _ in cases]
    last = [None] * len(cases)
    for _ in range(max(1, repeat)):
        for c, (s, _k) in enumerate(cases):
            last[c] = _timed_run(s)
            builds[c].append(last[c].t_build)
            enums[c].append(last[c].t_enum)
    for c, (s, k) in enumerate(cases):
        yield _build_report(s, last[c], builds[c], enums[c], k)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def growth_factors(values) -> list:
    return [b / a if a else float("inf") for a, b in zip(values, values[1:])]
