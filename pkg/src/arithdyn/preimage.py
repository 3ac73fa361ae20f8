"""Exact preimage enumeration where finite-fibre structure permits.

Three regimes:

* expansive functions (f(n) >= n pointwise) have f^-1(m) inside {1..m}, so
  a scan is complete;
* Euler's phi is finite fibre with an explicit (astronomical) containment
  bound; enumeration uses the divisor-driven recursive method instead, and
  the bound stays available as a checkable certificate;
* Omega, omega and d_l contain all primes in one fibre and admit only
  witness lists, never complete enumerations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_CONFIG, ToolConfig
from .arithfun import (
    Family, FunctionId, PHI, scalar_value, value_table,
)
from .factorint import (
    BudgetExceeded, FactoredNatural, factored_range, is_prime, nth_prime,
    primes_upto,
)


class NotFiniteFibre(Exception):
    """Raised when a complete fibre enumeration is impossible in principle."""


class NotExpansive(Exception):
    """Raised when the scan-to-m method is applied to a non-expansive f."""


COMPLETE = "COMPLETE"
BOUNDED_SEARCH = "BOUNDED_SEARCH"


@dataclass(frozen=True)
class PreimageResult:
    target: int
    members: tuple[int, ...]
    completeness: str
    search_bound: Optional[int] = None

    def __post_init__(self):
        if self.completeness not in (COMPLETE, BOUNDED_SEARCH):
            raise ValueError(f"bad completeness {self.completeness!r}")
        if (self.completeness == BOUNDED_SEARCH) != (self.search_bound is not None):
            raise ValueError("BOUNDED_SEARCH results carry their bound")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be sorted and duplicate-free")


def is_expansive_family(f: FunctionId) -> bool:
    """Families with f(n) >= n for all n (so fibres live in {1..m})."""
    if f.family in (Family.GENERALIZED_PSI, Family.SIGMA):
        return True
    return f.family is Family.JORDAN and f.param >= 2


def preimage_expansive(f: FunctionId, m: int,
                       config: ToolConfig = DEFAULT_CONFIG) -> PreimageResult:
    """Complete fibre f^-1(m) for expansive f, by scanning 1..m."""
    if not is_expansive_family(f):
        raise NotExpansive(f"{f} is not in the expansive set")
    if m < 1:
        raise ValueError("m >= 1")
    members = [1] if m == 1 else []
    for n, pps in factored_range(m, config=config):
        v = scalar_value(f, pps)
        if v < n:
            raise NotExpansive(f"{f}({n}) = {v} < {n}")  # pragma: no cover
        if v == m:
            members.append(n)
    return PreimageResult(m, tuple(members), COMPLETE)


def preimage_bounded(f: FunctionId, m: int, bound: int,
                     config: ToolConfig = DEFAULT_CONFIG) -> PreimageResult:
    """Members of f^-1(m) found below `bound`; never claimed complete."""
    members = [1] if m == 1 else []
    for n, pps in factored_range(bound, config=config):
        if scalar_value(f, pps) == m:
            members.append(n)
    return PreimageResult(m, tuple(members), BOUNDED_SEARCH, bound)


def phi_bound(m: int, config: ToolConfig = DEFAULT_CONFIG) -> FactoredNatural:
    """The containment certificate for phi^-1(m): every x with phi(x) = m
    divides (hence is at most) prod of p^(floor(log2 m) + 1) over p <= m+1."""
    if m < 1:
        raise ValueError("m >= 1")
    exponent = m.bit_length()  # floor(log2 m) + 1
    return FactoredNatural((p, exponent) for p in primes_upto(m + 1, config))


def inverse_phi(m: int, config: ToolConfig = DEFAULT_CONFIG) -> PreimageResult:
    """Complete enumeration of phi^-1(m) by the divisor-driven recursion.

    Candidate prime powers p^a contribute (p-1)p^(a-1) to the totient; a
    value x with phi(x) = m is a coprime product of candidates whose
    contributions multiply to exactly m.
    """
    if m < 1:
        raise ValueError("m >= 1")
    if m > config.inverse_phi_budget:
        raise BudgetExceeded(f"inverse_phi target {m} over budget")
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    candidates: list[tuple[int, list[tuple[int, int]]]] = []
    for d in divisors:
        p = d + 1
        if not is_prime(p):
            continue
        powers = []
        tot, pw = d, p
        while m % tot == 0:
            powers.append((tot, pw))
            tot *= p
            pw *= p
        candidates.append((p, powers))
    candidates.sort(key=lambda c: -c[0])  # larger primes first prunes faster

    members: list[int] = []

    def assemble(rem: int, idx: int, acc: int) -> None:
        if rem == 1:
            members.append(acc)
            # no return: 2^1 contributes phi(2) = 1 and may still be appended
        for j in range(idx, len(candidates)):
            p, powers = candidates[j]
            if rem % (p - 1) != 0:
                continue
            for tot, pw in powers:
                if rem % tot == 0:
                    assemble(rem // tot, j + 1, acc * pw)
                else:
                    break

    assemble(m, 0, 1)
    return PreimageResult(m, tuple(sorted(members)), COMPLETE)


def nonfinite_fibre_witness(f: FunctionId, target: int, count: int,
                            config: ToolConfig = DEFAULT_CONFIG) -> list[int]:
    """`count` distinct fibre members certifying f^-1(target) beats any
    finite bound: all primes sit in omega^-1(1), Omega^-1(1) and d_k^-1(k)."""
    expected = {
        Family.BIG_OMEGA: 1,
        Family.SMALL_OMEGA: 1,
        Family.DIVISOR_COUNT: f.param,
    }.get(f.family)
    if expected is None:
        raise NotFiniteFibre(f"{f} has no catalogued infinite fibre")
    if target != expected:
        raise ValueError(f"the catalogued infinite fibre of {f} sits over {expected}")
    if count < 1:
        raise ValueError("count >= 1")
    return [nth_prime(i, config) for i in range(1, count + 1)]


def complete_preimage(f: FunctionId, m: int,
                      config: ToolConfig = DEFAULT_CONFIG) -> tuple[int, ...]:
    """Complete fibre for functions that admit one; raises otherwise."""
    if f == PHI:
        return inverse_phi(m, config).members
    if is_expansive_family(f):
        return preimage_expansive(f, m, config).members
    if f.family in (Family.BIG_OMEGA, Family.SMALL_OMEGA, Family.DIVISOR_COUNT):
        raise NotFiniteFibre(f"{f} is not finite fibre")
    raise NotFiniteFibre(f"no complete enumeration method for {f}")


def preimage_table(f: FunctionId, bound: int,
                   config: ToolConfig = DEFAULT_CONFIG) -> list[list[int]]:
    """pre[y] = ascending x <= bound with f(x) = y, for y <= bound.

    For expansive f this is the complete fibre of every y <= bound.
    """
    table = value_table(f, bound, config)
    pre: list[list[int]] = [[] for _ in range(bound + 1)]
    for x in range(1, bound + 1):
        v = table[x]
        if v <= bound:
            pre[v].append(x)
    return pre
