"""The catalogue of number-theoretic special functions.

Eight families are supported, every one mapping 1 to 1 by convention
(including the prime-counting ones, whose natural value at 1 would be 0):

* Jordan totients J_k (J_1 is Euler's phi),
* generalized Dedekind psi_k (psi_1 is the classical psi),
* the unitary totient phi*,
* Omega (prime factors with multiplicity) and omega (distinct primes),
* ordered-factorization counts d_l (d_2 is the divisor count d),
* power divisor sums sigma_l.

``evaluate`` uses multiplicative closed forms over factored input and is the
production path; ``oracle_evaluate`` recomputes values straight from the
definitions (tuple counting, ordered-factorization enumeration, divisor
scans) over its own trial-division factorizer, sharing no code with the
closed forms, so the two can check each other.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb, gcd
from typing import Optional, Union

from .config import DEFAULT_CONFIG, ToolConfig
from .factorint import (
    BudgetExceeded, DeferredValue, FactoredNatural, Nat, ONE, OVERFLOW,
    factored_range, factorize, nat_add, to_integer,
)
from .reports import Counterexample, VerificationReport


class Family(enum.Enum):
    JORDAN = "jordan"
    GENERALIZED_PSI = "psi"
    UNITARY_TOTIENT = "phi_star"
    BIG_OMEGA = "Omega"
    SMALL_OMEGA = "omega"
    DIVISOR_COUNT = "d"
    SIGMA = "sigma"


_PARAMETRIC = {Family.JORDAN, Family.GENERALIZED_PSI, Family.DIVISOR_COUNT, Family.SIGMA}
# Families whose values are naturally another factored natural.
MULTIPLICATIVE_VALUE = {Family.JORDAN, Family.GENERALIZED_PSI, Family.UNITARY_TOTIENT}


@dataclass(frozen=True)
class FunctionId:
    family: Family
    param: Optional[int] = None

    def __post_init__(self):
        if self.family in _PARAMETRIC:
            if self.param is None or self.param < 1:
                raise ValueError(f"{self.family.value} needs a parameter >= 1")
            if self.family is Family.DIVISOR_COUNT and self.param < 2:
                raise ValueError("d_l needs l >= 2")
        elif self.param is not None:
            raise ValueError(f"{self.family.value} takes no parameter")

    def __str__(self):
        f, k = self.family, self.param
        if f is Family.JORDAN:
            return "phi" if k == 1 else f"J_{k}"
        if f is Family.GENERALIZED_PSI:
            return "psi" if k == 1 else f"psi_{k}"
        if f is Family.UNITARY_TOTIENT:
            return "phi_star"
        if f is Family.BIG_OMEGA:
            return "Omega"
        if f is Family.SMALL_OMEGA:
            return "omega"
        if f is Family.DIVISOR_COUNT:
            return "d" if k == 2 else f"d_{k}"
        return f"sigma_{k}"


def jordan(k: int) -> FunctionId:
    return FunctionId(Family.JORDAN, k)


def generalized_psi(k: int) -> FunctionId:
    return FunctionId(Family.GENERALIZED_PSI, k)


def divisor_count(l: int) -> FunctionId:
    return FunctionId(Family.DIVISOR_COUNT, l)


def sigma(l: int) -> FunctionId:
    # l >= 1 on purpose: sigma_1 is the classical sum of divisors and the
    # monotone table needs it, even though some statements of the
    # catalogue start at l = 2
    return FunctionId(Family.SIGMA, l)


PHI = jordan(1)
PSI = generalized_psi(1)
PHI_STAR = FunctionId(Family.UNITARY_TOTIENT)
BIG_OMEGA = FunctionId(Family.BIG_OMEGA)
SMALL_OMEGA = FunctionId(Family.SMALL_OMEGA)
D = divisor_count(2)
J2 = jordan(2)
SIGMA1 = sigma(1)


def parse_function(text: str) -> FunctionId:
    """Parse CLI spellings: phi, psi_2, J_3, phi_star, Omega, omega, d_3, sigma_2."""
    t = text.strip()
    plain = {
        "phi": PHI, "psi": PSI, "d": D,
        "phi_star": PHI_STAR, "phi*": PHI_STAR,
        "Omega": BIG_OMEGA, "big_omega": BIG_OMEGA,
        "omega": SMALL_OMEGA, "small_omega": SMALL_OMEGA,
    }
    if t in plain:
        return plain[t]
    for prefix, builder in (("J", jordan), ("psi", generalized_psi),
                            ("d", divisor_count), ("sigma", sigma),
                            ("jordan", jordan)):
        head, sep, tail = t.partition("_")
        if head == prefix and sep and tail.isdigit():
            return builder(int(tail))
    raise ValueError(f"unknown function id {text!r}")


Value = Union[FactoredNatural, int, DeferredValue]


def _require_no_intervals(f: FunctionId, n: FactoredNatural) -> None:
    if n.has_intervals:
        raise ValueError(f"{f} does not evaluate on interval factors")


def _nat_scale(e: Nat, k: int, minus: int) -> Nat:
    """k*e - minus, defined for int e always and deferred e only when k == 1."""
    if isinstance(e, int):
        return k * e - minus
    if k == 1:
        return e.shift(-minus)
    raise BudgetExceeded(f"cannot scale symbolic exponent {e!r} by {k}")


def evaluate(f: FunctionId, n: Union[int, FactoredNatural],
             config: ToolConfig = DEFAULT_CONFIG) -> Value:
    """Exact value of f at n via multiplicative closed forms.

    Multiplicative families return a FactoredNatural; Omega/omega/d_l/sigma_l
    return a plain natural (possibly a DeferredValue when the input carries
    symbolic exponents).  Interval factors are only understood by Omega and
    omega.
    """
    if isinstance(n, int):
        n = factorize(n, config)
    if n.is_one:
        return ONE if f.family in MULTIPLICATIVE_VALUE else 1
    fam, k = f.family, f.param

    if fam is Family.BIG_OMEGA or fam is Family.SMALL_OMEGA:
        total: Nat = 0
        for _, e in n.explicit:
            add = e if fam is Family.BIG_OMEGA else 1
            if isinstance(add, DeferredValue):
                if not isinstance(total, int):
                    raise BudgetExceeded("cannot add two symbolic counts")
                total = add.shift(total)
            else:
                total = nat_add(total, add)
        for lo, hi in n.intervals:
            if isinstance(hi, DeferredValue):
                if not isinstance(total, int):
                    raise BudgetExceeded("cannot add two symbolic counts")
                total = hi.shift(total - lo + 1)
            else:
                total = nat_add(total, hi - lo + 1)
        return total

    _require_no_intervals(f, n)

    if fam is Family.JORDAN or fam is Family.GENERALIZED_PSI:
        sign = -1 if fam is Family.JORDAN else 1
        parts: list[tuple[int, Nat]] = []
        for p, e in n.explicit:
            tail = pow(p, k) + sign  # J_k: p^k - 1, psi_k: p^k + 1
            exp = _nat_scale(e, k, k)  # k*(e-1)
            if isinstance(exp, int):
                if exp > 0:
                    parts.append((p, exp))
            else:
                parts.append((p, exp))
            parts.extend(factorize(tail, config).explicit)
        return FactoredNatural(parts)

    if fam is Family.UNITARY_TOTIENT:
        parts = []
        for p, e in n.explicit:
            if not isinstance(e, int):
                raise BudgetExceeded("phi_star needs explicit exponents")
            if e * p.bit_length() > 140:
                raise BudgetExceeded(f"phi_star factor {p}^{e}-1 too large to factor")
            parts.extend(factorize(pow(p, e) - 1, config).explicit)
        return FactoredNatural(parts)

    if fam is Family.DIVISOR_COUNT:
        deferred = [e for _, e in n.explicit if isinstance(e, DeferredValue)]
        if deferred:
            if k == 2 and len(n.explicit) == 1:
                return deferred[0].shift(1)  # C(e+1, 1) = e + 1
            raise BudgetExceeded("symbolic exponents support d_2 on prime powers only")
        out = 1
        for _, e in n.explicit:
            out *= comb(e + k - 1, k - 1)
        return out

    # sigma_l
    out = 1
    for p, e in n.explicit:
        if not isinstance(e, int):
            raise BudgetExceeded("sigma_l needs explicit exponents")
        if k * (e + 1) * p.bit_length() > config.bit_budget:
            raise BudgetExceeded(f"sigma_{k}({n!r}) exceeds the bit budget")
        pk = pow(p, k)
        out *= (pow(pk, e + 1) - 1) // (pk - 1)
    return out


def evaluate_int(f: FunctionId, n: Union[int, FactoredNatural],
                 config: ToolConfig = DEFAULT_CONFIG) -> int:
    """evaluate() forced to a plain integer (raises past the bit budget)."""
    v = evaluate(f, n, config)
    if isinstance(v, int):
        return v
    if isinstance(v, DeferredValue):
        r = v.resolve(config)
    else:
        r = to_integer(v, config)
    if r is OVERFLOW:
        raise BudgetExceeded(f"{f}({n!r}) exceeds the bit budget")
    return r


# ---------------------------------------------------------------------------
# fast scalar path for bulk sweeps


def scalar_value(f: FunctionId, pps: list[tuple[int, int]]) -> int:
    """f over a small prime-power decomposition, plain ints only."""
    if not pps:
        return 1
    fam, k = f.family, f.param
    out = 1
    if fam is Family.JORDAN:
        for p, a in pps:
            pk = pow(p, k)
            out *= (pk - 1) * pk ** (a - 1)
    elif fam is Family.GENERALIZED_PSI:
        for p, a in pps:
            pk = pow(p, k)
            out *= (pk + 1) * pk ** (a - 1)
    elif fam is Family.UNITARY_TOTIENT:
        for p, a in pps:
            out *= pow(p, a) - 1
    elif fam is Family.BIG_OMEGA:
        out = sum(a for _, a in pps)
    elif fam is Family.SMALL_OMEGA:
        out = len(pps)
    elif fam is Family.DIVISOR_COUNT:
        for _, a in pps:
            out *= comb(a + k - 1, k - 1)
    else:
        for p, a in pps:
            pk = pow(p, k)
            out *= (pow(pk, a + 1) - 1) // (pk - 1)
    return out


def value_table(f: FunctionId, bound: int,
                config: ToolConfig = DEFAULT_CONFIG) -> list[int]:
    """[0, f(1), f(2), ..., f(bound)] computed in one sieve pass."""
    table = [0] * (bound + 1)
    if bound >= 1:
        table[1] = 1
    for n, pps in factored_range(bound, config=config):
        table[n] = scalar_value(f, pps)
    return table


# ---------------------------------------------------------------------------
# oracle: values recomputed from the literal definitions


def _oracle_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _count_coprime_tuples(n: int, k: int) -> int:
    # tuples (s_1..s_k) in {1..n}^k with gcd(s_1,...,s_k,n) = 1; once the
    # running gcd hits 1 every extension qualifies, which keeps this honest
    # counting instead of a closed form while staying feasible
    def rec(depth: int, g: int) -> int:
        if g == 1:
            return n ** (k - depth)
        if depth == k:
            return 0
        return sum(rec(depth + 1, gcd(g, s)) for s in range(1, n + 1))
    return rec(0, n)


def _count_ordered_factorizations(n: int, l: int) -> int:
    if l == 1:
        return 1
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _count_ordered_factorizations(n // d, l - 1)
    return total


def oracle_evaluate(f: FunctionId, n: int,
                    config: ToolConfig = DEFAULT_CONFIG) -> int:
    """f(n) straight from the definitional description (brute force)."""
    if n < 1:
        raise ValueError("oracle domain is n >= 1")
    if n == 1:
        return 1
    fam, k = f.family, f.param
    if fam is Family.JORDAN:
        if n ** k > config.oracle_tuple_budget:
            raise BudgetExceeded(f"J_{k} oracle tuple count {n}^{k} over budget")
        return _count_coprime_tuples(n, k)
    if n > config.oracle_value_budget:
        raise BudgetExceeded(f"oracle input {n} over budget")
    if fam is Family.GENERALIZED_PSI:
        out = n ** k
        for p, _ in _oracle_factor(n):
            out = out // p ** k * (p ** k + 1)
        return out
    if fam is Family.UNITARY_TOTIENT:
        out = 1
        for p, a in _oracle_factor(n):
            out *= p ** a - 1
        return out
    if fam is Family.BIG_OMEGA:
        return sum(a for _, a in _oracle_factor(n))
    if fam is Family.SMALL_OMEGA:
        return len(_oracle_factor(n))
    if fam is Family.DIVISOR_COUNT:
        return _count_ordered_factorizations(n, k)
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


# ---------------------------------------------------------------------------
# identity and monotonicity sweeps


def identity_check_psi_jordan(k: int, n_max: int,
                              config: ToolConfig = DEFAULT_CONFIG) -> VerificationReport:
    """Check psi_k(n) * J_k(n) == J_2k(n) for 1 <= n <= n_max."""
    if k < 1:
        raise ValueError("k >= 1")
    psi_k, j_k, j_2k = generalized_psi(k), jordan(k), jordan(2 * k)
    for n, pps in factored_range(n_max, config=config):
        lhs = scalar_value(psi_k, pps) * scalar_value(j_k, pps)
        rhs = scalar_value(j_2k, pps)
        if lhs != rhs:
            return VerificationReport(
                lemma_id=f"psi-jordan-identity k={k}",
                families_checked=1, depth=n_max, status="FAIL",
                counterexample=Counterexample(None, n, rhs, lhs))
    return VerificationReport(
        lemma_id=f"psi-jordan-identity k={k}",
        families_checked=1, depth=n_max, status="PASS",
        certified_bound=f"psi_{k}*J_{k} = J_{2 * k} verified for n <= {n_max}")


@dataclass(frozen=True)
class MonotoneProfile:
    """Pointwise comparison of f against the identity on 1..bound."""
    function: FunctionId
    bound: int
    fixes_one: bool
    le_violation: Optional[int]      # least n with f(n) > n
    ge_violation: Optional[int]      # least n with f(n) < n
    strict_violation: Optional[int]  # least n > 1 with f(n) <= n

    @property
    def weakly_decreasing(self) -> bool:
        return self.le_violation is None

    @property
    def weakly_increasing(self) -> bool:
        return self.ge_violation is None

    @property
    def strictly_increasing_above_1(self) -> bool:
        return self.strict_violation is None and self.fixes_one


def monotone_profile(f: FunctionId, bound: int,
                     config: ToolConfig = DEFAULT_CONFIG) -> MonotoneProfile:
    le_bad = ge_bad = strict_bad = None
    for n, pps in factored_range(bound, config=config):
        v = scalar_value(f, pps)
        if le_bad is None and v > n:
            le_bad = n
        if ge_bad is None and v < n:
            ge_bad = n
        if strict_bad is None and v <= n:
            strict_bad = n
        if le_bad and ge_bad and strict_bad:
            break
    return MonotoneProfile(f, bound, True, le_bad, ge_bad, strict_bad)


def catalogue_monotone_sweep(bound: int, ks=(1, 2, 3),
                             config: ToolConfig = DEFAULT_CONFIG) -> dict[str, Optional[int]]:
    """One decomposition pass checking every monotonicity hypothesis the
    lemmas need.  Returns {check name: least violating n or None}.

    Checks: phi/phi_star/Omega/omega/d weakly below n; psi/J_2 and
    sigma_k/psi_k/J_{k+2} strictly above n for n >= 2, k in ks.
    """
    below = {"phi": None, "phi_star": None, "Omega": None, "omega": None, "d": None}
    above = {"psi": None, "J_2": None}
    for k in ks:
        above[f"sigma_{k}"] = None
        above[f"psi_{k}"] = None
        above[f"J_{k + 2}"] = None
    kmax = max(ks)
    for n, pps in factored_range(bound, config=config):
        phi = psi = phistar = d2 = 1
        big = small = 0
        jk = {j: 1 for j in range(2, kmax + 3)}
        psik = {k: 1 for k in ks if k >= 2}
        sigk = {k: 1 for k in ks}
        for p, a in pps:
            pm = p ** (a - 1)
            pa = pm * p
            phi *= (p - 1) * pm
            psi *= (p + 1) * pm
            phistar *= pa - 1
            d2 *= a + 1
            big += a
            small += 1
            pkpow = p
            pmk = pm
            for j in range(2, kmax + 3):
                pkpow *= p      # p^j
                pmk *= pm       # p^(j(a-1))
                if j in jk:
                    jk[j] *= (pkpow - 1) * pmk
                if j in psik:
                    psik[j] *= (pkpow + 1) * pmk
                if j in sigk:
                    sigk[j] *= (pkpow * pa ** j - 1) // (pkpow - 1)
            sigk[1] *= (pa * p - 1) // (p - 1)
        checks = (("phi", phi > n), ("phi_star", phistar > n),
                  ("Omega", big > n), ("omega", small > n), ("d", d2 > n))
        for name, violated in checks:
            if violated and below[name] is None:
                below[name] = n
        if psi <= n and above["psi"] is None:
            above["psi"] = n
        if jk[2] <= n and above["J_2"] is None:
            above["J_2"] = n
        for k in ks:
            if sigk[k] <= n and above[f"sigma_{k}"] is None:
                above[f"sigma_{k}"] = n
            pk_val = psi if k == 1 else psik[k]
            if pk_val <= n and above[f"psi_{k}"] is None:
                above[f"psi_{k}"] = n
            if jk[k + 2] <= n and above[f"J_{k + 2}"] is None:
                above[f"J_{k + 2}"] = n
    out: dict[str, Optional[int]] = {}
    for name, w in below.items():
        out[f"{name} <= n"] = w
    for name, w in above.items():
        out[f"{name} > n"] = w
    return out
