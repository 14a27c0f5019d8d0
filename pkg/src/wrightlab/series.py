"""Truncated series engine: Wright functions, pFq and Mittag-Leffler.

All summation follows one explicit policy: ascending term index, each term
assembled from signed log-gamma products (never by coefficient recurrence),
a consecutive-small-terms stopping rule, and an operational divergence
guard.  Identical inputs always consume an identical number of terms.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DivergenceError, DomainError, MaxTermsError, PoleError
from .scalars import _is_nonpositive_integer, log_gamma_signed

__all__ = [
    "SeriesPolicy",
    "WrightSpec",
    "SeriesResult",
    "sum_with_policy",
    "wright_psi",
    "wright_psi_normalized",
    "hyper_pfq",
    "mittag_leffler",
]

MAX_TERMS_ENV = "WRIGHTLAB_MAX_TERMS"


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation policy shared by every series in the package.

    A partial sum is accepted once `consecutive_small` successive terms
    satisfy |term| <= rel_tol*|partial| + abs_tol.  A term exceeding
    divergence_growth_limit times the running peak of |partial sums| past
    index 50 aborts the summation as divergent.
    """

    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    consecutive_small: int = 3
    max_terms: int = 20000
    divergence_growth_limit: float = 1e8

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0.0:
            raise ValueError("abs_tol must be nonnegative")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be >= 1")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "SeriesPolicy":
        """Default policy, with max_terms taken from WRIGHTLAB_MAX_TERMS if set."""
        raw = os.environ.get(MAX_TERMS_ENV)
        if raw is not None and "max_terms" not in overrides:
            try:
                overrides["max_terms"] = int(raw)
            except ValueError as exc:
                raise ValueError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from exc
        return cls(**overrides)


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus how it was truncated.

    tail_estimate is the last accepted term times the consecutive-small
    count: a cheap bound for geometrically decaying tails, reported rather
    than trusted.
    """

    value: complex
    terms_used: int
    tail_estimate: float


@dataclass(frozen=True)
class WrightSpec:
    """Parameter pairs (a_j, A_j) / (b_j, B_j) of a Wright series.

    Upper weights must be positive.  Lower weights may be zero (a constant
    gamma factor, as in the Mittag-Leffler weight at lambda = 0) but not
    negative.  The convergence margin 1 + sum(B_j) - sum(A_j) must be
    nonnegative; the margin-zero boundary is admitted and divergence is
    then detected operationally during summation.
    """

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __init__(self, upper: Iterable[Sequence[float]], lower: Iterable[Sequence[float]]):
        up = tuple((float(a), float(wa)) for a, wa in upper)
        lo = tuple((float(b), float(wb)) for b, wb in lower)
        for _, wa in up:
            if not wa > 0.0:
                raise DomainError(f"upper weight must be positive, got {wa!r}")
        for _, wb in lo:
            if wb < 0.0:
                raise DomainError(f"lower weight must be nonnegative, got {wb!r}")
        margin = 1.0 + sum(w for _, w in lo) - sum(w for _, w in up)
        if margin < 0.0:
            raise DomainError(f"convergence margin 1 + sum(B) - sum(A) = {margin!r} is negative")
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", lo)

    @property
    def margin(self) -> float:
        return 1.0 + sum(w for _, w in self.lower) - sum(w for _, w in self.upper)


def sum_with_policy(terms: Iterator[complex], policy: SeriesPolicy) -> SeriesResult:
    """Sum successive terms under the stopping and divergence rules.

    The iterator is drawn at most policy.max_terms times; exhausting the
    budget without meeting the stopping rule raises MaxTermsError.
    """
    rel = policy.rel_tol
    atol = policy.abs_tol
    need = policy.consecutive_small
    limit = policy.divergence_growth_limit
    # Neumaier-compensated accumulation, separately for both components.
    sum_re = sum_im = comp_re = comp_im = 0.0
    peak = 0.0
    consecutive = 0
    k = -1
    for k, term in enumerate(terms):
        if k >= policy.max_terms:
            break
        mag = abs(term)
        if math.isinf(mag) or math.isnan(mag):
            raise DivergenceError(f"term {k} is non-finite")
        t_re = term.real
        new_re = sum_re + t_re
        if abs(sum_re) >= abs(t_re):
            comp_re += (sum_re - new_re) + t_re
        else:
            comp_re += (t_re - new_re) + sum_re
        sum_re = new_re
        t_im = term.imag
        new_im = sum_im + t_im
        if abs(sum_im) >= abs(t_im):
            comp_im += (sum_im - new_im) + t_im
        else:
            comp_im += (t_im - new_im) + sum_im
        sum_im = new_im
        partial = complex(sum_re + comp_re, sum_im + comp_im)
        ap = abs(partial)
        if math.isinf(ap) or math.isnan(ap):
            raise DivergenceError(f"partial sum is non-finite at term {k}")
        if ap > peak:
            peak = ap
        if k > 50 and mag > limit * max(peak, atol):
            raise DivergenceError(
                f"term {k} magnitude {mag:.3e} exceeds {limit:.1e} x running peak {peak:.3e}"
            )
        if mag <= rel * ap + atol:
            consecutive += 1
            if consecutive >= need:
                return SeriesResult(partial, k + 1, mag * need)
        else:
            consecutive = 0
    raise MaxTermsError(f"stopping rule unmet after {k + 1} terms")


class _Phase:
    """z^k split as exp(k ln|z|) times a unit phase updated multiplicatively."""

    __slots__ = ("log_r", "unit", "current")

    def __init__(self, z: complex):
        r = abs(z)
        self.log_r = math.log(r) if r > 0.0 else None
        self.unit = z / r if r > 0.0 else 0.0j
        self.current = 1.0 + 0.0j

    def term(self, k: int, log_mag: float, sign: int) -> complex:
        if k == 0:
            return sign * math.exp(log_mag)
        if self.log_r is None:
            return 0.0 + 0.0j
        try:
            mag = math.exp(log_mag + k * self.log_r)
        except OverflowError:
            mag = math.inf
        value = sign * mag * self.current
        return value

    def advance(self):
        if self.log_r is not None:
            self.current *= self.unit


def _wright_terms(spec: WrightSpec, z: complex, normalized: bool,
                  max_terms: int) -> Iterator[complex]:
    upper = spec.upper
    lower = spec.lower
    shift = 0.0
    shift_sign = 1
    if normalized:
        # Per-term division by the k=0 gamma products, done on the log scale.
        for a, _ in upper:
            if _is_nonpositive_integer(a):
                raise PoleError(f"normalizing gamma pole at upper parameter {a!r}")
            lg, sg = log_gamma_signed(a)
            shift -= lg
            shift_sign *= sg
        for b, _ in lower:
            if _is_nonpositive_integer(b):
                raise PoleError(f"normalizing gamma pole at lower parameter {b!r}")
            lg, sg = log_gamma_signed(b)
            shift += lg
            shift_sign *= sg
    phase = _Phase(complex(z))
    lgam = log_gamma_signed
    for k in range(max_terms):
        log_mag, _ = lgam(k + 1.0)
        log_mag = -log_mag
        sign = shift_sign
        for a, wa in upper:
            lg, sg = lgam(a + wa * k)
            log_mag += lg
            sign *= sg
        for b, wb in lower:
            lg, sg = lgam(b + wb * k)
            log_mag -= lg
            sign *= sg
        if normalized:
            log_mag += shift
        yield phase.term(k, log_mag, sign)
        phase.advance()


def wright_psi(spec: WrightSpec, z: complex, policy: SeriesPolicy | None = None) -> SeriesResult:
    """Wright series sum_k prod Gamma(a_j + A_j k) / prod Gamma(b_j + B_j k) z^k / k!.

    Gamma poles hit by a parameter ladder raise PoleError at the offending
    term index.
    """
    policy = policy or SeriesPolicy()
    return sum_with_policy(_wright_terms(spec, z, False, policy.max_terms), policy)


def wright_psi_normalized(spec: WrightSpec, z: complex,
                          policy: SeriesPolicy | None = None) -> SeriesResult:
    """Wright series with every gamma factor divided by its k=0 value.

    The normalization happens inside each term on the log scale, so the
    value at z = 0 is 1 without ever forming two large numbers.
    """
    policy = policy or SeriesPolicy()
    return sum_with_policy(_wright_terms(spec, z, True, policy.max_terms), policy)


def _log_poch_tracker(params: Sequence[float]) -> list:
    """Per-parameter state for building Pochhammer products in log space."""
    state = []
    for a in params:
        if _is_nonpositive_integer(a):
            state.append((a, None, None))  # truncating parameter
        else:
            lg, sg = log_gamma_signed(a)
            state.append((a, lg, sg))
    return state


def _pfq_terms(num, den, z: complex, max_terms: int) -> Iterator[complex]:
    num_state = _log_poch_tracker(num)
    den_state = _log_poch_tracker(den)
    phase = _Phase(complex(z))
    lgam = log_gamma_signed
    # Running exact products for truncating (nonpositive-integer) numerators.
    trunc = {i: 1.0 for i, (_, lg, _) in enumerate(num_state) if lg is None}
    for k in range(max_terms):
        log_mag, _ = lgam(k + 1.0)
        log_mag = -log_mag
        sign = 1
        zero = False
        for i, (a, lg, sg) in enumerate(num_state):
            if lg is None:
                p = trunc[i]
                if p == 0.0:
                    zero = True
                    continue
                if p < 0.0:
                    sign = -sign
                log_mag += math.log(abs(p))
            else:
                lk, sk = lgam(a + k)
                log_mag += lk - lg
                sign *= sk * sg
        for b, lg, sg in den_state:
            lk, sk = lgam(b + k)
            log_mag -= lk - lg
            sign *= sk * sg
        yield 0.0 + 0.0j if zero else phase.term(k, log_mag, sign)
        phase.advance()
        for i in trunc:
            trunc[i] *= num_state[i][0] + k


def hyper_pfq(num: Sequence[float], den: Sequence[float], z: complex,
              policy: SeriesPolicy | None = None) -> SeriesResult:
    """Generalized hypergeometric sum over Pochhammer ratios.

    Denominator parameters at nonpositive integers are rejected eagerly;
    nonpositive-integer numerator parameters terminate the series exactly.
    """
    policy = policy or SeriesPolicy()
    for b in den:
        if _is_nonpositive_integer(b):
            raise PoleError(f"denominator parameter {b!r} is a nonpositive integer")
    return sum_with_policy(_pfq_terms(tuple(num), tuple(den), z, policy.max_terms), policy)


def _mittag_leffler_terms(lam: float, z: complex, max_terms: int) -> Iterator[complex]:
    phase = _Phase(complex(z))
    lgam = log_gamma_signed
    for n in range(max_terms):
        log_mag, _ = lgam(lam * n + 1.0)
        yield phase.term(n, -log_mag, 1)
        phase.advance()


def mittag_leffler(lam: float, z: complex, policy: SeriesPolicy | None = None) -> SeriesResult:
    """Mittag-Leffler sum_n z^n / Gamma(lam*n + 1) for real lam >= 0.

    lam = 0 reduces to the geometric series, so |z| < 1 is required there.
    """
    policy = policy or SeriesPolicy()
    if lam < 0.0:
        raise DomainError(f"mittag_leffler weight must be >= 0, got {lam!r}")
    if lam == 0.0 and abs(z) >= 1.0:
        raise DomainError(f"mittag_leffler(0, z) needs |z| < 1, got |z| = {abs(z)!r}")
    return sum_with_policy(_mittag_leffler_terms(lam, complex(z), policy.max_terms), policy)
