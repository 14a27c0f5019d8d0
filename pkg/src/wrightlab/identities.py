"""Closed-form (series-side) evaluation of the Euler-type integral family.

Each evaluator here computes, purely by series, the same quantity that
quadrature.evaluate_integral_direct obtains by direct integration:

    I = (1/B(alpha, beta)) * integral_a^b (t-a)^(alpha-1) (b-t)^(beta-1)
            chi(t)^gamma E_lam[p xi(t)] dt

for the chi/xi families below, plus the generating-function integrals
(raw, without the beta normalization).  The inner engine is always a
3-by-2 Wright series with weight pattern (1,1,1; 2, lam), evaluated fresh
for every outer summation index under the caller's series policy.

On a general interval the linear-weight family (T3) picks up the factors
(b-a)^(alpha+beta-1) and (a*u+v)^gamma, and the series argument becomes
p*(b-a)^2; all three are required for agreement with the direct integral
and degenerate to no-ops on (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError
from .multivar import _DoublePochStream, _PochPowerStream, _convolve_at
from .scalars import _is_nonpositive_integer, pochhammer
from .series import (
    SeriesPolicy,
    SeriesResult,
    WrightSpec,
    hyper_pfq,
    sum_with_policy,
    wright_psi,
    wright_psi_normalized,
)

__all__ = [
    "T1Family",
    "T2Family",
    "T3Family",
    "T4Family",
    "TNFamily",
    "EulerIntegralSpec",
    "BinomialGen",
    "HumbertGen",
    "GegenbauerGen",
    "CustomGen",
    "GeneratingIntegralSpec",
    "IdentityCase",
    "closed_form_theorem1",
    "closed_form_theorem2",
    "closed_form_theorem3",
    "closed_form_theorem4",
    "closed_form_lauricella",
    "generating_integral_closed_form",
    "reduce_lambda1",
    "application_case",
]


# ---------------------------------------------------------------------------
# chi/xi families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class T1Family:
    """chi = (1 - x1 t)^(-a1) (1 - x2 t)^(-a2), xi = t(1-t), on (0, 1)."""

    alpha1: float
    alpha2: float
    x1: float
    x2: float

    def validate(self):
        if abs(self.x1) >= 1.0 or abs(self.x2) >= 1.0:
            raise DomainError("T1 needs |x1| < 1 and |x2| < 1")


@dataclass(frozen=True)
class T2Family:
    """chi = (1 - x1 t)^(-a1) (1 - x2 (1-t))^(-a2), xi = t(1-t), on (0, 1)."""

    alpha1: float
    alpha2: float
    x1: float
    x2: float

    def validate(self):
        if abs(self.x1) >= 1.0 or abs(self.x2) >= 1.0:
            raise DomainError("T2 needs |x1| < 1 and |x2| < 1")


@dataclass(frozen=True)
class T3Family:
    """chi = u t + v (linear weight), xi = (t-a)(b-t)."""

    u: float
    v: float

    def validate_on(self, a: float, b: float):
        if a * self.u + self.v <= 0.0 or b * self.u + self.v <= 0.0:
            raise DomainError("T3 needs u*t + v positive at both endpoints")


@dataclass(frozen=True)
class T4Family:
    """chi = (b-a) + nu (t-a) + mu (b-t), xi = (t-a)(b-t)/chi^2, gamma fixed."""

    nu: float
    mu: float

    def validate(self):
        if self.nu <= -1.0 or self.mu <= -1.0:
            raise DomainError("T4 needs nu > -1 and mu > -1 so chi stays positive")


@dataclass(frozen=True)
class TNFamily:
    """chi = prod_i (1 - x_i t)^(-a_i), xi = t(1-t), on (0, 1)."""

    alphas: tuple[float, ...]
    xs: tuple[float, ...]

    def validate(self):
        if len(self.alphas) != len(self.xs):
            raise DomainError("TN needs matching alphas and xs")
        if any(abs(x) >= 1.0 for x in self.xs):
            raise DomainError("TN needs max |x_i| < 1")


@dataclass(frozen=True)
class EulerIntegralSpec:
    """One fully-bound instance of the weighted-beta integral."""

    alpha: float
    beta: float
    gamma: float
    a: float
    b: float
    lam: float
    p: complex
    family: object

    def validate(self):
        if not self.alpha > 0.0 or not self.beta > 0.0:
            raise DomainError("need alpha > 0 and beta > 0")
        if self.lam < 0.0:
            raise DomainError("need lam >= 0")
        if not self.a < self.b:
            raise DomainError("need a < b")
        fam = self.family
        if isinstance(fam, (T1Family, T2Family, TNFamily)):
            if (self.a, self.b, self.gamma) != (0.0, 1.0, 1.0):
                raise DomainError("this family is defined on (0, 1) with unit exponent")
            fam.validate()
        elif isinstance(fam, T3Family):
            fam.validate_on(self.a, self.b)
        elif isinstance(fam, T4Family):
            if self.gamma != -(self.alpha + self.beta):
                raise DomainError("T4 fixes gamma = -(alpha + beta)")
            fam.validate()
        else:
            raise DomainError(f"unknown family {type(fam).__name__}")


def t1_spec(alpha, beta, alpha1, alpha2, x1, x2, lam, p) -> EulerIntegralSpec:
    return EulerIntegralSpec(alpha, beta, 1.0, 0.0, 1.0, lam, complex(p),
                             T1Family(alpha1, alpha2, x1, x2))


def t2_spec(alpha, beta, alpha1, alpha2, x1, x2, lam, p) -> EulerIntegralSpec:
    return EulerIntegralSpec(alpha, beta, 1.0, 0.0, 1.0, lam, complex(p),
                             T2Family(alpha1, alpha2, x1, x2))


def t3_spec(alpha, beta, gamma, a, b, u, v, lam, p) -> EulerIntegralSpec:
    return EulerIntegralSpec(alpha, beta, gamma, a, b, lam, complex(p), T3Family(u, v))


def t4_spec(alpha, beta, a, b, nu, mu, lam, p) -> EulerIntegralSpec:
    return EulerIntegralSpec(alpha, beta, -(alpha + beta), a, b, lam, complex(p),
                             T4Family(nu, mu))


def tn_spec(alpha, beta, alphas, xs, lam, p) -> EulerIntegralSpec:
    return EulerIntegralSpec(alpha, beta, 1.0, 0.0, 1.0, lam, complex(p),
                             TNFamily(tuple(alphas), tuple(xs)))


# ---------------------------------------------------------------------------
# Inner Wright engine
# ---------------------------------------------------------------------------


def _psi_hat(a1: float, b1: float, c1: float, lam: float, p: complex,
             policy: SeriesPolicy) -> complex:
    """Normalized 3-by-2 Wright value with the (1,1,1; 2,lam) weight pattern."""
    spec = WrightSpec(((a1, 1.0), (b1, 1.0), (1.0, 1.0)), ((c1, 2.0), (1.0, lam)))
    return wright_psi_normalized(spec, p, policy).value


def _psi_raw(a1: float, b1: float, c1: float, lam: float, p: complex,
             policy: SeriesPolicy) -> complex:
    """Un-normalized counterpart of _psi_hat."""
    spec = WrightSpec(((a1, 1.0), (b1, 1.0), (1.0, 1.0)), ((c1, 2.0), (1.0, lam)))
    return wright_psi(spec, p, policy).value


def _validate_common(alpha: float, beta: float, lam: float):
    if not alpha > 0.0 or not beta > 0.0:
        raise DomainError("need alpha > 0 and beta > 0")
    if lam < 0.0:
        raise DomainError("need lam >= 0")


# ---------------------------------------------------------------------------
# Closed forms for the integral family
# ---------------------------------------------------------------------------


def closed_form_theorem1(alpha: float, beta: float, alpha1: float, alpha2: float,
                         x1: float, x2: float, lam: float, p: complex,
                         policy: SeriesPolicy | None = None) -> SeriesResult:
    """Series value of the T1 integral, summed by diagonals m + n = d.

    The inner Wright factor depends only on the diagonal index, so each
    diagonal is a binomial-style convolution times one fresh inner value.
    At p = 0 this collapses to the F1 double series.
    """
    policy = policy or SeriesPolicy()
    _validate_common(alpha, beta, lam)
    if abs(x1) >= 1.0 or abs(x2) >= 1.0:
        raise DomainError("need |x1| < 1 and |x2| < 1")
    p = complex(p)
    fx = _PochPowerStream(alpha1, x1)
    gy = _PochPowerStream(alpha2, x2)

    def diagonals():
        ratio = 1.0  # (alpha)_d / (alpha+beta)_d
        d = 0
        while True:
            fx.extend_to(d)
            gy.extend_to(d)
            conv = _convolve_at(fx.values, gy.values, d)
            yield ratio * conv * _psi_hat(alpha + d, beta, alpha + beta + d, lam, p, policy)
            ratio *= (alpha + d) / (alpha + beta + d)
            d += 1

    return sum_with_policy(diagonals(), policy)


def closed_form_theorem2(alpha: float, beta: float, alpha1: float, alpha2: float,
                         x1: float, x2: float, lam: float, p: complex,
                         policy: SeriesPolicy | None = None) -> SeriesResult:
    """Series value of the T2 integral.

    Here the inner Wright parameters shift with m and n separately, so each
    diagonal costs d + 1 inner evaluations.  At p = 0 this collapses to the
    F3 double series.
    """
    policy = policy or SeriesPolicy()
    _validate_common(alpha, beta, lam)
    if abs(x1) >= 1.0 or abs(x2) >= 1.0:
        raise DomainError("need |x1| < 1 and |x2| < 1")
    p = complex(p)
    fx = _DoublePochStream(alpha, alpha1, x1)
    gy = _DoublePochStream(beta, alpha2, x2)

    def diagonals():
        inv = 1.0  # 1 / (alpha+beta)_d
        d = 0
        while True:
            fx.extend_to(d)
            gy.extend_to(d)
            total = 0.0 + 0.0j
            for m in range(d + 1):
                n = d - m
                total += (fx.values[m] * gy.values[n]
                          * _psi_hat(alpha + m, beta + n, alpha + beta + d, lam, p, policy))
            yield inv * total
            inv /= alpha + beta + d
            d += 1

    return sum_with_policy(diagonals(), policy)



def closed_form_theorem3(alpha: float, beta: float, gamma: float, a: float, b: float,
                         u: float, v: float, lam: float, p: complex,
                         policy: SeriesPolicy | None = None) -> SeriesResult:
    """Series value of the linear-weight (T3) integral.

    Single sum in m with coefficients (-gamma)_m (alpha)_m / ((alpha+beta)_m m!)
    times (-u(b-a)/(a u+v))^m; nonnegative-integer gamma truncates it exactly.
    """
    policy = policy or SeriesPolicy()
    _validate_common(alpha, beta, lam)
    if not a < b:
        raise DomainError("need a < b")
    auv = a * u + v
    if auv <= 0.0 or b * u + v <= 0.0:
        raise DomainError("need u*t + v positive at both endpoints")
    p = complex(p)
    width = b - a
    prefactor = auv ** gamma * width ** (alpha + beta - 1.0)
    argument = p * width * width
    w = -u * width / auv

    def terms():
        coeff = 1.0
        m = 0
        while True:
            if coeff == 0.0:
                yield 0.0 + 0.0j
            else:
                yield (prefactor * coeff
                       * _psi_hat(alpha + m, beta, alpha + beta + m, lam, argument, policy))
            coeff *= (-gamma + m) * (alpha + m) * w / ((alpha + beta + m) * (m + 1.0))
            m += 1

    return sum_with_policy(terms(), policy)


def closed_form_theorem4(alpha: float, beta: float, a: float, b: float,
                         nu: float, mu: float, lam: float, p: complex,
                         policy: SeriesPolicy | None = None) -> SeriesResult:
    """Closed form of the T4 integral: a prefactor times one inner Wright value."""
    policy = policy or SeriesPolicy()
    _validate_common(alpha, beta, lam)
    if not a < b:
        raise DomainError("need a < b")
    if nu <= -1.0 or mu <= -1.0:
        raise DomainError("need nu > -1 and mu > -1")
    scale = (nu + 1.0) ** (-alpha) * (mu + 1.0) ** (-beta) / (b - a)
    argument = complex(p) / ((nu + 1.0) * (mu + 1.0))
    spec = WrightSpec(((alpha, 1.0), (beta, 1.0), (1.0, 1.0)),
                      ((alpha + beta, 2.0), (1.0, lam)))
    inner = wright_psi_normalized(spec, argument, policy)
    return SeriesResult(scale * inner.value, inner.terms_used,
                        abs(scale) * inner.tail_estimate)


def closed_form_lauricella(alpha: float, beta: float, alphas: Sequence[float],
                           xs: Sequence[float], lam: float, p: complex,
                           policy: SeriesPolicy | None = None,
                           max_variables: int = 4) -> SeriesResult:
    """n-variable extension of the T1 closed form, summed by total degree.

    Uses the normalized inner form with weights (alpha)_M / (alpha+beta)_M,
    which reduces to closed_form_theorem1 at n = 2 and to the FD series at
    p = 0.
    """
    policy = policy or SeriesPolicy()
    _validate_common(alpha, beta, lam)
    n = len(alphas)
    if n != len(xs):
        raise DomainError("alphas and xs must have the same length")
    if not 1 <= n <= max_variables:
        raise DomainError(f"variable count must be in 1..{max_variables}")
    if any(abs(x) >= 1.0 for x in xs):
        raise DomainError("need max |x_i| < 1")
    p = complex(p)
    streams = [_PochPowerStream(ai, xi) for ai, xi in zip(alphas, xs)]
    partial: list[list[complex]] = [[] for _ in range(n - 1)]

    def product_coeff(d: int) -> complex:
        for s in streams:
            s.extend_to(d)
        prev = streams[0].values
        for i in range(1, n):
            partial[i - 1].append(_convolve_at(prev, streams[i].values, d))
            prev = partial[i - 1]
        return prev[d]

    def degrees():
        ratio = 1.0
        d = 0
        while True:
            yield (ratio * product_coeff(d)
                   * _psi_hat(alpha + d, beta, alpha + beta + d, lam, p, policy))
            ratio *= (alpha + d) / (alpha + beta + d)
            d += 1

    return sum_with_policy(degrees(), policy)


# ---------------------------------------------------------------------------
# Generating-function integrals
# ---------------------------------------------------------------------------


class BinomialGen:
    """Generator (1 - x t)^(-a): coefficients (a)_n x^n / n!."""

    def __init__(self, a: float, x: float = 1.0):
        self.a = a
        self.x = x
        self._coeffs = [1.0]

    def coefficient(self, n: int) -> complex:
        c = self._coeffs
        while len(c) <= n:
            k = len(c)
            c.append(c[-1] * (self.a + k - 1.0) * self.x / k)
        return c[n]

    def node_values(self, tau):
        return (1.0 - self.x * tau) ** (-self.a)

    def check_argument(self, t: complex):
        if abs(self.x * t) >= 1.0:
            raise DomainError("binomial generator needs |x t| < 1")


class GegenbauerGen:
    """Generator (1 - 2 x t + t^2)^(-a): coefficients are ultraspherical values."""

    def __init__(self, a: float, x: float = 1.0):
        if abs(x) > 1.0:
            raise DomainError("gegenbauer generator needs |x| <= 1")
        self.a = a
        self.x = x
        self._coeffs = [1.0]

    def coefficient(self, n: int) -> complex:
        c = self._coeffs
        while len(c) <= n:
            k = len(c)
            if k == 1:
                c.append(2.0 * self.a * self.x)
            else:
                c.append((2.0 * self.x * (k + self.a - 1.0) * c[k - 1]
                          - (k + 2.0 * self.a - 2.0) * c[k - 2]) / k)
        return c[n]

    def node_values(self, tau):
        return (1.0 - 2.0 * self.x * tau + tau * tau) ** (-self.a)

    def check_argument(self, t: complex):
        if abs(t) >= 1.0:
            raise DomainError("gegenbauer generator needs |t| < 1")


class HumbertGen:
    """Confluent two-variable generator: coefficients (a)_n/(b)_n 1F1(a; b+n; x)/n!.

    The node form is the two-variable confluent double series itself,
    evaluated through its tau-power coefficients, so the two sides of the
    identity go through genuinely different summations.
    """

    def __init__(self, a: float, b: float, x: float):
        if _is_nonpositive_integer(b):
            raise DomainError("humbert generator needs b off the nonpositive integers")
        self.a = a
        self.b = b
        self.x = x
        self._coeffs: list[complex] = []
        self._tau_coeffs: list[float] = []
        self._poch_b: list[float] = [1.0]

    def coefficient(self, n: int) -> complex:
        c = self._coeffs
        while len(c) <= n:
            k = len(c)
            pb = self._poch_b
            while len(pb) <= k:
                j = len(pb)
                pb.append(pb[-1] * (self.b + j - 1.0))
            f11 = hyper_pfq([self.a], [self.b + k], self.x).value
            c.append(pochhammer(self.a, k) / pb[k] * f11 / math.gamma(k + 1.0))
        return c[n]

    def _extend_tau_coeffs(self, count: int):
        # tau^n coefficient of the double series:
        #   (a)_n/n! * sum_m (a)_m x^m / ((b)_{m+n} m!)
        tc = self._tau_coeffs
        while len(tc) < count:
            n = len(tc)
            pa_n = 1.0
            for j in range(n):
                pa_n *= (self.a + j) / (j + 1.0)
            # start of the m-sum: 1/(b)_n
            pb = self._poch_b
            while len(pb) <= n:
                j = len(pb)
                pb.append(pb[-1] * (self.b + j - 1.0))
            term = 1.0 / pb[n]
            total = term
            m = 0
            while abs(term) > 1e-20 * max(1.0, abs(total)) and m < 600:
                term *= (self.a + m) * self.x / ((m + 1.0) * (self.b + m + n))
                total += term
                m += 1
            tc.append(pa_n * total)

    def node_values(self, tau):
        import numpy as np

        radius = float(np.max(np.abs(tau))) if getattr(tau, "size", 1) else 0.0
        count = 8
        while True:
            self._extend_tau_coeffs(count)
            tail = abs(self._tau_coeffs[count - 1]) * max(radius, 1e-30) ** (count - 1)
            if tail < 1e-18 or count > 400:
                break
            count += 8
        out = np.zeros_like(tau, dtype=complex)
        for cn in reversed(self._tau_coeffs[:count]):
            out = out * tau + cn
        return out

    def check_argument(self, t: complex):
        pass  # entire in t


class CustomGen:
    """Arbitrary coefficient stream n -> c_n g_n(x); no closed node form."""

    def __init__(self, coefficient_fn: Callable[[int], complex]):
        self._fn = coefficient_fn

    def coefficient(self, n: int) -> complex:
        return complex(self._fn(n))

    def node_values(self, tau):
        raise DomainError("custom generators have no closed node form for quadrature")

    def check_argument(self, t: complex):
        pass


@dataclass(frozen=True)
class GeneratingIntegralSpec:
    """Bound parameter set of one generating-function integral."""

    gen: object
    r: float
    s: float
    delta: float
    omega: float
    lam: float
    p: complex
    t: complex
    product_factors: tuple[tuple[float, float], ...] = ()


def generating_integral_closed_form(gen, r: float, s: float, delta: float, omega: float,
                                    lam: float, p: complex, t: complex,
                                    product_factors: Sequence[tuple[float, float]] = (),
                                    policy: SeriesPolicy | None = None) -> SeriesResult:
    """Series value of the generating-function integral.

    Without product factors this is a single sum of generator coefficients
    times raw inner Wright values.  With factors (a_i, x_i) the extra
    binomial streams shift the first upper parameter, and the combined
    multi-index sum is grouped by total degree.
    """
    policy = policy or SeriesPolicy()
    if not s > r > 0.0:
        raise DomainError(f"need s > r > 0, got r={r!r}, s={s!r}")
    if delta < 0.0 or omega < 0.0 or delta + omega <= 0.0:
        raise DomainError("need delta, omega >= 0 with delta + omega > 0")
    if lam < 0.0:
        raise DomainError("need lam >= 0")
    t = complex(t)
    p = complex(p)
    gen.check_argument(t)
    factors = tuple(product_factors)
    for _, xi in factors:
        if abs(xi) >= 1.0:
            raise DomainError("product factors need |x_i| < 1")

    if not factors:
        def terms():
            n = 0
            tn = 1.0 + 0.0j
            while True:
                yield (gen.coefficient(n) * tn
                       * _psi_raw(r + delta * n, s - r + omega * n,
                                  s + (delta + omega) * n, lam, p, policy))
                tn *= t
                n += 1

        return sum_with_policy(terms(), policy)

    streams = [_PochPowerStream(ai, xi) for ai, xi in factors]
    partial: list[list[complex]] = [[] for _ in range(len(streams) - 1)]

    def factor_coeff(m: int) -> complex:
        for st in streams:
            st.extend_to(m)
        prev = streams[0].values
        for i in range(1, len(streams)):
            if len(partial[i - 1]) <= m:
                partial[i - 1].append(_convolve_at(prev, streams[i].values, m))
            prev = partial[i - 1]
        return prev[m]

    t_powers = [1.0 + 0.0j]

    def degree_terms():
        d = 0
        while True:
            while len(t_powers) <= d:
                t_powers.append(t_powers[-1] * t)
            total = 0.0 + 0.0j
            for n in range(d + 1):
                m = d - n
                total += (gen.coefficient(n) * t_powers[n] * factor_coeff(m)
                          * _psi_raw(r + delta * n + m, s - r + omega * n,
                                     s + (delta + omega) * n + m, lam, p, policy))
            yield total
            d += 1

    return sum_with_policy(degree_terms(), policy)


def reduce_lambda1(spec: WrightSpec, p: complex,
                   policy: SeriesPolicy | None = None) -> SeriesResult:
    """Collapse the lam = 1 inner Wright instance to a 2F2 at quarter argument.

    Accepts exactly the (1,1,1; 2,1)-patterned normalized instance with
    upper parameters (alpha, beta, 1) and lower (alpha+beta, 1); the value
    is 2F2(alpha, beta; (alpha+beta)/2, (alpha+beta+1)/2; p/4).
    """
    policy = policy or SeriesPolicy()
    ok = (
        len(spec.upper) == 3 and len(spec.lower) == 2
        and all(w == 1.0 for _, w in spec.upper)
        and spec.upper[2][0] == 1.0
        and spec.lower[0][1] == 2.0
        and spec.lower[1] == (1.0, 1.0)
    )
    if ok:
        alpha, beta = spec.upper[0][0], spec.upper[1][0]
        ok = abs(spec.lower[0][0] - (alpha + beta)) <= 1e-12 * max(1.0, abs(alpha + beta))
    if not ok:
        raise DomainError("spec is not the lam = 1 inner instance this reduction covers")
    half = 0.5 * (alpha + beta)
    return hyper_pfq([alpha, beta], [half, half + 0.5], complex(p) / 4.0, policy)


# ---------------------------------------------------------------------------
# Scenario catalog support
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCase:
    """One named identity instance bound to both of its evaluation routes."""

    name: str
    spec: object
    closed_form: Callable[[SeriesPolicy], SeriesResult]
    oracle: Callable
    validity_note: str = ""


def _euler_oracle(spec: EulerIntegralSpec, scale: float = 1.0):
    def run(qpolicy=None, spolicy=None):
        from .quadrature import QuadratureResult, evaluate_integral_direct

        raw = evaluate_integral_direct(spec, qpolicy, spolicy)
        if scale == 1.0:
            return raw
        return QuadratureResult(raw.value * scale, raw.err_estimate * abs(scale),
                                raw.evaluations)

    return run


def application_case(case_id, p: complex, policy: SeriesPolicy | None = None,
                     **params) -> IdentityCase:
    """Build one of the specialized scenario cases 4.1 .. 4.5.

    Each case binds a fully-validated integral spec to the series route the
    specialization dictates, ready for dual evaluation.
    """
    cid = str(case_id)
    p = complex(p)
    if cid == "4.1":
        alpha = params["alpha"]
        alpha1 = params["alpha1"]
        x1 = params["x1"]
        lam = params["lam"]
        if not (abs(x1) < 1.0 and x1 < 0.5):
            raise DomainError("case 4.1 needs |x1| < 1 and x1 < 1/2 so |x2| < 1")
        x2 = x1 / (x1 - 1.0)
        spec = t1_spec(alpha, alpha, alpha1, alpha1, x1, x2, lam, p)
        spec.validate()
        return IdentityCase(
            name="ex4.1",
            spec=spec,
            closed_form=lambda pol: closed_form_theorem1(
                alpha, alpha, alpha1, alpha1, x1, x2, lam, p, pol),
            oracle=_euler_oracle(spec),
            validity_note="equal exponents and mirrored second argument",
        )
    if cid == "4.2" or cid == "4.2-2f2":
        alpha = params["alpha"]
        beta = params["beta"]
        alpha1 = params["alpha1"]
        alpha2 = params["alpha2"]
        x1 = params["x1"]
        lam = 1.0 if cid == "4.2-2f2" else params["lam"]
        if not abs(x1) < 1.0:
            raise DomainError("case 4.2 needs |x1| < 1")
        combined = alpha1 + alpha2
        spec = t1_spec(alpha, beta, combined, 0.0, x1, 0.0, lam, p)
        spec.validate()
        scale = 1.0 / (1.0 - x1)

        if cid == "4.2":
            def closed(pol):
                inner = closed_form_theorem1(alpha, beta, combined, 0.0, x1, 0.0, lam, p, pol)
                return SeriesResult(scale * inner.value, inner.terms_used,
                                    abs(scale) * inner.tail_estimate)
        else:
            def closed(pol):
                # Same single sum with the inner value routed through the
                # quarter-argument 2F2 reduction instead of the Wright engine.
                def terms():
                    coeff = 1.0
                    m = 0
                    while True:
                        two_f2 = hyper_pfq(
                            [alpha + m, beta],
                            [0.5 * (alpha + beta + m), 0.5 * (alpha + beta + m + 1.0)],
                            p / 4.0, pol).value
                        yield scale * coeff * two_f2
                        coeff *= (alpha + m) * (combined + m) * x1 / ((alpha + beta + m) * (m + 1.0))
                        m += 1

                return sum_with_policy(terms(), pol)

        return IdentityCase(
            name="ex" + cid,
            spec=spec,
            closed_form=closed,
            oracle=_euler_oracle(spec, scale=scale),
            validity_note="combined exponent with constant 1/(1-x1) weight",
        )
    if cid == "4.3":
        alpha = params["alpha"]
        beta = params["beta"]
        alpha1 = params["alpha1"]
        x1 = params["x1"]
        lam = params["lam"]
        if not abs(x1) < 1.0:
            raise DomainError("case 4.3 needs |x1| < 1")
        spec = t3_spec(alpha, beta, -alpha1, 0.0, 1.0, -x1, 1.0, lam, p)
        spec.validate()
        return IdentityCase(
            name="ex4.3",
            spec=spec,
            closed_form=lambda pol: closed_form_theorem3(
                alpha, beta, -alpha1, 0.0, 1.0, -x1, 1.0, lam, p, pol),
            oracle=_euler_oracle(spec),
            validity_note="linear weight specialized to (1 - x1 t)^(-alpha1)",
        )
    if cid == "4.4":
        alpha = params["alpha"]
        beta = params["beta"]
        a = params["a"]
        b = params["b"]
        lam = params["lam"]
        spec = t4_spec(alpha, beta, a, b, 0.0, 0.0, lam, p)
        spec.validate()
        return IdentityCase(
            name="ex4.4",
            spec=spec,
            closed_form=lambda pol: closed_form_theorem4(alpha, beta, a, b, 0.0, 0.0,
                                                         lam, p, pol),
            oracle=_euler_oracle(spec),
            validity_note="flat weight: value is the inner series over (b - a)",
        )
    if cid == "4.5":
        alpha = params["alpha"]
        nu = params["nu"]
        mu = params["mu"]
        lam = params["lam"]
        spec = t4_spec(alpha, alpha, 0.0, 1.0, nu, mu, lam, p)
        spec.validate()
        return IdentityCase(
            name="ex4.5",
            spec=spec,
            closed_form=lambda pol: closed_form_theorem4(alpha, alpha, 0.0, 1.0, nu, mu,
                                                         lam, p, pol),
            oracle=_euler_oracle(spec),
            validity_note="symmetric exponents on (0, 1)",
        )
    raise DomainError(f"unknown application case {case_id!r}")
