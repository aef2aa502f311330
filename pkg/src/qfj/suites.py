"""Named verification suites behind the `verify` CLI command.

Each suite is a list of independent checks returning CheckResult records.
Checks favor exact equality where the arithmetic is exact and explicit
tolerances where quadrature or float evaluation is involved; every detail
string states what was compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError
from .fseries import (fj_blocks, fj_coefficient, fj_coefficient_via_moments,
                      fj_numeric, fj_series, fj_term, lambda_closed_form,
                      lambda_oracle)
from .pairings import (OrderedPairing, enumerate_pairings, weight,
                       weight_exponent_counts, weighted_pairing_sum)
from .qcalc import E_q, TruncationPolicy, XPoly, e_q, jackson_integral
from .qcore import QParam, q_bracket, q_double_factorial, q_factorial
from .qgauss import c_of_q, kernel_eval, moment_by_integration, moment_closed_form
from .qgraphs import graph_block_value, graph_sum_coefficient

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

SUITE_NAMES = ("qcalc", "gauss", "pairings", "lambda", "series", "graphs", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _default_q(q: QParam | None) -> QParam:
    return q if q is not None else QParam(Fraction(1, 2))


def _qfact_eval(n: int, qv: Fraction) -> Fraction:
    return q_factorial(n).eval(qv)


def _suite_qcalc(q: QParam) -> list[CheckResult]:
    qv = q.value
    out = []

    f = XPoly((Fraction(1), Fraction(0), Fraction(1)))          # 1 + x^2
    g = XPoly((Fraction(0), Fraction(1), Fraction(0), Fraction(1)))  # x + x^3
    lhs = (f * g).q_derivative(q)
    rhs = f.scale_argument(qv) * g.q_derivative(q) + f.q_derivative(q) * g
    ok = all(lhs(Fraction(x, 7)) == rhs(Fraction(x, 7)) for x in range(-14, 15))
    out.append(CheckResult("q-derivative-product-rule", ok,
                           "d_q(fg) = f(qx) d_q g + (d_q f) g on a rational grid"))

    p = XPoly((Fraction(0), Fraction(-2), Fraction(0), Fraction(1)))  # x^3 - 2x
    b = Fraction(2)
    integral = jackson_integral(p.q_derivative(q), b, q).value
    ok = integral == p(b) - p(Fraction(0))
    out.append(CheckResult("fundamental-theorem", ok,
                           f"integral of d_q(x^3-2x) over [0,2] = {integral}, "
                           f"boundary difference = {p(b) - p(Fraction(0))}"))

    u = XPoly((Fraction(0), Fraction(0), Fraction(1)))  # x^2
    v = XPoly((Fraction(0), Fraction(1)))               # x
    lhs = jackson_integral(u.scale_argument(qv) * v.q_derivative(q), b, q).value
    rhs = (u(b) * v(b) - u(Fraction(0)) * v(Fraction(0))
           - jackson_integral(u.q_derivative(q) * v, b, q).value)
    out.append(CheckResult("integration-by-parts", lhs == rhs,
                           f"both sides equal {lhs}"))

    probe_q = QParam(Fraction(999, 1000))
    quad = jackson_integral(XPoly((Fraction(0), Fraction(0), Fraction(1))),
                            Fraction(1), probe_q).value
    err = abs(quad - Fraction(1, 3))
    out.append(CheckResult("classical-integral-probe", err < Fraction(1, 1000),
                           f"integral of x^2 over [0,1] at q=0.999 is off by {float(err):.3e}"))

    worst = Fraction(0)
    for m in range(1, 13):
        acc = Fraction(0)
        for j in range(m + 1):
            acc += (Fraction((-1) ** j) * qv ** (j * (j - 1) // 2)
                    / (_qfact_eval(j, qv) * _qfact_eval(m - j, qv)))
        worst = max(worst, abs(acc))
    out.append(CheckResult("exponential-inverse-series", worst == 0,
                           "coefficients of e_q(x) E_q(-x) vanish through degree 12"))

    product = e_q(0.3, q) * E_q(-0.3, q)
    out.append(CheckResult("exponential-inverse-pointwise", abs(product - 1.0) < 1e-12,
                           f"e_q(0.3) E_q(-0.3) = {product!r}"))
    return out


def _suite_gauss(q: QParam) -> list[CheckResult]:
    qv = q.value
    out = []
    exact = TruncationPolicy.exact(64)

    pts = [Fraction(3, 2), Fraction(1, 4), Fraction(9, 8)]
    ok = all(kernel_eval(x, q, exact) == kernel_eval(-x, q, exact) for x in pts)
    out.append(CheckResult("kernel-even", ok, "kernel(x) = kernel(-x) exactly"))

    worst = 0.0
    for k in (0, 2, 4):
        closed = float(moment_closed_form(k // 2).eval(qv))
        quad = moment_by_integration(k, q)
        worst = max(worst, abs(quad - closed))
    out.append(CheckResult("moments-match-closed-form", worst < 1e-8,
                           f"max |quadrature - closed form| = {worst:.3e} over k in 0,2,4"))

    odd = [moment_by_integration(k, q) for k in (1, 3, 5)]
    out.append(CheckResult("odd-moments-vanish", all(v == 0 for v in odd),
                           "odd moments are exactly zero by declared parity"))

    worst = 0.0
    for n in (1, 2):
        ratio = moment_by_integration(2 * n + 2, q) / moment_by_integration(2 * n, q)
        target = float(q_bracket(2 * n + 1).eval(qv))
        worst = max(worst, abs(ratio - target))
    out.append(CheckResult("moment-recursion", worst < 1e-8,
                           f"max |m(2n+2)/m(2n) - [2n+1]_q| = {worst:.3e}"))

    a = c_of_q(q, method="interchanged_sum").float_value
    b = c_of_q(q, method="double_sum").float_value
    out.append(CheckResult("normalization-methods-agree", abs(a - b) < 1e-12,
                           f"interchanged {a!r} vs double {b!r}"))

    errs = [abs(c_of_q(QParam(Fraction(p, 1000))).float_value - SQRT_TWO_PI)
            for p in (900, 990)]
    out.append(CheckResult("normalization-classical-trend", errs[1] < errs[0],
                           f"|c(q) - sqrt(2 pi)|: {errs[0]:.3e} at q=0.9, "
                           f"{errs[1]:.3e} at q=0.99"))
    return out


def _suite_pairings(q: QParam) -> list[CheckResult]:
    out = []

    counts_ok = all(len(enumerate_pairings(n)) == math.prod(range(1, 2 * n, 2))
                    for n in range(1, 6))
    out.append(CheckResult("pairing-count", counts_ok,
                           "(2n-1)!! pairings enumerated for n = 1..5"))

    identity_ok = all(weighted_pairing_sum(n) == q_double_factorial(n)
                      for n in range(1, 7))
    out.append(CheckResult("weighted-sum-identity", identity_ok,
                           "sum of pairing weights equals the q-double factorial, n = 1..6"))

    exps = sorted(weight(p).as_monomial()[0] for p in enumerate_pairings(2))
    out.append(CheckResult("n2-weight-spectrum", exps == [0, 1, 2],
                           f"n=2 exponents are {exps}"))

    max_ok = all(max(weight_exponent_counts(n)) == n * (n - 1) for n in range(1, 7))
    out.append(CheckResult("max-exponent", max_ok,
                           "largest weight exponent is n(n-1), n = 1..6"))

    degeneration_ok = all(
        weighted_pairing_sum(n).eval(Fraction(1)) == math.prod(range(1, 2 * n, 2))
        for n in range(1, 7))
    out.append(CheckResult("q-one-degeneration", degeneration_ok,
                           "weights collapse to the bare pairing count at q = 1"))
    return out


def _suite_lambda(q: QParam) -> list[CheckResult]:
    out = []

    table = lambda_oracle(6, 6, q)
    mismatches = [(c, d) for c in range(7) for d in range(7)
                  if c + d <= 6 and lambda_closed_form(c, d, q) != table.lam(c, d)]
    out.append(CheckResult("closed-form-matches-oracle", not mismatches,
                           f"checked c+d <= 6 at q={q}; mismatches: {mismatches or 'none'}"))

    row_ok = (lambda_closed_form(0, 0, q) == 1
              and all(lambda_closed_form(c, 0, q) == 0 for c in range(1, 7)))
    out.append(CheckResult("row-zero-collapses", row_ok,
                           "lambda_{c,0} is 1 at c=0 and vanishes for c >= 1"))

    probe_q = QParam(Fraction(999, 1000))
    worst = 0.0
    for d in range(4):
        value = float(lambda_closed_form(0, d, probe_q)) * math.factorial(d)
        worst = max(worst, abs(value - 1.0))
    out.append(CheckResult("classical-diagonal-probe", worst < 0.01,
                           f"max |d! lambda_(0,d) - 1| = {worst:.3e} at q=0.999"))
    return out


def _suite_series(q: QParam) -> list[CheckResult]:
    qv = q.value
    out = []

    blocks = fj_blocks(0, q, 6)
    ok = blocks[0] == 1 and all(b == 0 for b in blocks[1:])
    out.append(CheckResult("g0-normalizes", ok,
                           "g^0 coefficient is 1 with every c >= 1 block cancelling"))

    odd_ok = all(fj_coefficient(m, q) == 0 for m in (1, 3, 5))
    out.append(CheckResult("odd-powers-vanish", odd_ok,
                           "odd series coefficients are exactly zero"))

    route_ok = all(
        fj_coefficient(m, probe, 6) == fj_coefficient_via_moments(m, probe, 6)
        for m in (0, 2) for probe in (q, QParam(Fraction(1, 4))))
    out.append(CheckResult("moment-route-agreement", route_ok,
                           "direct series and moment resummation agree exactly, m = 0, 2"))

    errs = [abs(float(fj_coefficient(2, QParam(Fraction(p, 1000)), 12)) - 5.0 / 24.0)
            for p in (900, 990)]
    out.append(CheckResult("classical-limit-trend", errs[1] < errs[0],
                           f"|A2(q) - 5/24|: {errs[0]:.3e} at q=0.9, {errs[1]:.3e} at q=0.99"))

    series = fj_series(4, q)
    numeric = fj_numeric(0.05, q)
    gap = abs(numeric - series.eval(0.05))
    out.append(CheckResult("numeric-matches-series", gap < 1e-10,
                           f"float quadrature vs order-4 series at g=0.05: gap {gap:.3e}"))

    out.append(_g6_scaling_check(q))
    return out


def _g6_scaling_check(q: QParam) -> CheckResult:
    """Residual against the order-4 series must scale like g^6.

    Needs the high-precision quadrature: at g = 0.025 the residual is below
    1e-19, far under float64 resolution on values near 1. max_c = 36 keeps the
    series truncation error orders below the residual being measured.
    """
    dps = 60
    series = fj_series(4, q, max_c=36)
    gs = (Fraction(1, 10), Fraction(1, 20), Fraction(1, 40))
    errs = []
    with mp.workdps(dps):
        for g in gs:
            numeric = fj_numeric(g, q, dps=dps)
            exact = series.eval(g).rational_part
            target = mp.mpf(exact.numerator) / exact.denominator
            errs.append(abs(numeric - target))
        ratios = [errs[0] / errs[1], errs[1] / errs[2]]
        ok = all(32 <= r <= 128 for r in ratios)
        detail = (f"residual ratios under g -> g/2: "
                  f"{float(ratios[0]):.1f}, {float(ratios[1]):.1f} (want ~64)")
    return CheckResult("g6-scaling", ok, detail)


def _suite_graphs(q: QParam) -> list[CheckResult]:
    out = []

    one = graph_block_value(0, 0, 0, q)
    rows_ok = one == 1
    for c in (1, 2):
        row = sum((graph_block_value(c, 0, k, q) for k in range(c + 1)),
                  start=graph_block_value(0, 0, 0, q) * 0)
        rows_ok = rows_ok and row == 0
    out.append(CheckResult("g0-block-cancellation", rows_ok,
                           "kernel-only rows cancel: c=0 gives 1, c=1,2 give 0"))

    mismatches = []
    for probe in (q, QParam(Fraction(1, 4))):
        for dprime in (0, 2):
            for c in range((12 - 3 * dprime) // 2 + 1):
                for k in range(c + 1):
                    if graph_block_value(c, dprime, k, probe) != fj_term(
                            c, k, dprime // 2, probe):
                        mismatches.append((c, dprime, k, str(probe)))
    out.append(CheckResult("blocks-match-series-terms", not mismatches,
                           f"all blocks with <= 12 flags; mismatches: {mismatches or 'none'}"))

    forward = weighted_pairing_sum(4)
    size = 8
    reversed_total = sum(
        (weight(_reverse_pairing(p, size)) for p in enumerate_pairings(4)),
        start=forward * 0)
    out.append(CheckResult("flag-order-independence", reversed_total == forward,
                           "pairing weight sum is invariant under reversing the flag line"))

    agg_ok = graph_sum_coefficient(2, q, max_c=3) == fj_coefficient(2, q, 3)
    out.append(CheckResult("aggregate-matches-series", agg_ok,
                           "graph sum reproduces the g^2 coefficient at max_c = 3"))
    return out


def _reverse_pairing(p: OrderedPairing, size: int) -> OrderedPairing:
    pairs = sorted((size + 1 - b, size + 1 - a) for a, b in p.pairs)
    return OrderedPairing(tuple(pairs))


_SUITES = {
    "qcalc": _suite_qcalc,
    "gauss": _suite_gauss,
    "pairings": _suite_pairings,
    "lambda": _suite_lambda,
    "series": _suite_series,
    "graphs": _suite_graphs,
}


def run_suite(name: str, q: QParam | None = None) -> list[CheckResult]:
    """Run one named suite (or 'all') at the given q, default 1/2."""
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    qp = _default_q(q)
    if name == "all":
        results = []
        for key in SUITE_NAMES[:-1]:
            results.extend(_SUITES[key](qp))
        return results
    return _SUITES[name](qp)
