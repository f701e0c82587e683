"""Margin-reporting certifiers for the arithmetic-harmonic mean inequalities.

Every certifier evaluates one inequality on concrete inputs and returns a
:class:`CertificateReport` with one named margin per inequality side.  A
margin is the amount by which the side holds (smallest eigenvalue of the
matrix difference, or the scalar difference); the inequality is certified
when every margin is at least ``-tol``.  Strict inequalities degrade to this
margin form in floating point; inputs too close to the degenerate set of a
strict inequality produce a ``degenerate`` report instead of a verdict.

Naming: the "gap" of a pair is its arithmetic-minus-harmonic difference
``A_v - H_v`` (scalar) or ``A nabla_v B - A !_v B`` (matrix).  The checks
cover, in rough order: the scalar and matrix arithmetic-geometric-harmonic
chains; two-sided bounds on ratios of powered gaps; the half-weight (tau =
1/2) specializations; curvature-based sandwiches; a one-argument spectral
cap for ordered pairs; Hilbert-Schmidt norm versions weighted by a third
matrix; and determinant versions.  Two probes confirm that stated bounds
are sharp by walking toward their limits.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import means
from .errors import RequiresOrdered, WeightOrder, HypothesisViolated
from .linalg import (
    HermitianMatrix,
    OrderVerdict,
    SpdMatrix,
    default_loewner_tol,
    det_hermitian,
    hs_norm,
    logdet_spd,
    loewner_leq,
)
from .means import ScalarPair

#: Base rate for margin tolerances: tol = TOL_RATE * tol_scale * (quantity scale + 1).
TOL_RATE = 1e-9

#: Relative operand gap below which strict-inequality certifiers report degenerate.
NEAR_EQUAL_GUARD = 1e-8

#: Smallest eigenvalue of the tau-gap, relative to the arithmetic mean's norm,
#: below which the determinant-root bound is reported degenerate.
DET_GAP_FLOOR = 1e-10

#: Denominator floor (relative to its norm scale) for the Hilbert-Schmidt ratio.
HS_DENOMINATOR_FLOOR = 1e-8


@dataclass(frozen=True)
class CertificateReport:
    """Per-inequality verdict with named margins.

    ``holds`` is True when every margin is at least ``-tol_used``; a
    ``degenerate`` report means the inequality's hypotheses exclude the
    input (verdict not applicable, ``holds`` set True by convention).
    ``witness`` carries the serialized inputs whenever ``holds`` is False.
    """

    inequality_id: str
    holds: bool
    margins: dict[str, float] = field(default_factory=dict)
    tol_used: float = 0.0
    degenerate: bool = False
    witness: dict | None = None

    def __post_init__(self):
        if not self.holds and not self.degenerate and self.witness is None:
            raise ValueError("failing report requires a witness")

    @property
    def verdict(self) -> str:
        if self.degenerate:
            return "degenerate"
        return "pass" if self.holds else "fail"


@dataclass(frozen=True)
class BoundsHypothesis:
    """Spectral bounds ``0 < m I <= . <= M I`` supplied with an ordered pair."""

    m: float
    M: float

    def __post_init__(self):
        if not (np.isfinite(self.m) and np.isfinite(self.M) and 0 < self.m <= self.M):
            raise ValueError(f"bounds must satisfy 0 < m <= M, got m={self.m}, M={self.M}")


def matrix_payload(mat: np.ndarray) -> list:
    """Nested-list form of a complex matrix, entries as [re, im] pairs."""
    arr = np.asarray(mat, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def _serialize(value):
    if isinstance(value, HermitianMatrix):
        return matrix_payload(value.mat)
    if isinstance(value, np.ndarray):
        return matrix_payload(value)
    if isinstance(value, ScalarPair):
        return {"a": value.a, "b": value.b}
    if isinstance(value, BoundsHypothesis):
        return {"m": value.m, "M": value.M}
    if isinstance(value, (list, tuple)):
        return [float(x) for x in value]
    return float(value)


def _finish(ineq_id: str, margins: dict[str, float], tol: float, inputs: dict) -> CertificateReport:
    holds = all(m >= -tol for m in margins.values())
    witness = None if holds else {name: _serialize(v) for name, v in inputs.items()}
    return CertificateReport(ineq_id, holds, margins, float(tol), False, witness)


def _degenerate(ineq_id: str, tol: float) -> CertificateReport:
    return CertificateReport(ineq_id, True, {}, float(tol), True, None)


def _check_weight(v: float, lo: float = 0.0, hi: float = 1.0, open_interval: bool = False):
    if open_interval:
        if not (lo < v < hi):
            raise ValueError(f"weight must lie in ({lo}, {hi}), got {v}")
    elif not (lo <= v <= hi):
        raise ValueError(f"weight must lie in [{lo}, {hi}], got {v}")


def _check_lam(lam: float):
    if not (np.isfinite(lam) and lam >= 1):
        raise ValueError(f"power must satisfy lam >= 1, got {lam}")


def _min_eig(h: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(h)[0])


# ---------------------------------------------------------------------------
# scalar chain and two-sided gap bounds
# ---------------------------------------------------------------------------


def check_scalar_agh(pair: ScalarPair, v: float, tol_scale: float = 1.0) -> CertificateReport:
    """Scalar chain ``H_v <= G_v <= A_v`` (equality iff a = b)."""
    _check_weight(v)
    g = means.scalar_geo(v, pair)
    h = means.scalar_harm(v, pair)
    s = means.scalar_arith(v, pair)
    tol = TOL_RATE * tol_scale * (pair.a + pair.b + 1.0)
    margins = {"geo_minus_harm": g - h, "arith_minus_geo": s - g}
    return _finish("scalar_agh", margins, tol, {"pair": pair, "v": v})


def check_matrix_agh(a: SpdMatrix, b: SpdMatrix, v: float, tol_scale: float = 1.0) -> CertificateReport:
    """Matrix chain ``A !_v B <= A #_v B <= A nabla_v B`` in the semidefinite order."""
    _check_weight(v)
    geo = means.mat_geo(a, b, v)
    harm = means.mat_harm(a, b, v)
    arith = means.mat_arith(a, b, v)
    tol = default_loewner_tol(a, b) * tol_scale
    margins = {
        "geo_minus_harm": _min_eig(geo.mat - harm.mat),
        "arith_minus_geo": _min_eig(arith.mat - geo.mat),
    }
    return _finish("matrix_agh", margins, tol, {"A": a, "B": b, "v": v})


def check_gap_ratio(
    pair: ScalarPair, v: float, tau: float, lam: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Two-sided bound on the powered-gap ratio for ``0 < v < tau < 1``:

        ``(v/tau)^lam < (A_v^lam - H_v^lam)/(A_tau^lam - H_tau^lam)
          < ((1-v)/(1-tau))^lam``.

    Near-equal operands (the ratio's 0/0 set) give a degenerate report.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v >= tau:
        raise WeightOrder(f"requires v < tau, got v={v}, tau={tau}")
    _check_lam(lam)
    lower = (v / tau) ** lam
    upper = ((1 - v) / (1 - tau)) ** lam
    tol = TOL_RATE * tol_scale * (upper + 1.0)
    if pair.is_degenerate(NEAR_EQUAL_GUARD):
        return _degenerate("gap_ratio", tol)
    ratio = means.gap_power_ratio(v, tau, lam, pair)
    margins = {"above_lower": ratio - lower, "below_upper": upper - ratio}
    return _finish("gap_ratio", margins, tol, {"pair": pair, "v": v, "tau": tau, "lam": lam})


def probe_gap_ratio_limits(
    v: float,
    tau: float,
    lam: float,
    b: float = 1.0,
    eps_list: tuple[float, ...] = (1e-2, 1e-4, 1e-6, 1e-8),
    tol_scale: float = 1.0,
) -> CertificateReport:
    """Sharpness probe for the powered-gap ratio bounds.

    Evaluates the ratio at ``a = b * eps`` (approaching the upper bound) and
    ``a = b / eps`` (approaching the lower bound) for each ``eps``, reporting
    the gap to the respective bound and requiring both gap sequences to be
    non-increasing as ``eps`` decreases.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v >= tau:
        raise WeightOrder(f"requires v < tau, got v={v}, tau={tau}")
    _check_lam(lam)
    if not (np.isfinite(b) and b > 0):
        raise ValueError(f"b must be a positive real, got {b}")
    eps_sorted = tuple(sorted(eps_list, reverse=True))
    if not eps_sorted:
        raise ValueError("eps_list must not be empty")
    for eps in eps_sorted:
        if not (1e-12 <= eps < 1):
            raise ValueError(f"eps must lie in [1e-12, 1), got {eps}")
    lower = (v / tau) ** lam
    upper = ((1 - v) / (1 - tau)) ** lam
    small_gaps, large_gaps = [], []
    margins: dict[str, float] = {}
    for eps in eps_sorted:
        r_small = means.gap_power_ratio(v, tau, lam, ScalarPair(b * eps, b))
        r_large = means.gap_power_ratio(v, tau, lam, ScalarPair(b / eps, b))
        small_gaps.append(abs(r_small - upper))
        large_gaps.append(abs(r_large - lower))
        margins[f"small_a_gap[{eps!r}]"] = small_gaps[-1]
        margins[f"large_a_gap[{eps!r}]"] = large_gaps[-1]
    mono_tol = 1e-12 * tol_scale * (upper + 1.0)
    margins["small_a_monotone"] = min(
        (small_gaps[k] - small_gaps[k + 1] for k in range(len(small_gaps) - 1)), default=0.0
    )
    margins["large_a_monotone"] = min(
        (large_gaps[k] - large_gaps[k + 1] for k in range(len(large_gaps) - 1)), default=0.0
    )
    gap_values = {k: m for k, m in margins.items() if k.endswith("]")}
    mono = {k: m for k, m in margins.items() if k.endswith("monotone")}
    holds = all(m >= -mono_tol for m in mono.values())
    witness = None
    if not holds:
        witness = {
            "v": v, "tau": tau, "lam": lam, "b": b,
            "eps_list": [float(e) for e in eps_sorted],
        }
    return CertificateReport(
        "gap_ratio_limits", holds, {**gap_values, **mono}, mono_tol, False, witness
    )


def check_half_weight_gap(
    pair: ScalarPair, v: float, squared: bool = False, tol_scale: float = 1.0
) -> CertificateReport:
    """Gap bounds against the half-weight gap, both weight regimes combined:

        ``2 min(v, 1-v) (A - H) <= A_v - H_v <= 2 max(v, 1-v) (A - H)``

    where ``A``, ``H`` are the equal-weight means.  With ``squared=True``
    the same holds for squared means with factors ``4 min^2`` and ``4 max^2``.
    """
    _check_weight(v, open_interval=True)
    if squared:
        base = means.scalar_arith(0.5, pair) ** 2 - means.scalar_harm(0.5, pair) ** 2
        mid = means.scalar_arith(v, pair) ** 2 - means.scalar_harm(v, pair) ** 2
        lo_f, hi_f = 4 * min(v, 1 - v) ** 2, 4 * max(v, 1 - v) ** 2
        scale = (pair.a + pair.b) ** 2 + 1.0
    else:
        base = means.scalar_arith(0.5, pair) - means.scalar_harm(0.5, pair)
        mid = means.scalar_arith(v, pair) - means.scalar_harm(v, pair)
        lo_f, hi_f = 2 * min(v, 1 - v), 2 * max(v, 1 - v)
        scale = pair.a + pair.b + 1.0
    tol = TOL_RATE * tol_scale * scale
    margins = {"above_lower": mid - lo_f * base, "below_upper": hi_f * base - mid}
    return _finish(
        "half_weight_gap", margins, tol, {"pair": pair, "v": v, "squared": float(squared)}
    )


def check_inverse_convexity_gap(pair: ScalarPair, v: float, tol_scale: float = 1.0) -> CertificateReport:
    """Curvature sandwich for ``f(x) = 1/x`` on ``[a, b]`` with ``a < b``:

        ``(v(1-v)/2)(b-a)^2 (2/b^3) <= v/a + (1-v)/b - 1/(v a + (1-v) b)
          <= (v(1-v)/2)(b-a)^2 (2/a^3)``

    (the second derivative of ``1/x`` ranges over ``[2/b^3, 2/a^3]`` there).
    """
    _check_weight(v, open_interval=True)
    a, b = pair.a, pair.b
    if a >= b:
        raise RequiresOrdered(f"requires a < b, got a={a}, b={b}")
    tol = TOL_RATE * tol_scale * (1 / a + 1 / b + 1.0)
    if pair.is_degenerate(NEAR_EQUAL_GUARD):
        return _degenerate("inverse_convexity", tol)
    mid = v / a + (1 - v) / b - 1.0 / (v * a + (1 - v) * b)
    coeff = 0.5 * v * (1 - v) * (b - a) ** 2
    margins = {
        "above_lower": mid - coeff * (2.0 / b**3),
        "below_upper": coeff * (2.0 / a**3) - mid,
    }
    return _finish("inverse_convexity", margins, tol, {"pair": pair, "v": v})


def check_one_sided_gap(pair: ScalarPair, v: float, tol_scale: float = 1.0) -> CertificateReport:
    """One-argument bounds on the gap for ``0 < a < b``:

        ``v(1-v)(1 - a/b)^2 a <= A_v - H_v <= v(1-v)(1 - b/a)^2 b``.
    """
    _check_weight(v, open_interval=True)
    a, b = pair.a, pair.b
    if a >= b:
        raise RequiresOrdered(f"requires a < b, got a={a}, b={b}")
    tol = TOL_RATE * tol_scale * (a + b + 1.0)
    if pair.is_degenerate(NEAR_EQUAL_GUARD):
        return _degenerate("one_sided_gap", tol)
    mid = means.scalar_arith(v, pair) - means.scalar_harm(v, pair)
    lower = v * (1 - v) * (1 - a / b) ** 2 * a
    upper = v * (1 - v) * (1 - b / a) ** 2 * b
    margins = {"above_lower": mid - lower, "below_upper": upper - mid}
    return _finish("one_sided_gap", margins, tol, {"pair": pair, "v": v})


def probe_normalized_gap(
    v: float,
    t_list: tuple[float, ...] = (1 + 1e-6, 1 + 1e-4, 1 + 1e-2, 2.0, 10.0),
    tol_scale: float = 1.0,
) -> CertificateReport:
    """Sharpness probe for the ``v(1-v)`` factor in the one-argument bounds.

    The normalized gap ``g_v(t)`` (see :func:`meancert.means.normalized_gap`)
    satisfies ``v(1-v)/t <= g_v(t) <= v(1-v)`` for ``t > 1`` and tends to
    ``v(1-v)`` as ``t -> 1``, so the factor cannot be improved.  Reports the
    sandwich margins at each ``t`` and requires ``|g_v(t) - v(1-v)|`` to
    shrink monotonically as ``t`` decreases toward 1.
    """
    _check_weight(v, open_interval=True)
    ts = tuple(sorted(t_list))
    if not ts:
        raise ValueError("t_list must not be empty")
    for t in ts:
        if not (np.isfinite(t) and t > 1):
            raise ValueError(f"each t must exceed 1, got {t}")
    sharp = v * (1 - v)
    tol = 1e-12 * tol_scale * (sharp + 1.0)
    margins: dict[str, float] = {}
    gaps = []
    for t in ts:
        g = means.normalized_gap(v, t)
        gaps.append(abs(g - sharp))
        margins[f"gap[{t!r}]"] = gaps[-1]
        margins[f"below_factor[{t!r}]"] = sharp - g
        margins[f"above_scaled[{t!r}]"] = g - sharp / t
    margins["gap_monotone"] = min(
        (gaps[k + 1] - gaps[k] for k in range(len(gaps) - 1)), default=0.0
    )
    checked = {k: m for k, m in margins.items() if not k.startswith("gap[")}
    holds = all(m >= -tol for m in checked.values())
    witness = None if holds else {"v": v, "t_list": [float(t) for t in ts]}
    return CertificateReport("normalized_gap_limit", holds, margins, tol, False, witness)


# ---------------------------------------------------------------------------
# semidefinite-order versions
# ---------------------------------------------------------------------------


def check_matrix_gap_ratio(
    a: SpdMatrix, b: SpdMatrix, v: float, tau: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Semidefinite-order bounds on the matrix gap for ``0 < v <= tau < 1``:

        ``(v/tau) G_tau <= G_v <= ((1-v)/(1-tau)) G_tau``

    where ``G_w = A nabla_w B - A !_w B``.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v > tau:
        raise WeightOrder(f"requires v <= tau, got v={v}, tau={tau}")
    gap_v = means.mat_arith(a, b, v).mat - means.mat_harm(a, b, v).mat
    gap_t = means.mat_arith(a, b, tau).mat - means.mat_harm(a, b, tau).mat
    tol = default_loewner_tol(a, b) * tol_scale
    margins = {
        "above_lower": _min_eig(gap_v - (v / tau) * gap_t),
        "below_upper": _min_eig(((1 - v) / (1 - tau)) * gap_t - gap_v),
    }
    return _finish("matrix_gap_ratio", margins, tol, {"A": a, "B": b, "v": v, "tau": tau})


def check_matrix_half_weight_gap(
    a: SpdMatrix, b: SpdMatrix, v: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Half-weight specialization for ``0 < v <= 1/2``:

        ``2v (A nabla B - A ! B) <= A nabla_v B - A !_v B
          <= 2(1-v) (A nabla B - A ! B)``.
    """
    if not 0 < v <= 0.5:
        raise ValueError(f"weight must lie in (0, 1/2], got {v}")
    report = check_matrix_gap_ratio(a, b, v, 0.5, tol_scale)
    return dataclasses.replace(report, inequality_id="matrix_half_weight_gap")


def spread_hypothesis_verdicts(
    a: SpdMatrix, b: SpdMatrix, bounds: BoundsHypothesis, tol: float | None = None
) -> dict[str, OrderVerdict]:
    """The four order checks of the hypothesis ``0 < mI <= A <= B <= MI``."""
    n = a.dim
    zero = HermitianMatrix(np.zeros((n, n)))
    m_eye = HermitianMatrix(bounds.m * np.eye(n))
    big_eye = HermitianMatrix(bounds.M * np.eye(n))
    return {
        "positive_lower_bound": loewner_leq(zero, m_eye, tol),
        "lower_bound_leq_first": loewner_leq(m_eye, a, tol),
        "first_leq_second": loewner_leq(a, b, tol),
        "second_leq_upper_bound": loewner_leq(b, big_eye, tol),
    }


def check_spread_gap_cap(
    a: SpdMatrix, b: SpdMatrix, v: float, bounds: BoundsHypothesis, tol_scale: float = 1.0
) -> CertificateReport:
    """One-argument cap on the matrix gap under ``0 < mI <= A <= B <= MI``:

        ``A nabla_v B - A !_v B <= v(1-v) (1 - M/m)^2 B``.

    The four hypothesis checks run first and a failing one raises
    :class:`HypothesisViolated` naming it.
    """
    _check_weight(v)
    hyp_tol = default_loewner_tol(a, b) * tol_scale
    for name, verdict in spread_hypothesis_verdicts(a, b, bounds, hyp_tol).items():
        if not verdict.holds:
            raise HypothesisViolated(name, verdict.margin)
    coeff = v * (1 - v) * (1 - bounds.M / bounds.m) ** 2
    gap = means.mat_arith(a, b, v).mat - means.mat_harm(a, b, v).mat
    margin = _min_eig(coeff * b.mat - gap)
    tol = TOL_RATE * tol_scale * ((coeff + 1.0) * hs_norm(b) + hs_norm(a) + 1.0)
    return _finish(
        "spread_gap_cap",
        {"cap_minus_gap": margin},
        tol,
        {"A": a, "B": b, "v": v, "bounds": bounds},
    )


# ---------------------------------------------------------------------------
# Hilbert-Schmidt norm versions (third matrix X between the operands)
# ---------------------------------------------------------------------------


def _hs_gap_squared(a: SpdMatrix, b: SpdMatrix, x, v: float) -> tuple[float, float]:
    """(||arith||_F^2 - ||harm||_F^2, sum of the two squares) at weight v."""
    na = hs_norm(means.x_arith(a, b, x, v)) ** 2
    nh = hs_norm(means.x_harm(a, b, x, v)) ** 2
    return na - nh, na + nh


def check_hs_gap_ratio(
    a: SpdMatrix, b: SpdMatrix, x, v: float, tau: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Squared-norm gap-ratio bounds for the one-sided means, ``0 < v <= tau < 1``:

        ``(v/tau)^2 <= D(v)/D(tau) <= ((1-v)/(1-tau))^2``

    where ``D(w) = ||v A X + ...||_F^2 - ||x_harm(A, B, X, w)||_F^2``.  A
    vanishing denominator ``D(tau)`` gives a degenerate report.  The margin
    tolerance is scaled by the ratio's cancellation factor (norm scale over
    ``|D(tau)|``), since that is the comparison's actual conditioning.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v > tau:
        raise WeightOrder(f"requires v <= tau, got v={v}, tau={tau}")
    dnum, snum = _hs_gap_squared(a, b, x, v)
    dden, sden = _hs_gap_squared(a, b, x, tau)
    if abs(dden) <= HS_DENOMINATOR_FLOOR * (sden + 1.0):
        return _degenerate("hs_gap_ratio", TOL_RATE * tol_scale)
    ratio = dnum / dden
    lower = (v / tau) ** 2
    upper = ((1 - v) / (1 - tau)) ** 2
    tol = TOL_RATE * tol_scale * ((snum + abs(ratio) * sden) / abs(dden) + 1.0)
    margins = {"above_lower": ratio - lower, "below_upper": upper - ratio}
    return _finish(
        "hs_gap_ratio", margins, tol, {"A": a, "B": b, "X": np.asarray(x), "v": v, "tau": tau}
    )


def check_hs_agh_chain(
    a: SpdMatrix, b: SpdMatrix, x, v: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Squared-norm chain for the one-sided means:

        ``||v A X + (1-v) X B||_F^2 >= ||A^v X B^(1-v)||_F^2
          >= ||x_harm(A, B, X, v)||_F^2``.
    """
    _check_weight(v)
    na = hs_norm(means.x_arith(a, b, x, v)) ** 2
    ng = hs_norm(means.x_geo(a, b, x, v)) ** 2
    nh = hs_norm(means.x_harm(a, b, x, v)) ** 2
    tol = TOL_RATE * tol_scale * (na + ng + nh + 1.0)
    margins = {"arith_minus_geo": na - ng, "geo_minus_harm": ng - nh}
    return _finish("hs_agh_chain", margins, tol, {"A": a, "B": b, "X": np.asarray(x), "v": v})


def check_hs_half_weight_gap(
    a: SpdMatrix, b: SpdMatrix, x, v: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Squared-norm gap against the half-weight gap, ``0 < v <= 1/2``:

        ``4 v^2 D(1/2) <= D(v) <= 4 (1-v)^2 D(1/2)``

    with ``D`` as in :func:`check_hs_gap_ratio`.
    """
    if not 0 < v <= 0.5:
        raise ValueError(f"weight must lie in (0, 1/2], got {v}")
    d_v, s_v = _hs_gap_squared(a, b, x, v)
    d_half, s_half = _hs_gap_squared(a, b, x, 0.5)
    tol = TOL_RATE * tol_scale * (s_v + s_half + 1.0)
    margins = {
        "above_lower": d_v - 4 * v**2 * d_half,
        "below_upper": 4 * (1 - v) ** 2 * d_half - d_v,
    }
    return _finish(
        "hs_half_weight_gap", margins, tol, {"A": a, "B": b, "X": np.asarray(x), "v": v}
    )


# ---------------------------------------------------------------------------
# determinant versions
# ---------------------------------------------------------------------------


def _stable_power_difference(log_x: float, log_y: float, lam: float) -> float:
    """``exp(lam log_x) - exp(lam log_y)`` without cancellation or inf - inf."""
    with np.errstate(over="ignore"):
        delta = np.expm1(lam * (log_y - log_x))
        if delta == 0.0:
            return 0.0
        return float(-np.exp(lam * log_x) * delta)


def check_det_power_order(
    a: SpdMatrix, b: SpdMatrix, v: float, lam: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Determinant order ``det(A !_v B)^lam <= det(A nabla_v B)^lam``.

    Computed in log-determinant space to survive ``lam``-th powers of large
    determinants.
    """
    _check_weight(v)
    _check_lam(lam)
    ld_arith = logdet_spd(means.mat_arith(a, b, v))
    ld_harm = logdet_spd(means.mat_harm(a, b, v))
    margin = _stable_power_difference(ld_arith, ld_harm, lam)
    with np.errstate(over="ignore"):
        scale = float(np.exp(lam * ld_arith) + np.exp(lam * ld_harm))
    tol = TOL_RATE * tol_scale * (scale + 1.0)
    return _finish(
        "det_power_order", {"det_power_gap": margin}, tol, {"A": a, "B": b, "v": v, "lam": lam}
    )


def check_minkowski_products(a_vec, b_vec, tol_scale: float = 1.0) -> CertificateReport:
    """Product inequality for positive vectors:

        ``(prod a_i)^(1/n) + (prod b_i)^(1/n) <= (prod (a_i + b_i))^(1/n)``.

    The report flags observed equality (margin within tolerance) without
    asserting when it must occur.
    """
    av = np.asarray(a_vec, dtype=float)
    bv = np.asarray(b_vec, dtype=float)
    if av.ndim != 1 or av.shape != bv.shape or av.size < 1:
        raise ValueError("expected two positive vectors of equal nonzero length")
    if not (np.all(av > 0) and np.all(bv > 0)):
        raise ValueError("vector entries must be strictly positive")
    ga = float(np.exp(np.mean(np.log(av))))
    gb = float(np.exp(np.mean(np.log(bv))))
    gs = float(np.exp(np.mean(np.log(av + bv))))
    margin = gs - ga - gb
    tol = TOL_RATE * tol_scale * (gs + ga + gb + 1.0)
    margins = {"minkowski_gap": margin, "equality_observed": float(abs(margin) <= tol)}
    holds = margin >= -tol
    witness = None if holds else {"a_vec": _serialize(list(av)), "b_vec": _serialize(list(bv))}
    return CertificateReport("minkowski_products", holds, margins, tol, False, witness)


def check_power_difference(a: float, b: float, lam: float, tol_scale: float = 1.0) -> CertificateReport:
    """Power-difference inequality ``a^lam - b^lam >= (a - b)^lam`` for ``a > b > 0``."""
    if not (np.isfinite(a) and np.isfinite(b) and b > 0):
        raise ValueError(f"requires finite a and b with b > 0, got a={a}, b={b}")
    if a <= b:
        raise RequiresOrdered(f"requires a > b, got a={a}, b={b}")
    _check_lam(lam)
    margin = a**lam - b**lam - (a - b) ** lam
    tol = TOL_RATE * tol_scale * (a**lam + 1.0)
    return _finish("power_difference", {"power_gap": margin}, tol, {"a": a, "b": b, "lam": lam})


def check_det_root_gap(
    a: SpdMatrix, b: SpdMatrix, v: float, tau: float, lam: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Determinant-root lower bound on the gap, ``0 < v <= tau < 1``, ``lam >= 1``:

        ``(v/tau)^lam det(G_tau)^(lam/n)
          <= det(A nabla_v B)^(lam/n) - det(A !_v B)^(lam/n)``

    with ``G_tau`` the tau-weighted gap matrix.  A numerically singular
    ``G_tau`` (the two operands nearly equal) gives a degenerate report since
    its determinant root is then meaningless.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v > tau:
        raise WeightOrder(f"requires v <= tau, got v={v}, tau={tau}")
    _check_lam(lam)
    n = a.dim
    arith_tau = means.mat_arith(a, b, tau)
    gap_tau = arith_tau.mat - means.mat_harm(a, b, tau).mat
    gap_eigs = np.linalg.eigvalsh(gap_tau)
    tol_base = TOL_RATE * tol_scale
    if gap_eigs[0] <= DET_GAP_FLOOR * hs_norm(arith_tau):
        return _degenerate("det_root_gap", tol_base)
    ld_arith = logdet_spd(means.mat_arith(a, b, v))
    ld_harm = logdet_spd(means.mat_harm(a, b, v))
    ld_gap = float(np.sum(np.log(gap_eigs)))
    t_gap = (v / tau) ** lam * np.exp(lam / n * ld_gap)
    margin = _stable_power_difference(ld_arith, ld_harm, lam / n) - t_gap
    scale = float(np.exp(lam / n * ld_arith) + np.exp(lam / n * ld_harm) + t_gap)
    tol = tol_base * (scale + 1.0)
    return _finish(
        "det_root_gap",
        {"det_root_gap": margin},
        tol,
        {"A": a, "B": b, "v": v, "tau": tau, "lam": lam},
    )


def check_det_gap(
    a: SpdMatrix, b: SpdMatrix, v: float, tau: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Determinant gap bound, ``0 < v <= tau < 1``:

        ``det(A !_v B) + (v/tau)^n det(G_tau) <= det(A nabla_v B)``.
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if v > tau:
        raise WeightOrder(f"requires v <= tau, got v={v}, tau={tau}")
    n = a.dim
    gap_tau = HermitianMatrix(
        means.mat_arith(a, b, tau).mat - means.mat_harm(a, b, tau).mat
    )
    d_arith = np.exp(logdet_spd(means.mat_arith(a, b, v)))
    d_harm = np.exp(logdet_spd(means.mat_harm(a, b, v)))
    t_gap = (v / tau) ** n * det_hermitian(gap_tau)
    margin = float(d_arith - d_harm - t_gap)
    tol = TOL_RATE * tol_scale * (d_arith + d_harm + abs(t_gap) + 1.0)
    return _finish("det_gap", {"det_gap": margin}, tol, {"A": a, "B": b, "v": v, "tau": tau})


def check_det_half_weight_gap(
    a: SpdMatrix, b: SpdMatrix, v: float, tol_scale: float = 1.0
) -> CertificateReport:
    """Half-weight determinant bound, ``0 <= v <= 1/2``:

        ``det(A !_v B) + (2v)^n det(A nabla B - A ! B) <= det(A nabla_v B)``.
    """
    if not 0 <= v <= 0.5:
        raise ValueError(f"weight must lie in [0, 1/2], got {v}")
    n = a.dim
    gap_half = HermitianMatrix(
        means.mat_arith(a, b, 0.5).mat - means.mat_harm(a, b, 0.5).mat
    )
    d_arith = np.exp(logdet_spd(means.mat_arith(a, b, v)))
    d_harm = np.exp(logdet_spd(means.mat_harm(a, b, v)))
    t_gap = (2 * v) ** n * det_hermitian(gap_half)
    margin = float(d_arith - d_harm - t_gap)
    tol = TOL_RATE * tol_scale * (d_arith + d_harm + abs(t_gap) + 1.0)
    return _finish("det_half_weight_gap", {"det_gap": margin}, tol, {"A": a, "B": b, "v": v})
