"""Weighted arithmetic, geometric and harmonic means for scalars and matrices.

Weight convention: ``v`` always weights the *first* operand.  For scalars,

* arithmetic  ``A_v(a, b) = v a + (1 - v) b``
* harmonic    ``H_v(a, b) = (v / a + (1 - v) / b)^-1``
* geometric   ``G_v(a, b) = a^v b^(1 - v)``

and ``H_v <= G_v <= A_v`` with equality iff ``a = b``.  The matrix means
follow the same convention (``v = 1`` returns the first operand, ``v = 0``
the second, for all three), so diagonal operands reduce entrywise to the
scalar means with the same pairing.  The two-sided geometric mean is

    ``mat_geo(A, B, v) = A^(1/2) (A^(-1/2) B A^(-1/2))^(1-v) A^(1/2)``

which keeps the endpoint map aligned with ``mat_arith`` and ``mat_harm``.

The one-sided ("X-weighted") means act on an arbitrary square matrix ``X``
between positive definite ``A`` (multiplying from the left) and ``B``
(multiplying from the right): each is the scalar mean evaluated on the
commuting pair of left- and right-multiplication operators, applied to
``X``.  For the arithmetic mean this collapses to ``v A X + (1 - v) X B``;
for the geometric mean, to ``A^v X B^(1-v)``.  The harmonic mean has no
such closed product form; see :func:`x_harm`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateInput, DimensionMismatch, Singular
from .linalg import SpdMatrix, eig_hermitian

#: Relative gap below which a scalar pair counts as degenerate for ratios (0/0 form).
RATIO_DEGENERACY_GUARD = 1e-12


@dataclass(frozen=True)
class ScalarPair:
    """Two strictly positive reals, the operands of the scalar means."""

    a: float
    b: float

    def __post_init__(self):
        for name, value in (("a", self.a), ("b", self.b)):
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive real, got {value!r}")

    def is_degenerate(self, rel_gap: float = RATIO_DEGENERACY_GUARD) -> bool:
        """True when the two values agree to within ``rel_gap`` relatively."""
        return abs(self.a - self.b) <= rel_gap * max(self.a, self.b)


@dataclass(frozen=True)
class MeanParams:
    """Scalar parameters of the weighted-mean comparisons.

    ``v`` and ``tau`` are weights, ``lam`` the power applied to the gap,
    ``t`` an optional power-mean index.  Each consumer validates the subset
    it needs; this carrier performs no cross-field checks.
    """

    v: float
    tau: float | None = None
    lam: float = 1.0
    t: float | None = None


def _check_weight(v: float, lo: float = 0.0, hi: float = 1.0, open_interval: bool = False):
    if open_interval:
        if not (lo < v < hi):
            raise ValueError(f"weight must lie in the open interval ({lo}, {hi}), got {v}")
    elif not (lo <= v <= hi):
        raise ValueError(f"weight must lie in [{lo}, {hi}], got {v}")


def power_mean(t: float, v: float, pair: ScalarPair) -> float:
    """Power mean ``(v a^t + (1 - v) b^t)^(1/t)``, with the ``t = 0`` limit.

    Interpolates from the harmonic mean at ``t = -1`` through the geometric
    mean at ``t = 0`` to the arithmetic mean at ``t = 1``; non-decreasing
    in ``t``.
    """
    _check_weight(v)
    if t == 0:
        return scalar_geo(v, pair)
    return float((v * pair.a**t + (1 - v) * pair.b**t) ** (1.0 / t))


def scalar_arith(v: float, pair: ScalarPair) -> float:
    """Weighted arithmetic mean ``v a + (1 - v) b``."""
    _check_weight(v)
    return v * pair.a + (1 - v) * pair.b


def scalar_harm(v: float, pair: ScalarPair) -> float:
    """Weighted harmonic mean ``(v / a + (1 - v) / b)^-1``."""
    _check_weight(v)
    return 1.0 / (v / pair.a + (1 - v) / pair.b)


def scalar_geo(v: float, pair: ScalarPair) -> float:
    """Weighted geometric mean ``a^v b^(1 - v)``."""
    _check_weight(v)
    return float(pair.a**v * pair.b ** (1 - v))


def arith_harm_gap(v: float, pair: ScalarPair) -> float:
    """The difference ``A_v(a, b) - H_v(a, b)`` in cancellation-free form.

    Uses the exact rearrangement ``v (1-v) (a - b)^2 / (v b + (1 - v) a)``;
    the naive subtraction loses all significant digits once ``a`` is within
    about ``sqrt(eps)`` of ``b``, which the limit probes must survive.
    """
    _check_weight(v)
    a, b = pair.a, pair.b
    return v * (1 - v) * (a - b) ** 2 / (v * b + (1 - v) * a)


def gap_power_ratio(v: float, tau: float, lam: float, pair: ScalarPair) -> float:
    """Ratio of powered arithmetic-harmonic gaps at weights ``v`` and ``tau``:

        ``(A_v^lam - H_v^lam) / (A_tau^lam - H_tau^lam)``.

    Defined for distinct positive operands; for ``0 < v < tau < 1`` and
    ``lam >= 1`` it lies strictly between ``(v/tau)^lam`` and
    ``((1-v)/(1-tau))^lam``, approaching the upper bound as ``a -> 0`` and
    the lower one as ``a -> infinity``.

    Raises
    ------
    DegenerateInput
        If the operands agree to within ``RATIO_DEGENERACY_GUARD`` (0/0 form).
    """
    _check_weight(v, open_interval=True)
    _check_weight(tau, open_interval=True)
    if lam < 1:
        raise ValueError(f"power must satisfy lam >= 1, got {lam}")
    if pair.is_degenerate():
        raise DegenerateInput(f"operands {pair.a!r}, {pair.b!r} are numerically equal")
    num = scalar_arith(v, pair) ** lam - scalar_harm(v, pair) ** lam
    den = scalar_arith(tau, pair) ** lam - scalar_harm(tau, pair) ** lam
    return float(num / den)


def _check_dims(a: SpdMatrix, b: SpdMatrix):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def mat_arith(a: SpdMatrix, b: SpdMatrix, v: float) -> SpdMatrix:
    """Weighted arithmetic mean ``v A + (1 - v) B``."""
    _check_dims(a, b)
    _check_weight(v)
    return SpdMatrix(v * a.mat + (1 - v) * b.mat)


def mat_harm(a: SpdMatrix, b: SpdMatrix, v: float) -> SpdMatrix:
    """Weighted harmonic mean ``(v A^-1 + (1 - v) B^-1)^-1``.

    Endpoint weights return the corresponding operand exactly (the means
    extend to ``v in {0, 1}`` by continuity).
    """
    _check_dims(a, b)
    _check_weight(v)
    if v == 0:
        return b
    if v == 1:
        return a
    ia = linalg.inverse(a)
    ib = linalg.inverse(b)
    return linalg.inverse(SpdMatrix(v * ia.mat + (1 - v) * ib.mat))


def mat_geo(a: SpdMatrix, b: SpdMatrix, v: float) -> SpdMatrix:
    """Weighted geometric mean ``A^(1/2) (A^(-1/2) B A^(-1/2))^(1-v) A^(1/2)``.

    The exponent ``1 - v`` keeps the weight on the first operand, matching
    :func:`mat_arith` and :func:`mat_harm`: ``v = 1`` gives ``A``, ``v = 0``
    gives ``B``, and diagonal operands reduce to ``a_i^v b_i^(1-v)``.
    """
    _check_dims(a, b)
    _check_weight(v)
    if v == 0:
        return b
    if v == 1:
        return a
    dec = eig_hermitian(a)
    root = dec.apply(np.sqrt(dec.eigenvalues))
    iroot = dec.apply(1.0 / np.sqrt(dec.eigenvalues))
    inner = SpdMatrix(iroot @ b.mat @ iroot)
    mid = eig_hermitian(inner)
    return SpdMatrix(root @ mid.apply(mid.eigenvalues ** (1 - v)) @ root)


def _check_x(a: SpdMatrix, b: SpdMatrix, x) -> np.ndarray:
    xm = linalg._as_array(x)
    if xm.shape[0] != a.dim or a.dim != b.dim:
        raise DimensionMismatch(
            f"dimension mismatch: A is {a.dim}, B is {b.dim}, X is {xm.shape[0]}"
        )
    return xm


def x_arith(a: SpdMatrix, b: SpdMatrix, x, v: float) -> np.ndarray:
    """One-sided weighted arithmetic mean ``v A X + (1 - v) X B``.

    Generally non-Hermitian; no Hermitization is applied.
    """
    xm = _check_x(a, b, x)
    _check_weight(v)
    return v * (a.mat @ xm) + (1 - v) * (xm @ b.mat)


def x_geo(a: SpdMatrix, b: SpdMatrix, x, v: float) -> np.ndarray:
    """One-sided weighted geometric mean ``A^v X B^(1 - v)``."""
    xm = _check_x(a, b, x)
    _check_weight(v)
    return linalg.matrix_power(a, v).mat @ xm @ linalg.matrix_power(b, 1 - v).mat


def x_harm(a: SpdMatrix, b: SpdMatrix, x, v: float) -> np.ndarray:
    """One-sided weighted harmonic mean of ``A`` (left) and ``B`` (right) on ``X``.

    With ``A = U diag(mu) U*``, ``B = V diag(nu) V*`` and ``Y = U* X V``, this is

        ``U [ (v / mu_i + (1 - v) / nu_j)^-1 y_ij ] V*``

    i.e. the scalar harmonic mean evaluated on the commuting pair of left- and
    right-multiplication operators and applied to ``X`` (well defined: the
    weights are constant on eigenvalue multiplicity blocks).  At ``v = 0`` it
    equals ``X B`` and at ``v = 1`` it equals ``A X``, mirroring
    :func:`x_arith`.  Note the superficially natural closed form
    ``[v (A X)^-1 + (1 - v) (X B)^-1]^-1`` is a *different* matrix for
    non-commuting operands and does not stay below the arithmetic combination
    in Hilbert-Schmidt norm; the test suite pins the distinction.

    Raises
    ------
    Singular
        If ``X`` is not numerically invertible (this mean participates in
        comparisons that require an invertible ``X``).
    """
    xm = _check_x(a, b, x)
    _check_weight(v)
    sv = np.linalg.svd(xm, compute_uv=False)
    if sv[-1] <= linalg.PIVOT_THRESHOLD * max(1.0, float(sv[0])):
        raise Singular(f"X is numerically singular (smallest singular value {sv[-1]:.3e})")
    da = eig_hermitian(a)
    db = eig_hermitian(b)
    y = da.unitary.conj().T @ xm @ db.unitary
    weights = 1.0 / (v / da.eigenvalues[:, None] + (1 - v) / db.eigenvalues[None, :])
    return da.unitary @ (weights * y) @ db.unitary.conj().T


def normalized_gap(v: float, t: float) -> float:
    """The arithmetic-harmonic gap of ``(1, t)`` scaled by ``(1 - t)^-2``:

        ``g_v(t) = [v + (1-v) t - (v + (1-v)/t)^-1] / (1 - t)^2``.

    Evaluated through the exact identity ``g_v(t) = v (1-v) / (v t + 1 - v)``,
    since the defining quotient is 0/0 at ``t = 1`` and loses all precision
    nearby.  For ``t > 1``: ``v(1-v)/t < g_v(t) < v(1-v)``, and
    ``g_v(t) -> v(1-v)`` as ``t -> 1``.
    """
    _check_weight(v, open_interval=True)
    if not (np.isfinite(t) and t > 0):
        raise ValueError(f"t must be a positive real, got {t}")
    return v * (1 - v) / (v * t + 1 - v)
