"""Dense complex Hermitian linear algebra for matrices of order up to ~64.

Conventions used throughout the package:

* A *complex matrix* is a square ``complex128`` ndarray with finite entries;
  :func:`complex_matrix` validates and normalizes arbitrary input.
* :class:`HermitianMatrix` stores its entries in exactly conjugate-symmetric
  form (the constructor replaces ``M`` by ``(M + M*)/2``).
* :class:`SpdMatrix` is a Hermitian matrix certified positive definite at
  construction; every operation that needs invertibility takes one.
* Eigenvalues are reported in non-increasing order everywhere.

All operations are pure functions of their arguments and all carriers are
immutable after construction, so everything here is safe to use from
multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, IllConditioned, Singular

#: Unitarity defect allowance for eigenvector matrices: ||U U* - I||_F <= UNITARITY_TOL * n.
UNITARITY_TOL = 1e-12

#: Reconstruction allowance: ||A - U diag(w) U*||_F <= RECONSTRUCTION_TOL * max(1, ||A||_F).
RECONSTRUCTION_TOL = 1e-10

#: Positive-definiteness gate: smallest eigenvalue must exceed this times ||A||_F.
SPD_MIN_EIG_FACTOR = 1e-12

#: Rate used by :func:`default_loewner_tol`.
LOEWNER_TOL_RATE = 1e-9

#: Pivot threshold for :func:`general_inverse`, relative to the pivot row's scale.
PIVOT_THRESHOLD = 1e-14

#: Condition-number cap for the SPD :func:`inverse`.
DEFAULT_COND_CAP = 1e14


def complex_matrix(entries) -> np.ndarray:
    """Validate ``entries`` as a square complex matrix and return a read-only copy.

    Raises
    ------
    ValueError
        If the input is not square, is empty, or contains non-finite entries.
    """
    mat = np.array(entries, dtype=np.complex128, copy=True)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("matrix entries must be finite")
    mat.setflags(write=False)
    return mat


def _as_array(m) -> np.ndarray:
    """Accept an ndarray-like or a Hermitian/SPD carrier and return the ndarray."""
    if isinstance(m, HermitianMatrix):
        return m.mat
    return complex_matrix(m)


class HermitianMatrix:
    """Square complex matrix stored in exactly conjugate-symmetric form.

    The constructor symmetrizes: the stored matrix is ``(M + M*)/2``, so
    ``mat[i, j] == conj(mat[j, i])`` holds exactly as stored.
    """

    __slots__ = ("mat",)

    def __init__(self, entries):
        mat = complex_matrix(entries)
        mat = (mat + mat.conj().T) / 2.0
        mat.setflags(write=False)
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"{type(self).__name__}(dim={self.dim})"


class SpdMatrix(HermitianMatrix):
    """Hermitian matrix certified positive definite at construction.

    ``min_eig`` caches the smallest eigenvalue found during certification.
    Construction rejects matrices whose smallest eigenvalue does not exceed
    ``SPD_MIN_EIG_FACTOR * ||A||_F``, since every downstream use assumes a
    stable inverse exists.
    """

    __slots__ = ("min_eig",)

    def __init__(self, entries):
        super().__init__(entries)
        w = np.linalg.eigvalsh(self.mat)
        gate = SPD_MIN_EIG_FACTOR * float(np.linalg.norm(self.mat))
        if not w[0] > gate:
            raise ValueError(
                f"matrix is not positive definite: min eigenvalue {w[0]:.3e} "
                f"does not exceed the gate {gate:.3e}"
            )
        self.min_eig = float(w[0])


@dataclass(frozen=True)
class EigenDecomposition:
    """Unitary factor and real spectrum of a Hermitian matrix.

    ``eigenvalues`` are sorted non-increasing; column ``unitary[:, k]`` is the
    eigenvector for ``eigenvalues[k]``.
    """

    unitary: np.ndarray
    eigenvalues: np.ndarray

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Assemble ``U diag(values) U*`` for per-eigenvalue ``values``."""
        return (self.unitary * values) @ self.unitary.conj().T


@dataclass(frozen=True)
class OrderVerdict:
    """Result of a semidefinite-order comparison.

    ``margin`` is the smallest eigenvalue of the difference; the comparison
    holds iff ``margin >= -tol_used``.
    """

    holds: bool
    margin: float
    tol_used: float


def eig_hermitian(h: HermitianMatrix) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix with verified quality gates.

    Returns eigenvalues sorted non-increasing with a unitary whose defect
    ``||U U* - I||_F`` is at most ``UNITARITY_TOL * n`` and whose
    reconstruction error ``||A - U diag(w) U*||_F`` is at most
    ``RECONSTRUCTION_TOL * max(1, ||A||_F)``.  Deterministic for identical
    input.

    Raises
    ------
    ConvergenceFailure
        If the underlying solver fails or either quality gate is violated.
    """
    if not isinstance(h, HermitianMatrix):
        h = HermitianMatrix(h)
    try:
        w, u = np.linalg.eigh(h.mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    w = w[::-1].copy()
    u = u[:, ::-1].copy()
    n = h.dim
    defect = float(np.linalg.norm(u @ u.conj().T - np.eye(n)))
    if not defect <= UNITARITY_TOL * n:  # NaN-safe comparison
        raise ConvergenceFailure(f"unitarity defect {defect:.3e} exceeds {UNITARITY_TOL * n:.3e}")
    resid = float(np.linalg.norm(h.mat - (u * w) @ u.conj().T))
    bound = RECONSTRUCTION_TOL * max(1.0, float(np.linalg.norm(h.mat)))
    if not resid <= bound:
        raise ConvergenceFailure(f"reconstruction error {resid:.3e} exceeds {bound:.3e}")
    w.setflags(write=False)
    u.setflags(write=False)
    return EigenDecomposition(unitary=u, eigenvalues=w)


def matrix_power(p: SpdMatrix, r: float) -> SpdMatrix:
    """Real power ``P^r`` of a positive definite matrix via its spectrum.

    ``r = 0`` returns the identity, ``r = 1`` returns ``P`` itself, and
    ``r = -1`` agrees with :func:`inverse` up to rounding.
    """
    if not np.isfinite(r):
        raise ValueError("exponent must be finite")
    if r == 0:
        return SpdMatrix(np.eye(p.dim))
    if r == 1:
        return p
    dec = eig_hermitian(p)
    return SpdMatrix(dec.apply(dec.eigenvalues**r))


def inverse(p: SpdMatrix, cond_cap: float = DEFAULT_COND_CAP) -> SpdMatrix:
    """Inverse of a positive definite matrix via its eigendecomposition.

    The residual ``||P P^-1 - I||_F`` stays within a small multiple of
    ``n * kappa(P)`` machine epsilons (exercised by the test suite).

    Raises
    ------
    IllConditioned
        If the estimated condition number exceeds ``cond_cap``.
    """
    dec = eig_hermitian(p)
    w = dec.eigenvalues
    cond = float(w[0] / w[-1])
    if cond > cond_cap:
        raise IllConditioned(f"condition number {cond:.3e} exceeds cap {cond_cap:.3e}")
    return SpdMatrix(dec.apply(1.0 / w))


def general_inverse(m) -> np.ndarray:
    """Inverse of an arbitrary square matrix by partial-pivot elimination.

    Raises
    ------
    Singular
        If a pivot falls below ``PIVOT_THRESHOLD`` times the scale of its row.
    """
    a = _as_array(m)
    n = a.shape[0]
    row_scale = np.maximum(np.max(np.abs(a), axis=1), 1.0)
    aug = np.hstack([a, np.eye(n, dtype=np.complex128)])
    for k in range(n):
        piv = k + int(np.argmax(np.abs(aug[k:, k])))
        if np.abs(aug[piv, k]) <= PIVOT_THRESHOLD * row_scale[piv]:
            raise Singular(f"pivot {np.abs(aug[piv, k]):.3e} below threshold in column {k}")
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
            row_scale[[k, piv]] = row_scale[[piv, k]]
        aug[k] = aug[k] / aug[k, k]
        col = aug[:, k].copy()
        col[k] = 0.0
        aug -= np.outer(col, aug[k])
    return aug[:, n:]


def loewner_leq(a: HermitianMatrix, b: HermitianMatrix, tol: float | None = None) -> OrderVerdict:
    """Decide ``A <= B`` in the semidefinite order, reporting the margin.

    The margin is the smallest eigenvalue of ``B - A``; the verdict holds iff
    it is at least ``-tol``.  When ``tol`` is omitted,
    :func:`default_loewner_tol` supplies it.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")
    if tol is None:
        tol = default_loewner_tol(a, b)
    diff = b.mat - a.mat
    margin = float(np.linalg.eigvalsh(diff)[0])
    return OrderVerdict(holds=margin >= -tol, margin=margin, tol_used=float(tol))


def default_loewner_tol(a: HermitianMatrix, b: HermitianMatrix) -> float:
    """Default comparison tolerance, scaled to the operands' norms."""
    return LOEWNER_TOL_RATE * (float(np.linalg.norm(a.mat)) + float(np.linalg.norm(b.mat)) + 1.0)


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm: sqrt of the sum of squared moduli."""
    return float(np.linalg.norm(_as_array(m)))


def singular_values(m) -> np.ndarray:
    """Singular values of ``M``, non-increasing, via the spectrum of ``M* M``."""
    a = _as_array(m)
    gram = eig_hermitian(HermitianMatrix(a.conj().T @ a))
    return np.sqrt(np.maximum(gram.eigenvalues, 0.0))


def determinant_spd(p: SpdMatrix) -> float:
    """Determinant of a positive definite matrix: the product of its eigenvalues."""
    return float(np.prod(eig_hermitian(p).eigenvalues))


def logdet_spd(p: SpdMatrix) -> float:
    """Natural log of the determinant, summed over the spectrum.

    Overflow-safe route for powers and products of determinants: combine
    log-dets and exponentiate once.
    """
    return float(np.sum(np.log(eig_hermitian(p).eigenvalues)))


def det_hermitian(h: HermitianMatrix) -> float:
    """Determinant of a Hermitian matrix with sign tracking in log space."""
    w = np.linalg.eigvalsh(h.mat)
    if np.any(w == 0.0):
        return 0.0
    sign = float(np.prod(np.sign(w)))
    return sign * float(np.exp(np.sum(np.log(np.abs(w)))))


def conjugate(m: HermitianMatrix, c) -> HermitianMatrix:
    """The *-conjugation ``C M C*``, re-symmetrized after rounding.

    Preserves the semidefinite order and, for invertible ``C``, positive
    definiteness.
    """
    cm = _as_array(c)
    if cm.shape[0] != m.dim:
        raise DimensionMismatch(f"dimension mismatch: {cm.shape[0]} vs {m.dim}")
    return HermitianMatrix(cm @ m.mat @ cm.conj().T)
