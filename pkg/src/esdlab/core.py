"""Channel algebra for one- and two-qubit open-system evolutions.

Conventions
-----------
Density matrices are vectorized row-major: ``vec(rho)[(i, j)] = rho[i, j]``
with the pair index ``i*d + j``.  A superoperator is then a ``d^2 x d^2``
matrix acting on that vector, and a unitary ``w`` lifts to ``kron(w,
conj(w))``.  Units use hbar = k_B = 1 throughout.

The Choi state of a channel with matrix ``V`` is the state obtained by
sending one half of the maximally entangled pair through the channel:
``M[(i,a),(j,b)] = V[(a,b),(i,j)] / d``.  For trace-preserving ``V`` this
has unit trace, and for completely positive ``V`` it is PSD.  Redfield
channels are not guaranteed CP, so positivity of their Choi states is
diagnostic, never asserted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, DomainError
from .numerics import gen_eig_small, herm_deviation, sqrtm_psd

logger = logging.getLogger(__name__)

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def vec(rho):
    """Row-major vectorization of a matrix."""
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvec(v):
    v = np.asarray(v, dtype=complex)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise DimensionError(f"vector of length {v.size} is not a square matrix")
    return v.reshape(d, d)


def validate_density_matrix(rho, *, psd_tol=1e-8, herm_tol=1e-10, trace_tol=1e-10):
    """Check Hermiticity, unit trace and (approximate) positivity.

    Raises DomainError on violation; returns the exactly-Hermitian part.
    ``psd_tol=None`` skips the positivity check (used for Redfield output,
    where complete positivity is not guaranteed by the theory).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got {rho.shape}")
    if herm_deviation(rho) > herm_tol:
        raise DomainError("density matrix is not Hermitian within tolerance")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise DomainError(f"density matrix trace {tr} deviates from 1")
    rho = (rho + rho.conj().T) / 2.0
    if psd_tol is not None:
        wmin = float(np.linalg.eigvalsh(rho).min())
        if wmin < -psd_tol:
            raise DomainError(f"density matrix min eigenvalue {wmin:.3e} < -{psd_tol:.0e}")
    return rho


def is_trace_preserving(V, tol=1e-9):
    """True when the trace functional is a left fixed point of V."""
    V = np.asarray(V, dtype=complex)
    d = int(round(np.sqrt(V.shape[0])))
    t = vec(np.eye(d))
    return bool(np.abs(t @ V - t).max() <= tol)


@dataclass
class LindbladSpec:
    """Hamiltonian plus jump operators with nonnegative rates (hbar = 1)."""

    hamiltonian: np.ndarray
    jumps: list = field(default_factory=list)  # [(operator, rate), ...]

    def __post_init__(self):
        self.hamiltonian = np.asarray(self.hamiltonian, dtype=complex)
        if herm_deviation(self.hamiltonian) > 1e-10:
            raise DomainError("Lindblad Hamiltonian must be Hermitian within 1e-10")
        for _, rate in self.jumps:
            if rate < 0:
                raise DomainError(f"jump rate {rate} must be nonnegative")


def lindblad_generator(spec):
    """Matrix representation of the Lindblad generator under row-major vec.

    L = -i(H (x) I - I (x) H^T)
        + sum_j g_j (F_j (x) conj(F_j) - (F^dag F (x) I + I (x) (F^dag F)^T)/2)

    exp(L t) is trace preserving for any valid spec.
    """
    H = spec.hamiltonian
    d = H.shape[0]
    eye = np.eye(d, dtype=complex)
    L = -1j * (np.kron(H, eye) - np.kron(eye, H.T))
    for F, rate in spec.jumps:
        F = np.asarray(F, dtype=complex)
        FdF = F.conj().T @ F
        L += rate * (np.kron(F, F.conj())
                     - 0.5 * (np.kron(FdF, eye) + np.kron(eye, FdF.T)))
    return L


def apply_channel(V, rho):
    """unvec(V . vec(rho)), re-symmetrized by (X + X^dag)/2.

    Deviations from Hermiticity beyond 1e-8 are logged, not fatal: they
    flag a channel that is not Hermiticity-preserving on this input.
    """
    V = np.asarray(V, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if V.shape[0] != rho.size:
        raise DimensionError(
            f"superoperator of size {V.shape[0]} cannot act on dim-{rho.shape[0]} state")
    out = unvec(V @ vec(rho))
    dev = herm_deviation(out)
    if dev > 1e-8:
        logger.warning("apply_channel: Hermiticity deviation %.3e after evolution", dev)
    return (out + out.conj().T) / 2.0


def choi(V):
    """Choi state of a one-qubit channel: M[(i,a),(j,b)] = V[(a,b),(i,j)] / 2."""
    V = np.asarray(V, dtype=complex)
    if V.shape != (4, 4):
        raise DimensionError("choi expects a 4x4 one-qubit superoperator")
    # reshape V[(a,b),(i,j)] -> M[(i,a),(j,b)]
    M = V.reshape(2, 2, 2, 2).transpose(2, 0, 3, 1).reshape(4, 4) / 2.0
    return M


def concurrence(rho, method="hermitian", psd_tol=1e-8):
    """Wootters concurrence of a two-qubit state.

    Computes rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy) and the
    descending square roots lambda_i of the eigenvalues of rho.rho_tilde,
    returning max(0, l1 - l2 - l3 - l4).

    method="hermitian" (default) takes the eigenvalues of the Hermitian
    product sqrt(rho).rho_tilde.sqrt(rho); method="general" uses the
    eigenvalues of rho.rho_tilde directly, which also tolerates mildly
    non-PSD inputs such as Redfield Choi states (pass psd_tol=None there:
    negative intermediates are then clamped instead of rejected).
    """
    rho = validate_density_matrix(rho, psd_tol=psd_tol)
    if rho.shape != (4, 4):
        raise DimensionError("concurrence is defined for two-qubit (4x4) states")
    if method == "hermitian":
        # lambda_i are the singular values of B = sqrt(rho) Y conj(sqrt(rho)):
        # B B^dag = sqrt(rho) Y conj(rho) Y sqrt(rho), the Hermitian-route
        # product, but the SVD avoids taking square roots of near-zero
        # eigenvalues of that product.
        root = sqrtm_psd(rho)
        lam = np.linalg.svd(root @ _YY @ root.conj(), compute_uv=False)
    elif method == "general":
        lam2 = gen_eig_small(rho @ _YY @ rho.conj() @ _YY).real
        floor = -1e-8 if psd_tol is not None else -np.inf
        if lam2.min() < floor:
            raise DomainError(
                f"spin-flip product eigenvalue {lam2.min():.3e} below clamp window")
        lam = np.sqrt(np.clip(lam2, 0.0, None))
        lam[::-1].sort()
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


PHI_PLUS = np.zeros((4, 4), dtype=complex)
PHI_PLUS[0, 0] = PHI_PLUS[0, 3] = PHI_PLUS[3, 0] = PHI_PLUS[3, 3] = 0.5


def apply_one_sided(V, chi):
    """(I (x) Lambda)[chi] for a two-qubit state chi and one-qubit channel V."""
    chi = np.asarray(chi, dtype=complex).reshape(2, 2, 2, 2)  # (i, a', j, b')
    Vt = np.asarray(V, dtype=complex).reshape(2, 2, 2, 2)     # (a, b, a', b')
    out = np.einsum("abcd,icjd->iajb", Vt, chi)
    return out.reshape(4, 4)


def factorization_check(V, chi):
    """Both sides of the one-sided entanglement decay law for pure chi.

    lhs = C((I (x) Lambda)[chi]); rhs = C(chi) * C(choi(V)).  The caller
    compares; equality (for pure chi) is the factorization law.
    """
    chi = validate_density_matrix(chi)
    purity = float(np.trace(chi @ chi).real)
    if purity < 1.0 - 1e-10:
        raise DomainError(f"factorization law requires a pure state, purity={purity}")
    lhs = concurrence(apply_one_sided(V, chi))
    rhs = concurrence(chi) * concurrence(choi(V))
    return lhs, rhs


# Middle-factor swap of a 16-dim vec index (x1,x2,x3,x4) -> (x1,x3,x2,x4).
_PERM_MIDDLE = np.array([(x1 << 3) | (x3 << 2) | (x2 << 1) | x4
                         for x1 in (0, 1) for x2 in (0, 1)
                         for x3 in (0, 1) for x4 in (0, 1)])


def permute_middle(V):
    """Conjugate a 16x16 superoperator by P = I (x) p (x) I.

    p swaps the middle two qubit factors of the vec index, turning
    |s>|i>|s'>|j> ordering into |s>|s'>|i>|j> (system pair outer,
    environment pair inner).  Involutive.
    """
    V = np.asarray(V, dtype=complex)
    if V.shape != (16, 16):
        raise DimensionError("permute_middle expects a 16x16 superoperator")
    return V[np.ix_(_PERM_MIDDLE, _PERM_MIDDLE)]


def block_trace(V_perm):
    """Reduce a permuted qubit-plus-impurity superoperator to the qubit.

    With the system pair outermost, each 4x4 block Z maps impurity
    operators to impurity operators; tracing it amounts to feeding the
    impurity identity in and reading the trace out, i.e. entries
    (0,0), (0,3), (3,0), (3,3) of each block.  If the result violates
    trace preservation by a constant factor it is rescaled by one over
    the impurity dimension (the Appendix recipe leaves the impurity
    weighting implicit); the rescaling is logged.
    """
    V_perm = np.asarray(V_perm, dtype=complex)
    if V_perm.shape != (16, 16):
        raise DimensionError("block_trace expects a 16x16 superoperator")
    B = V_perm.reshape(4, 4, 4, 4)  # (outer row, inner row, outer col, inner col)
    Vs = B[:, 0, :, 0] + B[:, 0, :, 3] + B[:, 3, :, 0] + B[:, 3, :, 3]
    if not is_trace_preserving(Vs, tol=1e-8):
        rescaled = Vs / 2.0
        if is_trace_preserving(rescaled, tol=1e-8):
            logger.debug("block_trace: rescaled by 1/2 to restore trace preservation")
            return rescaled
        logger.warning("block_trace: result not trace preserving even after 1/2 rescale")
    return Vs


def reduce_impurity(V16, weights=(0.5, 0.5)):
    """Qubit channel from a 16x16 map with an explicit diagonal impurity state.

    ``weights`` are the initial occupation probabilities of the two
    impurity levels; the impurity output is traced over.  weights
    (0.5, 0.5) reproduces ``block_trace(permute_middle(V16))``.
    """
    w0, w1 = weights
    if abs(w0 + w1 - 1.0) > 1e-12 or min(w0, w1) < 0:
        raise DomainError("impurity weights must be a probability pair")
    Vp = permute_middle(V16).reshape(4, 4, 4, 4)
    diag = (0, 3)
    wts = (w0, w1)
    Vs = np.zeros((4, 4), dtype=complex)
    for i in diag:
        for ip, wt in zip(diag, wts):
            Vs += wt * Vp[:, i, :, ip]
    return Vs


@dataclass
class ChannelFamily:
    """Time-parametrized producer of superoperators for one physical model."""

    name: str
    superoperator: Callable[[float], np.ndarray]
    params: dict = field(default_factory=dict)
    # Analytic guarantee that concurrence never reaches zero (QND dephasing).
    positive_floor: bool = False
    # Complete positivity guaranteed (Lindblad-generated); Redfield sets False.
    cp_guaranteed: bool = True

    def concurrence_at(self, t):
        M = choi(self.superoperator(t))
        if self.cp_guaranteed:
            return concurrence(M)
        return concurrence(M, method="general", psd_tol=None)
