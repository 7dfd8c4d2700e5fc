"""Dense complex matrix kernels and special functions.

No physics lives here: these are the numerical primitives the channel
models are built on.  Matrix storage is plain ``numpy.ndarray`` with
complex dtype; "Hermitian" inputs are checked against a fixed 1e-10
tolerance rather than trusted.

Series evaluations truncate adaptively: summation stops when the next
term falls below 1e-16 of the partial sum, with a hard cap of 500 terms.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, DomainError, UnsupportedSizeError

HERM_TOL = 1e-10
SERIES_EPS = 1e-16
SERIES_MAX_TERMS = 500

# Pade-13 numerator/denominator coefficients (Higham 2005).
_PADE13_B = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_THETA = 5.371920351148152


def _as_square(A, max_dim=None):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if max_dim is not None and A.shape[0] > max_dim:
        raise UnsupportedSizeError(
            f"dimension {A.shape[0]} exceeds supported limit {max_dim}")
    if not np.all(np.isfinite(A.view(float))):
        raise DomainError("matrix contains non-finite entries")
    return A


def herm_deviation(A):
    """max |A - A^dagger| elementwise."""
    A = np.asarray(A)
    return float(np.abs(A - A.conj().T).max())


def expm(A, t=1.0):
    """exp(A*t) by scaling-and-squaring with a Pade-13 approximant.

    Fixed order 13 with 1-norm based scaling; no eigendecomposition path,
    since the generators fed through here are generally non-normal.

    Parameters
    ----------
    A : array_like, square, dimension <= 64
    t : float
        Time factor multiplied into A before exponentiation.

    Returns
    -------
    numpy.ndarray of shape ``A.shape``.
    """
    A = _as_square(A, max_dim=64)
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    B = A * t
    n = B.shape[0]
    eye = np.eye(n, dtype=complex)
    norm1 = float(np.abs(B).sum(axis=0).max()) if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm1 / _PADE13_THETA)))) if norm1 > _PADE13_THETA else 0
    B = B / (2.0 ** s)

    b = _PADE13_B
    B2 = B @ B
    B4 = B2 @ B2
    B6 = B2 @ B4
    U = B @ (B6 @ (b[13] * B6 + b[11] * B4 + b[9] * B2)
             + b[7] * B6 + b[5] * B4 + b[3] * B2 + b[1] * eye)
    V = (B6 @ (b[12] * B6 + b[10] * B4 + b[8] * B2)
         + b[6] * B6 + b[4] * B4 + b[2] * B2 + b[0] * eye)
    F = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        F = F @ F
    return F


def herm_eig(A):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns.  Rejects inputs whose Hermitian
    deviation exceeds 1e-10.
    """
    A = _as_square(A)
    if herm_deviation(A) > HERM_TOL:
        raise DomainError("matrix is not Hermitian within 1e-10")
    w, v = np.linalg.eigh((A + A.conj().T) / 2.0)
    return w, v


def gen_eig_small(A):
    """All eigenvalues (with multiplicity) of a general complex matrix.

    Restricted to dimension <= 4; used for the spin-flip product in the
    concurrence cross-check.  Backed by LAPACK's Hessenberg + shifted-QR
    solver.
    """
    A = _as_square(A)
    if A.shape[0] > 4:
        raise UnsupportedSizeError(
            f"gen_eig_small supports dimension <= 4, got {A.shape[0]}")
    return np.linalg.eigvals(A)


def sqrtm_psd(A):
    """Hermitian PSD square root: B with B @ B = A.

    Eigenvalues in [-1e-8, 0) are clamped to zero; anything below -1e-8
    is rejected as genuinely non-PSD.  Eigenvalues below 32*eps of the
    largest are floored to exact zero: square-rooting the O(eps) residue
    of a structurally zero eigenvalue would otherwise inject O(sqrt(eps))
    noise into B.
    """
    A = _as_square(A)
    if herm_deviation(A) > HERM_TOL:
        raise DomainError("matrix is not Hermitian within 1e-10")
    w, v = np.linalg.eigh((A + A.conj().T) / 2.0)
    if w.min() < -1e-8:
        raise DomainError(f"matrix is not PSD: min eigenvalue {w.min():.3e}")
    floor = 32.0 * np.finfo(float).eps * max(w.max(), 0.0)
    w = np.sqrt(np.where(w < floor, 0.0, w))
    return (v * w) @ v.conj().T


def bessel_j(order, x):
    """Bessel function J_0 or J_1 by its ascending power series.

    Valid for |x| <= 50 (the series converges there within the term cap;
    accuracy degrades with |x| through cancellation, which is fine for the
    modulation amplitudes this package uses).
    """
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    x = float(x)
    if abs(x) > 50.0:
        raise DomainError(f"|x| = {abs(x)} outside validated range [0, 50]")
    half = x / 2.0
    term = 1.0 if order == 0 else half
    total = term
    q = half * half
    for k in range(1, SERIES_MAX_TERMS):
        term *= -q / (k * (k + order))
        total += term
        if abs(term) < SERIES_EPS * abs(total):
            break
    return total


def erf_complex(x):
    """The error-function series Phi(x) = (2/sqrt(pi)) sum 2^k x^(2k+1)/(2k+1)!!.

    Evaluated term by term with adaptive truncation.  Note this series
    equals exp(x^2)*erf(x); callers wanting the plain error function must
    multiply by exp(-x^2).  Domain is |x| <= 8, where the partial sums stay
    within double-precision reach for the arguments used here.
    """
    x = complex(x)
    if abs(x) > 8.0:
        raise DomainError(f"|x| = {abs(x):.3f} outside validated range [0, 8]")
    term = x
    total = term
    x2 = x * x
    for k in range(1, SERIES_MAX_TERMS):
        term *= 2.0 * x2 / (2 * k + 1)
        total += term
        if abs(term) < SERIES_EPS * abs(total):
            break
    return (2.0 / math.sqrt(math.pi)) * total


# Bernoulli numbers B_2..B_16 for the digamma asymptotic tail.
_DIGAMMA_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
)


def digamma_complex(z):
    """Digamma psi(z) for Re(z) > 0.

    Recurrence-shifts z until |z| >= 8, then applies the 8-term Bernoulli
    asymptotic series.  Relative accuracy ~1e-10 on the shifted domain.
    """
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("digamma_complex requires Re(z) > 0")
    acc = 0.0 + 0.0j
    while abs(z) < 8.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0.0 + 0.0j
    power = inv2
    for j, b2j in enumerate(_DIGAMMA_BERNOULLI, start=1):
        tail += b2j / (2 * j) * power
        power *= inv2
    return acc + np.log(z) - 0.5 / z - tail
