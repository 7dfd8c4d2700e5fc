"""Josephson charge qubit dephased by a single bistable background charge.

The qubit (bias epsilon, tunneling Ej) and the impurity level (bias v,
switching rate gamma_sw, level epsilon_c) form a four-state system whose
eigenstates are products |theta_pm>|n> with n the impurity occupation.
Second-order (Redfield) rates couple the populations and the adiabatic
coherence pair (rho_ab, rho_cd); all other coherences are untouched by
the printed tensor and start empty for the initial states used here.

Basis layout: the four eigenstates are enumerated qubit-major,

    0: a = |theta_+>|0>   1: c = |theta'_+>|1>
    2: b = |theta_->|0>   3: d = |theta'_->|1>

so the row-major 16-dim vec index factorizes as |s>|i>|s'>|j> (qubit,
impurity, qubit, impurity) and the Appendix reduction (permute_middle +
block_trace) lands on the qubit pair.  The source enumerates a, b, c, d
impurity-major, which is inconsistent with its own reduction recipe; the
qubit-major layout is the one that makes that recipe act on the qubit.

The generator includes the coherent phases -i w_ij on every coherence by
default: the printed tensor omits them, but the master equation requires
them, and without them the pure-dephasing limit (Ej = 0) does not dephase
at all.  ``include_coherent_phases=False`` reproduces the printed tensor.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import ChannelFamily, SIGMA_X, permute_middle, reduce_impurity
from .decoupling import PulseSchedule
from .errors import DomainError
from .numerics import digamma_complex, expm

logger = logging.getLogger(__name__)

_LABELS = ("a", "b", "c", "d")
# qubit-major position of each eigenstate label
_POS = {"a": 0, "c": 1, "b": 2, "d": 3}


@dataclass
class JosephsonParams:
    epsilon: float = 1.0        # charge bias
    Ej: float = 1.0             # Josephson (tunneling) energy
    v: float = 0.45             # impurity bias on the qubit
    gamma_sw: float = 1.0       # impurity switching rate
    epsilon_c: float = 0.0      # impurity level relative to the band edge
    beta: float = 1e4           # inverse temperature; T=0 approximated finitely
    include_coherent_phases: bool = True
    # Initial impurity occupation probability for the reduced channel.
    # 0.0 = empty trap (T -> 0 for a level above the chemical potential);
    # 0.5 reproduces the bare Appendix block-trace reduction.
    impurity_occupation: float = 0.0

    def __post_init__(self):
        if self.Ej < 0 or self.v < 0:
            raise DomainError("Ej and v must be nonnegative")
        if self.gamma_sw <= 0:
            raise DomainError("gamma_sw must be positive")
        if self.beta <= 0:
            raise DomainError("beta must be positive")
        if not 0.0 <= self.impurity_occupation <= 1.0:
            raise DomainError("impurity_occupation must lie in [0, 1]")

    @property
    def kappa(self):
        return self.v / self.gamma_sw


def eigenstructure(p):
    """Energies of |a>,|b>,|c>,|d> and the mixing angles (theta, theta')."""
    Omega = math.hypot(p.epsilon, p.Ej)
    Omega_p = math.hypot(p.epsilon + p.v, p.Ej)
    if Omega < 1e-12 or Omega_p < 1e-12:
        raise DomainError("degenerate eigenstructure: epsilon = Ej = 0")
    theta = math.atan2(p.Ej, p.epsilon)
    theta_p = math.atan2(p.Ej, p.epsilon + p.v)
    energies = (-Omega / 2.0, Omega / 2.0,
                -Omega_p / 2.0 + p.epsilon_c, Omega_p / 2.0 + p.epsilon_c)
    return energies, theta, theta_p


def switching_rate(omega, beta, gamma):
    """iG^>(omega) = gamma / (1 - e^{-beta omega}), regularized at omega = 0.

    |beta*omega| < 1e-8 returns the symmetric-point value gamma/2; large
    negative exponents underflow to zero instead of overflowing.
    """
    x = beta * omega
    if abs(x) < 1e-8:
        return gamma / 2.0
    if x < -700.0:
        return 0.0
    return gamma / (-math.expm1(-x))


@dataclass
class RedfieldElements:
    """The scalar ingredients of the printed relaxation tensor."""

    c: float
    s: float
    delta: float
    delta_prime: float
    w: float
    w_prime: float
    z_minus: complex
    z_plus: complex
    y_plus: complex
    y_minus: complex
    population_block: np.ndarray   # R_{ii,nn} in (a, b, c, d) label order


def redfield_elements(p):
    energies, theta, theta_p = eigenstructure(p)
    E = dict(zip(_LABELS, energies))
    gamma, beta = p.gamma_sw, p.beta
    half = (theta - theta_p) / 2.0
    c, s = math.cos(half), math.sin(half)

    def t_(i, j):
        return 0.5 * math.tanh(beta * (E[i] - E[j]) / 2.0)

    def w_(i, j):
        z = (math.pi + 1j * beta * (E[i] - E[j])) / (2.0 * math.pi)
        return -1.0 / math.pi * digamma_complex(z).real

    delta = t_("c", "a") + t_("d", "b")
    delta_p = t_("d", "a") + t_("c", "b")
    w = w_("c", "a") - w_("c", "b")
    w_p = w_("d", "a") - w_("c", "b")

    z_minus = -gamma / 2.0 * (1.0 - c * c * delta - s * s * delta_p
                              + 1j * (c * c * w + s * s * w_p))
    z_plus = -gamma / 2.0 * (1.0 + c * c * delta + s * s * delta_p
                             + 1j * (c * c * w - s * s * w_p))
    y_plus = c * c * gamma / 2.0 * (1.0 + delta - 1j * w)
    y_minus = c * c * gamma / 2.0 * (1.0 - delta - 1j * w)

    # impurity matrix elements: b connects opposite occupations only
    chi = {("a", "c"): c * c, ("a", "d"): s * s,
           ("b", "c"): s * s, ("b", "d"): c * c}
    chi.update({(j, i): x for (i, j), x in list(chi.items())})

    pop = np.zeros((4, 4))
    for ii, i in enumerate(_LABELS):
        for nn, n in enumerate(_LABELS):
            if i == n:
                continue
            x = chi.get((i, n), 0.0)
            if x:
                pop[ii, nn] = x * switching_rate(E[n] - E[i], beta, gamma)
                pop[ii, ii] -= x * switching_rate(E[i] - E[n], beta, gamma)

    return RedfieldElements(c=c, s=s, delta=delta, delta_prime=delta_p,
                            w=w, w_prime=w_p, z_minus=z_minus, z_plus=z_plus,
                            y_plus=y_plus, y_minus=y_minus,
                            population_block=pop)


def redfield_generator(p):
    """The 16x16 generator in the qubit-major eigenbasis layout."""
    elements = redfield_elements(p)
    energies, _, _ = eigenstructure(p)
    E = dict(zip(_LABELS, energies))

    def idx(i, j):
        return 4 * _POS[i] + _POS[j]

    R = np.zeros((16, 16), dtype=complex)
    for ii, i in enumerate(_LABELS):
        for nn, n in enumerate(_LABELS):
            R[idx(i, i), idx(n, n)] = elements.population_block[ii, nn]

    R[idx("a", "b"), idx("a", "b")] += elements.z_minus
    R[idx("a", "b"), idx("c", "d")] += elements.y_plus
    R[idx("c", "d"), idx("c", "d")] += elements.z_plus
    R[idx("c", "d"), idx("a", "b")] += elements.y_minus
    R[idx("b", "a"), idx("b", "a")] += np.conj(elements.z_minus)
    R[idx("b", "a"), idx("d", "c")] += np.conj(elements.y_plus)
    R[idx("d", "c"), idx("d", "c")] += np.conj(elements.z_plus)
    R[idx("d", "c"), idx("b", "a")] += np.conj(elements.y_minus)

    if p.include_coherent_phases:
        for i in _LABELS:
            for j in _LABELS:
                if i != j:
                    R[idx(i, j), idx(i, j)] += -1j * (E[i] - E[j])
    return R


def full_channel(p, t):
    """exp(R t): the 16x16 qubit-plus-impurity evolution map."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    return expm(redfield_generator(p), t)


def reduced_qubit_channel(p, t, impurity_weights=None):
    """Qubit channel at time t via the permute + impurity-contraction recipe.

    ``impurity_weights=None`` uses ``(1 - p.impurity_occupation,
    p.impurity_occupation)``; pass (0.5, 0.5) for the bare Appendix
    block-trace normalization.
    """
    if impurity_weights is None:
        occ = p.impurity_occupation
        impurity_weights = (1.0 - occ, occ)
    return reduce_impurity(full_channel(p, t), impurity_weights)


def pulse_superoperator(p, axis="eigen"):
    """Superoperator of an instantaneous pi rotation about x on the qubit.

    axis="eigen": sigma_x in the qubit energy eigenbasis (the basis the
    relaxation tensor is written in).  axis="charge": sigma_x in the lab
    charge basis, expressed in the impurity-empty eigenbasis.  The global
    phase of the pi pulse drops out of u (x) u*.
    """
    if axis == "eigen":
        u = SIGMA_X
    elif axis == "charge":
        _, theta, _ = eigenstructure(p)
        sth, cth = math.sin(theta), math.cos(theta)
        u = np.array([[sth, cth], [cth, -sth]], dtype=complex)
    else:
        raise ValueError(f"unknown pulse axis {axis!r}")
    return np.kron(u, u.conj())


def pulsed_channel(p, schedule, t, axis="eigen"):
    """(V_pulse V_s(spacing))^(2N) with 2 N spacing = t (nearest N).

    Requires a pi-pulse schedule.  Deviations of t from the pulse grid are
    logged and rounded to the nearest N.
    """
    if not schedule.is_pi_pulse():
        raise DomainError("pulsed_channel requires a pi-pulse schedule "
                          "(|2 * strength * duration| = pi)")
    if t < 0:
        raise DomainError("t must be nonnegative")
    n_pairs = int(round(t / (2.0 * schedule.spacing)))
    grid_t = 2.0 * n_pairs * schedule.spacing
    if abs(grid_t - t) > 1e-12 * max(1.0, t):
        logger.debug("pulsed_channel: t=%g rounded to pulse grid %g", t, grid_t)
    if n_pairs == 0:
        return np.eye(4, dtype=complex)
    step = pulse_superoperator(p, axis) @ reduced_qubit_channel(p, schedule.spacing)
    return np.linalg.matrix_power(step, 2 * n_pairs)


def josephson_family(p):
    return ChannelFamily(
        name="josephson",
        superoperator=lambda t: reduced_qubit_channel(p, t),
        params={"epsilon": p.epsilon, "Ej": p.Ej, "kappa": p.kappa,
                "gamma": p.gamma_sw, "epsilon_c": p.epsilon_c, "beta": p.beta,
                "impurity_occupation": p.impurity_occupation},
        cp_guaranteed=False,
    )


def josephson_pulsed_family(p, schedule, axis="eigen"):
    if not schedule.is_pi_pulse():
        raise DomainError("pulsed family requires a pi-pulse schedule")
    # one expm per family, not one per queried time
    step = pulse_superoperator(p, axis) @ reduced_qubit_channel(p, schedule.spacing)

    def superop(t):
        n_pairs = int(round(t / (2.0 * schedule.spacing)))
        if n_pairs <= 0:
            return np.eye(4, dtype=complex)
        return np.linalg.matrix_power(step, 2 * n_pairs)

    return ChannelFamily(
        name="josephson_pulsed",
        superoperator=superop,
        params={"epsilon": p.epsilon, "Ej": p.Ej, "kappa": p.kappa,
                "gamma": p.gamma_sw, "spacing": schedule.spacing,
                "strength": schedule.strength, "tau_p": schedule.pulse_duration,
                "axis": axis, "impurity_occupation": p.impurity_occupation},
        cp_guaranteed=False,
    )
