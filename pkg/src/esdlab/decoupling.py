"""Pure dephasing of a qubit in an oscillator bath, free and bang-bang pulsed.

The bath is a discretized ohmic spectrum J(w) = coupling * w * exp(-w/cutoff)
on a uniform midpoint grid, with |g_k|^2 = J(w_k) dw.  The source material
never fixes its spectrum, so it is fully configurable here.

Decay exponents (coth(w/2T) -> 1 at T = 0):

    gamma(0, t)        = sum_k |xi_k(t)|^2 / 2 * coth(w_k / 2T)
    |xi_k(t)|^2        = 4 |g_k|^2 / w_k^2 * 2 (1 - cos w_k t)

    gamma_p(N, dt)     = sum_k |eta_k|^2 / 2 * coth(w_k / 2T)
    |eta_k(N, w dt)|^2 = 4 |g_k|^2 / w_k^2 * 4 (1 - cos w dt)^2
                         * (N + sum_{n=0}^{N-1} 2 n cos[2 (N-n) w dt])

The 4|g|^2/w^2 prefactor is applied identically in both sums: the pulsed
formula is printed without its coupling constant, which cannot be
dimensionally complete, and symmetry with the free case restores the
free-evolution limit.  Pulses are ideal (zero width) in these exponents;
the pulse duration enters only the pi-pulse consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ChannelFamily
from .errors import DomainError


@dataclass
class BathSpectrum:
    coupling_strength: float = 0.25
    cutoff: float = 1.0
    n_modes: int = 4000
    omega_max: float | None = None   # defaults to 16 * cutoff
    temperature: float = 0.0

    def __post_init__(self):
        if self.coupling_strength <= 0 or self.cutoff <= 0:
            raise DomainError("coupling_strength and cutoff must be positive")
        if self.n_modes < 100:
            raise DomainError("need at least 100 modes for a usable quadrature")
        if self.temperature < 0:
            raise DomainError("temperature must be nonnegative")
        if self.omega_max is None:
            # 16 * cutoff keeps the ohmic tail below the 1e-6
            # stability budget under omega_max doubling
            self.omega_max = 16.0 * self.cutoff

    def discretize(self):
        """(frequencies, |g_k|^2 weights, coth factors) on the midpoint grid."""
        dw = self.omega_max / self.n_modes
        w = (np.arange(self.n_modes) + 0.5) * dw
        g2 = self.coupling_strength * w * np.exp(-w / self.cutoff) * dw
        if self.temperature > 0:
            coth = 1.0 / np.tanh(w / (2.0 * self.temperature))
        else:
            coth = np.ones_like(w)
        return w, g2, coth


@dataclass
class PulseSchedule:
    n_pulses: int = 1
    spacing: float = 0.05
    pulse_duration: float = 0.01
    strength: float = 50.0 * np.pi

    def __post_init__(self):
        if self.n_pulses < 0:
            raise DomainError("n_pulses must be nonnegative")
        if self.spacing <= 0:
            raise DomainError("spacing must be positive")
        if self.pulse_duration < 0:
            raise DomainError("pulse_duration must be nonnegative")

    def is_pi_pulse(self, tol=1e-9):
        """Whether 2 * strength * duration equals pi (up to sign)."""
        return abs(abs(2.0 * self.strength * self.pulse_duration) - np.pi) <= tol


def gamma_free(bath, t):
    """Free dephasing exponent gamma(0, t)."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    w, g2, coth = bath.discretize()
    xi2 = (4.0 * g2 / w ** 2) * 2.0 * (1.0 - np.cos(w * t))
    return float(np.sum(xi2 / 2.0 * coth))


def gamma_pulsed(bath, schedule):
    """Dephasing exponent after n_pulses ideal pi pulses at the given spacing."""
    N = schedule.n_pulses
    if N == 0:
        return 0.0
    w, g2, coth = bath.discretize()
    x = w * schedule.spacing
    n = np.arange(N)
    interference = N + np.sum(
        2.0 * n[None, :] * np.cos(2.0 * (N - n[None, :]) * x[:, None]), axis=1)
    eta2 = (4.0 * g2 / w ** 2) * 4.0 * (1.0 - np.cos(x)) ** 2 * interference
    return float(np.sum(eta2 / 2.0 * coth))


def qnd_channel(gamma_value):
    """Dephasing superoperator diag(1, e^-g, e^-g, 1); Choi concurrence e^-g."""
    if gamma_value < 0:
        raise DomainError("gamma_value must be nonnegative")
    decay = np.exp(-gamma_value)
    return np.diag([1.0, decay, decay, 1.0]).astype(complex)


def qnd_free_family(bath):
    return ChannelFamily(
        name="qnd",
        superoperator=lambda t: qnd_channel(gamma_free(bath, t)),
        params={"coupling": bath.coupling_strength, "cutoff": bath.cutoff,
                "T": bath.temperature},
        positive_floor=True,
    )


def qnd_pulsed_family(bath, spacing, strength=50.0 * np.pi, pulse_duration=0.01):
    """Pulsed QND family on the discrete grid t = 2 N * spacing (nearest N)."""

    def superop(t):
        N = max(0, int(round(t / (2.0 * spacing))))
        sched = PulseSchedule(n_pulses=N, spacing=spacing,
                              pulse_duration=pulse_duration, strength=strength)
        return qnd_channel(gamma_pulsed(bath, sched))

    return ChannelFamily(
        name="qnd_pulsed",
        superoperator=superop,
        params={"coupling": bath.coupling_strength, "cutoff": bath.cutoff,
                "T": bath.temperature, "spacing": spacing},
        positive_floor=True,
    )
