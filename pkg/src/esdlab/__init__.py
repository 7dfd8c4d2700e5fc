"""esdlab: entanglement dynamics of two-qubit systems under decoherence control.

Five control scenarios (photonic band gap, frequency modulation, resonance
fluorescence, bang-bang decoupled QND dephasing, Josephson charge qubit
under telegraph noise with pulses) exposed as time-parametrized channel
families, with entanglement-sudden-death detection and parameter sweeps.
"""

from .core import (ChannelFamily, LindbladSpec, apply_channel, apply_one_sided,
                   choi, concurrence, factorization_check, lindblad_generator,
                   permute_middle, block_trace, reduce_impurity, PHI_PLUS,
                   validate_density_matrix)
from .decoupling import (BathSpectrum, PulseSchedule, gamma_free, gamma_pulsed,
                         qnd_channel, qnd_free_family, qnd_pulsed_family)
from .errors import (DegenerateRootError, DimensionError, DomainError,
                     EsdlabError, NoDecayError, SingularParameterError,
                     UnsupportedSizeError)
from .josephson import (JosephsonParams, eigenstructure, full_channel,
                        josephson_family, josephson_pulsed_family,
                        pulsed_channel, redfield_elements, redfield_generator,
                        reduced_qubit_channel)
from .markovian import (BandGapParams, FreqModParams, ResFluoParams,
                        bandgap_c, bandgap_channel, bandgap_family,
                        freqmod_channel, freqmod_closed_v, freqmod_family,
                        freqmod_generator, freqmod_tesd, resfluo_channel,
                        resfluo_closed_form, resfluo_discrepancy,
                        resfluo_family, resfluo_generator)
from .numerics import (bessel_j, digamma_complex, erf_complex, expm,
                       gen_eig_small, herm_eig, sqrtm_psd)
from .sweeps import (ConcurrenceTrace, EsdResult, SweepResult, find_tesd,
                     sweep, trace_concurrence)

__version__ = "0.1.0"
