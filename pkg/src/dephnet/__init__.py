"""Single- and two-particle dynamics in quantum networks with pure dephasing.

Build a network, assemble its master-equation generator, integrate, and
cross-check against trajectory ensembles over disordered realizations:

    from dephnet import reference_trimer, single_particle_generator, evolve_single
    net = reference_trimer("classical")
    record = evolve_single(single_particle_generator(net), pure_site_state(3, 0), z_max=12.0)
"""

from .analysis import (CoherenceSeries, certify_dfs, coherence_norm,
                       coherence_series, detect_steady_state,
                       relative_entropy_coherence, similarity, trace_distance)
from .density import (PAIR_BASIS, SITE_BASIS, DensityMatrix, pair_density,
                      pure_site_state, site_density)
from .engine import (CorrelationMatrix, EvolutionRecord, coherence_magnitudes,
                     evolve_single, evolve_two, exchange_coherence_block,
                     joint_probability, populations)
from .errors import (AsymmetricCoupling, ConfigError, DephnetError,
                     DimensionMismatch, EigSolverFailure, FermionNotAllowed,
                     InvariantViolation, NegativeDephasing, NegativeProbability,
                     NormalizationError, SameSiteFermion, StepTooLarge, ZeroMatrix)
from .generators import (Generator, dephasing_coefficient, pair_index,
                         pair_label, single_particle_generator, swap_matrix,
                         two_particle_generator)
from .network import (PIECEWISE_SEGMENTS, WHITE_NOISE_WIENER, Network,
                      NoiseSpec, build_network, reference_trimer)
from .oracle import (DisorderRealization, Propagator, draw_realization,
                     ensemble_single, ensemble_two, ensemble_two_mixture,
                     sample_propagator)
from .states import (BOSON, DISTINGUISHABLE, FERMION, TwoParticleState,
                     classically_correlated_mix, distinguishable_incoherent,
                     entangled_nn, explicit_state, separable_pair)

__version__ = "0.1.0"
