"""Monitored electron double-slit: Coulomb-kick decoherence, screen patterns and which-way information."""

from .params import (CODATA_2018, DerivedParams, ExperimentConfig, PhysicalConstants, bach_config,
                     derive, impulse, interaction_alpha, load_config, validate_regime,
                     velocity_from_energy, with_alpha)
from .interference import (JointGrid, PatternGrid, impulsive_visibility, joint_xk_distribution,
                           pattern_analytic, pattern_numeric_oracle)
from .quantum_info import (binary_entropy, electron_density_matrix, holevo_bound, info_BE, info_M,
                           info_Q, info_WZ, joint_table, mutual_information,
                           quantum_mutual_information, von_neumann_entropy)

__version__ = "0.1.0"
