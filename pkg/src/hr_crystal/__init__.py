"""Ground states of the two-dimensional Heitmann-Radin sticky-disk model."""

from .geometry import (
    BondGraph,
    DegenerateInput,
    EnergyBreakdown,
    Face,
    HardCoreViolation,
    PointConfig,
    build_bond_graph,
    defect_measure,
    energy_decomposed,
    energy_direct,
    euler_characteristic,
    perimeter,
)
from .lattice import (
    CanonicalForm,
    EmptyPeel,
    LatticeConfig,
    TooSmall,
    boundary_particles,
    canonicalize,
    grow,
    hexagon,
    is_crystallized,
    peel,
    to_cartesian,
)
from .minimizers import (
    MinimizerReport,
    SkjTriple,
    alternate_minimizer,
    canonical_minimizer,
    diophantine_count,
    ground_state_energy,
    is_uniqueness_number,
    max_n_for_perimeter,
    min_perimeter,
    skj_decompose,
    uniqueness_sequence,
)

__version__ = "0.1.0"
