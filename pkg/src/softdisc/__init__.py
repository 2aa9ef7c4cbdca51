"""Ground states of soft-disc configurations on the plane.

Points interact through a hard core at distance 1 and a linear well that
vanishes at ``1 + delta``.  The package evaluates energies, splits them into
perimeter, defect, Euler characteristic and elastic parts, builds the
canonical spiral minimisers, certifies minimality for small N and probes
the inequalities used in the crystallization argument.
"""

from .canonical import (
    canonical_boundary_count,
    canonical_configuration,
    canonical_energy,
    canonical_index,
    harborth_energy,
)
from .config import (
    DEFAULT_DELTA,
    DELTA_MAX,
    Configuration,
    EuclidPoint,
    LatticePoint,
    PotentialParams,
    normal_form,
    parse_configuration,
    serialize_configuration,
)
from .bonds import build_bond_graph, connected_components
from .energy import EnergyBreakdown, decompose, excess, total_energy
from .errors import (
    CapacityError,
    ConfigFormatError,
    DomainError,
    InfeasibleConfiguration,
    InvariantViolation,
    PreconditionError,
    SaturationError,
    SoftDiscError,
    ValidationError,
)
from .faces import EdgeClass, classify_faces, face_walks, has_simple_closed_boundary

__version__ = "0.1.0"
