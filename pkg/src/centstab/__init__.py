"""Exact representation theory of symmetric groups: Specht modules, central stabilization
and central stability chain complexes over Q and F_p."""

from .combinatorics import (
    Partition,
    ShapeError,
    Tableau,
    Tabloid,
    WeakPartition,
    bracket,
    conjugate,
    deletion_sequences,
    dim_poly,
    hatstab,
    parse_partition,
    partitions,
    stab,
    standard_tableaux,
    tabloids,
    upper_right,
)
from .linalg import Field, FieldMismatch, Matrix, Q, SemisimplicityViolation
from .specht import generalized_specht, permutation_module, polytabloid, specht_module, stabilization_map
from .stability import (
    ChainComplex,
    CoherentSequence,
    InvalidSubrepresentation,
    PotentialStabilityViolation,
    boundary_map,
    central_stability_complex,
    central_stabilization,
    central_stabilization_sequence,
    dimension_polynomial_check,
    homology_dims,
    potential_check,
    specht_stability_certificate,
)
from .symrep import (
    EquivMap,
    SymRep,
    apply_permutation,
    character,
    decompose,
    induce,
    restrict,
    specht_character,
    tensor_sign,
    width,
    width_subspace,
)

__version__ = "0.1.0"
