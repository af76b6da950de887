"""Finite racks and quandles, their cubical chain complexes, and exact integral homology."""

from .chains import (
    VARIANTS, FormalChain, GradedComplex, alpha, basis, beta_map, boundary,
    build_complex, deg_projection, degenerate, face, homotopy_D, phi, psi, r_shift,
)
from .errors import RackError, ResourceCapExceeded
from .homology import (
    AbelianGroupInvariants, betti, closed_form_betti, homology, homology_groups,
    mod_p_homology_dim, verify_main_theorem, verify_splitting,
)
from .racks import (
    AlexanderPresentation, FiniteRack, NotIsomorphic, OrbitPartition, RackMorphism,
    find_isomorphism, homogeneity_report, make_alexander, make_conjugation, make_cyclic,
    make_dihedral, make_fr4, make_trivial, orbit_partition, orbit_rack, parse_polynomial,
    parse_rack_spec, prop41_map, prop42_map, read_rack_table, validate_rack,
)
from .smith import IntegerMatrix, SmithForm, invariant_factors, smith_normal_form
from .table1 import load_table1, run_table1
from .verify import run_suite

__version__ = "0.1.0"
