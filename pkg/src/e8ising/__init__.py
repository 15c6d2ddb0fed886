"""Root-system mass spectra and transverse-field Ising chain numerics.

Two halves of one correspondence: the Lie-theory side builds simply-laced
root systems and extracts their mass multisets three ways (closed forms,
Perron-Frobenius eigenvector, Coxeter-plane circle radii); the spin-chain
side exactly diagonalizes the perturbed Ising chain and tracks the gap
ratio that the E8 prediction pins at the golden ratio.
"""

from .chain import (
    CALIBRATED_GZ,
    ChainParams,
    EigensolverError,
    GapRow,
    GapTable,
    HamiltonianOperator,
    build_hamiltonian,
    even_sector_hamiltonian,
    lowest_eigenvalues,
    mass_gaps,
    pseudo_critical_scan,
    ratio_sweep,
)
from .coxplane import (
    PlaneBasis,
    ProjectedRoot,
    SvgStyle,
    circle_radii,
    coxeter_plane,
    distinct_circle_count,
    emit_csv,
    emit_svg,
    project,
)
from .rootsystems import (
    Bicoloring,
    CoxeterElement,
    RootSystem,
    SimpleTypeId,
    bicolor,
    cartan_matrix,
    close_under_reflections,
    coxeter_element,
    coxeter_number,
    exponents,
    root_system,
    simple_roots,
)
from .spectra import (
    E8_NODE_MASS_INDEX,
    FusingTriple,
    MassSpectrum,
    Orbit,
    VerificationReport,
    e8_masses_from_nodes,
    fusing_triples,
    orbit_decomposition,
    orbit_representatives,
    pf_eigenvector,
    verify_correspondence,
    zamolodchikov_masses,
)

__version__ = "0.1.0"

__all__ = [
    "CALIBRATED_GZ",
    "Bicoloring",
    "ChainParams",
    "CoxeterElement",
    "E8_NODE_MASS_INDEX",
    "EigensolverError",
    "FusingTriple",
    "GapRow",
    "GapTable",
    "HamiltonianOperator",
    "MassSpectrum",
    "Orbit",
    "PlaneBasis",
    "ProjectedRoot",
    "RootSystem",
    "SimpleTypeId",
    "SvgStyle",
    "VerificationReport",
    "bicolor",
    "build_hamiltonian",
    "cartan_matrix",
    "circle_radii",
    "close_under_reflections",
    "coxeter_element",
    "coxeter_number",
    "coxeter_plane",
    "distinct_circle_count",
    "e8_masses_from_nodes",
    "emit_csv",
    "emit_svg",
    "even_sector_hamiltonian",
    "exponents",
    "fusing_triples",
    "lowest_eigenvalues",
    "mass_gaps",
    "orbit_decomposition",
    "orbit_representatives",
    "pf_eigenvector",
    "project",
    "pseudo_critical_scan",
    "ratio_sweep",
    "root_system",
    "simple_roots",
    "verify_correspondence",
    "zamolodchikov_masses",
]
