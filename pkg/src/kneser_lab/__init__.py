"""Schur products of codes over prime fields and divisible set families."""

from .bridge import (
    DivisibilityCertificate,
    bridge_check,
    improved_odlyzko_check,
    odlyzko_count,
    prime_power_lift_check,
    span_family,
    split_family,
    tphi_atom_report,
)
from .codes import (
    LinearCode,
    binary_points,
    code_sum,
    dual,
    intersect,
    membership,
    power,
    restrict_code,
    schur_product,
    span,
)
from .constructions import HadamardMatrix, atomic_family, frankl_odlyzko_family, paley_hadamard_12
from .errors import (
    BudgetExceeded,
    FormatError,
    InternalCheckError,
    KneserLabError,
    MismatchError,
    PreconditionError,
)
from .families import (
    AtomPartition,
    SetFamily,
    atom_in_power_check,
    atomic_structure_check,
    atoms,
    family_product_atoms_check,
    is_kwise_divisible,
    product_family,
    restrict,
)
from .field import FieldVector, PrimeField, inner, star, support
from .kernels import BACKEND
from .report import TheoremReport, VerificationReport
from .search import (
    SubspaceEnumerator,
    gaussian_binomial,
    improved_odlyzko_sweep,
    random_property_suite,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
)
from .kneser import (
    StabDecomposition,
    decompose,
    growth_check,
    kneser_chain_bound,
    kneser_check,
    stabilizer,
)

__version__ = "0.1.0"
