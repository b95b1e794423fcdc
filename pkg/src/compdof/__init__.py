"""Cut-set degrees-of-freedom bounds for message assignments in K-user
interference channels with cooperative (CoMP) transmission."""

from .assignment import (
    GeneratorSpec,
    MessageAssignment,
    ValidationReport,
    canonical_form,
    generate,
    validate,
)
from .certificates import (
    CertificateSet,
    GreedyTrace,
    check_counting_inequalities,
    construct_certificate,
    construct_certificate_m3,
    extend_step,
    extend_step_m3,
    find_basis,
)
from .expansion import (
    BoundResult,
    ExpansionProfile,
    carried_messages,
    dof_upper_bound,
    expansion_profile,
    i_min_of_profile,
    reconstruction_check,
)
from .search import (
    ExpansionExperiment,
    SearchReport,
    epsilon_experiment,
    epsilon_threshold,
    eta_out_exact,
    eta_out_random,
    expansion_ratio,
    min_cooperation_order,
)
from .verify import run_verification

__version__ = "0.1.0"
