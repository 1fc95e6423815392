"""Exact desk-scale verification of optimal Khintchine and mixed Littlewood constants."""
from importlib import resources

from .constants import (
    INFINITY,
    Branch,
    Breakpoint,
    HaagerupConstant,
    conjugate_exponent,
    gamma,
    gaussian_moment_limit,
    haagerup_constant,
    mixed_littlewood_constant,
    multiple_khintchine_constant,
    p0,
    parse_exponent,
    solve_p0,
)
from .errors import BudgetExceededError, DegenerateError, DomainError, KhinlabError
from .forms import (
    InequalityReport,
    MultilinearForm,
    Theorem,
    equivalence_report,
    form_norm,
    littlewood_form_construction,
    mixed_lhs_inner,
    mixed_lhs_outer,
    verify_mixed_littlewood,
)
from .moments import (
    Method,
    MomentResult,
    exact_moment,
    l2_of_tensor,
    moment_rank_one,
    rademacher,
    sign_transform,
)
from .norms import lp_norm, minkowski_gap, mixed_norm
from .witnesses import (
    WitnessKind,
    WitnessReport,
    binomial_moment,
    block_ones_witness,
    lower_bound_sweep,
    uniform_witness,
    witness_ratio,
)


def schema_text(name: str) -> str:
    """Contents of the shipped JSON schema ``schema/<name>.schema.json``."""
    return resources.files(__package__).joinpath("schema", f"{name}.schema.json").read_text()
