"""Information diagrams for anything that satisfies the chain rule of information.

Build a signed measure on the atoms of the generic n-set Venn diagram from
any two-argument function satisfying the chain rule over a bitmask
join-semilattice, evaluate conditional interaction terms of every degree,
and verify the diagram identities exhaustively.  Ships instances for
Shannon entropy, Tsallis entropy, KL / alpha-KL divergence, cross-entropy,
arbitrary and submodular set functions, compression-based information
functions, and the generalization-error advantage.
"""

from .core import (
    ChainRuleInstance,
    DiagramReport,
    DomainError,
    Residual,
    VerificationError,
    atom_interaction,
    atom_measure,
    atom_table,
    atoms,
    check_chain_rule,
    circle_region,
    hu_region,
    indices_of,
    interaction,
    interaction_incl_excl,
    mask_of,
    max_generators,
    mobius_oracle,
    region_atoms,
    region_measure,
    relative_instance,
    validate_action_form,
    verify_hu,
)
from .divergences import (
    DistPair,
    alpha_kl,
    alpha_kl_instance,
    condition_pair,
    cross_entropy,
    cross_entropy_instance,
    kl,
    kl_instance,
    tsallis_entropy,
    tsallis_instance,
)
from .setfun import (
    HypothesisEvaluator,
    SetFunction,
    advantage_instance,
    bayes_error_evaluator,
    compressor_setfunction,
    conditional_mutual,
    entropy_setfunction,
    is_submodular,
    r1_instance,
    zlib_compressor,
)
from .shannon import (
    Dist,
    InfoFunction,
    IngestionError,
    RandomVariable,
    act,
    condition,
    conditioned,
    constant_variable,
    empirical_from_rows,
    entropy,
    entropy_function,
    equivalent,
    joint,
    joint_of,
    marginal,
    refines,
    shannon_instance,
)

__version__ = "0.1.0"

__all__ = [
    "ChainRuleInstance",
    "DiagramReport",
    "Dist",
    "DistPair",
    "DomainError",
    "HypothesisEvaluator",
    "InfoFunction",
    "IngestionError",
    "RandomVariable",
    "Residual",
    "SetFunction",
    "VerificationError",
    "act",
    "advantage_instance",
    "alpha_kl",
    "alpha_kl_instance",
    "atom_interaction",
    "atom_measure",
    "atom_table",
    "atoms",
    "bayes_error_evaluator",
    "check_chain_rule",
    "circle_region",
    "compressor_setfunction",
    "condition",
    "condition_pair",
    "conditional_mutual",
    "conditioned",
    "constant_variable",
    "cross_entropy",
    "cross_entropy_instance",
    "empirical_from_rows",
    "entropy",
    "entropy_function",
    "entropy_setfunction",
    "equivalent",
    "hu_region",
    "indices_of",
    "interaction",
    "interaction_incl_excl",
    "is_submodular",
    "joint",
    "joint_of",
    "kl",
    "kl_instance",
    "marginal",
    "mask_of",
    "max_generators",
    "mobius_oracle",
    "r1_instance",
    "refines",
    "region_atoms",
    "region_measure",
    "relative_instance",
    "shannon_instance",
    "tsallis_entropy",
    "tsallis_instance",
    "validate_action_form",
    "verify_hu",
    "zlib_compressor",
]
