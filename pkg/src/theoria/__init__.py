"""theoria: an interactive, extensible proof kernel.

Users extend a small mathematical core language with datatypes, axiomatic
types and operators, state rewrite and inference rules over them, and
discharge sequents interactively or with automatic tactics.  Proofs are
stored, checked for reusability and replayed when theories change.
"""

from .errors import (
    BudgetExceeded,
    CorruptProof,
    DirectionNotAllowed,
    IncompatibleFactories,
    NotExpandable,
    RuleNotApplicable,
    TheoriaError,
    TypingError,
)
from .factory import (
    CORE,
    FormulaFactory,
    factories_compatible,
    factory_union,
    factory_with,
)
from .formula import Formula, free_idents, mk_node, positions, subformula_at
from .matcher import Pattern, match, match_assoc, match_types
from .parser import parse_formula, parse_type
from .printer import ASCII, UNICODE, print_formula
from .proofstore import (
    StoredProof,
    check_reusable,
    proof_from_json,
    proof_to_json,
    replay,
    reuse,
    store_proof,
)
from .prooftree import CLOSED, OPEN, ProofTree, RuleApplication, STALE, Sequent
from .reasoners import applicable_rules, apply_to, run_reasoner
from .rulebase import RuleBase
from .signatures import (
    AxiomaticTypeSig,
    ConstructorSig,
    DatatypeSig,
    OperatorSig,
    signature_equal,
)
from .specialise import Specialisation, apply_type, specialise
from .stypes import (
    BOOL,
    DatatypeInstance,
    GivenType,
    INT,
    PowerSet,
    Product,
    TypeParam,
)
from .tactics import TacticReport, auto_prove, auto_tactic
from .theory import (
    Theory,
    compile_factory,
    expand_definition_formula,
    generated_axioms,
    validate_theory,
)
from .theoryio import parse_sequents, parse_theory
from .typecheck import TypeEnvironment, typecheck, typecheck_group
from .wd import wd
from .workspace import Workspace

__version__ = "0.1.0"
