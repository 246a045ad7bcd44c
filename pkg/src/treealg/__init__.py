"""Leaf-labelled binary trees, their congruences, and polynomial synthesis
for congruence preserving functions."""

from .cp import (
    Constant,
    FunctionTable,
    NotSigmaValued,
    NotWCPClass,
    Projection,
    Witness,
    classify_sigma_valued,
    cp_equal_on_alphabet,
    freeze,
    gcp_check,
    gcp_witness,
    synthesize,
    tabulate,
    wcp_check,
)
from .errors import (
    AlphabetTooSmall,
    ArityMismatch,
    DecompositionUndefined,
    IncompleteTable,
    InvalidWordSet,
    NotWCP,
    SkeletonMismatch,
    TreeAlgebraError,
)
from .morphisms import (
    Endomorphism,
    FiniteMagma,
    MagmaHom,
    alpha_map,
    apply,
    extend_endo,
    grafting,
    hom_to_magma,
    is_idempotent,
    nu,
    similar,
)
from .polynomial import Polynomial, TreeFunction, Var, evaluate, substitute, var, variables_of
from .tree import (
    ZERO,
    Alphabet,
    Leaf,
    Node,
    Tree,
    Zero,
    decompose,
    from_word_set,
    letters_of,
    show,
    size,
    star,
    to_word_set,
    to_words,
)

__version__ = "0.1.0"
