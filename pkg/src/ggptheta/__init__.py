"""Exact parameter-side calculus for local Gan-Gross-Prasad recipes and theta lifts over Q_p."""

from ggptheta.errors import (
    ClassificationError,
    DomainError,
    DSLSyntaxError,
    FieldMismatchError,
    InconsistentValueError,
    MalformedParameterError,
    NonGenericError,
    SnapError,
    UnsupportedConstituentError,
    UsageError,
)
from ggptheta.dsl import parse_rep
from ggptheta.exact import ExactNumber
from ggptheta.lfactors import epsilon_half, gauss_sum, is_generic, lambda_factor, root_number
from ggptheta.localfield import PAdicField, QuadChar, SquareClass, hilbert_symbol, square_class
from ggptheta.packets import ComponentGroup, EnhancedParam, SignCharacter
from ggptheta.wdalg import MP, SO_EVEN, SO_ODD, SP, Kind, WDIrred, WDRep, TwistedChar

__version__ = "0.1.0"

__all__ = [
    "MP",
    "SO_EVEN",
    "SO_ODD",
    "SP",
    "ComponentGroup",
    "EnhancedParam",
    "ExactNumber",
    "Kind",
    "SignCharacter",
    "TwistedChar",
    "WDIrred",
    "WDRep",
    "epsilon_half",
    "gauss_sum",
    "is_generic",
    "lambda_factor",
    "parse_rep",
    "root_number",
    "ClassificationError",
    "DomainError",
    "DSLSyntaxError",
    "FieldMismatchError",
    "InconsistentValueError",
    "MalformedParameterError",
    "NonGenericError",
    "PAdicField",
    "QuadChar",
    "SnapError",
    "SquareClass",
    "UnsupportedConstituentError",
    "UsageError",
    "hilbert_symbol",
    "square_class",
]
