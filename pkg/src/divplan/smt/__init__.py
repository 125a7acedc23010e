from .session import CheckResult, ContractError, SolverError, SolverModel, SolverSession, open_session
from .terms import (
    BOOL,
    FALSE,
    INT,
    REAL,
    TRUE,
    And,
    Bool,
    BoolVal,
    Eq,
    Ge,
    Gt,
    Iff,
    Implies,
    Int,
    IntVal,
    Ite,
    Le,
    Lt,
    Not,
    Or,
    Real,
    RealVal,
    Scale,
    Sub,
    Sum,
    Term,
    evaluate,
    to_smtlib,
)
