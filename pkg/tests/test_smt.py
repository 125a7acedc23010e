from fractions import Fraction

import pytest

from conftest import requires_solver
from divplan.smt import (
    FALSE,
    TRUE,
    And,
    Bool,
    Eq,
    Ge,
    Int,
    IntVal,
    Le,
    Not,
    Or,
    Real,
    RealVal,
    Sum,
    evaluate,
    to_smtlib,
)
from divplan.smt.session import CheckResult, ContractError, SolverError, open_session
from divplan.smt.smtlib import SMTLibSession
from divplan.smt.terms import INT, REAL, SortError

x, y = Bool("x"), Bool("y")


def test_constant_folding():
    assert And(x, TRUE) is x
    assert Or(x, TRUE) is TRUE
    assert And() is TRUE and Or() is FALSE
    assert And(x, FALSE) is FALSE


def test_sort_checking():
    with pytest.raises(SortError):
        And(x, Int("v"))


def test_printing():
    assert to_smtlib(Eq(Real("r"), RealVal(Fraction(-1, 2)))) == "(= r (- (/ 1.0 2.0)))"


def test_three_valued_evaluation():
    assert evaluate(Or(x, y), {"x": True}) is True
    assert evaluate(And(x, y), {"x": True}) is None
    assert evaluate(Le(Sum([Int("a"), IntVal(2)], INT), IntVal(3)), {"a": 1}) is True


@pytest.fixture(params=["smtlib", "mock"])
def backend(request):
    if request.param == "smtlib":
        try:
            s = open_session("smtlib")
        except SolverError:
            pytest.skip("no solver")
    else:
        s = open_session("mock")
    yield s
    s.close()


def test_empty_session_sat(backend):
    assert backend.check() is CheckResult.SAT


def test_assert_true_is_noop(backend):
    backend.add(TRUE)
    assert backend.assertion_count == 0
    assert backend.check() is CheckResult.SAT


def test_contradiction_unsat(backend):
    backend.add(x, Not(x))
    assert backend.check() is CheckResult.UNSAT
    with pytest.raises(ContractError):
        backend.model()


def test_model_values(backend):
    v = Int("v")
    backend.add(x, Ge(v, IntVal(3)), Le(v, IntVal(3)))
    assert backend.check() is CheckResult.SAT
    m = backend.model()
    assert m[x] is True and m[v] == 3


def test_model_satisfies_assertions(backend):
    a, b, c = Bool("a"), Bool("b"), Bool("c")
    backend.add(Or(a, b), Or(Not(a), c), Or(Not(b), Not(c)), Or(Not(c), Not(a)))
    assert backend.check() is CheckResult.SAT
    m = backend.model()
    assert all(evaluate(t, m) is True for t in backend.assertions)


def test_model_before_check():
    s = open_session("mock")
    with pytest.raises(ContractError):
        s.model()


def test_mock_rejects_reals():
    with pytest.raises(NotImplementedError):
        open_session("mock").add(Eq(Real("r"), RealVal(1)))


@requires_solver
def test_reals_and_independent_check():
    with SMTLibSession() as s:
        r = Real("r")
        s.add(Eq(Sum([r, r], REAL), RealVal(Fraction(3, 2))))
        assert s.check() is CheckResult.SAT
        assert s.model()[r] == Fraction(3, 4)


def _pigeonhole(n):
    holes = n - 1
    p = [[Bool(f"ph_{i}_{j}") for j in range(holes)] for i in range(n)]
    cons = [Or(*row) for row in p]
    for j in range(holes):
        for i in range(n):
            for k in range(i + 1, n):
                cons.append(Or(Not(p[i][j]), Not(p[k][j])))
    return cons


@requires_solver
def test_timeout_gives_unknown():
    with SMTLibSession(grace=0.5) as s:
        s.add(*_pigeonhole(14))
        assert s.check(timeout=0.001) is CheckResult.UNKNOWN


@requires_solver
def test_rejected_input_is_an_error_not_unknown():
    with SMTLibSession() as s:
        s._send("(assert undefined_symbol)")
        with pytest.raises(SolverError):
            s.check()


def test_missing_binary():
    with pytest.raises(SolverError):
        SMTLibSession(binary="/nonexistent/solver")


@requires_solver
def test_redeclaration_with_other_sort():
    with SMTLibSession() as s:
        s.add(Bool("z"))
        with pytest.raises(TypeError):
            s.add(Ge(Int("z"), IntVal(0)))
