"""A minimal quantifier-free term language over Bool, Int and Real.

Terms print to SMT-LIB v2 and can be evaluated against a model
independently of any solver.
"""

from __future__ import annotations

from fractions import Fraction

BOOL, INT, REAL = "Bool", "Int", "Real"


class SortError(TypeError):
    pass


class Term:
    __slots__ = ("op", "args", "sort")

    def __init__(self, op: str, args: tuple, sort: str):
        self.op = op
        self.args = args
        self.sort = sort

    @property
    def name(self) -> str:
        if self.op != "var":
            raise AttributeError("only variables have names")
        return self.args[0]

    def __repr__(self) -> str:
        return to_smtlib(self)

    # variables are compared by name so they can key dictionaries
    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        if self.op == "var" and other.op == "var":
            return self.args == other.args and self.sort == other.sort
        return self is other

    def __hash__(self):
        if self.op == "var":
            return hash((self.args[0], self.sort))
        return id(self)


def Var(name: str, sort: str) -> Term:
    return Term("var", (name,), sort)


def Bool(name: str) -> Term:
    return Var(name, BOOL)


def Int(name: str) -> Term:
    return Var(name, INT)


def Real(name: str) -> Term:
    return Var(name, REAL)


TRUE = Term("const", (True,), BOOL)
FALSE = Term("const", (False,), BOOL)


def BoolVal(b: bool) -> Term:
    return TRUE if b else FALSE


def IntVal(v: int) -> Term:
    return Term("const", (int(v),), INT)


def RealVal(v) -> Term:
    return Term("const", (Fraction(v),), REAL)


def _need(sort: str, *ts: Term):
    for t in ts:
        if t.sort != sort:
            raise SortError(f"expected {sort}, got {t.sort}: {t!r}")


def _same_numeric(*ts: Term) -> str:
    sorts = {t.sort for t in ts}
    if len(sorts) != 1 or sorts <= {BOOL}:
        raise SortError(f"arithmetic over mixed or non-numeric sorts {sorts}")
    return sorts.pop()


def And(*ts: Term) -> Term:
    ts = tuple(t for t in _flat(ts) if t is not TRUE)
    _need(BOOL, *ts)
    if any(t is FALSE for t in ts):
        return FALSE
    if not ts:
        return TRUE
    if len(ts) == 1:
        return ts[0]
    return Term("and", ts, BOOL)


def Or(*ts: Term) -> Term:
    ts = tuple(t for t in _flat(ts) if t is not FALSE)
    _need(BOOL, *ts)
    if any(t is TRUE for t in ts):
        return TRUE
    if not ts:
        return FALSE
    if len(ts) == 1:
        return ts[0]
    return Term("or", ts, BOOL)


def _flat(ts):
    for t in ts:
        if isinstance(t, (list, tuple)):
            yield from t
        else:
            yield t


def Not(t: Term) -> Term:
    _need(BOOL, t)
    if t is TRUE:
        return FALSE
    if t is FALSE:
        return TRUE
    if t.op == "not":
        return t.args[0]
    return Term("not", (t,), BOOL)


def Implies(a: Term, b: Term) -> Term:
    _need(BOOL, a, b)
    if a is FALSE or b is TRUE:
        return TRUE
    if a is TRUE:
        return b
    return Term("=>", (a, b), BOOL)


def Iff(a: Term, b: Term) -> Term:
    _need(BOOL, a, b)
    return Term("=", (a, b), BOOL)


def Eq(a: Term, b: Term) -> Term:
    if a.sort != b.sort:
        raise SortError(f"= over {a.sort} and {b.sort}")
    return Term("=", (a, b), BOOL)


def _cmp(op):
    def build(a: Term, b: Term) -> Term:
        _same_numeric(a, b)
        return Term(op, (a, b), BOOL)

    build.__name__ = op
    return build


Le, Lt, Ge, Gt = _cmp("<="), _cmp("<"), _cmp(">="), _cmp(">")


def Sum(ts, sort: str = INT) -> Term:
    ts = tuple(ts)
    if not ts:
        return IntVal(0) if sort == INT else RealVal(0)
    s = _same_numeric(*ts)
    if len(ts) == 1:
        return ts[0]
    return Term("+", ts, s)


def Sub(a: Term, b: Term) -> Term:
    return Term("-", (a, b), _same_numeric(a, b))


def Scale(k, t: Term) -> Term:
    """Constant multiple ``k * t``."""
    k = Fraction(k)
    if k == 1:
        return t
    c = IntVal(int(k)) if t.sort == INT and k.denominator == 1 else RealVal(k)
    if c.sort != t.sort:
        raise SortError("non-integral scale of an Int term")
    return Term("*", (c, t), t.sort)


def Ite(c: Term, a: Term, b: Term) -> Term:
    _need(BOOL, c)
    if a.sort != b.sort:
        raise SortError("ite branches differ in sort")
    return Term("ite", (c, a, b), a.sort)


# ----------------------------------------------------------------- printing


def format_const(value, sort: str) -> str:
    if sort == BOOL:
        return "true" if value else "false"
    if sort == INT:
        return str(value) if value >= 0 else f"(- {-value})"
    value = Fraction(value)
    neg = value < 0
    value = abs(value)
    if value.denominator == 1:
        s = f"{value.numerator}.0"
    else:
        s = f"(/ {value.numerator}.0 {value.denominator}.0)"
    return f"(- {s})" if neg else s


def to_smtlib(t: Term, vars_out: dict | None = None) -> str:
    """Print ``t``; free variables are recorded into ``vars_out`` (name -> sort)."""
    parts: list[str] = []
    _emit(t, parts, vars_out)
    return "".join(parts)


def _emit(t: Term, out: list, vars_out):
    # iterative to survive deep right-nested sums
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
            continue
        if x.op == "var":
            out.append(x.args[0])
            if vars_out is not None:
                vars_out[x.args[0]] = x.sort
        elif x.op == "const":
            out.append(format_const(x.args[0], x.sort))
        else:
            out.append("(" + x.op)
            stack.append(")")
            for a in reversed(x.args):
                stack.append(a)
                stack.append(" ")


def free_vars(t: Term, acc: dict | None = None) -> dict:
    acc = {} if acc is None else acc
    stack = [t]
    while stack:
        x = stack.pop()
        if x.op == "var":
            acc[x.args[0]] = x.sort
        elif x.op != "const":
            stack.extend(x.args)
    return acc


# --------------------------------------------------------------- evaluation


def evaluate(t: Term, model) -> object:
    """Evaluate ``t`` under ``model`` (mapping name -> value).

    Returns ``None`` when the value depends on a variable the model does not
    assign (three-valued semantics, used by the in-process search).
    """
    op = t.op
    if op == "var":
        return model.get(t.args[0])
    if op == "const":
        return t.args[0]
    if op == "and":
        unknown = False
        for a in t.args:
            v = evaluate(a, model)
            if v is False:
                return False
            if v is None:
                unknown = True
        return None if unknown else True
    if op == "or":
        unknown = False
        for a in t.args:
            v = evaluate(a, model)
            if v is True:
                return True
            if v is None:
                unknown = True
        return None if unknown else False
    if op == "not":
        v = evaluate(t.args[0], model)
        return None if v is None else not v
    if op == "=>":
        a = evaluate(t.args[0], model)
        if a is False:
            return True
        b = evaluate(t.args[1], model)
        if b is True:
            return True
        if a is None or b is None:
            return None
        return False
    if op == "ite":
        c = evaluate(t.args[0], model)
        if c is None:
            return None
        return evaluate(t.args[1] if c else t.args[2], model)
    vals = [evaluate(a, model) for a in t.args]
    if any(v is None for v in vals):
        return None
    if op == "=":
        return vals[0] == vals[1]
    if op == "<=":
        return vals[0] <= vals[1]
    if op == "<":
        return vals[0] < vals[1]
    if op == ">=":
        return vals[0] >= vals[1]
    if op == ">":
        return vals[0] > vals[1]
    if op == "+":
        return sum(vals[1:], vals[0])
    if op == "-":
        return vals[0] - vals[1]
    if op == "*":
        return vals[0] * vals[1]
    raise ValueError(f"unknown operator {op}")
