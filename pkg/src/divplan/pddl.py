"""Parser for the supported PDDL fragment.

The fragment is typed STRIPS with negative preconditions and numeric fluents
(linear conditions; assign/increase/decrease effects). ``:action-costs`` is
accepted and ``total-cost`` bookkeeping is dropped, since every action costs 1.
Anything outside the fragment raises :class:`UnsupportedFeatureError`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .sexpr import SExprSyntaxError, SList, Symbol, parse_all

SUPPORTED_REQUIREMENTS = frozenset(
    {":strips", ":typing", ":negative-preconditions", ":numeric-fluents", ":fluents", ":action-costs"}
)
COMPARATORS = ("<", "<=", "=", ">=", ">")
UPDATE_KINDS = ("assign", "increase", "decrease")
COST_FLUENT = "total-cost"


class PDDLError(ValueError):
    """Base class of every parse/semantic error raised here."""


class PDDLSyntaxError(PDDLError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnsupportedFeatureError(PDDLError):
    def __init__(self, construct: str, line: int = 0):
        where = f" at line {line}" if line else ""
        super().__init__(f"unsupported PDDL construct {construct!r}{where}")
        self.construct = construct


class PDDLSemanticError(PDDLError):
    pass


@dataclass(frozen=True, order=True)
class Atom:
    """A (possibly lifted) predicate or fluent application."""

    name: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"

    def substitute(self, binding: dict[str, str]) -> "Atom":
        return Atom(self.name, tuple(binding.get(a, a) for a in self.args))


# A numeric expression: a Fraction, a fluent Atom, or (op, *operands) with
# op in + - * /.  A one-operand "-" is negation.
NumExpr = Union[Fraction, Atom, tuple]


@dataclass(frozen=True)
class NumericCondition:
    comparator: str
    lhs: NumExpr
    rhs: NumExpr


@dataclass(frozen=True)
class NumericEffect:
    kind: str
    fluent: Atom
    expr: NumExpr


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple[tuple[str, str], ...]
    pos_pre: tuple[Atom, ...] = ()
    neg_pre: tuple[Atom, ...] = ()
    num_pre: tuple[NumericCondition, ...] = ()
    add: tuple[Atom, ...] = ()
    delete: tuple[Atom, ...] = ()
    num_eff: tuple[NumericEffect, ...] = ()


@dataclass(frozen=True)
class DomainModel:
    name: str
    requirements: tuple[str, ...] = ()
    types: dict[str, str] = field(default_factory=dict)  # child -> parent
    constants: dict[str, str] = field(default_factory=dict)
    predicates: dict[str, tuple[str, ...]] = field(default_factory=dict)
    fluents: dict[str, tuple[str, ...]] = field(default_factory=dict)
    schemas: tuple[ActionSchema, ...] = ()

    def is_subtype(self, child: str, parent: str) -> bool:
        seen = set()
        while child not in seen:
            if child == parent:
                return True
            seen.add(child)
            if child not in self.types:
                return False
            child = self.types[child]
        return False

    def schema(self, name: str) -> ActionSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(name)


class Mode(str, enum.Enum):
    CLASSICAL = "classical"
    OSP = "osp"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class ProblemModel:
    name: str
    domain_name: str
    objects: dict[str, str]
    init_atoms: frozenset[Atom]
    init_fluents: dict[Atom, Fraction]
    goal: tuple[Atom, ...]
    goal_numeric: tuple[NumericCondition, ...] = ()
    mode: Mode = Mode.CLASSICAL
    utilities: dict[Atom, Fraction] = field(default_factory=dict)


# --------------------------------------------------------------------- helpers


def _sym(x, what: str) -> str:
    if not isinstance(x, Symbol):
        line = getattr(x, "line", 0)
        raise PDDLSyntaxError(f"expected {what}, found a list", line, getattr(x, "column", 0))
    return x.text


def _lst(x, what: str) -> SList:
    if not isinstance(x, list):
        raise PDDLSyntaxError(f"expected {what}, found {x.text!r}", x.line, x.column)
    return x


def _pos(x) -> tuple[int, int]:
    return getattr(x, "line", 0), getattr(x, "column", 0)


def parse_typed_list(items, allow_variables: bool | None = None) -> list[tuple[str, str]]:
    """``a b - t c`` -> [(a, t), (b, t), (c, object)]."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if isinstance(tok, list):
            raise PDDLSyntaxError("unexpected list in typed list", *_pos(tok))
        if tok.text == "-":
            if i + 1 >= len(items):
                raise PDDLSyntaxError("dangling '-' in typed list", tok.line, tok.column)
            typ = items[i + 1]
            if isinstance(typ, list):
                head = typ[0].text if typ and isinstance(typ[0], Symbol) else "?"
                if head == "either":
                    raise UnsupportedFeatureError("either", typ.line)
                raise PDDLSyntaxError("bad type", *_pos(typ))
            out.extend((p, typ.text) for p in pending)
            pending = []
            i += 2
            continue
        if allow_variables is True and not tok.text.startswith("?"):
            raise PDDLSyntaxError(f"expected variable, found {tok.text!r}", tok.line, tok.column)
        if allow_variables is False and tok.text.startswith("?"):
            raise PDDLSyntaxError(f"unexpected variable {tok.text!r}", tok.line, tok.column)
        pending.append(tok.text)
        i += 1
    out.extend((p, "object") for p in pending)
    return out


def _parse_number(tok) -> Fraction | None:
    if not isinstance(tok, Symbol):
        return None
    try:
        return Fraction(tok.text)
    except ValueError:
        return None


def _sections(expr, keyword: str):
    expr = _lst(expr, f"({keyword} ...)")
    if len(expr) < 2 or not isinstance(expr[0], Symbol) or expr[0].text != "define":
        raise PDDLSyntaxError("expected (define ...)", *_pos(expr))
    header = _lst(expr[1], f"({keyword} name)")
    if len(header) != 2 or _sym(header[0], keyword) != keyword:
        raise PDDLSyntaxError(f"expected ({keyword} name)", *_pos(header))
    return _sym(header[1], "name"), expr[2:]


# ---------------------------------------------------------------------- domain


class _SchemaBuilder:
    def __init__(self, dom_preds, dom_fluents, params, constants):
        self.preds = dom_preds
        self.fluents = dom_fluents
        self.params = {p for p, _ in params}
        self.constants = constants

    def term(self, tok) -> str:
        t = _sym(tok, "term")
        if t.startswith("?"):
            if t not in self.params:
                raise PDDLSemanticError(f"free variable {t} at line {tok.line}")
        elif t not in self.constants:
            raise PDDLSemanticError(f"unknown constant {t!r} at line {tok.line}")
        return t

    def atom(self, expr) -> Atom:
        expr = _lst(expr, "atom")
        if not expr:
            raise PDDLSyntaxError("empty atom", *_pos(expr))
        name = _sym(expr[0], "predicate")
        if name not in self.preds:
            if name in ("forall", "exists", "when", "or", "imply"):
                raise UnsupportedFeatureError(name, expr.line)
            raise PDDLSemanticError(f"undeclared predicate {name!r} at line {expr.line}")
        args = tuple(self.term(a) for a in expr[1:])
        if len(args) != len(self.preds[name]):
            raise PDDLSemanticError(f"arity mismatch for {name!r} at line {expr.line}")
        return Atom(name, args)

    def fluent(self, expr) -> Atom:
        expr = _lst(expr, "fluent")
        name = _sym(expr[0], "fluent")
        if name not in self.fluents:
            raise PDDLSemanticError(f"undeclared function {name!r} at line {expr.line}")
        args = tuple(self.term(a) for a in expr[1:])
        if len(args) != len(self.fluents[name]):
            raise PDDLSemanticError(f"arity mismatch for {name!r} at line {expr.line}")
        return Atom(name, args)

    def num_expr(self, expr) -> NumExpr:
        num = _parse_number(expr)
        if num is not None:
            return num
        if isinstance(expr, Symbol):
            raise PDDLSyntaxError(f"bad numeric expression {expr.text!r}", expr.line, expr.column)
        head = _sym(expr[0], "operator")
        if head in ("+", "-", "*", "/"):
            ops = [self.num_expr(e) for e in expr[1:]]
            if head == "-" and len(ops) == 1:
                return ("-", ops[0])
            if len(ops) < 2 or (head in "-/" and len(ops) != 2):
                raise PDDLSyntaxError(f"bad arity for {head!r}", expr.line, expr.column)
            return (head, *ops)
        return self.fluent(expr)

    def precondition(self, expr, pos, neg, nums):
        expr = _lst(expr, "precondition")
        if not expr:
            return
        head = _sym(expr[0], "connective")
        if head == "and":
            for sub in expr[1:]:
                self.precondition(sub, pos, neg, nums)
        elif head == "not":
            inner = _lst(expr[1], "atom")
            if inner and isinstance(inner[0], Symbol) and inner[0].text in COMPARATORS:
                raise UnsupportedFeatureError("negated numeric condition", expr.line)
            neg.append(self.atom(inner))
        elif head in COMPARATORS:
            if len(expr) != 3:
                raise PDDLSyntaxError(f"comparison {head!r} needs two operands", expr.line, expr.column)
            if head == "=" and all(isinstance(e, Symbol) and _parse_number(e) is None for e in expr[1:]):
                raise UnsupportedFeatureError("equality", expr.line)
            nums.append(NumericCondition(head, self.num_expr(expr[1]), self.num_expr(expr[2])))
        elif head in ("or", "imply", "exists", "forall", "when"):
            raise UnsupportedFeatureError(head, expr.line)
        else:
            pos.append(self.atom(expr))

    def effect(self, expr, add, dele, nums):
        expr = _lst(expr, "effect")
        if not expr:
            return
        head = _sym(expr[0], "effect")
        if head == "and":
            for sub in expr[1:]:
                self.effect(sub, add, dele, nums)
        elif head == "not":
            dele.append(self.atom(expr[1]))
        elif head in UPDATE_KINDS or head in ("scale-up", "scale-down"):
            if head not in UPDATE_KINDS:
                raise UnsupportedFeatureError(head, expr.line)
            target = _lst(expr[1], "fluent")
            if target and isinstance(target[0], Symbol) and target[0].text == COST_FLUENT:
                return
            nums.append(NumericEffect(head, self.fluent(target), self.num_expr(expr[2])))
        elif head in ("when", "forall"):
            raise UnsupportedFeatureError("conditional effects" if head == "when" else head, expr.line)
        else:
            add.append(self.atom(expr))


def _parse_schema(expr, preds, fluents, types, constants) -> ActionSchema:
    name = _sym(expr[1], "action name")
    fields: dict[str, object] = {}
    i = 2
    while i < len(expr):
        key = _sym(expr[i], "action keyword")
        if key not in (":parameters", ":precondition", ":effect"):
            raise UnsupportedFeatureError(key, expr[i].line)
        if i + 1 >= len(expr):
            raise PDDLSyntaxError(f"missing value for {key}", expr[i].line, expr[i].column)
        fields[key] = expr[i + 1]
        i += 2
    params = parse_typed_list(_lst(fields.get(":parameters", SList()), "parameter list"), allow_variables=True)
    for p, t in params:
        if t != "object" and t not in types:
            raise PDDLSemanticError(f"unknown type {t!r} for {p} in action {name}")
    b = _SchemaBuilder(preds, fluents, params, constants)
    pos, neg, nums = [], [], []
    if ":precondition" in fields:
        b.precondition(fields[":precondition"], pos, neg, nums)
    add, dele, neff = [], [], []
    if ":effect" in fields:
        b.effect(fields[":effect"], add, dele, neff)
    # add-after-delete: an atom both deleted and added stays true
    dele = [d for d in dele if d not in set(add)]
    return ActionSchema(
        name, tuple(params), tuple(pos), tuple(neg), tuple(nums), tuple(add), tuple(dele), tuple(neff)
    )


def parse_domain(text: str) -> DomainModel:
    """Parse a domain file in the supported fragment."""
    try:
        exprs = parse_all(text, lowercase=True)
    except SExprSyntaxError as e:
        raise PDDLSyntaxError(str(e).rsplit(" (line", 1)[0], e.line, e.column) from None
    if len(exprs) != 1:
        raise PDDLSyntaxError("expected exactly one (define (domain ...)) form")
    name, sections = _sections(exprs[0], "domain")
    requirements: list[str] = []
    types: dict[str, str] = {}
    constants: dict[str, str] = {}
    preds: dict[str, tuple[str, ...]] = {}
    fluents: dict[str, tuple[str, ...]] = {}
    raw_actions = []
    for sec in sections:
        sec = _lst(sec, "domain section")
        key = _sym(sec[0], "section keyword")
        if key == ":requirements":
            for r in sec[1:]:
                r = _sym(r, "requirement")
                if r not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeatureError(r, sec.line)
                requirements.append(r)
        elif key == ":types":
            for t, parent in parse_typed_list(sec[1:], allow_variables=False):
                if t == "object":
                    continue
                types[t] = parent
        elif key == ":constants":
            for c, t in parse_typed_list(sec[1:], allow_variables=False):
                constants[c] = t
        elif key == ":predicates":
            for p in sec[1:]:
                p = _lst(p, "predicate declaration")
                pname = _sym(p[0], "predicate name")
                if pname in preds:
                    raise PDDLSemanticError(f"duplicate predicate {pname!r}")
                preds[pname] = tuple(t for _, t in parse_typed_list(p[1:], allow_variables=True))
        elif key == ":functions":
            items = list(sec[1:])
            i = 0
            while i < len(items):
                f = _lst(items[i], "function declaration")
                fname = _sym(f[0], "function name")
                if fname in fluents or fname in preds:
                    raise PDDLSemanticError(f"duplicate function {fname!r}")
                i += 1
                if i < len(items) and isinstance(items[i], Symbol) and items[i].text == "-":
                    if _sym(items[i + 1], "function type") != "number":
                        raise UnsupportedFeatureError("object fluents", f.line)
                    i += 2
                if fname == COST_FLUENT:
                    continue
                fluents[fname] = tuple(t for _, t in parse_typed_list(f[1:], allow_variables=True))
        elif key == ":action":
            raw_actions.append(sec)
        else:
            raise UnsupportedFeatureError(key, sec.line)
    for parent in set(types.values()):
        if parent != "object" and parent not in types:
            types[parent] = "object"
    for decl in list(preds.values()) + list(fluents.values()) + [(t,) for t in constants.values()]:
        for t in decl:
            if t != "object" and t not in types:
                raise PDDLSemanticError(f"unknown type {t!r}")
    schemas = tuple(_parse_schema(a, preds, fluents, types, constants) for a in raw_actions)
    if len({s.name for s in schemas}) != len(schemas):
        raise PDDLSemanticError("duplicate action names")
    return DomainModel(name, tuple(requirements), types, constants, preds, fluents, schemas)


# --------------------------------------------------------------------- problem


def _ground_atom(expr, table: dict, objects: dict, dom: DomainModel, what: str) -> Atom:
    expr = _lst(expr, what)
    name = _sym(expr[0], what)
    if name not in table:
        raise PDDLSemanticError(f"unknown {what} {name!r} at line {expr.line}")
    args = tuple(_sym(a, "object") for a in expr[1:])
    sig = table[name]
    if len(args) != len(sig):
        raise PDDLSemanticError(f"arity mismatch for {name!r} at line {expr.line}")
    for a, t in zip(args, sig):
        if a not in objects:
            raise PDDLSemanticError(f"unknown object {a!r} at line {expr.line}")
        if not dom.is_subtype(objects[a], t):
            raise PDDLSemanticError(f"type mismatch: {a} is {objects[a]}, expected {t} (line {expr.line})")
    return Atom(name, args)


def _ground_num_expr(expr, objects, dom) -> NumExpr:
    num = _parse_number(expr)
    if num is not None:
        return num
    if isinstance(expr, Symbol):
        raise PDDLSyntaxError(f"bad numeric expression {expr.text!r}", expr.line, expr.column)
    head = _sym(expr[0], "operator")
    if head in ("+", "-", "*", "/"):
        ops = [_ground_num_expr(e, objects, dom) for e in expr[1:]]
        return ("-", ops[0]) if head == "-" and len(ops) == 1 else (head, *ops)
    return _ground_atom(expr, dom.fluents, objects, dom, "function")


def _parse_goal(expr, objects, dom, atoms, nums):
    expr = _lst(expr, "goal")
    if not expr:
        return
    head = _sym(expr[0], "goal")
    if head == "and":
        for sub in expr[1:]:
            _parse_goal(sub, objects, dom, atoms, nums)
    elif head in COMPARATORS:
        nums.append(
            NumericCondition(
                head, _ground_num_expr(expr[1], objects, dom), _ground_num_expr(expr[2], objects, dom)
            )
        )
    elif head in ("not", "or", "imply", "exists", "forall", "preference"):
        raise UnsupportedFeatureError(f"{head} in goal", expr.line)
    else:
        atoms.append(_ground_atom(expr, dom.predicates, objects, dom, "predicate"))


def _uses_fluents(dom: DomainModel, init_fluents) -> bool:
    if init_fluents:
        return True
    return any(s.num_pre or s.num_eff for s in dom.schemas)


def parse_problem(text: str, dom: DomainModel, features=None) -> ProblemModel:
    """Parse a problem against ``dom``.

    ``features`` (a :class:`~divplan.features.FeatureConfig`) switches the
    problem to over-subscription mode when it sets ``soft_goals``; its
    utility table is then attached to the goal atoms.
    """
    try:
        exprs = parse_all(text, lowercase=True)
    except SExprSyntaxError as e:
        raise PDDLSyntaxError(str(e).rsplit(" (line", 1)[0], e.line, e.column) from None
    if len(exprs) != 1:
        raise PDDLSyntaxError("expected exactly one (define (problem ...)) form")
    name, sections = _sections(exprs[0], "problem")
    objects = dict(dom.constants)
    domain_name = None
    init_atoms: set[Atom] = set()
    init_fluents: dict[Atom, Fraction] = {}
    goal_atoms: list[Atom] = []
    goal_nums: list[NumericCondition] = []
    init_raw = []
    goal_raw = None
    for sec in sections:
        sec = _lst(sec, "problem section")
        key = _sym(sec[0], "section keyword")
        if key == ":domain":
            domain_name = _sym(sec[1], "domain name")
        elif key == ":objects":
            for o, t in parse_typed_list(sec[1:], allow_variables=False):
                if t != "object" and t not in dom.types:
                    raise PDDLSemanticError(f"unknown type {t!r} for object {o}")
                objects[o] = t
        elif key == ":init":
            init_raw = sec[1:]
        elif key == ":goal":
            goal_raw = sec[1]
        elif key == ":metric":
            continue
        elif key == ":requirements":
            for r in sec[1:]:
                if _sym(r, "requirement") not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeatureError(r.text, sec.line)
        else:
            raise UnsupportedFeatureError(key, sec.line)
    if domain_name is not None and domain_name != dom.name:
        raise PDDLSemanticError(f"problem is for domain {domain_name!r}, not {dom.name!r}")
    for item in init_raw:
        item = _lst(item, "init fact")
        head = _sym(item[0], "init fact")
        if head == "=":
            target = _lst(item[1], "function")
            if target and isinstance(target[0], Symbol) and target[0].text == COST_FLUENT:
                continue
            f = _ground_atom(target, dom.fluents, objects, dom, "function")
            value = _parse_number(item[2])
            if value is None:
                raise PDDLSyntaxError("initial fluent value must be a number", *_pos(item))
            init_fluents[f] = value
        elif head == "not":
            continue
        else:
            init_atoms.add(_ground_atom(item, dom.predicates, objects, dom, "predicate"))
    if goal_raw is not None:
        _parse_goal(goal_raw, objects, dom, goal_atoms, goal_nums)
    goal_atoms = list(dict.fromkeys(goal_atoms))

    utilities: dict[Atom, Fraction] = {}
    if features is not None and features.soft_goals:
        mode = Mode.OSP
        if goal_nums:
            raise UnsupportedFeatureError("numeric soft goals")
        table = features.utility_table()
        for key, value in table.items():
            atom = parse_ground_atom(key)
            if atom not in goal_atoms:
                raise PDDLSemanticError(f"utility for non-goal atom {key}")
            utilities[atom] = value
    elif _uses_fluents(dom, init_fluents):
        mode = Mode.NUMERIC
    else:
        mode = Mode.CLASSICAL
    return ProblemModel(
        name,
        dom.name,
        objects,
        frozenset(init_atoms),
        init_fluents,
        tuple(goal_atoms),
        tuple(goal_nums),
        mode,
        utilities,
    )


def parse_ground_atom(text: str) -> Atom:
    """Parse ``"(pred a b)"`` (or a bare ``"pred"``) into an :class:`Atom`."""
    text = text.strip().lower()
    if not text.startswith("("):
        return Atom(text, ())
    exprs = parse_all(text)
    if len(exprs) != 1 or not isinstance(exprs[0], list) or not exprs[0]:
        raise PDDLSyntaxError(f"bad ground atom {text!r}")
    return Atom(str(exprs[0][0]), tuple(str(a) for a in exprs[0][1:]))


# ---------------------------------------------------------------------- unparse


def format_number(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return str(float(x)) if float(x) == x else f"(/ {x.numerator} {x.denominator})"


def format_num_expr(e: NumExpr) -> str:
    if isinstance(e, Atom):
        return str(e)
    if isinstance(e, tuple):
        return "(" + " ".join([e[0]] + [format_num_expr(a) for a in e[1:]]) + ")"
    return format_number(e)


def _typed(pairs) -> str:
    return " ".join(f"{n} - {t}" for n, t in pairs)


def _cond_str(c: NumericCondition) -> str:
    return f"({c.comparator} {format_num_expr(c.lhs)} {format_num_expr(c.rhs)})"


def unparse_domain(dom: DomainModel) -> str:
    lines = [f"(define (domain {dom.name})"]
    if dom.requirements:
        lines.append(f"  (:requirements {' '.join(dom.requirements)})")
    if dom.types:
        lines.append(f"  (:types {_typed(dom.types.items())})")
    if dom.constants:
        lines.append(f"  (:constants {_typed(dom.constants.items())})")
    preds = " ".join(
        "(" + " ".join([p] + [f"?a{i} - {t}" for i, t in enumerate(sig)]) + ")" for p, sig in dom.predicates.items()
    )
    lines.append(f"  (:predicates {preds})")
    if dom.fluents:
        funcs = " ".join(
            "(" + " ".join([f] + [f"?a{i} - {t}" for i, t in enumerate(sig)]) + ")" for f, sig in dom.fluents.items()
        )
        lines.append(f"  (:functions {funcs})")
    for s in dom.schemas:
        pre = [str(a) for a in s.pos_pre] + [f"(not {a})" for a in s.neg_pre] + [_cond_str(c) for c in s.num_pre]
        eff = [str(a) for a in s.add] + [f"(not {a})" for a in s.delete]
        eff += [f"({e.kind} {e.fluent} {format_num_expr(e.expr)})" for e in s.num_eff]
        lines.append(f"  (:action {s.name}")
        lines.append(f"    :parameters ({_typed(s.parameters)})")
        lines.append(f"    :precondition (and {' '.join(pre)})")
        lines.append(f"    :effect (and {' '.join(eff)}))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def unparse_problem(prob: ProblemModel, dom: DomainModel | None = None) -> str:
    consts = dom.constants if dom is not None else {}
    objs = {o: t for o, t in prob.objects.items() if o not in consts}
    init = [str(a) for a in sorted(prob.init_atoms)]
    init += [f"(= {f} {format_number(v)})" for f, v in sorted(prob.init_fluents.items())]
    goal = [str(a) for a in prob.goal] + [_cond_str(c) for c in prob.goal_numeric]
    return (
        f"(define (problem {prob.name}) (:domain {prob.domain_name})\n"
        f"  (:objects {_typed(objs.items())})\n"
        f"  (:init {' '.join(init)})\n"
        f"  (:goal (and {' '.join(goal)})))\n"
    )
