"""Solver session contract shared by the subprocess and in-process backends."""

from __future__ import annotations

import enum
import os
import shutil

from .terms import BOOL, Term, TRUE, evaluate, free_vars


class CheckResult(str, enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


class SolverError(RuntimeError):
    """The backend crashed or rejected input; never a stand-in for ``unknown``."""


class ContractError(RuntimeError):
    """The caller broke the session protocol (e.g. asked for a model after unsat)."""


class SolverModel(dict):
    """Variable name -> value (bool, int or Fraction)."""

    def __getitem__(self, key):
        if isinstance(key, Term):
            key = key.name
        return super().__getitem__(key)

    def value(self, t: Term):
        v = evaluate(t, self)
        if v is None:
            raise KeyError(f"model does not determine {t!r}")
        return v


class SolverSession:
    """Monotone assertion stack with satisfiability checks.

    Subclasses implement :meth:`_declare`, :meth:`_assert`, :meth:`_check`
    and :meth:`_model`.
    """

    def __init__(self, seed: int | None = None, timeout: float | None = None):
        self.seed = seed
        self.timeout = timeout
        self.assertions: list[Term] = []
        self.declared: dict[str, str] = {}
        self._last: CheckResult | None = None
        self.checks = 0

    @property
    def assertion_count(self) -> int:
        return len(self.assertions)

    def add(self, *terms: Term) -> None:
        """Conjoin ``terms`` to the session."""
        for t in terms:
            if t.sort != BOOL:
                raise TypeError(f"cannot assert a {t.sort} term")
            if t is TRUE:
                continue
            fv = free_vars(t)
            for name, sort in fv.items():
                known = self.declared.get(name)
                if known is None:
                    self.declared[name] = sort
                    self._declare(name, sort)
                elif known != sort:
                    raise TypeError(f"variable {name} redeclared as {sort} (was {known})")
            self.assertions.append(t)
            self._assert(t)
        self._last = None

    assert_formula = add

    def declare(self, t: Term) -> None:
        if t.name not in self.declared:
            self.declared[t.name] = t.sort
            self._declare(t.name, t.sort)

    def check(self, timeout: float | None = None) -> CheckResult:
        budget = self.timeout if timeout is None else timeout
        self.checks += 1
        self._last = self._check(budget)
        return self._last

    check_sat = check

    def model(self) -> SolverModel:
        if self._last is not CheckResult.SAT:
            raise ContractError("get_model called without a preceding sat check")
        return self._model()

    get_model = model

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _declare(self, name: str, sort: str) -> None:
        raise NotImplementedError

    def _assert(self, t: Term) -> None:
        raise NotImplementedError

    def _check(self, timeout: float | None) -> CheckResult:
        raise NotImplementedError

    def _model(self) -> SolverModel:
        raise NotImplementedError


def default_solver_binary() -> str | None:
    return os.environ.get("DIVPLAN_SMT_SOLVER") or shutil.which("z3")


def open_session(backend: str = "smtlib", **kwargs) -> SolverSession:
    """Create a session: ``"smtlib"`` (subprocess) or ``"mock"`` (in-process search)."""
    if backend == "smtlib":
        from .smtlib import SMTLibSession

        return SMTLibSession(**kwargs)
    if backend == "mock":
        from .mock import MockSession

        return MockSession(**kwargs)
    raise ValueError(f"unknown backend {backend!r}")
