"""In-process backend for unit tests.

A plain backtracking search over Bool variables and Int variables drawn from
a small fixed range, pruning with three-valued evaluation. Real variables are
not supported. Only suitable for formulas with a few dozen variables.
"""

from __future__ import annotations

import time

from .session import CheckResult, SolverModel, SolverSession
from .terms import BOOL, INT, Term, evaluate, free_vars


class MockSession(SolverSession):
    def __init__(self, int_range: range = range(-4, 17), seed=None, timeout=None):
        super().__init__(seed=seed, timeout=timeout)
        self.int_range = int_range
        self._found: SolverModel | None = None

    def _declare(self, name: str, sort: str) -> None:
        if sort not in (BOOL, INT):
            raise NotImplementedError(f"mock backend cannot handle {sort} variables")

    def _assert(self, t: Term) -> None:
        pass

    def _check(self, timeout):
        deadline = None if timeout is None else time.monotonic() + timeout
        names = list(self.declared)
        # watch lists: a constraint is re-checked once any of its variables is bound
        watch: dict[str, list[Term]] = {n: [] for n in names}
        for t in self.assertions:
            fv = free_vars(t)
            if not fv:
                if evaluate(t, {}) is False:
                    return CheckResult.UNSAT
                continue
            last = max(fv, key=names.index)
            watch[last].append(t)
        model: dict = {}
        out_of_time = False

        def rec(i: int) -> bool:
            nonlocal out_of_time
            if deadline is not None and time.monotonic() > deadline:
                out_of_time = True
                return False
            if i == len(names):
                return True
            name = names[i]
            values = (False, True) if self.declared[name] == BOOL else self.int_range
            for v in values:
                model[name] = v
                if all(evaluate(t, model) is not False for t in watch[name]):
                    if rec(i + 1):
                        return True
                    if out_of_time:
                        return False
            del model[name]
            return False

        if rec(0):
            self._found = SolverModel(model)
            return CheckResult.SAT
        self._found = None
        return CheckResult.UNKNOWN if out_of_time else CheckResult.UNSAT

    def _model(self) -> SolverModel:
        return SolverModel(self._found)
