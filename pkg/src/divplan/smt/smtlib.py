"""SMT-LIB v2 backend speaking to a solver subprocess over stdin/stdout."""

from __future__ import annotations

import os
import queue
import resource
import subprocess
import threading
import time
from fractions import Fraction

from ..sexpr import SExprSyntaxError, parse_one
from .session import CheckResult, SolverError, SolverModel, SolverSession, default_solver_binary
from .terms import BOOL, INT, Term, to_smtlib

_EOF = object()
_FLUSH_BYTES = 1 << 20
_NO_TIMEOUT_MS = 4294967295


def _default_flags(binary: str) -> list[str]:
    base = os.path.basename(binary)
    if base.startswith("z3"):
        return ["-in", "-smt2"]
    if base.startswith("cvc5") or base.startswith("cvc4"):
        return ["--lang=smt2", "--incremental", "--produce-models"]
    return []


def parse_value(expr, sort: str):
    """Decode a solver value expression for a variable of ``sort``."""
    if sort == BOOL:
        if str(expr) not in ("true", "false"):
            raise SolverError(f"bad boolean value {expr!r}")
        return str(expr) == "true"
    v = _number(expr)
    if sort == INT:
        if v.denominator != 1:
            raise SolverError(f"non-integral Int value {expr!r}")
        return int(v)
    return v


def _number(expr) -> Fraction:
    if isinstance(expr, list):
        head = str(expr[0])
        if head == "-" and len(expr) == 2:
            return -_number(expr[1])
        if head == "/" and len(expr) == 3:
            return _number(expr[1]) / _number(expr[2])
        if head == "-" and len(expr) == 3:
            return _number(expr[1]) - _number(expr[2])
        raise SolverError(f"cannot decode value {expr!r}")
    try:
        return Fraction(str(expr))
    except ValueError:
        raise SolverError(f"cannot decode value {expr!r}") from None


class SMTLibSession(SolverSession):
    """One solver subprocess; strictly sequential.

    ``timeout`` is seconds per check, sent to the solver as ``:timeout`` and
    enforced by a wall-clock watchdog ``grace`` seconds later (the process is
    killed and the check reports ``unknown``). ``memory_mb`` caps the address
    space of the subprocess.
    """

    def __init__(
        self,
        binary: str | None = None,
        flags: list[str] | None = None,
        seed: int | None = None,
        timeout: float | None = None,
        memory_mb: int | None = None,
        grace: float = 2.0,
        logic: str | None = None,
    ):
        super().__init__(seed=seed, timeout=timeout)
        binary = binary or default_solver_binary()
        if not binary:
            raise SolverError("no SMT solver binary found (set DIVPLAN_SMT_SOLVER)")
        self.binary = binary
        self.grace = grace
        self.memory_mb = memory_mb
        cmd = [binary] + (_default_flags(binary) if flags is None else list(flags))
        preexec = None
        if memory_mb:
            limit = int(memory_mb) * 1024 * 1024

            def preexec():
                resource.setrlimit(resource.RLIMIT_AS, (limit, limit))

        try:
            self._proc = subprocess.Popen(
                cmd,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.STDOUT,
                text=True,
                bufsize=1,
                preexec_fn=preexec,
            )
        except OSError as e:
            raise SolverError(f"cannot start solver {binary!r}: {e}") from None
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self._buf: list[str] = []
        self._buf_bytes = 0
        self._timeout_ms: int | None = None
        self.dead = False
        self._send("(set-option :print-success false)")
        self._send("(set-option :produce-models true)")
        if seed is not None:
            self._send(f"(set-option :random-seed {int(seed)})")
        if logic:
            self._send(f"(set-logic {logic})")

    def _pump(self):
        for line in self._proc.stdout:
            self._lines.put(line.rstrip("\n"))
        self._lines.put(_EOF)

    def _send(self, cmd: str):
        self._buf.append(cmd + "\n")
        self._buf_bytes += len(cmd) + 1
        if self._buf_bytes > _FLUSH_BYTES:
            self._flush()

    def _flush(self):
        if self.dead:
            raise SolverError("solver session is no longer alive")
        data = "".join(self._buf)
        self._buf.clear()
        self._buf_bytes = 0
        try:
            self._proc.stdin.write(data)
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError):
            self.dead = True
            raise SolverError(f"solver process exited (code {self._proc.poll()})") from None

    def _declare(self, name: str, sort: str) -> None:
        self._send(f"(declare-fun {name} () {sort})")

    def _assert(self, t: Term) -> None:
        self._send(f"(assert {to_smtlib(t)})")

    def _readline(self, deadline: float | None):
        wait = None if deadline is None else max(0.0, deadline - time.monotonic())
        try:
            line = self._lines.get(timeout=wait)
        except queue.Empty:
            return None
        if line is _EOF:
            self.dead = True
            raise SolverError(f"solver process exited (code {self._proc.wait()})")
        return line

    def _check(self, timeout: float | None) -> CheckResult:
        ms = None if timeout is None else max(1, int(timeout * 1000))
        if ms != self._timeout_ms:
            self._send(f"(set-option :timeout {_NO_TIMEOUT_MS if ms is None else ms})")
            self._timeout_ms = ms
        self._send("(check-sat)")
        self._flush()
        deadline = None if timeout is None else time.monotonic() + timeout + self.grace
        errors = []
        while True:
            line = self._readline(deadline)
            if line is None:
                self.kill()
                return CheckResult.UNKNOWN
            line = line.strip()
            if not line:
                continue
            if line in ("sat", "unsat", "unknown"):
                if errors:
                    raise SolverError("; ".join(errors))
                return CheckResult(line)
            if line.startswith("(error"):
                errors.append(line)
                continue
            errors.append(line)

    def _model(self) -> SolverModel:
        model = SolverModel()
        names = list(self.declared)
        for start in range(0, len(names), 2000):
            chunk = names[start : start + 2000]
            if not chunk:
                break
            self._send("(get-value (" + " ".join(chunk) + "))")
            self._flush()
            text = self._read_sexpr()
            try:
                expr = parse_one(text)
            except SExprSyntaxError as e:
                raise SolverError(f"unparseable model output: {e}") from None
            if isinstance(expr, list) and expr and str(expr[0]) == "error":
                raise SolverError(text)
            for pair in expr:
                name = str(pair[0])
                model[name] = parse_value(pair[1], self.declared[name])
        return model

    def _read_sexpr(self) -> str:
        parts, depth, started = [], 0, False
        deadline = time.monotonic() + 60 + (self.timeout or 0)
        while True:
            line = self._readline(deadline)
            if line is None:
                self.kill()
                raise SolverError("solver did not answer get-value")
            parts.append(line)
            for ch in line:
                if ch == "(":
                    depth += 1
                    started = True
                elif ch == ")":
                    depth -= 1
            if started and depth <= 0:
                return "\n".join(parts)

    def kill(self):
        self.dead = True
        if self._proc.poll() is None:
            self._proc.kill()
            self._proc.wait()

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.write("(exit)\n")
                self._proc.stdin.flush()
                self._proc.wait(timeout=2)
            except (OSError, subprocess.TimeoutExpired, ValueError):
                pass
            self.kill()
        try:
            self._proc.stdin.close()
        except (OSError, ValueError):
            pass
        self.dead = True

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass
