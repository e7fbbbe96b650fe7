"""Flat ``key = value`` problem configuration files.

Example::

    # x'(1/3) = D^{1/2} x(1/2),  x(1) = 3 I^{3/2} x(1/2)
    q = 4/3
    nu = 1/2
    p = 3/2
    alpha = 3
    beta = 1
    xi = 1/3
    eta = 1/2
    lipschitz = 1/144
    rhs = example1

Numeric values may be constant arithmetic expressions (``4/3``,
``sqrt(2)/2``, ``exp(-1)/45 + 1/2``). `rhs` is a built-in name
(``example1``, ``example2``, ``example3``, ``zero``, ``linear:<a>,<b>`` for
``f = a + b*x``) or an expression in ``t`` and ``x`` using ``+ - * / ^``,
parentheses, ``pi``, ``e`` and the functions ``exp sin cos sqrt abs``.
"""

from __future__ import annotations

import ast
import math
import operator
from pathlib import Path

import numpy as np

from . import builtin
from .errors import ConfigError, DomainError
from .problem import ProblemSpec

__all__ = ["parse_config", "load_config", "compile_expression", "resolve_rhs"]

REQUIRED = ("q", "nu", "p", "alpha", "beta", "xi", "eta", "rhs")
OPTIONAL = ("lipschitz", "rhs_bound")

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {"exp": np.exp, "sin": np.sin, "cos": np.cos, "sqrt": np.sqrt, "abs": np.abs}
_CONSTS = {"pi": math.pi, "e": math.e}


def compile_expression(text: str, variables=("t", "x")):
    """Compile an arithmetic expression into a vectorised function of `variables`.

    ``^`` means exponentiation. Anything beyond numbers, the listed
    variables, ``pi``/``e``, the four arithmetic operators, powers and the
    whitelisted functions is rejected with :class:`ValueError`.
    """
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}: {exc.msg}") from None

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            value = np.float64(node.value)
            return lambda env: value
        if isinstance(node, ast.Name):
            if node.id in variables:
                name = node.id
                return lambda env: env[name]
            if node.id in _CONSTS:
                value = np.float64(_CONSTS[node.id])
                return lambda env: value
            raise ValueError(f"unknown name {node.id!r}")
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            op, left, right = _BINOPS[type(node.op)], build(node.left), build(node.right)
            return lambda env: op(left(env), right(env))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            op, arg = _UNARY[type(node.op)], build(node.operand)
            return lambda env: op(arg(env))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            fn, arg = _FUNCS[node.func.id], build(node.args[0])
            return lambda env: fn(arg(env))
        raise ValueError(f"unsupported syntax in expression {text!r}")

    body = build(tree)

    def fn(*args):
        env = {name: np.asarray(a, dtype=float) for name, a in zip(variables, args)}
        with np.errstate(all="ignore"):
            return np.asarray(body(env), dtype=float)

    fn.__name__ = "expr"
    fn.source = text
    return fn


def _number(text: str) -> float:
    value = float(compile_expression(text, variables=())())
    if not math.isfinite(value):
        raise ValueError(f"{text!r} does not evaluate to a finite number")
    return value


def resolve_rhs(text: str):
    """Turn the `rhs` entry of a configuration into a callable ``f(t, x)``."""
    text = text.strip()
    if text in builtin.EXAMPLES:
        return getattr(builtin, f"rhs_{text}")
    if text == "zero":
        return builtin.rhs_zero
    if text.startswith("linear:"):
        parts = text[len("linear:"):].split(",")
        if len(parts) != 2:
            raise ValueError("linear rhs must be written 'linear:<a>,<b>'")
        return builtin.rhs_linear(_number(parts[0]), _number(parts[1]))
    fn = compile_expression(text)

    def rhs(t, x):
        return np.broadcast_to(fn(t, x), np.broadcast(t, x).shape)

    rhs.source = text
    return rhs


def parse_config(text: str, name: str = "") -> ProblemSpec:
    """Parse configuration text into a :class:`ProblemSpec`.

    Raises :class:`ConfigError` carrying the offending line number.
    """
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in REQUIRED and key not in OPTIONAL:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        entries[key] = (value, lineno)

    missing = [k for k in REQUIRED if k not in entries]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    kwargs = {}
    for key, (value, lineno) in entries.items():
        try:
            kwargs[key] = resolve_rhs(value) if key == "rhs" else _number(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}", lineno) from None
    try:
        return ProblemSpec(name=name, **kwargs)
    except DomainError as exc:
        message = str(exc)
        key = message.split()[0]
        if key == "nodes":
            key = "eta"
        lineno = entries[key][1] if key in entries else None
        raise ConfigError(message, lineno) from None


def load_config(path) -> ProblemSpec:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), name=path.stem)
