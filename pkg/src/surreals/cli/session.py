"""Evaluation of parsed expressions and rendering of results."""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .. import ordinal as O
from ..arith import (TruncationPolicy, conway_add, conway_mul, div_exact,
                     inv_truncated, nf_pow)
from ..core import (NormalForm, SignSeq, from_ordinal, length_of, monomial,
                    nf_to_json, nf_to_signseq, parse_signseq, signseq_to_nf,
                    simplest_between, to_ordinal)
from ..errors import EvalError, SurrealError
from ..explog import EvalMode, decompose, exp, ln, ln_n
from ..gh import ArchRelation, arch_exponent, arch_rel, g_map, h_map
from ..hierarchy import (FieldSpec, GroupSpec, GammaUp, NoLtField, No_lt, Path,
                         SRF, enumerate_paths, instability_witness_check,
                         log_atomic_depth, membership, strictness_witness_check)
from ..ordinal import Ordinal
from .parser import parse

OMEGA = monomial(1)


@dataclass
class SessionConfig:
    mode: str = "exact"
    order: int = 4
    oracle_depth: int = 7
    eps_ceiling: int = O.DEFAULT_EPS_CEILING

    def __post_init__(self):
        if self.mode not in ("exact", "truncated"):
            raise ValueError(f"mode must be exact or truncated, not {self.mode!r}")
        if min(self.order, self.oracle_depth) < 1 or self.eps_ceiling < 0:
            raise ValueError("bounds must be positive")

    @property
    def eval_mode(self) -> EvalMode:
        return EvalMode.order(self.order) if self.mode == "truncated" else EvalMode.exact()


# ----------------------------------------------------------------------------
# conversions between value kinds
# ----------------------------------------------------------------------------

def as_nf(v) -> NormalForm:
    if isinstance(v, NormalForm):
        return v
    if isinstance(v, Ordinal):
        return from_ordinal(v)
    if isinstance(v, SignSeq):
        return signseq_to_nf(v)
    if isinstance(v, bool):
        raise EvalError("expected a number, got a boolean")
    if isinstance(v, int):
        return NormalForm.of(v)
    raise EvalError(f"expected a number, got {type(v).__name__}")


def as_ordinal(v) -> Ordinal:
    if isinstance(v, Ordinal):
        return v
    x = as_nf(v)
    if not x.is_ordinal:
        raise EvalError(f"expected an ordinal, got {x}")
    return to_ordinal(x)


def as_signseq(v) -> SignSeq:
    if isinstance(v, SignSeq):
        return v
    if isinstance(v, str):
        return parse_signseq(v)
    return nf_to_signseq(as_nf(v))


def as_int(v) -> int:
    x = as_nf(v)
    if not x.is_real or x.real_value.denominator != 1:
        raise EvalError(f"expected an integer, got {x}")
    return int(x.real_value)


def as_group(v) -> GroupSpec:
    if isinstance(v, GroupSpec):
        return v
    raise EvalError("expected a group such as Nolt(mu)")


def as_field(v) -> FieldSpec:
    if isinstance(v, FieldSpec):
        return v
    if isinstance(v, GroupSpec) and v.kind == "No_lt":
        return NoLtField(v.mu)
    raise EvalError("expected a field such as SRF(lambda, Nolt(mu)) or Nolt(lambda)")


def _maybe_nf(s: SignSeq):
    return signseq_to_nf(s) if s.is_finite else s


# ----------------------------------------------------------------------------
# functions
# ----------------------------------------------------------------------------

def _simplest(cfg, left, right):
    if not isinstance(left, list) or not isinstance(right, list):
        raise EvalError("simplest takes two lists, e.g. simplest([0], [1])")
    return _maybe_nf(simplest_between([as_signseq(a) for a in left], [as_signseq(b) for b in right]))


def _arch(cfg, x, y=None):
    if y is None:
        return arch_exponent(as_nf(x))
    return arch_rel(as_nf(x), as_nf(y))


def _strictness(cfg, mu, lam, depth=3, mu_prime=None):
    return strictness_witness_check(as_ordinal(mu), as_ordinal(lam), as_int(depth),
                                    None if mu_prime is None else as_ordinal(mu_prime))


FUNCTIONS = {
    "exp": lambda cfg, x: exp(as_nf(x), cfg.eval_mode),
    "ln": lambda cfg, x: ln(as_nf(x), cfg.eval_mode),
    "lnn": lambda cfg, x, n: ln_n(as_nf(x), as_int(n), cfg.eval_mode),
    "g": lambda cfg, x: g_map(as_nf(x)),
    "h": lambda cfg, x: h_map(as_nf(x)),
    "inv": lambda cfg, x: inv_truncated(as_nf(x), TruncationPolicy(cfg.order)),
    "decompose": lambda cfg, x: {k: str(v) for k, v in vars(decompose(as_nf(x))).items()},
    "simplest": _simplest,
    "length": lambda cfg, x: as_signseq(x).length if isinstance(x, (SignSeq, str)) else length_of(as_nf(x)),
    "signexp": lambda cfg, x: as_signseq(x),
    "nf": lambda cfg, x: signseq_to_nf(as_signseq(x)),
    "arch": _arch,
    "cadd": lambda cfg, x, y: _maybe_nf(conway_add(as_signseq(x), as_signseq(y), cfg.oracle_depth)),
    "cmul": lambda cfg, x, y: _maybe_nf(conway_mul(as_signseq(x), as_signseq(y), cfg.oracle_depth)),
    "Nolt": lambda cfg, mu: No_lt(as_ordinal(mu)),
    "SRF": lambda cfg, lam, base: SRF(as_ordinal(lam), as_group(base)),
    "GammaUp": lambda cfg, base, lam, level: GammaUp(as_group(base), as_ordinal(lam), as_int(level)),
    "member": lambda cfg, x, f: membership(as_nf(x), as_field(f)),
    "paths": lambda cfg, x, depth: enumerate_paths(as_nf(x), as_int(depth)),
    "logatomic": lambda cfg, x, k: log_atomic_depth(as_nf(x), as_int(k)),
    "strictness": _strictness,
    "instability": lambda cfg, alpha, lam: instability_witness_check(as_ordinal(alpha), as_ordinal(lam)),
    "classify": lambda cfg, lam: dict(zip(("is_additive", "is_multiplicative", "is_epsilon"),
                                          O.classify(as_ordinal(lam)))),
    "canonical": lambda cfg, lam, n: O.canonical_prefix(as_ordinal(lam), as_int(n)),
    "monoid_bound": lambda cfg, a: O.monoid_bound(as_ordinal(a)),
    "oadd": lambda cfg, a, b: O.add(as_ordinal(a), as_ordinal(b)),
    "omul": lambda cfg, a, b: O.mul(as_ordinal(a), as_ordinal(b)),
    "opow": lambda cfg, a, b: O.power(as_ordinal(a), as_ordinal(b)),
    "nadd": lambda cfg, a, b: O.nat_add(as_ordinal(a), as_ordinal(b)),
    "nmul": lambda cfg, a, b: O.nat_mul(as_ordinal(a), as_ordinal(b)),
    "ocmp": lambda cfg, a, b: {-1: "less", 0: "equal", 1: "greater"}[O.compare(as_ordinal(a), as_ordinal(b))],
}


class Session:
    def __init__(self, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self.env = {}

    def set_option(self, name: str, value: str):
        if name == "mode":
            self.config = replace(self.config, mode=value)
        elif name == "order":
            self.config = replace(self.config, order=int(value))
        elif name == "oracle-depth":
            self.config = replace(self.config, oracle_depth=int(value))
        elif name == "eps-ceiling":
            self.config = replace(self.config, eps_ceiling=int(value))
        else:
            raise EvalError(f"unknown option :{name}")

    def run(self, text: str):
        node = parse(text)
        if node[0] == "let":
            value = self.eval(node[2])
            self.env[node[1]] = value
            return value
        return self.eval(node)

    def eval(self, node):
        kind = node[0]
        if kind == "num":
            return NormalForm.of(node[1])
        if kind == "str":
            return parse_signseq(node[1])
        if kind == "list":
            return [self.eval(n) for n in node[1]]
        if kind == "name":
            return self._name(node[1])
        if kind == "neg":
            return -as_nf(self.eval(node[1]))
        if kind == "approx":
            return as_nf(self.eval(node[1])).flagged(True)
        if kind == "bin":
            a, b = self.eval(node[2]), self.eval(node[3])
            return _tagged(node[1], self._binary, node[1], a, b)
        if kind == "pow":
            a, b = self.eval(node[1]), self.eval(node[2])
            return _tagged("^", self._power, a, b)
        if kind == "call":
            return self._call(node[1], [self.eval(n) for n in node[2]])
        raise EvalError(f"unknown node {kind}")

    def _name(self, name: str):
        if name == "w":
            return OMEGA
        if name.startswith("eps_") and name[4:].isdigit():
            return from_ordinal(O.eps(int(name[4:]), self.config.eps_ceiling))
        if name in ("true", "false"):
            return name == "true"
        if name in self.env:
            return self.env[name]
        raise EvalError(f"unknown name {name!r}")

    def _binary(self, op, a, b):
        x, y = as_nf(a), as_nf(b)
        if op == "+":
            return x + y
        if op == "-":
            return x - y
        if op == "*":
            return x * y
        return div_exact(x, y)

    def _power(self, base, exponent):
        x, e = as_nf(base), as_nf(exponent)
        if x == OMEGA and not x.approx:
            return monomial(e)
        if e.is_real and e.real_value.denominator == 1 and e.real_value >= 0:
            return nf_pow(x, int(e.real_value))
        raise EvalError("'^' needs base w or a natural exponent; use opow for ordinal powers")

    def _call(self, name, args):
        fn = FUNCTIONS.get(name)
        if fn is None:
            raise EvalError(f"unknown function {name!r}")
        try:
            return fn(self.config, *args)
        except TypeError as err:
            wrapped = EvalError(f"wrong number of arguments ({len(args)})")
            wrapped.operation = name
            raise wrapped from err
        except SurrealError as err:
            if err.operation is None:
                err.operation = name
            raise


def _tagged(op, fn, *args):
    try:
        return fn(*args)
    except SurrealError as err:
        if err.operation is None:
            err.operation = op
        raise


# ----------------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------------

def to_jsonable(v):
    if isinstance(v, NormalForm):
        return nf_to_json(v)
    if isinstance(v, Ordinal):
        return {"ordinal": str(v)}
    if isinstance(v, SignSeq):
        return {"signexp": str(v)}
    if isinstance(v, (bool, str, int)) or v is None:
        return v
    if isinstance(v, ArchRelation):
        return v.name
    if isinstance(v, Path):
        return {"path": [str(monomial(a, r)) for r, a in v.steps], "stopped": v.truncated}
    if isinstance(v, (GroupSpec, FieldSpec)):
        return {"spec": str(v)}
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    return str(v)


def render(v, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(to_jsonable(v), sort_keys=True)
    if fmt == "signexp":
        return str(as_signseq(v))
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, ArchRelation):
        return v.name
    if isinstance(v, dict):
        return json.dumps(to_jsonable(v), indent=2)
    if isinstance(v, list):
        if all(isinstance(x, Path) for x in v) and v:
            return "\n".join(str(x) for x in v)
        return "[" + ", ".join(render(x) for x in v) + "]"
    return str(v)


def render_error(err: Exception) -> str:
    where = f" in {err.operation}" if getattr(err, "operation", None) else ""
    return f"error{where}: {type(err).__name__}: {err}"
