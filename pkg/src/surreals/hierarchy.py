"""Membership in No_<lambda and SRF fields, certificates for the g/h closure, paths.

Membership in a generated group is only semi-decidable here, so positive
claims about the closure come with a :class:`Certificate` that
:func:`check_certificate` re-verifies from scratch.  A failed check means
"this certificate is wrong", never "x is not a member".

Every support is finite at desk scale, so the clause "support order type
below lambda" is always met.  Reports state this explicitly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import ordinal as O
from .arith import nf_add
from .core import (NormalForm, ZERO, exp_value, from_ordinal, length_of,
                   monomial, nf_from_json, nf_to_json)
from .errors import (ApproximationFlagged, NotAnEpsilonNumber, PreconditionError,
                     SurrealError, UnsupportedGDomain, UnsupportedHDomain)
from .explog import exp, ln, ln_monomial
from .gh import g_map, h_map
from .ordinal import Ordinal

FINITE_SUPPORT_NOTE = "support is finite, so its order type is below lambda"


@dataclass(frozen=True)
class GroupSpec:
    """No_<mu, or level `level` of the g/h closure of `base` along lambda."""

    kind: str
    mu: Optional[Ordinal] = None
    base: Optional[GroupSpec] = None
    lam: Optional[Ordinal] = None
    level: int = 0

    def __str__(self):
        if self.kind == "No_lt":
            return f"Nolt({self.mu})"
        return f"GammaUp({self.base}, {self.lam}, {self.level})"


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    lam: Ordinal
    base: Optional[GroupSpec] = None

    def __str__(self):
        if self.kind == "No_lt":
            return f"Nolt({self.lam})"
        return f"SRF({self.lam}, {self.base})"


def No_lt(mu: Ordinal) -> GroupSpec:
    return GroupSpec("No_lt", mu=mu)


def GammaUp(base: GroupSpec, lam: Ordinal, level: int) -> GroupSpec:
    return GroupSpec("gamma_up", base=base, lam=lam, level=level)


def NoLtField(lam: Ordinal) -> FieldSpec:
    return FieldSpec("No_lt", lam)


def SRF(lam: Ordinal, base: GroupSpec) -> FieldSpec:
    return FieldSpec("SRF", lam, base)


def _require_exact(x: NormalForm):
    if x.approx:
        raise ApproximationFlagged(f"membership needs an exact value, got {x}")


def below_length(x: NormalForm, bound: Ordinal) -> bool:
    return O.compare(length_of(x), bound) < 0


def group_member(x: NormalForm, G: GroupSpec) -> bool:
    _require_exact(x)
    if G.kind == "No_lt":
        return below_length(x, G.mu)
    return certify(x, G) is not None


def membership_report(x: NormalForm, F: FieldSpec) -> dict:
    _require_exact(x)
    report = {"value": str(x), "field": str(F)}
    if F.kind == "No_lt":
        l = length_of(x)
        report["length"] = str(l)
        report["member"] = O.compare(l, F.lam) < 0
        return report
    report["support"] = FINITE_SUPPORT_NOTE
    exps = []
    ok = True
    for a in x.exponents():
        entry = {"exponent": str(a)}
        if F.base.kind == "No_lt":
            l = length_of(a)
            entry["length"] = str(l)
            entry["member"] = O.compare(l, F.base.mu) < 0
        else:
            entry["member"] = certify(a, F.base) is not None
            entry["semi_decision"] = True
        ok = ok and entry["member"]
        exps.append(entry)
    report["exponents"] = exps
    report["member"] = ok
    return report


def membership(x: NormalForm, F: FieldSpec) -> bool:
    return membership_report(x, F)["member"]


# ----------------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """A derivation that `value` lies in level `level` of a closure.

    kind is one of
      base     value is in the base group
      g_image  value = sum coef * w^g(source value), sources one level down
      h_image  value = h(a) for the index-th exponent a of a certified source
      combo    value = sum n * part value with integer n
    """

    kind: str
    value: NormalForm
    level: int = 0
    parts: tuple = ()            # (coefficient, Certificate) pairs
    source: Optional[Certificate] = None
    index: int = 0

    def to_json(self) -> dict:
        out = {"kind": self.kind, "value": nf_to_json(self.value), "level": self.level}
        if self.parts:
            out["parts"] = [{"coef": str(c), "cert": p.to_json()} for c, p in self.parts]
        if self.source is not None:
            out["source"] = self.source.to_json()
            out["index"] = self.index
        return out

    @classmethod
    def from_json(cls, obj) -> Certificate:
        if isinstance(obj, str):
            obj = json.loads(obj)
        parts = tuple((Fraction(p["coef"]), cls.from_json(p["cert"])) for p in obj.get("parts", ()))
        source = cls.from_json(obj["source"]) if "source" in obj else None
        return cls(obj["kind"], nf_from_json(obj["value"]), int(obj["level"]), parts,
                   source, int(obj.get("index", 0)))

    def leaves(self):
        if self.kind == "base":
            yield self
        for _, p in self.parts:
            yield from p.leaves()
        if self.source is not None:
            yield from self.source.leaves()


def base_cert(x: NormalForm) -> Certificate:
    return Certificate("base", x, 0)


def g_image_cert(parts) -> Certificate:
    """Certificate for sum r * w^g(a) over certified positive a."""
    parts = tuple((Fraction(r), c) for r, c in parts)
    value = ZERO
    for r, c in parts:
        value = nf_add(value, monomial(g_map(c.value), r))
    level = max(c.level for _, c in parts) + 1
    return Certificate("g_image", value, level, parts)


def h_image_cert(source: Certificate, index: int) -> Certificate:
    a = source.value.exponents()[index]
    return Certificate("h_image", h_map(a), source.level + 1, source=source, index=index)


def combo_cert(parts) -> Certificate:
    parts = tuple((Fraction(n), c) for n, c in parts)
    value = ZERO
    for n, c in parts:
        value = nf_add(value, c.value * n)
    return Certificate("combo", value, max(c.level for _, c in parts), parts)


@dataclass
class CertificateCheck:
    ok: bool
    reason: str = ""
    failing: Optional[Certificate] = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class _Reject(Exception):
    def __init__(self, reason, node):
        super().__init__(reason)
        self.reason, self.node = reason, node


def _e(lam: Ordinal, level: int) -> Ordinal:
    return O.canonical_prefix(lam, level + 1)[level]


def _validate(c: Certificate, G: GroupSpec, notes: list):
    if c.level < 0 or c.level > G.level:
        raise _Reject(f"level {c.level} outside 0..{G.level}", c)
    if c.value.approx:
        raise _Reject("approximate value in a certificate", c)
    if c.kind == "base":
        if not group_member(c.value, G.base):
            raise _Reject(f"{c.value} is not in the base group {G.base}", c)
        return
    if c.kind == "combo":
        if not c.parts:
            raise _Reject("empty combination", c)
        total = ZERO
        for n, p in c.parts:
            if n.denominator != 1:
                raise _Reject(f"non-integer coefficient {n} in a group combination", c)
            if p.level > c.level:
                raise _Reject("part at a higher level than its combination", c)
            _validate(p, G, notes)
            total = nf_add(total, p.value * n)
        if total != c.value:
            raise _Reject(f"combination evaluates to {total}, not {c.value}", c)
        return
    if c.kind == "g_image":
        if c.level < 1 or not c.parts:
            raise _Reject("g-image needs sources one level down", c)
        total = ZERO
        for r, p in c.parts:
            if p.level > c.level - 1:
                raise _Reject("g-image source is not at a lower level", c)
            _validate(p, G, notes)
            if p.value <= 0:
                raise _Reject(f"g-image source {p.value} is not positive", c)
            try:
                total = nf_add(total, monomial(g_map(p.value), r))
            except UnsupportedGDomain as err:
                raise _Reject(f"g unsupported at leaf {p.value}: {err}", p)
        if total != c.value:
            raise _Reject(f"g-image evaluates to {total}, not {c.value}", c)
        notes.append(f"g-image at level {c.level}: {len(c.parts)} terms, "
                     f"below e = {_e(G.lam, c.level - 1)} ({FINITE_SUPPORT_NOTE})")
        return
    if c.kind == "h_image":
        src = c.source
        if src is None or src.level > c.level - 1:
            raise _Reject("h-image source is not at a lower level", c)
        _validate(src, G, notes)
        exps = src.value.exponents()
        if not 0 <= c.index < len(exps):
            raise _Reject(f"no exponent number {c.index} in {src.value}", c)
        try:
            want = h_map(exps[c.index])
        except UnsupportedHDomain as err:
            raise _Reject(f"h unsupported at leaf {exps[c.index]}: {err}", c)
        if want != c.value:
            raise _Reject(f"h-image evaluates to {want}, not {c.value}", c)
        return
    raise _Reject(f"unknown node kind {c.kind!r}", c)


def check_certificate(x: NormalForm, G: GroupSpec, c: Certificate) -> CertificateCheck:
    if G.kind != "gamma_up":
        return CertificateCheck(False, "certificates are checked against a GammaUp level")
    if not O.is_epsilon(G.lam):
        raise NotAnEpsilonNumber(f"{G.lam} is not an epsilon number")
    if c.value != x:
        return CertificateCheck(False, f"certificate is about {c.value}, not {x}", c)
    notes = []
    try:
        _validate(c, G, notes)
    except _Reject as rej:
        return CertificateCheck(False, rej.reason, rej.node, notes)
    return CertificateCheck(True, "", None, notes)


def certify(x: NormalForm, G: GroupSpec, _depth: int = 0) -> Optional[Certificate]:
    """Search for a certificate mechanically; None if none is found."""
    if G.kind == "No_lt":
        return base_cert(x) if below_length(x, G.mu) else None
    if group_member(x, G.base):
        return base_cert(x)
    if G.level == 0 or _depth > 3:
        return None
    lower = GammaUp(G.base, G.lam, G.level - 1)
    # g-image: x = sum r * w^c with every c = g(a) for a certified a
    parts = []
    for c, r in zip(x.exponents(), (t[1] for t in x.terms)):
        try:
            a = h_map(c)
        except SurrealError:
            parts = None
            break
        sub = certify(a, lower, _depth + 1) if a > 0 else None
        if sub is None:
            parts = None
            break
        parts.append((r, sub))
    if parts:
        cert = g_image_cert(parts)
        if cert.value == x:
            return cert
    # h-image: x = h(a) with w^a certified one level down
    if x > 0:
        try:
            a = g_map(x)
        except SurrealError:
            return None
        sub = certify(monomial(a), lower, _depth + 1)
        if sub is not None:
            return h_image_cert(sub, 0)
    return None


def stability_certificates(c: Certificate) -> list:
    """Certificates for the exponents produced by exp(w^y) and ln(w^y), y = c.value.

    exp(w^y) = w^(w^g(y)) gives a g-image; ln w^y = sum r w^h(b) gives an h-image
    per exponent b of y.  Unsupported g/h values are skipped.
    """
    out = []
    y = c.value
    if y > 0:
        try:
            out.append(("exp", g_image_cert([(1, c)])))
        except SurrealError:
            pass
    for i in range(len(y.terms)):
        try:
            out.append(("ln", h_image_cert(c, i)))
        except SurrealError:
            pass
    return out


def certify_decomposition(x: NormalForm, lam: Ordinal = None) -> dict:
    """A multiplicative mu < lambda with x in SRF(lambda, No_<mu), plus level-0 certificates."""
    lam = lam if lam is not None else O.eps(0)
    _require_exact(x)
    longest = O.ZERO
    for a in x.exponents():
        l = length_of(a)
        if O.compare(l, longest) > 0:
            longest = l
    e = longest.leading_exponent if longest else O.ZERO
    beta = O.add(e.leading_exponent, O.ONE) if e else O.ZERO
    mu = O.omega_power(O.omega_power(beta))
    if O.compare(mu, lam) >= 0:
        raise PreconditionError(f"no multiplicative mu below {lam} bounds the exponents of {x}")
    G = GammaUp(No_lt(mu), lam, 0)
    certs = [base_cert(a) for a in x.exponents()]
    return {"mu": mu, "group": G, "certificates": certs,
            "ok": all(check_certificate(c.value, G, c).ok for c in certs)}


# ----------------------------------------------------------------------------
# Paths and log-atomicity
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    steps: tuple            # (coefficient, exponent) pairs
    truncated: Optional[str] = None

    def __str__(self):
        body = ", ".join(str(monomial(a, r)) for r, a in self.steps)
        return f"[{body}]" + (f" (stopped: {self.truncated})" if self.truncated else "")


def enumerate_paths(x: NormalForm, depth: int) -> list:
    """Every path of x with at most `depth` logarithm steps, each extended maximally."""
    _require_exact(x)
    out = []

    def extend(steps, remaining):
        r, a = steps[-1]
        if remaining == 0:
            out.append(Path(tuple(steps)))
            return
        try:
            nxt = ln_monomial(a)
        except SurrealError as err:
            out.append(Path(tuple(steps), f"{type(err).__name__}: {err}"))
            return
        if not nxt.terms:
            out.append(Path(tuple(steps)))
            return
        for e, s in nxt.terms:
            extend(steps + [(s, exp_value(e))], remaining - 1)

    for e, r in x.terms:
        extend([(r, exp_value(e))], depth)
    return out


def check_path(x: NormalForm, path: Path) -> bool:
    """Re-check the linkage rule: step i+1 is a term of ln w^(a_i)."""
    r0, a0 = path.steps[0]
    if (r0, a0) not in [(r, exp_value(e)) for e, r in x.terms]:
        return False
    for (_, a), (s, b) in zip(path.steps, path.steps[1:]):
        terms = [(r, exp_value(e)) for e, r in ln_monomial(a).terms]
        if (s, b) not in terms:
            return False
    return True


def log_atomic_depth(x: NormalForm, k: int) -> bool:
    """ln_i(x) is a monomial w^(a_i) for every i <= k."""
    _require_exact(x)
    if x <= 0:
        raise PreconditionError("log-atomicity is about positive numbers")
    y = x
    for i in range(k + 1):
        if not y.is_monomial:
            return False
        if i < k:
            y = ln(y)
    return True


# ----------------------------------------------------------------------------
# Witness verifiers
# ----------------------------------------------------------------------------

def strictness_witness_check(mu: Ordinal, lam: Ordinal, depth: int = 3,
                             mu_prime: Optional[Ordinal] = None) -> dict:
    """x = w^(w^-mu) separates SRF(lam, No_<mu') from SRF(lam, No_<mu)."""
    if mu_prime is None:
        mu_prime = O.omega_power(mu)
    if not O.compare(O.OMEGA, mu) < 0:
        raise PreconditionError(f"need w < mu, got mu = {mu}")
    if not O.compare(mu, mu_prime) < 0 or not O.compare(mu_prime, lam) < 0:
        raise PreconditionError(f"need mu < mu' < lambda, got {mu}, {mu_prime}, {lam}")
    if not O.is_epsilon(lam):
        raise PreconditionError(f"lambda = {lam} is not an epsilon number")
    if not (O.is_additive(mu) and O.is_additive(mu_prime)):
        raise PreconditionError("mu and mu' must be additive")
    x = monomial(monomial(-from_ordinal(mu)))
    in_big = membership(x, SRF(lam, No_lt(mu_prime)))
    in_small = membership(x, SRF(lam, No_lt(mu)))
    paths = enumerate_paths(x, depth)
    rows = []
    paths_ok = True
    for p in paths:
        for _, a in p.steps:
            l = length_of(a)
            ok = O.compare(l, mu) >= 0
            paths_ok = paths_ok and ok
            rows.append({"exponent": str(a), "length": str(l), "at_least_mu": ok})
        paths_ok = paths_ok and p.truncated is None and check_path(x, p)
    return {
        "witness": str(x),
        "mu": str(mu), "mu_prime": str(mu_prime), "lambda": str(lam),
        "mu_multiplicative": O.is_multiplicative(mu),
        "mu_prime_multiplicative": O.is_multiplicative(mu_prime),
        "in_srf_mu_prime": in_big,
        "not_in_srf_mu": not in_small,
        "paths": [str(p) for p in paths],
        "path_exponents": rows,
        "path_lengths_at_least_mu": paths_ok,
        "passed": in_big and not in_small and paths_ok,
    }


def instability_witness_check(alpha: Ordinal, lam: Ordinal) -> dict:
    """Compute exp(w^alpha) and test it against SRF(lam, No_<mu), mu = w^(w^alpha).

    Two readings are reported.  `length_at_least_mu` is the size argument
    (the length of exp(w^alpha) reaches mu).  `escapes` is actual SRF
    non-membership, i.e. some exponent has length >= mu.  The report also
    evaluates exp(exp(w^alpha)) for comparison.
    """
    mu = O.omega_power(O.omega_power(alpha))
    if O.is_epsilon(mu):
        raise PreconditionError(
            f"mu = {mu} is an epsilon number; the witness needs a support of order type mu")
    if not O.compare(mu, lam) < 0:
        raise PreconditionError(f"need mu = {mu} below lambda = {lam}")
    field_ = SRF(lam, No_lt(mu))
    source = monomial(from_ordinal(alpha))
    e1 = exp(source)
    l1 = length_of(e1)
    rep1 = membership_report(e1, field_)
    e2 = exp(e1)
    rep2 = membership_report(e2, field_)
    source_in = membership(source, field_)
    escapes = not rep1["member"]
    return {
        "alpha": str(alpha), "mu": str(mu), "lambda": str(lam),
        "source": str(source), "source_in_srf": source_in,
        "exp": str(e1), "exp_length": str(l1),
        "length_at_least_mu": O.compare(l1, mu) >= 0,
        "exp_exponent_lengths": [e.get("length") for e in rep1["exponents"]],
        "escapes": escapes,
        "second_exp": str(e2),
        "second_exp_exponent_lengths": [e.get("length") for e in rep2["exponents"]],
        "second_escapes": not rep2["member"],
        "passed": source_in and escapes,
    }


__all__ = [
    "GroupSpec", "FieldSpec", "No_lt", "GammaUp", "NoLtField", "SRF",
    "membership", "membership_report", "group_member", "Certificate", "CertificateCheck",
    "base_cert", "g_image_cert", "h_image_cert", "combo_cert", "check_certificate",
    "certify", "stability_certificates", "certify_decomposition", "Path",
    "enumerate_paths", "check_path", "log_atomic_depth", "strictness_witness_check",
    "instability_witness_check",
]
