"""The sixteen parameterised 2-to-1 families c*x + Tr_{q^l/q}(x^{d_1} [+ x^{d_2}]).

Each family fixes its trace exponents as functions of (k, l) and restricts
(k, l, c) by parity and coefficient conditions.  Exponents with a /2 or /4 are
taken modulo q^l - 1 (which is odd), so they stay defined when q is small.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import gf
from ._kernels import scan_coefficients
from .gf import FieldCtx
from .mappings import MappingSpec, reduce_exponent, trace_part


class FamilyId(str, enum.Enum):
    T32_1 = "T32_1"
    T32_2 = "T32_2"
    T32_3 = "T32_3"
    T33_1 = "T33_1"
    T33_2 = "T33_2"
    T33_3 = "T33_3"
    T34 = "T34"
    T35 = "T35"
    T37 = "T37"
    T41 = "T41"
    T42_1 = "T42_1"
    T42_2 = "T42_2"
    T43 = "T43"
    T44_1 = "T44_1"
    T44_2 = "T44_2"
    T44_3 = "T44_3"


class AdmissibilityError(ValueError):
    pass


# coefficient rules
NONZERO_SUBFIELD = "c in GF(q)*"
SUBFIELD_NOT_01 = "c in GF(q) minus {0, 1}"
OMEGA_RATIO = "c^(q-1) in GF(4) minus GF(2)"
TRACE_RULE = "c in GF(q)*, Tr_q(1/c + 1) = 1"


def _half(num: int, order: int, den: int) -> int:
    return num * pow(den, -1, order) % order if order > 1 else 0


@dataclass(frozen=True)
class Family:
    id: FamilyId
    exponents: object                    # (k, l, q, order) -> tuple of raw exponents
    conditions: tuple = field(default=())  # ((description, predicate(k, l)), ...)
    c_rule: str = NONZERO_SUBFIELD
    description: str = ""


def _odd(x):
    return x % 2 == 1


_L_ODD = ("l is odd", lambda k, l: _odd(l))
_K_ODD = ("k is odd", lambda k, l: _odd(k))
_K_EVEN = ("k is even", lambda k, l: k % 2 == 0)
_L_TWO = ("l = 2", lambda k, l: l == 2)

FAMILIES: dict[FamilyId, Family] = {f.id: f for f in [
    Family(FamilyId.T32_1, lambda k, l, q, N: (q + 1,), (_L_ODD,), NONZERO_SUBFIELD, "cx + Tr(x^(q+1))"),
    Family(FamilyId.T32_2, lambda k, l, q, N: (2 * q + 2,), (_L_ODD, _K_ODD), NONZERO_SUBFIELD,
           "cx + Tr(x^(2q+2))"),
    Family(FamilyId.T32_3, lambda k, l, q, N: (q * q + 1,), (_L_ODD,), NONZERO_SUBFIELD, "cx + Tr(x^(q^2+1))"),
    Family(FamilyId.T33_1, lambda k, l, q, N: (6,), (_K_ODD, _L_ODD), NONZERO_SUBFIELD, "cx + Tr(x^6)"),
    Family(FamilyId.T33_2, lambda k, l, q, N: (4 * q + 2,), (_K_ODD, _L_ODD), NONZERO_SUBFIELD,
           "cx + Tr(x^(4q+2))"),
    Family(FamilyId.T33_3, lambda k, l, q, N: (2 * q + 4,), (_K_ODD, _L_ODD), NONZERO_SUBFIELD,
           "cx + Tr(x^(2q+4))"),
    Family(FamilyId.T34, lambda k, l, q, N: (2 * q + 4,), (_L_TWO, _K_ODD), OMEGA_RATIO,
           "cx + Tr_{q^2/q}(x^(2q+4))"),
    Family(FamilyId.T35, lambda k, l, q, N: (2 ** ((k + 1) // 2) + 2,),
           (_L_TWO, ("k = 1 mod 4", lambda k, l: k % 4 == 1)), OMEGA_RATIO,
           "cx + Tr_{q^2/q}(x^(2^((k+1)/2)+2))"),
    Family(FamilyId.T37, lambda k, l, q, N: (2 ** (2 * k - 2) + 2 ** (k - 1),), (_L_TWO, _K_ODD), OMEGA_RATIO,
           "cx + Tr_{q^2/q}(x^(2^(2k-2)+2^(k-1)))"),
    Family(FamilyId.T41, lambda k, l, q, N: (q + 1, 2 * q + 2), (_K_EVEN, _L_ODD), TRACE_RULE,
           "cx + Tr(x^(q+1) + x^(2q+2))"),
    Family(FamilyId.T42_1, lambda k, l, q, N: (q + 1, _half(q * q + q, N, 2)), (_L_ODD,), SUBFIELD_NOT_01,
           "cx + Tr(x^(q+1) + x^((q^2+q)/2))"),
    Family(FamilyId.T42_2, lambda k, l, q, N: (_half(q * q + q, N, 2), _half(q * q + q, N, 4)), (_L_ODD,),
           SUBFIELD_NOT_01, "cx + Tr(x^((q^2+q)/2) + x^((q^2+q)/4))"),
    Family(FamilyId.T43, lambda k, l, q, N: (6, 2 * q + 4), (_L_TWO, _K_ODD), OMEGA_RATIO,
           "cx + Tr_{q^2/q}(x^6 + x^(2q+4))"),
    Family(FamilyId.T44_1, lambda k, l, q, N: (6, _half(q * q + q, N, 2)), (_K_ODD, _L_ODD), SUBFIELD_NOT_01,
           "cx + Tr(x^6 + x^((q^2+q)/2))"),
    Family(FamilyId.T44_2, lambda k, l, q, N: (4 * q + 2, _half(q * q + q, N, 2)), (_K_ODD, _L_ODD),
           SUBFIELD_NOT_01, "cx + Tr(x^(4q+2) + x^((q^2+q)/2))"),
    Family(FamilyId.T44_3, lambda k, l, q, N: (2 * q + 4, _half(q * q + q, N, 2)), (_K_ODD, _L_ODD),
           SUBFIELD_NOT_01, "cx + Tr(x^(2q+4) + x^((q^2+q)/2))"),
]}


def family_exponents(fid, k: int, l: int) -> tuple[int, ...]:
    """Trace exponents of a family at (k, l), reduced into [1, q^l - 1]."""
    fam = FAMILIES[FamilyId(fid)]
    q = 1 << k
    order = q ** l - 1
    raw = fam.exponents(k, l, q, order)
    return tuple((d - 1) % order + 1 if order > 1 else 1 for d in raw)


def structural_violations(fid, k: int, l: int) -> list[str]:
    fam = FAMILIES[FamilyId(fid)]
    return [desc for desc, pred in fam.conditions if not pred(k, l)]


def c_violation(fid, ctx: FieldCtx, c: int) -> str | None:
    """Description of the coefficient condition c fails, or None."""
    rule = FAMILIES[FamilyId(fid)].c_rule
    if c == 0 or not 0 <= c < ctx.size:
        return "c must be a nonzero field element"
    if rule == NONZERO_SUBFIELD:
        return None if gf.in_subfield(ctx, c) else rule
    if rule == SUBFIELD_NOT_01:
        return None if gf.in_subfield(ctx, c) and c != 1 else rule
    if rule == TRACE_RULE:
        if not gf.in_subfield(ctx, c):
            return rule
        return None if gf.trace_sub(ctx, gf.inv(ctx, c) ^ 1) == 1 else rule
    if rule == OMEGA_RATIO:
        r = gf.pow(ctx, c, ctx.q - 1)
        return None if r in gf.omega_elements(ctx) else rule
    raise AssertionError(rule)


def admissible(fid, k: int, l: int, c: int, ctx: FieldCtx | None = None) -> bool:
    if structural_violations(fid, k, l):
        return False
    if ctx is None:
        ctx = gf.make_field(k, l)
    return c_violation(fid, ctx, c) is None


def admissible_c_values(fid, ctx: FieldCtx) -> list[int]:
    if structural_violations(fid, ctx.k, ctx.l):
        return []
    return [c for c in range(1, ctx.size) if c_violation(fid, ctx, c) is None]


@dataclass(frozen=True)
class FamilyParams:
    id: FamilyId
    k: int
    l: int
    c: int


def build(params: FamilyParams, ctx: FieldCtx | None = None) -> MappingSpec:
    fid = FamilyId(params.id)
    bad = structural_violations(fid, params.k, params.l)
    if bad:
        raise AdmissibilityError(f"{fid.value} at (k, l) = ({params.k}, {params.l}) requires: {', '.join(bad)}")
    if ctx is None:
        ctx = gf.make_field(params.k, params.l)
    why = c_violation(fid, ctx, params.c)
    if why:
        raise AdmissibilityError(f"{fid.value}: c = {params.c} violates '{why}'")
    return MappingSpec(ctx, params.c, 1, family_exponents(fid, params.k, params.l))


@dataclass
class FamilyReport:
    id: FamilyId
    k: int
    l: int
    modulus: int
    trace_exponents: tuple[int, ...]
    admissible: list[int]
    failed: list[int]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {"family": self.id.value, "k": self.k, "l": self.l, "modulus_bits": self.modulus,
                "trace_exponents": list(self.trace_exponents), "admissible_c": self.admissible,
                "failed_c": self.failed, "passed": self.passed,
                "summary": f"{len(self.admissible) - len(self.failed)}/{len(self.admissible)} admissible c pass"}


def verify_family(fid, k: int, l: int, ctx: FieldCtx | None = None) -> FamilyReport:
    """Check 2-to-1-ness of the family for every admissible c at (k, l)."""
    fid = FamilyId(fid)
    if ctx is None:
        ctx = gf.make_field(k, l)
    cs = admissible_c_values(fid, ctx)
    exps = family_exponents(fid, k, l)
    failed: list[int] = []
    if cs:
        ok = two_to_one_over_c(ctx, 1, exps, cs)
        failed = [c for c, good in zip(cs, ok) if not good]
    return FamilyReport(fid, k, l, ctx.modulus, exps, cs, failed)


def two_to_one_over_c(ctx: FieldCtx, outer_d: int, exponents, cs) -> np.ndarray:
    """Verdicts for c*x^outer_d + Tr(sum x^d) over a batch of coefficients c."""
    log_mono = ctx.log[gf.power_table(ctx, reduce_exponent(ctx, outer_d))].copy()
    tpart = trace_part(ctx, exponents)
    c_logs = ctx.log[np.asarray(cs, dtype=np.int64)].copy()
    out = np.zeros(len(c_logs), dtype=np.bool_)
    scan_coefficients(ctx.exp, log_mono, tpart, c_logs, out)
    return out


def family_grid(max_n: int = 10, min_k: int = 1):
    """Every (family, k, l) meeting the structural hypotheses with k*l <= max_n."""
    for fid in FamilyId:
        for k in range(min_k, max_n + 1):
            for l in range(1, max_n // k + 1):
                if not structural_violations(fid, k, l):
                    yield fid, k, l
