"""Inequality audits: constant-free checks and theorem-chain replays.

Constant-free inequalities (Holder, Cauchy-Schwarz, the E_1.5 bridge) get
exact PASS/FAIL verdicts via compare_radical.  Bounds with an implied
constant are never pass/fail: they become REPORT_ONLY entries carrying the
exact ratio LHS/RHS of the constant-free parts, regression-pinned against
committed fixtures.

A chain replay walks one proof route on concrete sets, in order:

  T1  Holder, E_1.5 bridge with B = -A, then the third-moment and
      cross-energy caps; final ratio |f(A)+C|^6 |A-A|^5 (log|A|)^2 / |A|^14.
  T2  Cauchy-Schwarz on |A+A|, the self-energy cap, the bridge with B = A,
      then the same two caps; final |f(A)+C|^10 |A+A|^9 (log|A|)^2 / |A|^24.
  T3  Cauchy-Schwarz twice, both self-energy caps, both bridges, and four
      caps, every shifted-image size pinned to |A+f(A)|;
      final |A+f(A)|^19 (log|A|)^2 / |A|^24.

With the log-as-product function the image sumset size |f(A)+f(A)| is
computed as |A*A|; the T1/T2 chains then audit the difference-product and
sum-product corollaries (labels C_diffprod / C_sumprod).

Because each REPORT_ONLY ratio is an equality by definition, the chain
satisfies the arithmetic identity  final_ratio * prod(step_ratio^e) >= 1,
which `chain_consistency_bounds` re-derives from intervals; tests assert it.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .comparison import (
    LADDER,
    compare_radical,
    decimal_of,
    decimal_of_ratio,
    fraction_to_decimal,
    log2_upper,
    power_product,
    ratio_bounds,
)
from .energy import energy, energy_third, energy_threehalves
from .errors import AuditFailure, DomainError, EmptyInputError
from .functions import ConvexFn, apply_fn
from .sets import NumberSet, difference_set, product_set, sumset

PASS, FAIL, REPORT_ONLY = "PASS", "FAIL", "REPORT_ONLY"

LOG_PREC_BITS = 100  # ~30 digits; log sizes enter as exact dyadic upper bounds


@dataclass(frozen=True)
class AuditReport:
    """One inequality comparison: exact operands, verdict, and LHS/RHS ratio."""

    name: str
    verdict: str
    lhs: str
    rhs: str
    ratio: str
    hypothesis_flags: tuple[str, ...] = ()
    lhs_value: object = field(default=None, repr=False, compare=False)
    rhs_value: object = field(default=None, repr=False, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "type": "step",
            "name": self.name,
            "verdict": self.verdict,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "flags": list(self.hypothesis_flags),
        }

    def ratio_bounds(self, prec: int) -> tuple[Fraction, Fraction]:
        return ratio_bounds(self.lhs_value, self.rhs_value, prec)


def _report(name, lhs_value, rhs_value, verdict, flags=(), digits=30) -> AuditReport:
    return AuditReport(
        name=name,
        verdict=verdict,
        lhs=decimal_of(lhs_value, digits),
        rhs=decimal_of(rhs_value, digits),
        ratio=decimal_of_ratio(lhs_value, rhs_value, digits),
        hypothesis_flags=tuple(flags),
        lhs_value=lhs_value,
        rhs_value=rhs_value,
    )


def _verdict_leq(lhs, rhs) -> str:
    return PASS if compare_radical(lhs, rhs) <= 0 else FAIL


def check_lemma_e15(a: NumberSet, b: NumberSet, digits: int = 30) -> AuditReport:
    """E_1.5(A)^2 |B|^2 <= E_3(A)^(2/3) E_3(B)^(1/3) E(A, A+B), decided exactly.

    Both sides are cubed: the left becomes an integer-coefficient radical sum,
    the right a plain integer.
    """
    e15 = energy_threehalves(a)
    e3a, e3b = energy_third(a), energy_third(b)
    e_cross = energy(a, sumset(a, b))
    lhs_cubed = power_product((e15, 6), (len(b), 6))
    rhs_cubed = e3a ** 2 * e3b * e_cross ** 3
    verdict = _verdict_leq(lhs_cubed, rhs_cubed)
    lhs = e15 ** 2 * len(b) ** 2
    rhs = power_product((e3a, Fraction(2, 3)), (e3b, Fraction(1, 3)), (e_cross, 1))
    return _report("e15_bridge", lhs, rhs, verdict, digits=digits)


def check_holder(a: NumberSet, digits: int = 30) -> AuditReport:
    """|A|^6 <= E_1.5(A)^2 |A-A|, decided exactly on radical sums."""
    e15 = energy_threehalves(a)
    dsize = len(difference_set(a, a))
    lhs = len(a) ** 6
    rhs = e15 ** 2 * dsize
    return _report("holder_lower", lhs, rhs, _verdict_leq(lhs, rhs), digits=digits)


def check_cauchy_schwarz(
    a: NumberSet, mode: str, f: NumberSet | None = None, digits: int = 30
) -> tuple[AuditReport, ...]:
    """Cauchy-Schwarz energy bounds, all pure-integer verdicts.

    mode "sum":   |A|^4 <= E(A,A) |A+A|
    mode "diff":  |A|^4 <= E(A,A) |A-A|
    mode "cross": |A|^2|F|^2 <= E(A,F) |A+F|  and  E(A,F)^2 <= E(A,A) E(F,F)
    """
    if len(a) == 0:
        raise EmptyInputError("cauchy-schwarz checks need a nonempty set")
    if mode == "sum":
        lhs, rhs = len(a) ** 4, energy(a, a) * len(sumset(a, a))
        return (_report("cs_sum", lhs, rhs, _verdict_leq(lhs, rhs), digits=digits),)
    if mode == "diff":
        lhs, rhs = len(a) ** 4, energy(a, a) * len(difference_set(a, a))
        return (_report("cs_diff", lhs, rhs, _verdict_leq(lhs, rhs), digits=digits),)
    if mode == "cross":
        if f is None or len(f) == 0:
            raise EmptyInputError("cross mode needs the second set")
        e_af = energy(a, f)
        lhs1 = len(a) ** 2 * len(f) ** 2
        rhs1 = e_af * len(sumset(a, f))
        lhs2 = e_af ** 2
        rhs2 = energy(a, a) * energy(f, f)
        return (
            _report("cs_cross_sumset", lhs1, rhs1, _verdict_leq(lhs1, rhs1), digits=digits),
            _report("cs_cross_split", lhs2, rhs2, _verdict_leq(lhs2, rhs2), digits=digits),
        )
    raise ValueError(f"unknown mode {mode!r}")


def clamped_log2(n: int) -> tuple[Fraction, bool]:
    """Dyadic upper bound of log2(n), clamped to 1 so it never vanishes."""
    value = log2_upper(n, LOG_PREC_BITS)
    if value < 1:
        return Fraction(1), True
    return value, False


def _approx_flags(a: NumberSet, c: NumberSet, f: NumberSet | None = None) -> list[str]:
    flags = []
    if not Fraction(1, 2) <= Fraction(len(a), len(c)) <= 2:
        flags.append("|A| !~ |C| (factor-2)")
    if f is not None and len(c) > len(f):
        flags.append("|C| > |F|")
    return flags


def _cap_reports(
    label_suffix: str,
    base: NumberSet,
    shifted_size: int,
    f: NumberSet,
    log_factor: Fraction,
    flags: tuple[str, ...],
    digits: int,
) -> list[AuditReport]:
    """The three implied-constant energy caps for one side (ground or image)."""
    n = len(base)
    e15 = energy_threehalves(base)
    reports = [
        _report(
            "energy_cap" + label_suffix,
            energy(base, base),
            power_product((e15, Fraction(2, 3)), (shifted_size, Fraction(2, 3)), (n, Fraction(1, 3))),
            REPORT_ONLY,
            flags,
            digits,
        ),
        _report(
            "cross_energy_cap" + label_suffix,
            energy(base, f),
            power_product((shifted_size, 1), (len(f), Fraction(3, 2))),
            REPORT_ONLY,
            flags,
            digits,
        ),
        _report(
            "third_energy_cap" + label_suffix,
            energy_third(base),
            Fraction(shifted_size ** 2 * n) * log_factor,
            REPORT_ONLY,
            flags,
            digits,
        ),
    ]
    return reports


def corollary_e3a_ratios(
    fn: ConvexFn, a: NumberSet, c: NumberSet, f: NumberSet, digits: int = 30
) -> list[AuditReport]:
    """Six REPORT_ONLY entries: self/cross/third energy caps for A and for f(A).

    The ground caps compare against |f(A)+C|, the image caps against |A+C|.
    Logs are base 2, evaluated as exact dyadic upper bounds, clamped to 1 for
    singletons (flagged).
    """
    if fn.kind == "log":
        raise DomainError("the cap ratios need an exact-on-rationals function")
    fn.require_audit_domain(a)
    fa = apply_fn(fn, a)
    s_img = len(sumset(fa, c))
    s_gnd = len(sumset(a, c))
    log_factor, clamped = clamped_log2(len(a))
    flags = tuple(_approx_flags(a, c, f) + (["log|A| clamped to 1"] if clamped else []))
    out = _cap_reports("", a, s_img, f, log_factor, flags, digits)
    out += _cap_reports("_image", fa, s_gnd, f, log_factor, flags, digits)
    return out


CHAIN_LABELS = {"T1", "T2", "T3", "C_diffprod", "C_sumprod"}


@dataclass(frozen=True)
class ChainReport:
    theorem: str
    steps: tuple[AuditReport, ...]
    final_ratio_exact: Fraction = field(repr=False)
    final_ratio: str = ""
    flags: tuple[str, ...] = ()

    def report_only_steps(self) -> list[AuditReport]:
        return [s for s in self.steps if s.verdict == REPORT_ONLY]

    def to_json_lines(self) -> list[dict]:
        lines = [s.to_json_dict() for s in self.steps]
        lines.append(
            {
                "type": "chain",
                "theorem": self.theorem,
                "finalRatio": self.final_ratio,
                "flags": list(self.flags),
            }
        )
        return lines


# exponent with which each REPORT_ONLY step enters the chain identity
_CONSISTENCY_EXPONENTS = {
    "T1": {"third_energy_cap": 2, "cross_energy_cap": 2},
    "T2": {"energy_cap": 6, "third_energy_cap": 2, "cross_energy_cap": 2},
    "T3": {
        "energy_cap": 3,
        "energy_cap_image": 3,
        "third_energy_cap": 1,
        "third_energy_cap_image": 1,
        "cross_energy_cap": 1,
        "cross_energy_cap_image": 1,
    },
}


def chain_consistency_bounds(chain: ChainReport, prec: int = LADDER[0]) -> tuple[Fraction, Fraction]:
    """Interval enclosure of final_ratio * prod(step_ratio^e); always >= 1 exactly."""
    base = "T1" if chain.theorem == "C_diffprod" else "T2" if chain.theorem == "C_sumprod" else chain.theorem
    exps = _CONSISTENCY_EXPONENTS[base]
    lo = hi = chain.final_ratio_exact
    for step in chain.report_only_steps():
        e = exps[step.name]
        slo, shi = step.ratio_bounds(prec)
        lo *= slo ** e
        hi *= shi ** e
    return lo, hi


def _raise_on_fail(report: AuditReport, inputs: dict) -> AuditReport:
    if report.verdict == FAIL:
        raise AuditFailure(report, {k: [str(q) for q in v] for k, v in inputs.items()})
    return report


def _image_sumset_size(fn: ConvexFn, a: NumberSet, c: NumberSet | None) -> tuple[int, NumberSet | None, list[str]]:
    """|f(A)+C| (C defaults to f(A)); for log-as-product this is |A*A|."""
    if fn.kind == "log":
        if c is not None:
            raise DomainError("log-as-product chains only support the default C = f(A)")
        return len(product_set(a, a, log_equivalence=True)), None, []
    fa = apply_fn(fn, a)
    cc = fa if c is None else c
    flags = _approx_flags(a, cc)
    return len(sumset(fa, cc)), cc, flags


def audit_theorem(
    which: str,
    fn: ConvexFn,
    a: NumberSet,
    c: NumberSet | None = None,
    digits: int = 30,
) -> ChainReport:
    """Replay one theorem's proof chain on concrete sets.

    Constant-free steps are PASS/FAIL (FAIL raises AuditFailure with the
    inputs); implied-constant steps are REPORT_ONLY ratios.  Returns the
    ordered steps plus the final exponent ratio.
    """
    if which not in ("T1", "T2", "T3"):
        raise ValueError("which must be T1, T2, or T3")
    if len(a) == 0:
        raise EmptyInputError("chains need a nonempty set")
    fn.require_audit_domain(a)
    n = len(a)
    log_factor, clamped = clamped_log2(n)
    inputs = {"A": a.elements} | ({"C": c.elements} if c is not None else {})
    flags = ["log|A| clamped to 1"] if clamped else []

    if which in ("T1", "T2"):
        s_img, _, approx_flags = _image_sumset_size(fn, a, c)
        flags += approx_flags
        label = which
        if fn.kind == "log":
            label = "C_diffprod" if which == "T1" else "C_sumprod"
        steps: list[AuditReport] = []
        if which == "T1":
            fset = difference_set(a, a)
            steps.append(_raise_on_fail(check_holder(a, digits), inputs))
            steps.append(_raise_on_fail(check_lemma_e15(a, a.negate(), digits), inputs))
            final = Fraction(s_img ** 6 * len(fset) ** 5) * log_factor ** 2 / n ** 14
        else:
            steps.extend(_raise_on_fail(r, inputs) for r in check_cauchy_schwarz(a, "sum", digits=digits))
            e15 = energy_threehalves(a)
            steps.append(
                _report(
                    "energy_cap",
                    energy(a, a),
                    power_product((e15, Fraction(2, 3)), (s_img, Fraction(2, 3)), (n, Fraction(1, 3))),
                    REPORT_ONLY,
                    tuple(flags),
                    digits,
                )
            )
            steps.append(_raise_on_fail(check_lemma_e15(a, a, digits), inputs))
            fset = sumset(a, a)
            ssize = len(fset)
            final = Fraction(s_img ** 10 * ssize ** 9) * log_factor ** 2 / n ** 24
        steps.append(
            _report(
                "third_energy_cap",
                energy_third(a),
                Fraction(s_img ** 2 * n) * log_factor,
                REPORT_ONLY,
                tuple(flags),
                digits,
            )
        )
        steps.append(
            _report(
                "cross_energy_cap",
                energy(a, fset),
                power_product((s_img, 1), (len(fset), Fraction(3, 2))),
                REPORT_ONLY,
                tuple(flags),
                digits,
            )
        )
        return ChainReport(
            theorem=label,
            steps=tuple(steps),
            final_ratio_exact=final,
            final_ratio=fraction_to_decimal(final, digits),
            flags=tuple(flags),
        )

    # T3: C is ignored; every shifted-image size is |A + f(A)| by construction.
    if fn.kind == "log":
        raise DomainError("T3 needs the actual image set; log-as-product is not usable")
    fa = apply_fn(fn, a)
    s = sumset(a, fa)
    ssize = len(s)
    e15a, e15f = energy_threehalves(a), energy_threehalves(fa)
    steps = []
    steps.extend(_raise_on_fail(r, inputs) for r in check_cauchy_schwarz(a, "cross", fa, digits=digits))
    steps.append(
        _report(
            "energy_cap",
            energy(a, a),
            power_product((e15a, Fraction(2, 3)), (ssize, Fraction(2, 3)), (n, Fraction(1, 3))),
            REPORT_ONLY,
            tuple(flags),
            digits,
        )
    )
    steps.append(
        _report(
            "energy_cap_image",
            energy(fa, fa),
            power_product((e15f, Fraction(2, 3)), (ssize, Fraction(2, 3)), (n, Fraction(1, 3))),
            REPORT_ONLY,
            tuple(flags),
            digits,
        )
    )
    steps.append(_raise_on_fail(check_lemma_e15(a, fa, digits), inputs))
    bridge_image = replace(check_lemma_e15(fa, a, digits), name="e15_bridge_image")
    steps.append(_raise_on_fail(bridge_image, inputs))
    steps.append(
        _report("third_energy_cap", energy_third(a), Fraction(ssize ** 2 * n) * log_factor,
                REPORT_ONLY, tuple(flags), digits)
    )
    steps.append(
        _report("third_energy_cap_image", energy_third(fa), Fraction(ssize ** 2 * n) * log_factor,
                REPORT_ONLY, tuple(flags), digits)
    )
    steps.append(
        _report("cross_energy_cap", energy(a, s),
                power_product((ssize, Fraction(5, 2))), REPORT_ONLY, tuple(flags), digits)
    )
    steps.append(
        _report("cross_energy_cap_image", energy(fa, s),
                power_product((ssize, Fraction(5, 2))), REPORT_ONLY, tuple(flags), digits)
    )
    final = Fraction(ssize ** 19) * log_factor ** 2 / n ** 24
    return ChainReport(
        theorem="T3",
        steps=tuple(steps),
        final_ratio_exact=final,
        final_ratio=fraction_to_decimal(final, digits),
        flags=tuple(flags),
    )
