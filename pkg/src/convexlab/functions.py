"""Catalog of strictly convex/concave functions with exact rational evaluation.

The catalog is a closed list: square, power(k), reciprocal, exp2, log.
square/power/reciprocal map rationals to rationals.  exp2 (x -> 2**x) is
exact only on integer arguments; at non-integer rationals its value is
irrational, so it can never hit a rational grid point.  log is never
evaluated numerically: every statement about |log(A) + log(A)| is computed
as |A*A| through the product set.

For incidence counting each function exposes a graph branch on which it is
both strictly convex/concave and injective (square and power use [0, oo),
reciprocal (0, oo), exp2 all rationals).  Translates of such a branch
pairwise intersect at most once, which is what the incidence bound needs;
the full cubic or hyperbola graphs would not satisfy that.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, EmptyInputError
from .sets import NumberSet

EXACT = "exact-on-rationals"
PRODUCT_EQUIVALENT = "product-set-equivalent"


@dataclass(frozen=True)
class ConvexFn:
    kind: str               # "square" | "power" | "reciprocal" | "exp2" | "log"
    k: int = 2              # exponent, only meaningful for kind == "power"
    exactness: str = EXACT
    shape: str = "convex"   # "convex" | "concave" on the declared domain

    @property
    def name(self) -> str:
        return f"power:{self.k}" if self.kind == "power" else self.kind

    def apply(self, q: Fraction) -> Fraction:
        """Exact value f(q); DomainError outside the exact domain."""
        if self.kind == "square":
            return q * q
        if self.kind == "power":
            return q ** self.k
        if self.kind == "reciprocal":
            if q == 0:
                raise DomainError("reciprocal is undefined at 0")
            return 1 / q
        if self.kind == "exp2":
            if q.denominator != 1:
                raise DomainError(f"exp2 is exact only on integers, got {q}")
            e = q.numerator
            return Fraction(2 ** e) if e >= 0 else Fraction(1, 2 ** (-e))
        raise DomainError("log is never evaluated numerically; route through product_set")

    def in_graph_domain(self, t: Fraction) -> bool:
        """Membership in the injective convex branch used for curve families."""
        if self.kind in ("square", "power"):
            return t >= 0
        if self.kind == "reciprocal":
            return t > 0
        if self.kind == "exp2":
            return True
        return False

    def evaluate_on_graph(self, t: Fraction) -> Fraction | None:
        """f(t) on the graph branch, or None when no rational point exists there."""
        if not self.in_graph_domain(t):
            return None
        if self.kind == "exp2" and t.denominator != 1:
            return None  # irrational value, cannot meet a rational grid
        return self.apply(t)

    def audit_domain_ok(self, a: NumberSet) -> bool:
        """Whether a set is usable in audit/incidence pipelines for this function."""
        if self.kind in ("square", "power"):
            return a.is_nonnegative()
        if self.kind in ("reciprocal", "log"):
            return a.is_strictly_positive()
        return True

    def require_audit_domain(self, a: NumberSet) -> None:
        if not self.audit_domain_ok(a):
            raise DomainError(f"{self.name} pipelines require {self._domain_words()} elements")

    def _domain_words(self) -> str:
        return "strictly positive" if self.kind in ("reciprocal", "log") else "nonnegative"


SQUARE = ConvexFn("square")
RECIPROCAL = ConvexFn("reciprocal")
EXP2 = ConvexFn("exp2")
LOG = ConvexFn("log", exactness=PRODUCT_EQUIVALENT, shape="concave")


def power_fn(k: int) -> ConvexFn:
    if k < 2:
        raise ValueError("power functions need k >= 2")
    return ConvexFn("power", k=k)


def fn_by_name(name: str) -> ConvexFn:
    """Resolve CLI spellings: square, power:k, reciprocal, exp2, log-as-product."""
    if name == "square":
        return SQUARE
    if name == "reciprocal":
        return RECIPROCAL
    if name == "exp2":
        return EXP2
    if name in ("log", "log-as-product"):
        return LOG
    if name.startswith("power:"):
        try:
            return power_fn(int(name.split(":", 1)[1]))
        except ValueError as exc:
            raise ValueError(f"bad power spec {name!r}") from exc
    raise ValueError(f"unknown function {name!r}")


def apply_fn(fn: ConvexFn, a: NumberSet) -> NumberSet:
    """Image set f(A), computed exactly.

    On the injective domains of the catalog |f(A)| == |A|.  square/power
    accept mixed-sign inputs too, in which case collisions may shrink the
    image (callers in audit pipelines enforce nonnegativity instead).
    """
    if len(a) == 0:
        raise EmptyInputError("apply_fn requires a nonempty set")
    if fn.kind == "log":
        raise DomainError("log is never evaluated; use product_set for |log(A)+log(A)|")
    return NumberSet(fn.apply(q) for q in a)
