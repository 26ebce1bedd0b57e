"""Finite sets of exact rationals and their combination sets.

Elements are `fractions.Fraction` values (arbitrary-precision, always in
lowest terms), so set cardinalities are exact and every inequality audit
downstream is an exact integer/algebraic statement.  The pairwise set
operations run on a scaled-integer representation internally: all elements
are multiplied by the lcm of their denominators once, so the O(|A||B|) inner
loops work on plain ints.
"""
from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from math import lcm

from .errors import DomainError, EmptyInputError, ParseError

Scalar = Fraction


def parse_scalar(text: str) -> Fraction:
    """Parse one scalar literal: integer ("7"), fraction ("5/4"), or decimal ("1.25").

    The parse is exact; no rounding ever happens.
    """
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a valid scalar: {text.strip()!r}") from exc
    return value


def format_scalar(q: Fraction) -> str:
    """Render a scalar so that parse_scalar(format_scalar(q)) == q."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class NumberSet:
    """A finite, duplicate-free, sorted collection of exact rationals."""

    __slots__ = ("elements", "_members", "_scaled")

    def __init__(self, values: Iterable = ()):
        elems = sorted({v if isinstance(v, Fraction) else Fraction(v) for v in values})
        self.elements: tuple[Fraction, ...] = tuple(elems)
        self._members = frozenset(elems)
        self._scaled: tuple[tuple[int, ...], int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value) -> bool:
        return value in self._members

    def __getitem__(self, i) -> Fraction:
        return self.elements[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        inner = ", ".join(format_scalar(q) for q in self.elements[:8])
        if len(self) > 8:
            inner += f", ... ({len(self)} elements)"
        return f"NumberSet({{{inner}}})"

    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer representation: (k_1..k_n, L) with element_i == k_i / L."""
        if self._scaled is None:
            if not self.elements:
                self._scaled = ((), 1)
            else:
                denom = lcm(*(q.denominator for q in self.elements))
                ints = tuple(q.numerator * (denom // q.denominator) for q in self.elements)
                self._scaled = (ints, denom)
        return self._scaled

    def is_strictly_positive(self) -> bool:
        return bool(self.elements) and self.elements[0] > 0

    def is_nonnegative(self) -> bool:
        return bool(self.elements) and self.elements[0] >= 0

    def is_convex(self) -> bool:
        """Strictly increasing consecutive gaps (vacuously true for n <= 2)."""
        e = self.elements
        return all(e[i] - e[i - 1] < e[i + 1] - e[i] for i in range(1, len(e) - 1))

    def negate(self) -> "NumberSet":
        return _from_sorted(tuple(-q for q in reversed(self.elements)))

    def to_lines(self) -> str:
        return "\n".join(format_scalar(q) for q in self.elements) + "\n"


def _from_sorted(elems: tuple[Fraction, ...]) -> NumberSet:
    ns = NumberSet.__new__(NumberSet)
    ns.elements = elems
    ns._members = frozenset(elems)
    ns._scaled = None
    return ns


def _from_scaled(values, denom: int) -> NumberSet:
    return _from_sorted(tuple(Fraction(v, denom) for v in sorted(values)))


def _require_nonempty(*sets: NumberSet) -> None:
    for s in sets:
        if len(s) == 0:
            raise EmptyInputError("operation requires nonempty sets")


def common_scaling(a: NumberSet, b: NumberSet) -> tuple[list[int], list[int], int]:
    """Rescale two sets onto one integer lattice: elements == ints / L."""
    ia, la = a.scaled()
    ib, lb = b.scaled()
    denom = lcm(la, lb)
    ma, mb = denom // la, denom // lb
    return [x * ma for x in ia], [y * mb for y in ib], denom


def sumset(a: NumberSet, b: NumberSet) -> NumberSet:
    """{x + y : x in A, y in B}, deduplicated and sorted."""
    _require_nonempty(a, b)
    ia, ib, denom = common_scaling(a, b)
    return _from_scaled({x + y for x in ia for y in ib}, denom)


def difference_set(a: NumberSet, b: NumberSet) -> NumberSet:
    """{x - y : x in A, y in B}; for B == A it is symmetric about 0."""
    _require_nonempty(a, b)
    ia, ib, denom = common_scaling(a, b)
    return _from_scaled({x - y for x in ia for y in ib}, denom)


def product_set(a: NumberSet, b: NumberSet, *, log_equivalence: bool = False) -> NumberSet:
    """{x * y : x in A, y in B}.

    With log_equivalence=True the caller declares the |A*A| = |log(A)+log(A)|
    reading, which is only valid for strictly positive sets; nonpositive
    elements then raise DomainError.
    """
    _require_nonempty(a, b)
    if log_equivalence and not (a.is_strictly_positive() and b.is_strictly_positive()):
        raise DomainError("log-equivalent product set requires strictly positive elements")
    ia, ib, denom = common_scaling(a, b)
    d2 = denom * denom
    return _from_scaled({x * y for x in ia for y in ib}, d2)


def parse_set_text(text: str, source: str = "<string>") -> NumberSet:
    """Parse the set file format: one scalar per line, '#' comments, blanks ignored."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_scalar(line))
        except ParseError as exc:
            raise ParseError(str(exc), source=source, line=lineno) from exc
    return NumberSet(values)


def read_set_file(path) -> NumberSet:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_set_text(text, source=str(path))


def write_set_file(path, a: NumberSet, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        fh.write(a.to_lines())
