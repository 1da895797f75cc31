"""
Closed-form scalar formulas of the block index ``k``.

A formula is a finite sum of terms ``c·k^d·exp(a·k)`` with complex ``c``, ``a`` and
integer ``d ≥ 0``. The set is closed under addition, scalar and formula
multiplication, complex conjugation and index shifts; affine formulas can be
exponentiated. Growth, limits, suprema of ``|f(k)|`` and geometric tail sums are
decided exactly from the terms.

The text form accepted by :func:`parse_formula`::

    formula := sum
    sum     := product (("+" | "-") product)*
    product := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INTEGER)?
    atom    := NUMBER ["i"] | "i" | "k" | "pi" | "exp" "(" sum ")" | "(" sum ")"
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

from mvnlab.exceptions import DivergentTail, GrammarOverflow, ParseError

MAX_TERMS = 32
# |Re a| at or below this counts as zero growth
GROWTH_TOL = 1e-14
# periodic suprema are searched over periods up to this length
MAX_PERIOD = 64
PERIOD_TOL = 1e-12

Term = tuple[complex, int, complex]


def _canonical_rate(a: complex) -> complex:
    # exp(a·k) only sees Im a modulo 2π on integer k
    imag = math.remainder(a.imag, 2.0 * math.pi)
    if imag == -math.pi:
        imag = math.pi
    return complex(a.real, imag)


def _term_key(term: Term) -> tuple[float, float, int]:
    _, d, a = term
    return (a.real, a.imag, d)


@dataclass(frozen=True)
class Formula:
    """
    Canonical sum of ``c·k^d·exp(a·k)`` terms.

    Terms are stored as ``(c, d, a)`` with like terms merged, zero coefficients
    dropped and a deterministic order, so equal formulas compare equal.
    """

    terms: tuple[Term, ...] = ()

    @classmethod
    def from_terms(cls, terms: list[Term] | tuple[Term, ...]) -> Formula:
        merged: dict[tuple[int, complex], complex] = {}
        for c, d, a in terms:
            if d < 0 or int(d) != d:
                raise GrammarOverflow(f"power of k must be a non-negative integer, got {d}")
            key = (int(d), _canonical_rate(complex(a)))
            merged[key] = merged.get(key, 0j) + complex(c)
        canonical = [(c, d, a) for (d, a), c in merged.items() if c != 0]
        if len(canonical) > MAX_TERMS:
            raise GrammarOverflow(f"formula needs {len(canonical)} terms; at most {MAX_TERMS} are representable")
        canonical.sort(key=_term_key)
        return cls(tuple(canonical))

    @classmethod
    def constant(cls, c: complex) -> Formula:
        return cls.from_terms([(complex(c), 0, 0j)])

    @classmethod
    def index(cls) -> Formula:
        """The formula ``k``."""
        return cls.from_terms([(1 + 0j, 1, 0j)])

    @classmethod
    def exponential(cls, a: complex, c: complex = 1.0) -> Formula:
        """The formula ``c·exp(a·k)``."""
        return cls.from_terms([(complex(c), 0, complex(a))])

    # algebra

    def __add__(self, other: Formula | complex) -> Formula:
        other = _coerce(other)
        return Formula.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> Formula:
        return Formula(tuple((-c, d, a) for c, d, a in self.terms))

    def __sub__(self, other: Formula | complex) -> Formula:
        return self + (-_coerce(other))

    def __rsub__(self, other: Formula | complex) -> Formula:
        return _coerce(other) + (-self)

    def __mul__(self, other: Formula | complex) -> Formula:
        other = _coerce(other)
        products = [(c1 * c2, d1 + d2, a1 + a2) for c1, d1, a1 in self.terms for c2, d2, a2 in other.terms]
        return Formula.from_terms(products)

    __rmul__ = __mul__

    def conjugate(self) -> Formula:
        """Pointwise complex conjugate (``k`` is real)."""
        return Formula.from_terms([(c.conjugate(), d, a.conjugate()) for c, d, a in self.terms])

    def real_part(self) -> Formula:
        return (self + self.conjugate()) * 0.5

    def imag_part(self) -> Formula:
        return (self - self.conjugate()) * (-0.5j)

    def shift(self, offset: int) -> Formula:
        """Return ``g`` with ``g(k) = f(k + offset)``."""
        shifted: list[Term] = []
        for c, d, a in self.terms:
            scale = c * cmath.exp(a * offset)
            for power in range(d + 1):
                shifted.append((scale * math.comb(d, power) * float(offset) ** (d - power), power, a))
        return Formula.from_terms(shifted)

    def exp(self, s: complex = 1.0) -> Formula:
        """
        ``exp(s·f)`` for an affine formula ``f = c₀ + c₁·k``.

        Raises:
            GrammarOverflow: If ``f`` is not affine in ``k``
        """
        c0, c1 = self.affine_coefficients()
        return Formula.exponential(s * c1, cmath.exp(s * c0))

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_affine(self) -> bool:
        return all(a == 0 and d <= 1 for _, d, a in self.terms)

    def affine_coefficients(self) -> tuple[complex, complex]:
        if not self.is_affine():
            raise GrammarOverflow(f"exp is only closed-form for affine formulas, got {self.to_text()}")
        c0 = sum((c for c, d, _ in self.terms if d == 0), 0j)
        c1 = sum((c for c, d, _ in self.terms if d == 1), 0j)
        return c0, c1

    def is_constant(self) -> bool:
        return all(d == 0 and a == 0 for _, d, a in self.terms)

    def constant_value(self) -> complex:
        if not self.is_constant():
            raise GrammarOverflow(f"formula {self.to_text()} is not constant in k")
        return sum((c for c, _, _ in self.terms), 0j)

    def max_coefficient(self) -> float:
        """Largest coefficient modulus; zero for the zero formula."""
        return max((abs(c) for c, _, _ in self.terms), default=0.0)

    def is_real(self, tol: float = 0.0) -> bool:
        """Whether ``f(k)`` is real for every ``k``."""
        return (self - self.conjugate()).max_coefficient() <= tol

    def is_imaginary(self, tol: float = 0.0) -> bool:
        """Whether ``f(k)`` is purely imaginary for every ``k``."""
        return (self + self.conjugate()).max_coefficient() <= tol

    # evaluation

    def __call__(self, k: int | float) -> complex:
        return complex(sum((c * k**d * cmath.exp(a * k) for c, d, a in self.terms), 0j))

    def values(self, ks: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on an array of indices."""
        ks = np.asarray(ks, dtype=np.float64)
        out = np.zeros(ks.shape, dtype=np.complex128)
        for c, d, a in self.terms:
            out += c * ks**d * np.exp(a * ks)
        return out

    # asymptotics

    def _decaying(self, term: Term) -> bool:
        return term[2].real < -GROWTH_TOL

    def _bounded_term(self, term: Term) -> bool:
        _, d, a = term
        return a.real < -GROWTH_TOL or (abs(a.real) <= GROWTH_TOL and d == 0)

    def is_bounded(self) -> bool:
        """
        Whether ``sup_k |f(k)|`` is finite.

        Terms of equal growth with distinct rates are linearly independent as
        sequences, so no cancellation can tame a growing term.
        """
        return all(self._bounded_term(term) for term in self.terms)

    def limit(self) -> complex | None:
        """``lim_{k→∞} f(k)`` or None when it does not exist."""
        if not self.is_bounded():
            return None
        persistent = [term for term in self.terms if not self._decaying(term)]
        if not persistent:
            return 0j
        if all(a == 0 for _, _, a in persistent):
            return sum((c for c, _, _ in persistent), 0j)
        return None

    @staticmethod
    def _term_sup(term: Term, start: int) -> float:
        c, d, a = term
        alpha = a.real
        if alpha > GROWTH_TOL or (abs(alpha) <= GROWTH_TOL and d > 0):
            return math.inf
        if abs(alpha) <= GROWTH_TOL:
            return abs(c)
        start = max(start, 0)
        if d == 0:
            return abs(c) * math.exp(alpha * start)
        # k^d·e^{αk} peaks at k = −d/α
        peak = -d / alpha
        candidates = {start, max(start, math.floor(peak)), max(start, math.ceil(peak))}
        return max(abs(c) * float(k) ** d * math.exp(alpha * k) for k in candidates)

    def _persistent_period(self) -> int | None:
        """Smallest ``P ≤ MAX_PERIOD`` with every term ``P``-periodic on the integers, if any."""
        rates = [a.imag for _, _, a in self.terms]
        for period in range(1, MAX_PERIOD + 1):
            turns = [rate * period / (2.0 * math.pi) for rate in rates]
            if all(abs(x - round(x)) <= PERIOD_TOL for x in turns):
                return period
        return None

    def sup_abs(self, start: int = 0) -> float:
        """
        ``sup_{k ≥ start} |f(k)|``; ``inf`` for unbounded formulas.

        Exact for single-term formulas, for formulas whose terms all decay and for
        periodic formulas (every term of rate ``iθ`` with ``θ`` a multiple of ``2π/P``,
        ``P ≤ MAX_PERIOD``). Periodic terms mixed with decaying ones give a bound that
        tightens as the window grows. Otherwise, with incommensurate rotations, the
        result is the certified upper bound ``Σ|c_j|`` over the persistent terms and
        may exceed the true supremum.
        """
        if self.is_zero:
            return 0.0
        if not self.is_bounded():
            return math.inf
        if len(self.terms) == 1:
            return self._term_sup(self.terms[0], start)
        persistent = Formula(tuple(term for term in self.terms if not self._decaying(term)))
        period = persistent._persistent_period()
        if period is not None:
            # limsup of |f| is the max of its periodic part over one period
            ceiling = float(np.max(np.abs(persistent.values(np.arange(period)))))
        else:
            ceiling = sum(abs(term[0]) for term in persistent.terms)
        window = 64
        while True:
            ks = np.arange(start, start + window)
            observed = float(np.max(np.abs(self.values(ks))))
            remainder = sum(self._term_sup(term, start + window) for term in self.terms if self._decaying(term))
            if ceiling + remainder <= observed:
                return observed
            if period is None or remainder <= PERIOD_TOL * ceiling or window >= 1 << 16:
                return max(observed, ceiling + remainder)
            window *= 4

    def monotone_from(self) -> int | None:
        """
        First index from which ``|f(k)|`` is monotone on the integers.

        Decided for single-term formulas; None when several terms compete.
        """
        if self.is_zero:
            return 0
        if len(self.terms) != 1:
            return None
        _, d, a = self.terms[0]
        if d == 0 or a.real >= 0:
            return 0
        return max(0, math.ceil(-d / a.real))

    def geometric_sum(self, ratio: float, start: int) -> complex:
        """
        ``Σ_{k ≥ start} ratio^{k−start}·f(k)`` in closed form.

        Each term contributes ``c·e^{a·start}·Σ_j (start+j)^d q^j`` with
        ``q = ratio·e^a``; the inner sums are Eulerian-polynomial expressions.

        Raises:
            DivergentTail: If ``|ratio·e^a| ≥ 1`` for some term
        """
        total = 0j
        for c, d, a in self.terms:
            q = ratio * cmath.exp(a)
            if abs(q) >= 1.0:
                raise DivergentTail(
                    f"tail series diverges: |ratio·e^a| = {abs(q):.6g} ≥ 1 for term {_term_text((c, d, a))}"
                )
            inner = sum(
                math.comb(d, power) * float(start) ** (d - power) * _power_series(power, q) for power in range(d + 1)
            )
            total += c * cmath.exp(a * start) * inner
        return total

    # text

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(_term_text(term) for term in self.terms)

    def __str__(self) -> str:
        return self.to_text()


def _coerce(value: Formula | complex | float | int) -> Formula:
    if isinstance(value, Formula):
        return value
    return Formula.constant(complex(value))


def _eulerian(n: int, m: int) -> int:
    return sum((-1) ** j * math.comb(n + 1, j) * (m + 1 - j) ** n for j in range(m + 1))


def _power_series(power: int, q: complex) -> complex:
    """``Σ_{j≥0} j^power q^j`` for ``|q| < 1``."""
    if power == 0:
        return 1.0 / (1.0 - q)
    numerator = sum(_eulerian(power, m) * q**m for m in range(power))
    return q * numerator / (1.0 - q) ** (power + 1)


def _complex_text(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"({z.real!r}{sign}{abs(z.imag)!r}i)"


def _term_text(term: Term) -> str:
    c, d, a = term
    parts = [_complex_text(c)]
    if d == 1:
        parts.append("k")
    elif d > 1:
        parts.append(f"k^{d}")
    if a != 0:
        parts.append(f"exp({_complex_text(a)}*k)")
    return "*".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag>i(?![A-Za-z]))?"
    r"|(?P<name>[A-Za-z]+)|(?P<op>[-+*^()]))"
)


class _FormulaParser:
    def __init__(self, text: str, line: int | None, column: int) -> None:
        self.text = text
        self.line = line
        self.offset = column
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if match is None or match.end() == pos:
                self._fail(f"unexpected character {stripped[pos]!r}", pos)
            if match.group("number") is not None:
                kind = "imag" if match.group("imag") else "number"
                self.tokens.append((kind, match.group("number"), match.start("number")))
            elif match.group("name") is not None:
                self.tokens.append(("name", match.group("name"), match.start("name")))
            else:
                self.tokens.append(("op", match.group("op"), match.start("op")))
            pos = match.end()
        self.position = 0

    def _fail(self, message: str, pos: int) -> None:
        raise ParseError(message, line=self.line, column=self.offset + pos + 1)

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _take(self) -> tuple[str, str, int]:
        token = self._peek()
        if token is None:
            self._fail("unexpected end of formula", len(self.text))
        self.position += 1
        return token

    def _expect(self, op: str) -> None:
        kind, value, pos = self._take()
        if kind != "op" or value != op:
            self._fail(f"expected {op!r}, got {value!r}", pos)

    def parse(self) -> Formula:
        if not self.tokens:
            self._fail("empty formula", 0)
        result = self._sum()
        token = self._peek()
        if token is not None:
            self._fail(f"unexpected token {token[1]!r}", token[2])
        return result

    def _sum(self) -> Formula:
        result = self._product()
        while (token := self._peek()) is not None and token[0] == "op" and token[1] in "+-":
            self._take()
            rhs = self._product()
            result = result + rhs if token[1] == "+" else result - rhs
        return result

    def _product(self) -> Formula:
        result = self._unary()
        while (token := self._peek()) is not None and token[0] == "op" and token[1] == "*":
            self._take()
            result = result * self._unary()
        return result

    def _unary(self) -> Formula:
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            self._take()
            operand = self._unary()
            return -operand if token[1] == "-" else operand
        return self._power()

    def _power(self) -> Formula:
        base = self._atom()
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] == "^":
            self._take()
            kind, value, pos = self._take()
            if kind != "number" or not value.isdigit():
                self._fail(f"exponent must be a non-negative integer, got {value!r}", pos)
            result = Formula.constant(1.0)
            for _ in range(int(value)):
                result = result * base
            return result
        return base

    def _atom(self) -> Formula:
        kind, value, pos = self._take()
        if kind == "number":
            return Formula.constant(float(value))
        if kind == "imag":
            return Formula.constant(complex(0.0, float(value)))
        if kind == "name":
            if value == "k":
                return Formula.index()
            if value == "i":
                return Formula.constant(1j)
            if value == "pi":
                return Formula.constant(math.pi)
            if value == "exp":
                self._expect("(")
                argument = self._sum()
                self._expect(")")
                try:
                    return argument.exp()
                except GrammarOverflow as e:
                    self._fail(str(e), pos)
            self._fail(f"unknown name {value!r}", pos)
        if value == "(":
            inner = self._sum()
            self._expect(")")
            return inner
        self._fail(f"unexpected token {value!r}", pos)
        raise AssertionError("unreachable")


def parse_formula(text: str, line: int | None = None, column: int = 0) -> Formula:
    """
    Parse the text form of a formula.

    Args:
        text: Formula source, e.g. ``"2*k^2 + exp(-0.5*k)"``
        line: Line number reported in errors (file parsing)
        column: Column offset of ``text`` within that line

    Raises:
        ParseError: On malformed input, with line and column
    """
    try:
        return _FormulaParser(text, line, column).parse()
    except GrammarOverflow as e:
        raise ParseError(str(e), line=line, column=column + 1) from e


__all__ = ["MAX_TERMS", "Formula", "parse_formula"]
