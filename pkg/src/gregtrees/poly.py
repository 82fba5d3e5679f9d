"""Exact sparse polynomials in the variables (x, y, z, t) over the rationals.

Coefficients are arbitrary-precision :class:`fractions.Fraction` values; they
grow superexponentially along the polynomial families, so fixed-width types
are not an option.  Polynomials are immutable and hashable, and all arithmetic
is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

VARIABLES = ("x", "y", "z", "t")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

#: exponent vector for (x, y, z, t), in that fixed order
Exponents = tuple[int, int, int, int]
Rational = Union[int, Fraction]

_ZERO = Fraction(0)


def _as_exponents(expo: Iterable[int]) -> Exponents:
    e = tuple(int(v) for v in expo)
    if len(e) != 4 or any(v < 0 for v in e):
        raise ValueError(f"exponent vector must be 4 nonnegative integers, got {e!r}")
    return e  # type: ignore[return-value]


class MultiPoly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, Rational] | Iterable[tuple[Exponents, Rational]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponents, Fraction] = {}
        for expo, coeff in items:
            e = _as_exponents(expo)
            c = clean.get(e, _ZERO) + Fraction(coeff)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> MultiPoly:
        return cls()

    @classmethod
    def constant(cls, c: Rational) -> MultiPoly:
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, expo: Iterable[int], coeff: Rational = 1) -> MultiPoly:
        return cls({_as_exponents(expo): coeff})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        expo = [0, 0, 0, 0]
        expo[_var_index(name)] = 1
        return cls({tuple(expo): 1})  # type: ignore[dict-item]

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        """Copy of the term map (exponent vector -> coefficient)."""
        return dict(self._terms)

    def coefficient(self, expo: Iterable[int]) -> Fraction:
        return self._terms.get(_as_exponents(expo), _ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other: MultiPoly | Rational) -> MultiPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, _ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return _raw(terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return _raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: MultiPoly | Rational) -> MultiPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other: MultiPoly | Rational) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly()
            return _raw({e: k * c for e, k in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = terms.get(e, _ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return _raw(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take a nonnegative integer exponent")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and substitution -----------------------------------------

    def derive(self, var: str) -> MultiPoly:
        """Formal partial derivative with respect to one of x, y, z, t."""
        i = _var_index(var)
        terms: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]  # type: ignore[index]
        return _raw(terms)

    def subst(self, var: str, replacement: MultiPoly | Rational) -> MultiPoly:
        """Substitute a polynomial (or constant) for a single variable."""
        return self.subst_many({var: replacement})

    def subst_many(self, replacements: Mapping[str, MultiPoly | Rational]) -> MultiPoly:
        """Simultaneous substitution: all replacements see the original variables."""
        reps: dict[int, MultiPoly] = {}
        for name, rep in replacements.items():
            reps[_var_index(name)] = rep if isinstance(rep, MultiPoly) else MultiPoly.constant(rep)
        powers: dict[int, list[MultiPoly]] = {i: [MultiPoly.constant(1)] for i in reps}
        result = MultiPoly()
        for e, c in self._terms.items():
            keep = [0, 0, 0, 0]
            term = MultiPoly.constant(c)
            for i in range(4):
                if i in reps:
                    cache = powers[i]
                    while len(cache) <= e[i]:
                        cache.append(cache[-1] * reps[i])
                    term = term * cache[e[i]]
                else:
                    keep[i] = e[i]
            result = result + term * MultiPoly.monomial(keep)
        return result

    def eval(self, point: Iterable[Rational]) -> Fraction:
        """Exact evaluation at a 4-tuple of rationals for (x, y, z, t)."""
        p = [Fraction(v) for v in point]
        if len(p) != 4:
            raise ValueError("evaluation point must have 4 components")
        total = _ZERO
        for e, c in self._terms.items():
            v = c
            for i in range(4):
                if e[i]:
                    v *= p[i] ** e[i]
            total += v
        return total

    def coefficients_in(self, var: str) -> dict[int, MultiPoly]:
        """Split into polynomials by the exponent of one variable."""
        i = _var_index(var)
        buckets: dict[int, dict[Exponents, Fraction]] = {}
        for e, c in self._terms.items():
            rest = list(e)
            rest[i] = 0
            buckets.setdefault(e[i], {})[tuple(rest)] = c  # type: ignore[index]
        return {k: _raw(v) for k, v in buckets.items()}

    def as_univariate(self, var: str) -> list[Fraction]:
        """Dense ascending coefficient list; raises if other variables occur."""
        i = _var_index(var)
        degree = 0
        for e in self._terms:
            if any(e[j] for j in range(4) if j != i):
                raise ValueError(f"polynomial is not univariate in {var}")
            degree = max(degree, e[i])
        out = [_ZERO] * (degree + 1)
        for e, c in self._terms.items():
            out[e[i]] = c
        return out

    # -- canonical text form -------------------------------------------------

    def __str__(self) -> str:
        return poly_to_text(self)

    def __repr__(self) -> str:
        return f"MultiPoly({poly_to_text(self)!r})"


def _raw(terms: dict[Exponents, Fraction]) -> MultiPoly:
    p = MultiPoly.__new__(MultiPoly)
    p._terms = terms
    return p


def _coerce(value: object) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.constant(value)
    return NotImplemented  # type: ignore[return-value]


def _var_index(name: str) -> int:
    try:
        return _VAR_INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


X = MultiPoly.var("x")
Y = MultiPoly.var("y")
Z = MultiPoly.var("z")
T = MultiPoly.var("t")
ONE = MultiPoly.constant(1)


def _print_key(expo: Exponents) -> tuple:
    # graded order first, then lexicographic with x > y > z > t
    return (-sum(expo), tuple(-e for e in expo))


def poly_to_text(p: MultiPoly) -> str:
    """Canonical text form, e.g. ``3*y^2 + 4*y + 2``.

    Terms are sorted by descending total degree, ties broken lexicographically
    with x > y > z > t, so output is byte-stable.
    """
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for expo in sorted(p._terms, key=_print_key):
        coeff = p._terms[expo]
        factors = []
        for name, e in zip(VARIABLES, expo):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


_TERM_RE = re.compile(
    r"""
    (?P<coeff>\d+(?:/\d+)?)?          # optional rational coefficient
    (?P<vars>(?:\*?[xyzt](?:\^\d+)?)*)  # optional variable factors
    $""",
    re.VERBOSE,
)


def poly_from_text(text: str) -> MultiPoly:
    """Parse the canonical text form back into a polynomial."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return MultiPoly()
    # split into signed terms
    s = s.replace("-", "+-")
    chunks = [c.strip() for c in s.split("+")]
    chunks = [c for c in chunks if c]
    terms: list[tuple[Exponents, Fraction]] = []
    for chunk in chunks:
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        m = _TERM_RE.match(chunk.replace(" ", ""))
        if not m or (m.group("coeff") is None and not m.group("vars")):
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        expo = [0, 0, 0, 0]
        for factor in filter(None, m.group("vars").split("*")):
            if "^" in factor:
                name, _, exp = factor.partition("^")
                expo[_var_index(name)] += int(exp)
            else:
                expo[_var_index(factor)] += 1
        terms.append((tuple(expo), sign * coeff))  # type: ignore[arg-type]
    return MultiPoly(terms)
