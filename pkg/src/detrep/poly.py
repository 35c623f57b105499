"""Sparse multivariate polynomials over two scalar kinds.

Everything downstream works with polynomials in their coefficient dict
form: a map from exponent vectors (tuples of non-negative ints) to
scalars.  Two interchangeable scalar kinds are supported:

* ``rational`` -- exact ``fractions.Fraction`` arithmetic, used for all
  symbolic verification,
* ``complex`` -- python ``complex`` doubles, used by the eigensolver.

Conversion rational -> complex is explicit (``to_complex``) and lossy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Exponent = tuple[int, ...]

RATIONAL = "rational"
COMPLEX = "complex"

#: degree of the zero polynomial
NEG_INF = float("-inf")


def gradedlex_key(exp: Exponent):
    """Sort key: ascending total degree, then x1 > x2 > ... within a degree."""
    return (sum(exp), tuple(-e for e in exp))


def enumerate_monomials(n: int, d: int) -> list[Exponent]:
    """All exponent vectors with |alpha| <= d in graded-lex order.

    The result has exactly binomial(n+d, n) entries and starts with the
    zero vector.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == n - 1:
            for e in range(remaining + 1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, pos + 1)

    rec([], d, 0)
    out.sort(key=gradedlex_key)
    return out


def _is_rational(value) -> bool:
    return isinstance(value, (Fraction, int))


def _coerce(value, kind: str):
    if kind == RATIONAL:
        if not _is_rational(value):
            raise TypeError(f"rational scalar expected, got {value!r}")
        return Fraction(value)
    return complex(value)


def _infer_kind(values: Iterable) -> str:
    for v in values:
        if isinstance(v, (float, complex)):
            return COMPLEX
    return RATIONAL


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Sparse n-variate polynomial; ``terms`` never stores zero coefficients."""

    n: int
    terms: dict
    kind: str

    # -- construction -------------------------------------------------

    @staticmethod
    def make(n: int, terms: Mapping[Exponent, object], kind: str | None = None) -> "MultiPoly":
        if kind is None:
            kind = _infer_kind(terms.values())
        clean: dict[Exponent, object] = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has wrong length (n={n})")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = _coerce(coeff, kind)
            if c == 0:
                continue
            clean[exp] = clean.get(exp, _coerce(0, kind)) + c
            if clean[exp] == 0:
                del clean[exp]
        return MultiPoly(n, clean, kind)

    @staticmethod
    def zero(n: int, kind: str = RATIONAL) -> "MultiPoly":
        return MultiPoly(n, {}, kind)

    @staticmethod
    def constant(n: int, value, kind: str | None = None) -> "MultiPoly":
        if kind is None:
            kind = RATIONAL if _is_rational(value) else COMPLEX
        return MultiPoly.make(n, {(0,) * n: value}, kind)

    @staticmethod
    def variable(n: int, i: int, kind: str = RATIONAL) -> "MultiPoly":
        exp = tuple(1 if j == i else 0 for j in range(n))
        return MultiPoly.make(n, {exp: 1}, kind)

    @staticmethod
    def monomial(n: int, exp: Exponent, coeff=1, kind: str | None = None) -> "MultiPoly":
        return MultiPoly.make(n, {tuple(exp): coeff}, kind)

    # -- structure -----------------------------------------------------

    def degree(self):
        """Total degree; the zero polynomial reports -inf."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Exponent):
        return self.terms.get(tuple(exp), _coerce(0, self.kind))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: gradedlex_key(kv[0]))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.n != other.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        if self.kind != other.kind:
            raise ValueError(f"scalar kind mismatch: {self.kind} vs {other.kind}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return MultiPoly(self.n, terms, self.kind)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()}, self.kind)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, 0) + c1 * c2
                if s == 0:
                    terms.pop(exp, None)
                else:
                    terms[exp] = s
        return MultiPoly(self.n, terms, self.kind)

    def scale(self, scalar) -> "MultiPoly":
        c = _coerce(scalar, self.kind)
        if c == 0:
            return MultiPoly.zero(self.n, self.kind)
        return MultiPoly(self.n, {e: v * c for e, v in self.terms.items()}, self.kind)

    def __pow__(self, power: int) -> "MultiPoly":
        if power < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.n, 1, self.kind)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def derivative(self, i: int) -> "MultiPoly":
        terms: dict[Exponent, object] = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = c * exp[i]
        return MultiPoly(self.n, terms, self.kind)

    # -- evaluation ----------------------------------------------------

    def evaluate(self, point):
        """Exact sparse evaluation sum c_alpha * point^alpha."""
        if len(point) != self.n:
            raise ValueError(f"point length {len(point)} != n={self.n}")
        total = _coerce(0, self.kind) if self.kind == RATIONAL else 0j
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def compose(self, args: list["MultiPoly"]) -> "MultiPoly":
        """Substitute each variable by a polynomial (all over the same ring)."""
        if len(args) != self.n:
            raise ValueError("one substitution per variable required")
        m = args[0].n
        result = MultiPoly.zero(m, self.kind)
        for exp, c in self.terms.items():
            term = MultiPoly.constant(m, c, self.kind)
            for arg, e in zip(args, exp):
                if e:
                    term = term * arg**e
            result = result + term
        return result

    # -- comparison ----------------------------------------------------

    def equals(self, other: "MultiPoly", rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
        """Exact coefficient equality for rationals, tolerance-based for floats."""
        self._check(other)
        if self.kind == RATIONAL:
            return self.terms == other.terms
        for exp in set(self.terms) | set(other.terms):
            a = complex(self.terms.get(exp, 0))
            b = complex(other.terms.get(exp, 0))
            if not math.isclose(abs(a - b), 0.0, rel_tol=0.0, abs_tol=max(abs_tol, rel_tol * max(abs(a), abs(b)))):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.equals(other)

    # -- conversions ---------------------------------------------------

    def to_complex(self) -> "MultiPoly":
        """Lossy conversion of a rational polynomial to complex doubles."""
        if self.kind == COMPLEX:
            return self
        return MultiPoly(self.n, {e: complex(c) for e, c in self.terms.items()}, COMPLEX)

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exp) if e) or "1"
            bits.append(f"{c}*{mono}")
        return "MultiPoly(" + " + ".join(bits) + ")"


@dataclass(frozen=True)
class AffineForm:
    """An affine-linear form  constant + sum linear[i] * x_i."""

    constant: object
    linear: tuple

    @property
    def n(self) -> int:
        return len(self.linear)

    @staticmethod
    def zero(n: int, kind: str = RATIONAL) -> "AffineForm":
        z = _coerce(0, kind)
        return AffineForm(z, (z,) * n)

    @staticmethod
    def const(n: int, value, kind: str = RATIONAL) -> "AffineForm":
        z = _coerce(0, kind)
        return AffineForm(_coerce(value, kind), (z,) * n)

    @staticmethod
    def var(n: int, i: int, coeff=1, kind: str = RATIONAL) -> "AffineForm":
        lin = [_coerce(0, kind)] * n
        lin[i] = _coerce(coeff, kind)
        return AffineForm(_coerce(0, kind), tuple(lin))

    def is_zero(self) -> bool:
        return self.constant == 0 and all(c == 0 for c in self.linear)

    def evaluate(self, point):
        total = self.constant
        for c, x in zip(self.linear, point):
            if c:
                total = total + c * x
        return total

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            self.constant + other.constant,
            tuple(a + b for a, b in zip(self.linear, other.linear)),
        )

    def __neg__(self) -> "AffineForm":
        return AffineForm(-self.constant, tuple(-c for c in self.linear))

    def scale(self, scalar) -> "AffineForm":
        return AffineForm(self.constant * scalar, tuple(c * scalar for c in self.linear))

    def to_poly(self, kind: str = RATIONAL) -> MultiPoly:
        terms: dict[Exponent, object] = {(0,) * self.n: self.constant}
        for i, c in enumerate(self.linear):
            terms[tuple(1 if j == i else 0 for j in range(self.n))] = c
        return MultiPoly.make(self.n, terms, kind)


# -- JSON serialisation ----------------------------------------------------


def scalar_to_json(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(Fraction(value))
    if isinstance(value, complex):
        if value.imag == 0.0:
            return value.real
        return {"re": value.real, "im": value.imag}
    return float(value)


def scalar_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, dict):
        return complex(obj["re"], obj.get("im", 0.0))
    if isinstance(obj, bool):
        raise ValueError("boolean is not a scalar")
    return float(obj)


def poly_to_json(p: MultiPoly) -> dict:
    """Schema: {"n": int, "terms": [{"exp": [...], "re": float-or-string, "im": float}]}."""
    terms = []
    for exp, c in p.sorted_terms():
        if p.kind == RATIONAL:
            terms.append({"exp": list(exp), "re": str(c)})
        else:
            c = complex(c)
            entry = {"exp": list(exp), "re": c.real}
            if c.imag != 0.0:
                entry["im"] = c.imag
            terms.append(entry)
    return {"n": p.n, "terms": terms}


def poly_from_json(obj: dict) -> MultiPoly:
    n = int(obj["n"])
    terms: dict[Exponent, object] = {}
    kind = RATIONAL
    for t in obj.get("terms", []):
        exp = tuple(int(e) for e in t["exp"])
        re = t["re"]
        im = float(t.get("im", 0.0))
        if isinstance(re, str):
            if im != 0.0:
                raise ValueError("rational coefficient with nonzero imaginary part")
            coeff = Fraction(re)
        else:
            kind = COMPLEX
            coeff = complex(float(re), im)
        terms[exp] = terms.get(exp, 0) + coeff
    if kind == COMPLEX:
        terms = {e: complex(c) for e, c in terms.items()}
    return MultiPoly.make(n, terms, kind)


def affine_to_json(form: AffineForm) -> dict:
    return {"c": scalar_to_json(form.constant), "x": [scalar_to_json(c) for c in form.linear]}


def affine_from_json(obj: dict) -> AffineForm:
    return AffineForm(scalar_from_json(obj["c"]), tuple(scalar_from_json(c) for c in obj["x"]))
