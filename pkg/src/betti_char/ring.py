"""
Polynomials over Q with a positive Z^r-grading.

Monomials are plain tuples of exponents and degree vectors are plain tuples
of ints. A `Polynomial` is an immutable map monomial -> nonzero Fraction.
Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]
Degree = tuple[int, ...]


class MalformedInput(ValueError):
    pass


class _ZeroDegree:
    """Answer of `is_homogeneous` for the zero polynomial: every degree fits."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_ZeroDegree, ())


ZERO = _ZeroDegree()


def format_degree(d: Degree) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def parse_degree(text) -> Degree:
    """Accept "(1,0)", "1,0", "2", an int, or a list of ints."""
    if isinstance(text, int):
        return (text,)
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    s = str(text).strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise MalformedInput(f"bad degree {text!r}") from None


def add_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def sub_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class GradedRing:
    """Q[x_1..x_n] with deg(x_i) in Z^r and a weight w with w.deg(x_i) > 0."""

    variables: tuple[str, ...]
    degrees: tuple[Degree, ...] = None
    weight: Degree = None
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.variables)
        if not names:
            raise MalformedInput("ring needs at least one variable")
        if len(set(names)) != len(names):
            raise MalformedInput("variable names must be distinct")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise MalformedInput(f"bad variable name {name!r}")
        degs = self.degrees
        if degs is None:
            degs = ((1,),) * len(names)
        degs = tuple(parse_degree(d) for d in degs)
        if len(degs) != len(names):
            raise MalformedInput("need one degree per variable")
        r = len(degs[0])
        if r < 1 or any(len(d) != r for d in degs):
            raise MalformedInput("all variable degrees must have the same length r >= 1")
        w = self.weight
        if w is None:
            if r != 1:
                raise MalformedInput("a weight vector is required for multigradings")
            w = (1,)
        w = parse_degree(w)
        if len(w) != r:
            raise MalformedInput("weight length must equal the grading rank")
        for name, d in zip(names, degs):
            if _dot(w, d) <= 0:
                raise MalformedInput(
                    f"grading is not certified positive: w.deg({name}) = {_dot(w, d)}"
                )
        object.__setattr__(self, "variables", names)
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return len(self.weight)

    def zero_degree(self) -> Degree:
        return (0,) * self.rank

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MalformedInput(f"unknown variable {name!r}") from None

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial({tuple(e): Fraction(1)}, self.nvars)

    def zero(self) -> "Polynomial":
        return Polynomial({}, self.nvars)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial({(0,) * self.nvars: Fraction(c)}, self.nvars)

    def monomial(self, exps: Sequence[int], coef=1) -> "Polynomial":
        return Polynomial({tuple(exps): Fraction(coef)}, self.nvars)

    def parse(self, text) -> "Polynomial":
        return parse_polynomial(text, self)

    def format(self, f: "Polynomial") -> str:
        return format_polynomial(f, self)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "degrees": [list(d) for d in self.degrees],
            "weight": list(self.weight),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GradedRing":
        if "variables" not in data:
            raise MalformedInput("ring.variables is missing")
        return cls(tuple(data["variables"]), data.get("degrees"), data.get("weight"))


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def degree_of_monomial(m: Sequence[int], R: GradedRing) -> Degree:
    if len(m) != R.nvars:
        raise MalformedInput(f"monomial {tuple(m)} has {len(m)} exponents, ring has {R.nvars} variables")
    deg = [0] * R.rank
    for e, d in zip(m, R.degrees):
        if e:
            for k in range(R.rank):
                deg[k] += e * d[k]
    return tuple(deg)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(monos: Iterable[Monomial], nvars: int) -> Monomial:
    out = [0] * nvars
    for m in monos:
        for k, e in enumerate(m):
            if e > out[k]:
                out[k] = e
    return tuple(out)


def monomial_sort_key(m: Monomial):
    """Canonical order: lex with x_1 > x_2 > ..., larger monomials first."""
    return tuple(-e for e in m)


class Polynomial:
    """Immutable sparse polynomial; `terms` maps exponent tuples to Fractions."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] = None, nvars: int = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    m = tuple(m)
                    if nvars is None:
                        nvars = len(m)
                    elif len(m) != nvars:
                        raise MalformedInput(f"monomial {m} does not have {nvars} exponents")
                    clean[m] = c
        if nvars is None:
            raise MalformedInput("nvars is required for the zero polynomial")
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # terms are trusted: canonical monomials, no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if it is not constant."""
        if not self._terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self!r} is not a constant")
        return next(iter(self._terms.values()))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise MalformedInput("polynomials live in rings of different sizes")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial({(0,) * self.nvars: other}, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw({}, self.nvars)
        return Polynomial._raw({m: c * v for m, v in self._terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial({(0,) * self.nvars: 1}, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                # agree with __eq__ against plain numbers
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        names = tuple(f"x{i + 1}" for i in range(self.nvars))
        return f"Polynomial({_format_terms(self, names)!r})"

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]))


def poly_arith(f: Polynomial, g, op: str) -> Polynomial:
    """op in {'add', 'mul', 'scale'}; for 'scale' g is a rational."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def is_homogeneous(f: Polynomial, R: GradedRing):
    """Common degree of all terms, `ZERO` for f == 0, or None if mixed."""
    if f.is_zero():
        return ZERO
    deg = None
    for m in f._terms:
        dm = degree_of_monomial(m, R)
        if deg is None:
            deg = dm
        elif dm != deg:
            return None
    return deg


def monomials_of_degree(j: Degree, R: GradedRing) -> list[Monomial]:
    """All monomials of degree j, in canonical order (largest first)."""
    j = tuple(j)
    if len(j) != R.rank:
        raise MalformedInput(f"degree {j} does not have length {R.rank}")
    return list(_monomials_of_degree(j, R.degrees, R.weight))


@lru_cache(maxsize=4096)
def _monomials_of_degree(j, degrees, weight):
    n = len(degrees)
    r = len(j)
    wts = [_dot(weight, d) for d in degrees]
    budget = _dot(weight, j)
    if budget < 0:
        return ()
    out = []
    exps = [0] * n

    def rec(k, remaining, deg):
        if k == n:
            if tuple(deg) == j:
                out.append(tuple(exps))
            return
        wk = wts[k]
        dk = degrees[k]
        # descending exponent keeps the output in canonical order
        for e in range(remaining // wk, -1, -1):
            exps[k] = e
            rec(k + 1, remaining - e * wk, [deg[t] + e * dk[t] for t in range(r)])
        exps[k] = 0

    rec(0, budget, [0] * r)
    return tuple(out)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace x_v by images[v] and expand."""
    n = f.nvars
    if len(images) != n:
        raise MalformedInput("need one image per variable")
    powers: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = images[v] ** e
        return powers[key]

    total = Polynomial._raw({}, images[0].nvars if images else n)
    for m, c in f._terms.items():
        term = Polynomial._raw({(0,) * total.nvars: c}, total.nvars)
        for v, e in enumerate(m):
            if e:
                term = term * power(v, e)
        total = total + term
    return total


def linear_substitute(f: Polynomial, g) -> Polynomial:
    """Apply a linear action: x_v -> sum_u A[u][v] x_u, with A = g.matrix.

    `g` may also be a bare square matrix (sequence of rows).
    """
    A = getattr(g, "matrix", g)
    n = f.nvars
    if len(A) != n or any(len(row) != n for row in A):
        raise MalformedInput(f"action matrix is not {n}x{n}")
    monomial_images = _monomial_images(A)
    if monomial_images is not None:
        out: dict = {}
        for m, c in f._terms.items():
            new = [0] * n
            coef = c
            for v, e in enumerate(m):
                if e:
                    u, a = monomial_images[v]
                    new[u] += e
                    coef *= a ** e
            key = tuple(new)
            s = out.get(key, 0) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial._raw(out, n)
    images = []
    for v in range(n):
        terms = {}
        for u in range(n):
            a = Fraction(A[u][v])
            if a:
                e = [0] * n
                e[u] = 1
                terms[tuple(e)] = a
        images.append(Polynomial._raw(terms, n))
    return substitute(f, images)


def _monomial_images(A):
    """For a monomial matrix return [(u, a)] with x_v -> a x_u, else None."""
    out = []
    for v in range(len(A)):
        hit = None
        for u in range(len(A)):
            a = A[u][v]
            if a:
                if hit is not None:
                    return None
                hit = (u, Fraction(a))
        if hit is None:
            return None
        out.append(hit)
    return out


# --- text syntax ------------------------------------------------------------

_TERM_SPLIT = re.compile(r"(?=[+-])")
_NUMBER = re.compile(r"\d+(/\d+)?")
_FACTOR = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(\^(\d+))?")


def parse_polynomial(text, R: GradedRing) -> Polynomial:
    """Parse e.g. "-3/2*x1^2*x2 + x3"; an int or Fraction is a constant."""
    if isinstance(text, (int, Fraction)):
        return R.const(text)
    s = re.sub(r"\s+", "", str(text)).replace("−", "-").replace("**", "^")
    if not s:
        raise MalformedInput("empty polynomial")
    out: dict = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise MalformedInput(f"dangling sign in {text!r}")
        coef = Fraction(sign)
        exps = [0] * R.nvars
        for factor in chunk.split("*"):
            if _NUMBER.fullmatch(factor):
                coef *= Fraction(factor)
                continue
            mo = _FACTOR.fullmatch(factor)
            if not mo:
                raise MalformedInput(f"cannot parse factor {factor!r} in {text!r}")
            exps[R.index(mo.group(1))] += int(mo.group(3) or 1)
        key = tuple(exps)
        c = out.get(key, 0) + coef
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return Polynomial._raw(out, R.nvars)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_terms(f: Polynomial, names) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_terms():
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coef(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coef(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def format_polynomial(f: Polynomial, R: GradedRing) -> str:
    return _format_terms(f, R.variables)
