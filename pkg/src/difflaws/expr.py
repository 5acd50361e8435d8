"""Expression language for polynomial and rational maps.

Expressions are immutable ASTs with rational literals.  They are evaluated in
any ring (literals are mapped through ``Ring.from_fraction``), converted to an
exact multivariate polynomial/fraction normal form over Q, and used to build
difference factorizers symbolically:

    F(x, v, T) = (f(x + vT) - f(x)) / T

where the division by the formal variable T is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DivisionError, ParseError, UnsupportedOperationError
from .rings import Ring, Truncated

T_VAR = "T"


# ---------------------------------------------------------------------------
# AST


class Expr:
    """Base class of expression nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    # Operator sugar for building expressions in Python code.
    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k: int):
        return Pow(self, k)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value < 0:
            raise ValueError("literals are non-negative; use Neg for negative constants")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exp: int

    def __post_init__(self):
        if isinstance(self.exp, bool) or not isinstance(self.exp, int) or self.exp < 0:
            raise ValueError("exponent must be a non-negative integer")


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        return parse(value)
    q = Fraction(value)
    return Const(q) if q >= 0 else Neg(Const(-q))


def const(q) -> Expr:
    return as_expr(Fraction(q))


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("IDENT", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unknown token {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "EOF" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "EOF":
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise ParseError("negative exponents are not allowed", tok[2])
            if tok[0] != "INT":
                raise ParseError("exponent must be a natural number", tok[2])
            self.take()
            node = Pow(node, int(tok[1]))
            if self.peek()[0] == "^":
                raise ParseError("chained exponents need parentheses", self.peek()[2])
        return node

    def atom(self) -> Expr:
        tok = self.peek()
        if tok[0] == "INT":
            self.take()
            # rational literal p/q
            if self.peek()[0] == "/" and self.peek(1)[0] == "INT":
                self.take()
                den = self.take()
                if int(den[1]) == 0:
                    raise ParseError("zero denominator in literal", den[2])
                return Const(Fraction(int(tok[1]), int(den[1])))
            return Const(Fraction(int(tok[1])))
        if tok[0] == "IDENT":
            self.take()
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if tok[0] == "EOF" else repr(tok[1])
        raise ParseError(f"unexpected {got}", tok[2])


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    p = _Parser(text)
    node = p.expr()
    p.take("EOF")
    return node


# ---------------------------------------------------------------------------
# Printer


def _fmt_const(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_text(e: Expr) -> str:
    """Render ``e`` so that ``parse(to_text(e)) == e``.

    Top-level sums are spaced (``a + b``); nested ones are compact.
    """
    return _pr(e, 0, True)


def _pr(e: Expr, ctx: int, top: bool) -> str:
    # ctx: 0 any, 1 right of +/-, 2 operand of */ (left), 3 right of * or /, 4 unary, 5 pow base
    if isinstance(e, Const):
        s = _fmt_const(e.value)
        if e.value.denominator != 1 and ctx >= 4:
            return f"({s})"
        return s
    if isinstance(e, Var):
        return e.name
    if isinstance(e, (Add, Sub)):
        sep = (" + " if top else "+") if isinstance(e, Add) else (" - " if top else "-")
        s = _pr(e.left, 0, top) + sep + _pr(e.right, 1, top)
        if ctx >= 1:
            return f"({_pr(e.left, 0, False)}{sep.strip()}{_pr(e.right, 1, False)})"
        return s
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = _pr(e.left, 2, False)
        right = _pr(e.right, 3, False)
        if isinstance(e, Div) and right[:1].isdigit():
            right = f"({right})"
        s = f"{left}{op}{right}"
        return f"({s})" if ctx >= 3 else s
    if isinstance(e, Neg):
        s = "-" + _pr(e.arg, 4, False)
        return f"({s})" if ctx == 5 else s
    if isinstance(e, Pow):
        s = f"{_pr(e.base, 5, False)}^{e.exp}"
        return f"({s})" if ctx == 5 else s
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Structural helpers


def variables(e: Expr) -> list[str]:
    """Variable names in order of first appearance."""
    seen: dict[str, None] = {}

    def walk(n):
        if isinstance(n, Var):
            seen.setdefault(n.name)
        elif isinstance(n, (Add, Sub, Mul, Div)):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, Neg):
            walk(n.arg)
        elif isinstance(n, Pow):
            walk(n.base)

    walk(e)
    return list(seen)


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, mapping))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, mapping), e.exp)
    return type(e)(substitute(e.left, mapping), substitute(e.right, mapping))


def denominators(e: Expr) -> list[Expr]:
    """Every denominator subterm, outermost first."""
    out: list[Expr] = []

    def walk(n):
        if isinstance(n, Div):
            out.append(n.right)
        if isinstance(n, (Add, Sub, Mul, Div)):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, Neg):
            walk(n.arg)
        elif isinstance(n, Pow):
            walk(n.base)

    walk(e)
    return out


def is_polynomial(e: Expr) -> bool:
    """True when every denominator is a non-zero constant expression."""
    for d in denominators(e):
        if variables(d):
            return False
    return True


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(e: Expr, env: Mapping[str, object], ring: Ring):
    """Evaluate ``e`` exactly in ``ring`` with variables bound by ``env``."""
    return compile_expr(e, ring)(env)


def compile_expr(e: Expr, ring: Ring) -> Callable[[Mapping[str, object]], object]:
    """Turn ``e`` into a closure ``env -> value``; repeated evaluation is much cheaper."""
    if isinstance(e, Const):
        value = ring.from_fraction(e.value)
        return lambda env: value
    if isinstance(e, Var):
        name = e.name

        def var(env):
            try:
                return env[name]
            except KeyError:
                raise KeyError(f"unbound variable {name!r}") from None

        return var
    if isinstance(e, Neg):
        f = compile_expr(e.arg, ring)
        neg = ring.neg
        return lambda env: neg(f(env))
    if isinstance(e, Pow):
        f = compile_expr(e.base, ring)
        k = e.exp
        pw = ring.pow
        return lambda env: pw(f(env), k)
    fl = compile_expr(e.left, ring)
    fr = compile_expr(e.right, ring)
    if isinstance(e, Add):
        add = ring.add
        return lambda env: add(fl(env), fr(env))
    if isinstance(e, Sub):
        sub = ring.sub
        return lambda env: sub(fl(env), fr(env))
    if isinstance(e, Mul):
        mul = ring.mul
        return lambda env: mul(fl(env), fr(env))
    if isinstance(e, Div):
        inverse, mul = ring.inverse, ring.mul
        denom = e.right

        def div(env):
            d = fr(env)
            inv = inverse(d)
            if inv is None:
                raise DivisionError(
                    f"denominator {to_text(denom)} = {ring.format(d)} is not a unit in {ring}",
                    subterm=denom,
                )
            return mul(fl(env), inv)

        return div
    raise TypeError(f"not an expression: {e!r}")


def scalar_extend_eval(e: Expr, env: Mapping[str, tuple], base: Ring, t) -> tuple:
    """Evaluate ``e`` in K_t = K[X]/(X^2 - tX) with variables bound to pairs (x, v).

    The second component is the difference factorizer at (x, v, t); for
    ``t = 0`` it is the forward-mode derivative in direction v.
    """
    if not base.commutative:
        raise UnsupportedOperationError("scalar extension needs a commutative ring")
    ring = Truncated(base, t)
    return evaluate(e, {k: ring.canonical(v) for k, v in env.items()}, ring)


# ---------------------------------------------------------------------------
# Polynomials over Q

Monomial = tuple  # tuple of (name, exponent) sorted by name


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, k in b:
        d[name] = d.get(name, 0) + k
    return tuple(sorted(d.items()))


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    def const_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly({to_text(self.to_expr())})"

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def variables(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def degree(self) -> int:
        return max((sum(k for _, k in m) for m in self.terms), default=0)

    def substitute(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        out = Poly()
        cache: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for name, k in m:
                if name in mapping:
                    key = (name, k)
                    if key not in cache:
                        cache[key] = mapping[name] ** k
                    term = term * cache[key]
                else:
                    term = term * Poly({((name, k),): Fraction(1)})
            out = out + term
        return out

    def divide_by_var(self, name: str) -> "Poly":
        """Exact division by a single variable; every monomial must contain it."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) < 1:
                raise ArithmeticError(f"{self!r} is not divisible by {name}")
            d[name] -= 1
            if d[name] == 0:
                del d[name]
            out[tuple(sorted(d.items()))] = c
        return Poly(out)

    def leading(self, order: Sequence[str]) -> tuple[Monomial, Fraction]:
        key = _deglex_key(order)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def exact_div(self, other: "Poly", order: Sequence[str] | None = None) -> "Poly | None":
        """Quotient if ``other`` divides ``self`` exactly, otherwise ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if order is None:
            order = sorted(self.variables() | other.variables())
        lm_g, lc_g = other.leading(order)
        g = dict(lm_g)
        rest, quotient = self, Poly()
        while not rest.is_zero():
            lm, lc = rest.leading(order)
            d = dict(lm)
            if any(d.get(n, 0) < k for n, k in g.items()):
                return None
            for n, k in g.items():
                d[n] -= k
            q = Poly({tuple(sorted((n, k) for n, k in d.items() if k)): lc / lc_g})
            quotient = quotient + q
            rest = rest - q * other
        return quotient

    def evaluate(self, env: Mapping[str, object], ring: Ring):
        total = ring.zero
        for m, c in self.terms.items():
            term = ring.from_fraction(c)
            for name, k in m:
                term = ring.mul(term, ring.pow(env[name], k))
            total = ring.add(total, term)
        return total

    def to_expr(self, order: Sequence[str] | None = None) -> Expr:
        """Expression with terms in ascending total degree, then lexicographic."""
        if order is None:
            order = sorted(self.variables())
        if not self.terms:
            return Const(0)
        order = list(order) + sorted(self.variables() - set(order))
        rank = {n: i for i, n in enumerate(order)}
        monos = sorted(self.terms, key=lambda m: (sum(k for _, k in m), _neg_lex(m, order)))
        out: Expr | None = None
        for m in monos:
            c = self.terms[m]
            factors: list[Expr] = []
            for name, k in sorted(m, key=lambda nk: rank[nk[0]]):
                factors.append(Var(name) if k == 1 else Pow(Var(name), k))
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, Const(mag))
            term = factors[0]
            for f in factors[1:]:
                term = Mul(term, f)
            if out is None:
                if c < 0:
                    term = _negate_leading(factors)
                out = term
            else:
                out = Sub(out, term) if c < 0 else Add(out, term)
        return out


def _negate_leading(factors: list[Expr]) -> Expr:
    # -2*v rather than -(2*v); both parse back to the same value
    term: Expr = Neg(factors[0])
    for f in factors[1:]:
        term = Mul(term, f)
    return term


def _neg_lex(m: Monomial, order: Sequence[str]) -> tuple:
    d = dict(m)
    return tuple(-d.get(n, 0) for n in order)


def _deglex_key(order: Sequence[str]):
    def key(m: Monomial):
        d = dict(m)
        return (sum(d.values()), tuple(d.get(n, 0) for n in order))

    return key


# ---------------------------------------------------------------------------
# Rational functions (fraction normal form)


@dataclass(frozen=True)
class Fraction_:
    """num / (product of den factors); factors are non-constant polynomials."""

    num: Poly
    den: tuple = ()

    def den_product(self) -> Poly:
        out = Poly.const(1)
        for f in self.den:
            out = out * f
        return out

    def __eq__(self, other):
        if not isinstance(other, Fraction_):
            return NotImplemented
        return self.num * other.den_product() == other.num * self.den_product()

    def __hash__(self):  # equality is semantic; hash only on the trivially-equal case
        return 0

    def is_polynomial(self) -> bool:
        return not self.den

    def to_expr(self, order: Sequence[str] | None = None) -> Expr:
        num = self.num.to_expr(order)
        if not self.den:
            return num
        den = self.den[0].to_expr(order)
        for f in self.den[1:]:
            den = Mul(den, f.to_expr(order))
        return Div(num, den)


FractionNormalForm = Fraction_


def _merge_dens(a: tuple, b: tuple) -> tuple[tuple, list, list]:
    """Least common multiple of two factor multisets (structural), plus cofactors."""
    remaining = list(b)
    common = []
    only_a = []
    for f in a:
        if f in remaining:
            remaining.remove(f)
            common.append(f)
        else:
            only_a.append(f)
    lcm = tuple(common + only_a + remaining)
    return lcm, remaining, only_a  # cofactor of a is `remaining`, of b is `only_a`


def _prod(polys: Iterable[Poly]) -> Poly:
    out = Poly.const(1)
    for p in polys:
        out = out * p
    return out


def _make_fraction(num: Poly, den: Iterable[Poly]) -> Fraction_:
    scale = Fraction(1)
    factors = []
    for f in den:
        if f.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if f.is_const():
            scale *= f.const_value()
        else:
            factors.append(f)
    if scale != 1:
        num = num * Poly.const(1 / scale)
    return Fraction_(num, tuple(factors))


def to_fraction(e: Expr) -> Fraction_:
    """Exact fraction normal form of ``e`` over Q."""
    if isinstance(e, Const):
        return Fraction_(Poly.const(e.value))
    if isinstance(e, Var):
        return Fraction_(Poly.var(e.name))
    if isinstance(e, Neg):
        a = to_fraction(e.arg)
        return Fraction_(-a.num, a.den)
    if isinstance(e, Pow):
        a = to_fraction(e.base)
        return Fraction_(a.num ** e.exp, tuple(f for f in a.den for _ in range(e.exp)))
    a, b = to_fraction(e.left), to_fraction(e.right)
    if isinstance(e, (Add, Sub)):
        lcm, cof_a, cof_b = _merge_dens(a.den, b.den)
        na = a.num * _prod(cof_a)
        nb = b.num * _prod(cof_b)
        return Fraction_(na + nb if isinstance(e, Add) else na - nb, lcm)
    if isinstance(e, Mul):
        return Fraction_(a.num * b.num, a.den + b.den)
    if isinstance(e, Div):
        if b.num.is_zero():
            raise ZeroDivisionError(f"division by zero in {to_text(e)}")
        return _make_fraction(a.num * _prod(b.den), a.den + (b.num,))
    raise TypeError(f"not an expression: {e!r}")


def simplify(fr: Fraction_, order: Sequence[str] | None = None) -> Fraction_:
    """Cancel denominator factors that divide the numerator exactly."""
    num, kept = fr.num, []
    for f in fr.den:
        q = num.exact_div(f, order)
        if q is None:
            kept.append(f)
        else:
            num = q
    return Fraction_(num, tuple(kept))


def fractions_equal(a: Expr | Fraction_, b: Expr | Fraction_) -> bool:
    fa = a if isinstance(a, Fraction_) else to_fraction(a)
    fb = b if isinstance(b, Fraction_) else to_fraction(b)
    return fa == fb


# ---------------------------------------------------------------------------
# Difference factorizers and derivatives


def direction_names(variables_: Sequence[str]) -> list[str]:
    """Default names of direction variables: ``v`` for one variable, ``v_<name>`` otherwise."""
    if len(variables_) == 1 and variables_[0] not in ("v", T_VAR):
        return ["v"]
    return [f"v_{n}" for n in variables_]


def symbolic_difference_factorizer(
    e: Expr,
    vars_: Sequence[str],
    directions: Sequence[str] | None = None,
    simplify_result: bool = True,
) -> Fraction_:
    """Fraction form of F(x, v, T) with e(x + vT) - e(x) = F(x, v, T) * T.

    ``vars_`` are the coordinate variables of e; ``directions`` names the
    matching direction variables (default from :func:`direction_names`).
    """
    if directions is None:
        directions = direction_names(vars_)
    if len(directions) != len(vars_):
        raise ValueError("need one direction variable per coordinate")
    clash = set(directions) & set(vars_) | ({T_VAR} & (set(vars_) | set(directions)))
    if clash:
        raise ValueError(f"variable names clash with direction/T names: {sorted(clash)}")
    fr = to_fraction(e)
    T = Poly.var(T_VAR)
    shift = {x: Poly.var(x) + Poly.var(v) * T for x, v in zip(vars_, directions)}
    num_s = fr.num.substitute(shift)
    den = fr.den_product()
    den_factors_s = tuple(f.substitute(shift) for f in fr.den)
    den_s = _prod(den_factors_s)
    diff = num_s * den - fr.num * den_s
    if diff.terms and any(dict(m).get(T_VAR, 0) == 0 for m in diff.terms):
        raise ArithmeticError("inexact division by T (normalization bug)")
    quotient = diff.divide_by_var(T_VAR)
    out = Fraction_(quotient, fr.den + den_factors_s)
    order = list(vars_) + [T_VAR] + list(directions)
    return simplify(out, order) if simplify_result else out


def factorizer_expr(e: Expr, vars_: Sequence[str], directions: Sequence[str] | None = None) -> Expr:
    if directions is None:
        directions = direction_names(vars_)
    order = list(vars_) + [T_VAR] + list(directions)
    return symbolic_difference_factorizer(e, vars_, directions).to_expr(order)


def symbolic_derivative_oracle(e: Expr, var: str) -> Expr:
    """Formal partial derivative by the power, product and quotient rules."""
    d = symbolic_derivative_oracle
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return Const(1 if e.name == var else 0)
    if isinstance(e, Neg):
        return Neg(d(e.arg, var))
    if isinstance(e, Add):
        return Add(d(e.left, var), d(e.right, var))
    if isinstance(e, Sub):
        return Sub(d(e.left, var), d(e.right, var))
    if isinstance(e, Mul):
        return Add(Mul(d(e.left, var), e.right), Mul(e.left, d(e.right, var)))
    if isinstance(e, Div):
        return Div(
            Sub(Mul(d(e.left, var), e.right), Mul(e.left, d(e.right, var))),
            Pow(e.right, 2),
        )
    if isinstance(e, Pow):
        if e.exp == 0:
            return Const(0)
        return Mul(Mul(Const(e.exp), Pow(e.base, e.exp - 1)), d(e.base, var))
    raise TypeError(f"not an expression: {e!r}")


def directional_derivative_oracle(e: Expr, vars_: Sequence[str], directions: Sequence[str]) -> Expr:
    """sum_i (d e / d x_i) * v_i."""
    out: Expr | None = None
    for x, v in zip(vars_, directions):
        term = Mul(symbolic_derivative_oracle(e, x), Var(v))
        out = term if out is None else Add(out, term)
    return out if out is not None else Const(0)
