"""Small expression language for Chow classes.

Grammar:
    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := integer | sigma '[' ints ']' | e<i> | h<i> | c<i> | ct<i>
            | cT<i> | sT<i> | H | push '(' expr ')'

Atoms cT, sT, H and push are only valid in product-ring mode; the others are
valid in Grassmannian mode and, lifted through the second factor, in product
mode.  Values are graded: a dict degree -> homogeneous class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .chowprod import (
    GeometrySpec,
    ProdClass,
    chern_T,
    inverse_chern_T,
    lift_grass,
    prod_multiply,
    pushforward,
    special_class,
)
from .schur import GrassClass, RingSpec, schur_basis, schur_multiply


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvalError(ValueError):
    pass


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: int

    def unparse(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Sigma:
    parts: tuple[int, ...]

    def unparse(self) -> str:
        return f"sigma[{','.join(map(str, self.parts))}]"


@dataclass(frozen=True)
class Sym:
    kind: str  # e, h, c, ct, cT, sT
    index: int

    def unparse(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class Hyper:
    def unparse(self) -> str:
        return "H"


@dataclass(frozen=True)
class Push:
    inner: "Expr"

    def unparse(self) -> str:
        return f"push({self.inner.unparse()})"


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int

    def unparse(self) -> str:
        return f"{self.base.unparse()}^{self.exp}"


@dataclass(frozen=True)
class Term:
    factors: tuple[object, ...]

    def unparse(self) -> str:
        return "*".join(f.unparse() for f in self.factors)


@dataclass(frozen=True)
class Expr:
    signs: tuple[int, ...]  # +1 or -1 per term; first sign may be -1
    terms: tuple[Term, ...]

    def unparse(self) -> str:
        out = []
        for i, (s, t) in enumerate(zip(self.signs, self.terms)):
            if i == 0:
                out.append(("-" if s < 0 else "") + t.unparse())
            else:
                out.append((" - " if s < 0 else " + ") + t.unparse())
        return "".join(out)


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d*)|([+\-*^\[\](),]))")
_NAME = re.compile(r"([A-Za-z]+?)(\d+)$")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos]!r}", pos)
                break
            if m.group(1):
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", pos)

    def parse(self) -> Expr:
        expr = self.parse_expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}", pos)
        return expr

    def parse_expr(self) -> Expr:
        signs = []
        terms = []
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        signs.append(sign)
        terms.append(self.parse_term())
        while self.peek()[1] in ("+", "-"):
            signs.append(1 if self.next()[1] == "+" else -1)
            terms.append(self.parse_term())
        return Expr(tuple(signs), tuple(terms))

    def parse_term(self) -> Term:
        factors = [self.parse_factor()]
        while self.peek()[1] == "*":
            self.next()
            factors.append(self.parse_factor())
        return Term(tuple(factors))

    def parse_factor(self):
        atom = self.parse_atom()
        if self.peek()[1] == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return Pow(atom, int(val))
        return atom

    def parse_atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Num(int(val))
        if kind != "name":
            raise ParseError(f"expected an atom, got {val or 'end of input'!r}", pos)
        if val == "sigma":
            self.expect("[")
            parts = []
            if self.peek()[1] != "]":
                while True:
                    k2, v2, p2 = self.next()
                    if k2 != "num":
                        raise ParseError("sigma expects integer parts", p2)
                    parts.append(int(v2))
                    if self.peek()[1] == ",":
                        self.next()
                    else:
                        break
            self.expect("]")
            return Sigma(tuple(parts))
        if val == "push":
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            return Push(inner)
        if val == "H":
            return Hyper()
        m = _NAME.match(val)
        if m and m.group(1) in ("e", "h", "c", "ct", "cT", "sT"):
            return Sym(m.group(1), int(m.group(2)))
        raise ParseError(f"unknown atom {val!r}", pos)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------- evaluation
#
# A value is a dict degree -> class; inhomogeneous expressions carry several
# graded components.

def _gv_normalize(gv: dict) -> dict:
    return {d: c for d, c in sorted(gv.items()) if not c.is_zero()}


class Evaluator:
    """Evaluates ASTs either in a Grassmannian ring or in the product ring."""

    def __init__(self, ring: RingSpec | None = None,
                 geometry: GeometrySpec | None = None):
        if (ring is None) == (geometry is None):
            raise ValueError("provide exactly one of ring or geometry")
        self.geometry = geometry
        self.ring = geometry.ring if geometry else ring

    @property
    def product_mode(self) -> bool:
        return self.geometry is not None

    def _unit(self, coeff: int = 1) -> dict:
        coeff %= self.ring.field.p
        if self.product_mode:
            cls = ProdClass(0, {(0, ()): coeff} if coeff else {})
        else:
            cls = schur_basis((), coeff)
        return {0: cls} if coeff else {}

    def _from_grass(self, g: GrassClass) -> dict:
        cls = lift_grass(g) if self.product_mode else g
        return {g.degree: cls} if not g.is_zero() else {}

    def _mul_classes(self, a, b):
        if self.product_mode:
            return prod_multiply(a, b, self.geometry)
        return schur_multiply(a, b, self.ring)

    def _gv_mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for da, ca in u.items():
            for db, cb in v.items():
                prod = self._mul_classes(ca, cb)
                if prod.is_zero():
                    continue
                deg = da + db
                if deg in out:
                    out[deg] = self._add_classes(out[deg], prod)
                else:
                    out[deg] = prod
        return _gv_normalize(out)

    def _add_classes(self, a, b, sign: int = 1):
        p = self.ring.field.p
        terms = dict(a.terms)
        for key, c in b.terms.items():
            terms[key] = (terms.get(key, 0) + sign * c) % p
        terms = {k: v for k, v in terms.items() if v}
        if self.product_mode:
            return ProdClass(a.codegree, terms)
        return GrassClass(a.degree, terms)

    def _gv_add(self, u: dict, v: dict, sign: int = 1) -> dict:
        out = dict(u)
        for deg, cls in v.items():
            if deg in out:
                out[deg] = self._add_classes(out[deg], cls, sign)
            elif sign == 1:
                out[deg] = cls
            else:
                out[deg] = self._add_classes(
                    self._zero_like(cls), cls, sign
                )
        return _gv_normalize(out)

    def _zero_like(self, cls):
        if self.product_mode:
            return ProdClass(cls.codegree, {})
        return GrassClass(cls.degree, {})

    def eval(self, node) -> dict:
        if isinstance(node, Expr):
            out: dict = {}
            for sign, term in zip(node.signs, node.terms):
                out = self._gv_add(out, self.eval(term), sign)
            return out
        if isinstance(node, Term):
            out = self._unit()
            for f in node.factors:
                out = self._gv_mul(out, self.eval(f))
            return out
        if isinstance(node, Pow):
            out = self._unit()
            base = self.eval(node.base)
            for _ in range(node.exp):
                out = self._gv_mul(out, base)
            return out
        if isinstance(node, Num):
            return self._unit(node.value)
        if isinstance(node, Sigma):
            if not self.ring.box.contains(node.parts):
                raise EvalError(
                    f"sigma{list(node.parts)} does not fit the "
                    f"{self.ring.box.rows}x{self.ring.box.cols} box"
                )
            return self._from_grass(schur_basis(node.parts))
        if isinstance(node, Hyper):
            if not self.product_mode:
                raise EvalError("H is only valid in product-ring mode")
            return {1: ProdClass(1, {(1, ()): 1})}
        if isinstance(node, Push):
            if not self.product_mode:
                raise EvalError("push(...) is only valid in product-ring mode")
            inner = self.eval(node.inner)
            out: dict = {}
            for _, cls in inner.items():
                g = pushforward(cls, self.geometry)
                if not g.is_zero():
                    out[g.degree] = (
                        self._add_classes(out[g.degree], lift_grass(g))
                        if g.degree in out
                        else lift_grass(g)
                    )
            return _gv_normalize(out)
        if isinstance(node, Sym):
            return self._eval_sym(node)
        raise TypeError(f"unknown node {node!r}")

    def _eval_sym(self, node: Sym) -> dict:
        kind, i = node.kind, node.index
        box = self.ring.box
        if kind in ("cT", "sT"):
            if not self.product_mode:
                raise EvalError(f"{kind}{i} is only valid in product-ring mode")
            if kind == "cT":
                cls = chern_T(i, self.geometry)
            else:
                cls = inverse_chern_T(self.geometry, i)[i]
            return {cls.codegree: cls} if not cls.is_zero() else {}
        if i < 1:
            raise EvalError(f"index of {kind} must be >= 1")
        if kind in ("e", "ct"):
            g = schur_basis((1,) * i) if i <= box.rows else GrassClass(i, {})
        elif kind == "h":
            g = schur_basis((i,)) if i <= box.cols else GrassClass(i, {})
        elif kind == "c":
            if self.product_mode:
                g = special_class(i, self.geometry)
            else:
                coeff = (-1) ** i % self.ring.field.p
                g = schur_basis((i,), coeff) if i <= box.cols else GrassClass(i, {})
        else:
            raise EvalError(f"unknown symbol {kind}")
        return self._from_grass(g)


def format_value(gv: dict) -> str:
    """Canonical printed form: one graded component per line."""
    if not gv:
        return "0"
    lines = [str(cls) for _, cls in sorted(gv.items())]
    return "\n".join(lines)
