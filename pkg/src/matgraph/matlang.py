"""Parser, shape checker, fragment checker and evaluator for matrix-language
sentences.

Concrete syntax:

    juxtaposition or ``*``   matrix multiplication
    ``+``                    matrix addition
    postfix ``'``            transpose
    ``diag(e)``              vector -> diagonal matrix
    ``tr(e)``                trace
    ``ones``                 all-ones column vector
    ``had(e1,e2)`` / ``.*``  element-wise multiplication
    ``c * e``                scalar multiplication (numeric literal c)
    ``f:NAME(e)``            pointwise function from a closed registry
    ``e^k``                  repeated matrix multiplication (sugar, k >= 1)

Operation fragments: L1 = {mul, transpose, ones, diag}; L2 adds trace;
L3 adds hadamard. "Enriched" fragments additionally allow addition, scalar
multiplication and pointwise functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class MatLangError(ValueError):
    pass


class ParseError(MatLangError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ShapeError(MatLangError):
    pass


POINTWISE_FUNCS = {
    "exp": np.exp,
    "square": lambda x: x * x,
    "reciprocal": lambda x: 1.0 / x,
    "rsqrt": lambda x: 1.0 / np.sqrt(x),
    "binom3": lambda x: x * (x - 1.0) * (x - 2.0) / 6.0,
}


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Expr:
    def children(self) -> tuple["Expr", ...]:
        return ()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Ones(Expr):
    pass


@dataclass(frozen=True)
class MatMul(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Hadamard(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Transpose(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Diag(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Trace(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class ScalarMul(Expr):
    scalar: float
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Pointwise(Expr):
    fname: str
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class OpSet:
    """A language fragment: base L1, L2 or L3, optionally enriched."""

    base: str = "L3"
    enriched: bool = False

    def __post_init__(self):
        if self.base not in ("L1", "L2", "L3"):
            raise ValueError(f"unknown fragment base: {self.base!r}")

    @classmethod
    def named(cls, name: str) -> "OpSet":
        """Fragment by name: "L1".."L3", with a "+" suffix for enrichment."""
        return cls(base=name.rstrip("+"), enriched=name.endswith("+"))

    def allows(self, node: Expr) -> bool:
        if isinstance(node, (Var, Ones, MatMul, Transpose, Diag)):
            return True
        if isinstance(node, Trace):
            return self.base in ("L2", "L3")
        if isinstance(node, Hadamard):
            return self.base == "L3"
        if isinstance(node, (Add, ScalarMul, Pointwise)):
            return self.enriched
        raise TypeError(f"unknown node type: {type(node).__name__}")


# ---------------------------------------------------------------------------
# Parser

_PUNCT = ("'", "^", "+", ".*", "*", "(", ")", ",", ":")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str | float, int]] = []
        self._run()

    def _run(self):
        t = self.text
        i = 0
        while i < len(t):
            c = t[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit() or (
                c == "-" and i + 1 < len(t) and (t[i + 1].isdigit() or t[i + 1] == ".")
            ):
                j = i + 1
                while j < len(t) and (t[j].isdigit() or t[j] in ".eE" or
                                      (t[j] in "+-" and t[j - 1] in "eE")):
                    j += 1
                try:
                    val = float(t[i:j])
                except ValueError:
                    raise ParseError(f"bad numeric literal {t[i:j]!r}", i)
                self.tokens.append(("num", val, i))
                i = j
                continue
            if c.isalpha() or c == "_":
                j = i + 1
                while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                    j += 1
                self.tokens.append(("name", t[i:j], i))
                i = j
                continue
            if t.startswith(".*", i):
                self.tokens.append(("op", ".*", i))
                i += 2
                continue
            if c in "'^+*(),:":
                self.tokens.append(("op", c, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {c!r}", i)
        self.tokens.append(("end", "", len(t)))


class _Parser:
    def __init__(self, text: str):
        self.toks = _Lexer(text).tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if kind != "op" or val != value:
            raise ParseError(f"expected {value!r}, got {val!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing token {val!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] == ("op", "+"):
            self.next()
            e = Add(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unit()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                e = self._combine_mul(e, self.unit())
            elif kind == "op" and val == ".*":
                self.next()
                e = Hadamard(e, self.unit())
            elif self._starts_atom():
                e = self._combine_mul(e, self.unit())
            else:
                return e

    @staticmethod
    def _combine_mul(left: Expr, right: Expr) -> Expr:
        if isinstance(left, _Lit):
            if isinstance(right, _Lit):
                raise MatLangError("literal * literal is not a matrix expression")
            return ScalarMul(left.value, right)
        if isinstance(right, _Lit):
            return ScalarMul(right.value, left)
        return MatMul(left, right)

    def _starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("name", "num") or (kind == "op" and val == "(")

    def unit(self) -> Expr:
        e = self.atom()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "'":
                self.next()
                e = Transpose(e)
            elif kind == "op" and val == "^":
                self.next()
                kind, k, kpos = self.next()
                if kind != "num" or k != int(k) or k < 1:
                    raise ParseError("power must be an integer >= 1", kpos)
                e = _power(e, int(k))
            else:
                return e

    def atom(self) -> Expr:
        kind, val, pos = self.next()
        if kind == "num":
            return _Lit(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "name":
            if val == "ones":
                return Ones()
            if val in ("diag", "tr"):
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Diag(e) if val == "diag" else Trace(e)
            if val == "had":
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Hadamard(a, b)
            if val == "f":
                self.expect(":")
                kind2, fname, fpos = self.next()
                if kind2 != "name":
                    raise ParseError("expected pointwise function name", fpos)
                if fname not in POINTWISE_FUNCS:
                    raise ParseError(f"unknown pointwise function {fname!r}", fpos)
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Pointwise(fname, e)
            return Var(val)
        raise ParseError(f"unexpected token {val!r}", pos)


@dataclass(frozen=True)
class _Lit(Expr):
    """Parser-internal numeric literal; must pair with * to form ScalarMul."""

    value: float


def _power(e: Expr, k: int) -> Expr:
    out = e
    for _ in range(k - 1):
        out = MatMul(out, e)
    return out


def parse(text: str) -> Expr:
    e = _Parser(text).parse()
    if isinstance(e, _Lit):
        raise MatLangError("a bare numeric literal is not a matrix expression")
    return e


# ---------------------------------------------------------------------------
# Shape checking


def shape_check(e: Expr, n: int) -> tuple[int, int]:
    """Return the shape of the root; raises ShapeError on a dimension clash.

    Shapes are drawn from {n x n, n x 1, 1 x n, 1 x 1}.
    """
    if n < 1:
        raise ValueError("ambient size n must be >= 1")

    def rec(node: Expr) -> tuple[int, int]:
        if isinstance(node, Var):
            return (n, n)
        if isinstance(node, Ones):
            return (n, 1)
        if isinstance(node, Transpose):
            r, c = rec(node.arg)
            return (c, r)
        if isinstance(node, MatMul):
            (r1, c1), (r2, c2) = rec(node.left), rec(node.right)
            if c1 != r2:
                raise ShapeError(f"MatMul: {r1}x{c1} incompatible with {r2}x{c2}")
            return (r1, c2)
        if isinstance(node, (Add, Hadamard)):
            s1, s2 = rec(node.left), rec(node.right)
            if s1 != s2:
                raise ShapeError(
                    f"{type(node).__name__}: operand shapes {s1} != {s2}"
                )
            return s1
        if isinstance(node, Diag):
            s = rec(node.arg)
            if s == (n, 1):
                return (n, n)
            raise ShapeError(f"Diag requires an {n}x1 vector, got {s[0]}x{s[1]}")
        if isinstance(node, Trace):
            s = rec(node.arg)
            if s != (n, n):
                raise ShapeError(f"Trace requires an {n}x{n} matrix, got {s[0]}x{s[1]}")
            return (1, 1)
        if isinstance(node, ScalarMul):
            return rec(node.arg)
        if isinstance(node, Pointwise):
            s = rec(node.arg)
            if s == (n, n) and n != 1:
                raise ShapeError(
                    f"Pointwise {node.fname} applies to scalars or vectors, "
                    f"got {s[0]}x{s[1]}"
                )
            return s
        raise TypeError(f"unknown node type: {type(node).__name__}")

    return rec(e)


def is_sentence(e: Expr, n: int) -> bool:
    return shape_check(e, n) == (1, 1)


def fragment_check(e: Expr, opset: OpSet) -> bool:
    """True iff every operator in the AST is permitted by the fragment."""
    if not opset.allows(e):
        return False
    return all(fragment_check(c, opset) for c in e.children())


# ---------------------------------------------------------------------------
# Evaluation


def eval_expr(e: Expr, binding: dict[str, np.ndarray]) -> np.ndarray:
    """Compositional evaluation in IEEE double precision.

    All values are 2-d arrays; sentences evaluate to a 1x1 array.
    """
    if isinstance(e, Var):
        if e.name not in binding:
            raise MatLangError(f"unbound variable {e.name!r}")
        return np.atleast_2d(np.asarray(binding[e.name], dtype=float))
    if isinstance(e, Ones):
        n = _ambient_size(binding)
        return np.ones((n, 1))
    if isinstance(e, Transpose):
        return eval_expr(e.arg, binding).T
    if isinstance(e, MatMul):
        return eval_expr(e.left, binding) @ eval_expr(e.right, binding)
    if isinstance(e, Add):
        return eval_expr(e.left, binding) + eval_expr(e.right, binding)
    if isinstance(e, Hadamard):
        return eval_expr(e.left, binding) * eval_expr(e.right, binding)
    if isinstance(e, Diag):
        v = eval_expr(e.arg, binding)
        return np.diag(v[:, 0])
    if isinstance(e, Trace):
        return np.trace(eval_expr(e.arg, binding)).reshape(1, 1)
    if isinstance(e, ScalarMul):
        return e.scalar * eval_expr(e.arg, binding)
    if isinstance(e, Pointwise):
        return POINTWISE_FUNCS[e.fname](eval_expr(e.arg, binding))
    raise TypeError(f"unknown node type: {type(e).__name__}")


def _ambient_size(binding: dict[str, np.ndarray]) -> int:
    for v in binding.values():
        return np.atleast_2d(np.asarray(v)).shape[0]
    raise MatLangError("cannot infer ambient size: empty binding")


def eval_sentence(e: Expr, A: np.ndarray) -> float:
    """Evaluate a sentence on an adjacency (or any square) matrix A."""
    n = np.asarray(A).shape[0]
    if shape_check(e, n) != (1, 1):
        raise ShapeError("expression is not a sentence (result is not 1x1)")
    return float(eval_expr(e, {"A": np.asarray(A, dtype=float)})[0, 0])


def sentence_distinguishes(e: Expr, G, H, tol: float = 1e-9) -> bool:
    """True iff the sentence evaluates differently (beyond tol) on G and H."""
    return abs(eval_sentence(e, G.adjacency) - eval_sentence(e, H.adjacency)) > tol


# ---------------------------------------------------------------------------
# Sentence corpora for property tests


def sentence_corpus(
    base: str = "L1", max_depth: int = 4, limit: int = 500
) -> list[Expr]:
    """Enumerate shape-valid sentences of bounded depth in a fragment.

    Building blocks are the variable A, ones, matrix multiplication,
    transpose and diag; L2 adds trace and L3 adds hadamard. Enumeration is
    capped at `limit` sentences to bound test runtime.
    """
    # seed expressions keyed by abstract shape: "nn", "n1", "1n", "11"
    by_shape: dict[str, list[Expr]] = {
        "nn": [Var("A")],
        "n1": [Ones()],
        "1n": [],
        "11": [],
    }
    swap = {"nn": "nn", "n1": "1n", "1n": "n1", "11": "11"}

    def mul_shape(s1: str, s2: str) -> str | None:
        if s1[1] != s2[0]:
            return None
        return s1[0] + s2[1]

    seen = {repr(e) for shape in by_shape.values() for e in shape}
    for _ in range(max_depth):
        new: list[tuple[str, Expr]] = []
        snapshot = {k: list(v) for k, v in by_shape.items()}
        for s, exprs in snapshot.items():
            for e in exprs:
                new.append((swap[s], Transpose(e)))
                if s == "n1":
                    new.append(("nn", Diag(e)))
                if s == "nn" and base in ("L2", "L3"):
                    new.append(("11", Trace(e)))
        for s1, exprs1 in snapshot.items():
            for s2, exprs2 in snapshot.items():
                s = mul_shape(s1, s2)
                if s is None:
                    continue
                for e1 in exprs1:
                    for e2 in exprs2:
                        new.append((s, MatMul(e1, e2)))
                if s1 == s2 and base == "L3":
                    for e1 in exprs1:
                        for e2 in exprs2:
                            new.append((s1, Hadamard(e1, e2)))
        for s, e in new:
            key = repr(e)
            if key not in seen and len(by_shape[s]) < 4 * limit:
                seen.add(key)
                by_shape[s].append(e)
        if len(by_shape["11"]) >= limit:
            break
    return by_shape["11"][:limit]
