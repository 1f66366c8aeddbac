# -*- coding: utf-8 -*-
"""
PolyCore
- 输入: 多项式系统文本（variables: 头 + 每行一个多项式），或直接构造的稀疏项表
- 输出: PolynomialSystem（求值 / Jacobian / 平方和 / 齐次化）
- 表示: 稀疏字典 {指数向量: 复系数}，不存零系数；零多项式 degree = -1
- 求值: 编译成“单项式表 + scipy.sparse 系数矩阵”，Jacobian 的导数表首次使用时编译并缓存
"""

from __future__ import annotations

import re
from numbers import Number
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

Exponents = Tuple[int, ...]


class PolynomialError(ValueError):
    pass


class DimensionError(PolynomialError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class UndeclaredVariableError(ParseError):
    pass


# =======================
# Polynomial
# =======================
class Polynomial:
    """稀疏多元多项式。构造后视为不可变（所有运算返回新对象）。"""

    __slots__ = ("nvars", "terms")
    # numpy 标量在左侧时交给 __rmul__ / __radd__
    __array_ufunc__ = None

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], complex]] = None):
        self.nvars = int(nvars)
        collected: Dict[Exponents, complex] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != self.nvars:
                raise DimensionError(f"exponent vector {key} does not have length {self.nvars}")
            if any(e < 0 for e in key):
                raise PolynomialError(f"negative exponent in {key}")
            collected[key] = collected.get(key, 0j) + complex(coeff)
        self.terms: Dict[Exponents, complex] = {e: c for e, c in collected.items() if c != 0}

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, complex]) -> "Polynomial":
        # 内部快捷构造：调用方保证 terms 已合并且无零系数
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.terms = terms
        return poly

    @classmethod
    def constant(cls, nvars: int, value: complex) -> "Polynomial":
        value = complex(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value != 0 else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): 1 + 0j})

    @classmethod
    def linear(cls, coefficients: Sequence[complex], constant: complex = 0) -> "Polynomial":
        """a·x + c，系数向量长度即变量个数。"""
        nvars = len(coefficients)
        terms: Dict[Exponents, complex] = {}
        for k, a in enumerate(coefficients):
            if a != 0:
                exps = [0] * nvars
                exps[k] = 1
                terms[tuple(exps)] = complex(a)
        if constant != 0:
            terms[(0,) * nvars] = complex(constant)
        return cls._raw(nvars, terms)

    # ---------- 基本性质 ----------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def group_degree(self, group: Iterable[int]) -> int:
        group = tuple(group)
        if not self.terms:
            return -1
        return max(sum(e[j] for j in group) for e in self.terms)

    def sorted_terms(self) -> List[Tuple[Exponents, complex]]:
        """graded lex：总次数降序，再按声明变量顺序的字典序降序。"""
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])))

    # ---------- 算术 ----------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, Number):
            return Polynomial.constant(self.nvars, complex(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0j) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[Exponents, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0j) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in terms.items() if c != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if other.degree() > 0:
                raise PolynomialError("division by a non-constant polynomial")
            other = other.terms.get((0,) * other.nvars, 0j)
        if not isinstance(other, Number) or other == 0:
            raise PolynomialError("division by zero")
        return Polynomial._raw(self.nvars, {e: c / complex(other) for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Number):
            other = Polynomial.constant(self.nvars, complex(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # ---------- 微分 / 求值 / 代入 ----------
    def diff(self, index: int) -> "Polynomial":
        terms: Dict[Exponents, complex] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                lowered = e[:index] + (k - 1,) + e[index + 1:]
                terms[lowered] = terms.get(lowered, 0j) + k * c
        return Polynomial._raw(self.nvars, terms)

    def evaluate(self, point: Sequence[complex]) -> complex:
        if len(point) != self.nvars:
            raise DimensionError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0j
        for e, c in self.terms.items():
            value = c
            for x, k in zip(point, e):
                if k:
                    value *= x ** k
            total += value
        return total

    def specialize(self, index: int, value: complex) -> "Polynomial":
        """把第 index 个变量代入 value，并移除该变量。"""
        terms: Dict[Exponents, complex] = {}
        for e, c in self.terms.items():
            k = e[index]
            rest = e[:index] + e[index + 1:]
            terms[rest] = terms.get(rest, 0j) + c * (complex(value) ** k if k else 1)
        return Polynomial._raw(self.nvars - 1, {e: c for e, c in terms.items() if c != 0})

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """变量 i 映射到新变量表中的 positions[i]（扩充或重排）。"""
        if len(positions) != self.nvars:
            raise DimensionError("positions must list one slot per variable")
        terms: Dict[Exponents, complex] = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for k, p in zip(e, positions):
                new[p] += k
            terms[tuple(new)] = c
        return Polynomial._raw(nvars, terms)

    def homogenize(self, group: Sequence[int], target: int) -> "Polynomial":
        """对 group 齐次化，齐次化变量占第 target 个槽位（该槽位不属于 group）。"""
        if target in group:
            raise PolynomialError("homogenizing slot must lie outside the group")
        if not self.terms:
            return self
        top = self.group_degree(group)
        terms: Dict[Exponents, complex] = {}
        for e, c in self.terms.items():
            pad = top - sum(e[j] for j in group)
            new = list(e)
            new[target] += pad
            key = tuple(new)
            terms[key] = terms.get(key, 0j) + c
        return Polynomial._raw(self.nvars, terms)

    # ---------- 打印 ----------
    def to_text(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for e, c in self.sorted_terms():
            monomial = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            sign, body = _format_coefficient(c, bool(monomial))
            if monomial:
                body = f"{body}*{monomial}" if body else monomial
            if not pieces:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __repr__(self):
        names = [f"x{k + 1}" for k in range(self.nvars)]
        return f"Polynomial({self.to_text(names)!r}, nvars={self.nvars})"


def _format_coefficient(c: complex, has_monomial: bool) -> Tuple[str, str]:
    """返回 (符号, 系数文本)；系数为 ±1 且有单项式时系数文本为空。"""
    if c.imag == 0:
        re_part = c.real
        sign = "-" if re_part < 0 else "+"
        magnitude = abs(re_part)
        if has_monomial and magnitude == 1:
            return sign, ""
        return sign, repr(magnitude)
    if c.real == 0:
        sign = "-" if c.imag < 0 else "+"
        return sign, f"{abs(c.imag)!r}*i"
    joiner = "-" if c.imag < 0 else "+"
    return "+", f"({c.real!r}{joiner}{abs(c.imag)!r}*i)"


# =======================
# 编译后的求值表
# =======================
class _CompiledPolynomials:
    """一组多项式的联合单项式表：值 = 系数矩阵 @ 单项式向量。"""

    def __init__(self, polynomials: Sequence[Polynomial], nvars: int):
        index: Dict[Exponents, int] = {}
        rows: List[int] = []
        cols: List[int] = []
        vals: List[complex] = []
        for i, p in enumerate(polynomials):
            for exps, coeff in p.terms.items():
                j = index.setdefault(exps, len(index))
                rows.append(i)
                cols.append(j)
                vals.append(coeff)
        self.nvars = nvars
        self.exponents = np.zeros((len(index), nvars), dtype=np.intp)
        for exps, j in index.items():
            self.exponents[j] = exps
        self.max_degree = int(self.exponents.max()) if self.exponents.size else 0
        self.matrix = sparse.csr_matrix(
            (np.asarray(vals, dtype=complex), (np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))),
            shape=(len(polynomials), len(index)),
        )
        self._columns = np.arange(nvars)
        self._orders = np.arange(self.max_degree + 1)

    def __call__(self, point: np.ndarray) -> np.ndarray:
        powers = point[:, None] ** self._orders
        monomials = powers[self._columns, self.exponents].prod(axis=1)
        return self.matrix @ monomials


# =======================
# PolynomialSystem
# =======================
class PolynomialSystem:
    """有序变量表 + 有序多项式表；构造后不可变，可被并发读。"""

    def __init__(self, variables: Sequence[str], polynomials: Sequence[Polynomial]):
        self.variables: Tuple[str, ...] = tuple(variables)
        self.polynomials: Tuple[Polynomial, ...] = tuple(polynomials)
        if len(set(self.variables)) != len(self.variables):
            raise PolynomialError(f"duplicate variable names in {self.variables}")
        for k, p in enumerate(self.polynomials):
            if p.nvars != len(self.variables):
                raise DimensionError(
                    f"polynomial {k} has {p.nvars} variables, system declares {len(self.variables)}"
                )
        self._values: Optional[_CompiledPolynomials] = None
        self._derivatives: Optional[_CompiledPolynomials] = None
        self._gradients: Optional[Tuple[Tuple[Polynomial, ...], ...]] = None

    @property
    def N(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        return len(self.polynomials)

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polynomials)

    def __getitem__(self, k: int) -> Polynomial:
        return self.polynomials[k]

    def degrees(self) -> List[int]:
        return [p.degree() for p in self.polynomials]

    @property
    def gradients(self) -> Tuple[Tuple[Polynomial, ...], ...]:
        """∇fᵢ，符号求导一次后缓存。"""
        if self._gradients is None:
            self._gradients = tuple(
                tuple(p.diff(j) for j in range(self.N)) for p in self.polynomials
            )
        return self._gradients

    def compile(self) -> "PolynomialSystem":
        """预编译值表与导数表（进程池分发前调用，避免每个 worker 重复编译）。"""
        if self._values is None:
            self._values = _CompiledPolynomials(self.polynomials, self.N)
        if self._derivatives is None:
            flat = [d for row in self.gradients for d in row]
            self._derivatives = _CompiledPolynomials(flat, self.N)
        return self

    def _point(self, point) -> np.ndarray:
        x = np.asarray(point, dtype=complex).reshape(-1)
        if x.shape[0] != self.N:
            raise DimensionError(f"point has length {x.shape[0]}, system has {self.N} variables")
        return x

    def evaluate(self, point) -> np.ndarray:
        x = self._point(point)
        if self._values is None:
            self._values = _CompiledPolynomials(self.polynomials, self.N)
        return np.asarray(self._values(x)).reshape(self.n)

    def jacobian(self, point) -> np.ndarray:
        x = self._point(point)
        if self._derivatives is None:
            self.compile()
        return np.asarray(self._derivatives(x)).reshape(self.n, self.N)

    def specialize(self, name: str, value: complex) -> "PolynomialSystem":
        index = self.variables.index(name)
        names = self.variables[:index] + self.variables[index + 1:]
        return PolynomialSystem(names, [p.specialize(index, value) for p in self.polynomials])

    def to_text(self) -> str:
        lines = ["variables: " + " ".join(self.variables)]
        lines.extend(p.to_text(self.variables) for p in self.polynomials)
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, PolynomialSystem):
            return NotImplemented
        return self.variables == other.variables and self.polynomials == other.polynomials

    def __hash__(self):
        return hash((self.variables, self.polynomials))

    def __repr__(self):
        return f"PolynomialSystem(N={self.N}, n={self.n}, variables={list(self.variables)})"


# =======================
# 模块级操作
# =======================
def evaluate(system: PolynomialSystem, point) -> np.ndarray:
    return system.evaluate(point)


def jacobian(system: PolynomialSystem, point) -> np.ndarray:
    return system.jacobian(point)


def sum_of_squares(system: PolynomialSystem) -> PolynomialSystem:
    """g = f₁² + ··· + fₙ²，作为单多项式系统返回。"""
    if system.n < 1:
        raise PolynomialError("sum of squares needs at least one polynomial")
    g = Polynomial.constant(system.N, 0)
    for p in system.polynomials:
        g = g + p * p
    return PolynomialSystem(system.variables, [g])


def fresh_name(taken: Sequence[str], stem: str) -> str:
    if stem not in taken:
        return stem
    k = 0
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def homogenize(system: PolynomialSystem, group: Sequence, name: str = "h") -> PolynomialSystem:
    """对变量组加一个新的齐次化变量（追加在变量表末尾）。group 可给下标或变量名。"""
    indices = [system.variables.index(g) if isinstance(g, str) else int(g) for g in group]
    if not indices:
        raise PolynomialError("homogenizing group must be nonempty")
    target = system.N
    positions = list(range(system.N))
    polys = [p.embed(system.N + 1, positions).homogenize(indices, target) for p in system.polynomials]
    return PolynomialSystem(system.variables + (fresh_name(system.variables, name),), polys)


def dehomogenize(system: PolynomialSystem, name: str) -> PolynomialSystem:
    return system.specialize(name, 1)


def format_system(system: PolynomialSystem) -> str:
    return system.to_text()


# =======================
# 解析
# =======================
_TOKEN_RE = re.compile(
    r"""
    (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
  | (?P<sep>;)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
    """,
    re.VERBOSE,
)

_BINARY = {"+", "-", "*", "/", "^"}


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str) -> List[List[_Token]]:
    """切分成语句：';' 或括号外、且不紧跟二元运算符的换行结束一条语句。"""
    statements: List[List[_Token]] = [[]]
    line, line_start, pos, depth = 1, 0, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        chunk = m.group()
        pos = m.end()
        if kind == "newline":
            current = statements[-1]
            continues = depth > 0 or (current and current[-1].kind == "op" and current[-1].text in _BINARY)
            if current and current[0].kind == "name" and current[0].text == "variables":
                continues = False
            if not continues and current:
                statements.append([])
            line += 1
            line_start = pos
            continue
        if kind in ("space", "comment"):
            continue
        if kind == "sep":
            if statements[-1]:
                statements.append([])
            continue
        if chunk == "(":
            depth += 1
        elif chunk == ")":
            depth = max(depth - 1, 0)
        statements[-1].append(_Token(kind, chunk, line, column))
    return [s for s in statements if s]


class _ExpressionParser:
    """expr := term (('+'|'-') term)*；term := unary (('*'|'/') unary)*；
    unary := ('+'|'-') unary | power；power := atom ('^' INTEGER)?；atom := NUMBER | NAME | '(' expr ')'"""

    def __init__(self, tokens: List[_Token], names: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = {name: k for k, name in enumerate(names)}
        self.nvars = len(names)

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, message: str, token: Optional[_Token] = None) -> ParseError:
        token = token or self._peek() or self.tokens[-1]
        return ParseError(message, token.line, token.column)

    def parse(self) -> Polynomial:
        poly = self._expr()
        token = self._peek()
        if token is not None:
            raise self._error(f"unexpected {token.text!r}", token)
        return poly

    def _expr(self) -> Polynomial:
        poly = self._term()
        while (token := self._peek()) is not None and token.text in ("+", "-"):
            self.pos += 1
            rhs = self._term()
            poly = poly + rhs if token.text == "+" else poly - rhs
        return poly

    def _term(self) -> Polynomial:
        poly = self._unary()
        while (token := self._peek()) is not None and token.text in ("*", "/"):
            self.pos += 1
            rhs = self._unary()
            if token.text == "*":
                poly = poly * rhs
            else:
                if rhs.degree() > 0:
                    raise self._error("division is only allowed by a constant", token)
                if rhs.is_zero():
                    raise self._error("division by zero", token)
                poly = poly / rhs
        return poly

    def _unary(self) -> Polynomial:
        token = self._peek()
        if token is not None and token.text in ("+", "-"):
            self.pos += 1
            inner = self._unary()
            return -inner if token.text == "-" else inner
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        token = self._peek()
        if token is not None and token.text == "^":
            self.pos += 1
            exponent = self._peek()
            if exponent is None or exponent.kind != "number" or not exponent.text.isdigit():
                raise self._error("exponent must be a nonnegative integer literal", exponent)
            self.pos += 1
            base = base ** int(exponent.text)
        return base

    def _atom(self) -> Polynomial:
        token = self._peek()
        if token is None:
            raise self._error("unexpected end of expression")
        self.pos += 1
        if token.kind == "number":
            poly = Polynomial.constant(self.nvars, float(token.text))
        elif token.kind == "name":
            if token.text == "i":
                poly = Polynomial.constant(self.nvars, 1j)
            elif token.text in self.names:
                poly = Polynomial.variable(self.nvars, self.names[token.text])
            else:
                raise UndeclaredVariableError(f"undeclared variable {token.text!r}", token.line, token.column)
        elif token.text == "(":
            poly = self._expr()
            closing = self._peek()
            if closing is None or closing.text != ")":
                raise self._error("expected ')'", closing)
            self.pos += 1
        else:
            raise self._error(f"unexpected {token.text!r}", token)
        # 禁止并置：数字/变量/右括号后不能紧跟数字、变量或左括号
        follower = self._peek()
        if follower is not None and (follower.kind in ("number", "name") or follower.text == "("):
            raise self._error(f"missing operator before {follower.text!r}", follower)
        return poly


def _parse_header(tokens: List[_Token]) -> List[str]:
    head = tokens[0]
    if head.kind != "name" or head.text != "variables":
        raise ParseError("system must start with 'variables:'", head.line, head.column)
    rest = tokens[1:]
    names = [t.text for t in rest]
    for t in rest:
        if t.kind != "name":
            raise ParseError(f"invalid variable name {t.text!r}", t.line, t.column)
        if t.text == "i":
            raise ParseError("'i' is reserved for the imaginary unit", t.line, t.column)
    if not names:
        raise ParseError("no variables declared", head.line, head.column)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable in header", head.line, head.column)
    return names


def parse_system(text: str) -> PolynomialSystem:
    """解析系统文件文本；变量按声明顺序，多项式按行序。"""
    # 头部的 ':' 先替换成空格（保持列号不变），其余位置出现 ':' 视为语法错误
    m = re.match(r"\s*(?:#[^\n]*\n\s*)*variables\s*:", text)
    if m is None:
        stripped = text.lstrip()
        if not stripped or all(
            not line.strip() or line.strip().startswith("#") for line in text.splitlines()
        ):
            raise ParseError("empty system")
        line = text[: len(text) - len(stripped)].count("\n") + 1
        raise ParseError("system must start with 'variables:'", line, 1)
    colon = m.end() - 1
    text = text[:colon] + " " + text[colon + 1:]
    statements = _tokenize(text)
    names = _parse_header(statements[0])
    if len(statements) < 2:
        raise ParseError("empty system: no polynomials after the header")
    polys = [_ExpressionParser(tokens, names).parse() for tokens in statements[1:]]
    return PolynomialSystem(names, polys)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    statements = _tokenize(text)
    if len(statements) != 1:
        raise ParseError("expected exactly one polynomial expression")
    return _ExpressionParser(statements[0], variables).parse()
