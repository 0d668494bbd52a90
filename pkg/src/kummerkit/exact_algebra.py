"""
Exact arithmetic: prime fields F_p (p odd), univariate polynomials and
linear algebra over F_p or the rationals.

Nothing in here touches floating point. Matrices and polynomials are generic
over their coefficient type: either :class:`FieldElement` (all of one modulus)
or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidInput


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidInput(f"modulus must be an integer, got {p!r}")
    if p < 3 or not is_prime(p):
        raise InvalidInput(f"modulus must be an odd prime, got {p}")
    return p


class FieldElement:
    """Residue class ``value mod p`` for an odd prime ``p``. Immutable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_odd_prime(p)
        object.__setattr__(self, "value", int(value) % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def _raw(cls, value, p):
        obj = object.__new__(cls)
        object.__setattr__(obj, "value", value)
        object.__setattr__(obj, "p", p)
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise InvalidInput(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement._raw(-self.value % self.p, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FieldElement._raw(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement._raw(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement._raw(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class PrimeField:
    """Convenience factory for elements of F_p."""

    def __init__(self, p: int):
        self.p = check_odd_prime(p)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.p != self.p:
                raise InvalidInput(f"element of F_{value.p} used in F_{self.p}")
            return value
        if isinstance(value, Fraction):
            return FieldElement(value.numerator, self.p) / value.denominator
        return FieldElement(value, self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement._raw(0, self.p)

    @property
    def one(self) -> FieldElement:
        return FieldElement._raw(1, self.p)

    def elements(self):
        return (FieldElement._raw(v, self.p) for v in range(self.p))

    def least_nonsquare(self) -> int:
        return least_nonsquare(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


def legendre_symbol(a: FieldElement) -> int:
    """Euler's criterion: +1 nonzero square, 0 for zero, -1 otherwise."""
    if a.value == 0:
        return 0
    return 1 if pow(a.value, (a.p - 1) // 2, a.p) == 1 else -1


@lru_cache(maxsize=None)
def least_nonsquare(p: int) -> int:
    check_odd_prime(p)
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    return c


def sqrt_mod(a: FieldElement) -> FieldElement | None:
    """A square root of ``a`` in F_p (Tonelli-Shanks), or None."""
    p = a.p
    v = a.value
    if v == 0:
        return FieldElement._raw(0, p)
    if pow(v, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonsquare(p)
    m, c, t, r = s, pow(z, q, p), pow(v, q, p), pow(v, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return FieldElement._raw(r, p)


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------

def _is_zero(c) -> bool:
    return not c


class UniPoly:
    """Univariate polynomial with ascending coefficients.

    Coefficients are FieldElements of a single modulus, or Fractions. The
    zero polynomial has degree -1 (standing in for minus infinity).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def over(cls, p: int, ints: Iterable[int]) -> "UniPoly":
        F = GF(p)
        return cls(F(c) for c in ints)

    @classmethod
    def monomial(cls, coeff, n: int) -> "UniPoly":
        zero = coeff * 0
        return cls([zero] * n + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else None

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def _zero_like(self, other=None):
        for poly in (self, other):
            if poly is not None and poly.coeffs:
                return poly.coeffs[0] * 0
        return 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        zero = self._zero_like(other)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = self._zero_like() if not isinstance(x, (FieldElement, Fraction)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return UniPoly([c * inv for c in self.coeffs])

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead
        zero = self._zero_like(other)
        if len(rem) - 1 < dq:
            return UniPoly([]), self
        quot = [zero] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if _is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def is_constant(self) -> bool:
        return self.degree <= 0


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    one = UniPoly([mod.lead * 0 + 1])
    result, b = one % mod, base % mod
    while e:
        if e & 1:
            result = (result * b) % mod
        b = (b * b) % mod
        e >>= 1
    return result


def _pth_root(f: UniPoly, p: int) -> UniPoly:
    # over F_p, a^p = a, so the p-th root of sum c_i x^(p i) is sum c_i x^i
    return UniPoly(f.coeffs[::p])


def squarefree_decomposition(f: UniPoly) -> dict[int, UniPoly]:
    """Square-free factorization over F_p.

    Returns ``{i: g_i}`` with each ``g_i`` monic, square-free, pairwise
    coprime and ``f = lead * prod g_i**i``. Handles the characteristic-p
    case where ``f' = 0``.
    """
    if f.is_zero():
        raise InvalidInput("square-free decomposition of the zero polynomial")
    p = f.lead.p
    out: dict[int, UniPoly] = {}

    def rec(g: UniPoly, scale: int):
        if g.degree <= 0:
            return
        dg = g.derivative()
        if dg.is_zero():
            rec(_pth_root(g, p), scale * p)
            return
        c = poly_gcd(g, dg)
        w = g // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                key = i * scale
                out[key] = (out[key] * z).monic() if key in out else z.monic()
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            rec(_pth_root(c, p), scale * p)

    rec(f.monic(), 1)
    return out


def is_squarefree(f: UniPoly) -> bool:
    return f.degree >= 0 and poly_gcd(f, f.derivative()).degree == 0


def roots_mod_p(f: UniPoly) -> list[tuple[FieldElement, int]]:
    """All roots in F_p with multiplicities, by exhaustive evaluation."""
    if f.is_zero():
        raise InvalidInput("roots of the zero polynomial")
    p = f.lead.p
    F = GF(p)
    out = []
    for x in F.elements():
        if f(x) == 0:
            lin = UniPoly([-x, F.one])
            g, mult = f, 0
            while True:
                q, r = g.divmod(lin)
                if not r.is_zero():
                    break
                g, mult = q, mult + 1
            out.append((x, mult))
    return out


def parse_poly(text: str, p: int | None = None) -> UniPoly:
    """Parse ascending comma-separated integer coefficients, e.g. "0,1,0,0,0,1"."""
    try:
        ints = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise InvalidInput(f"bad polynomial text {text!r}") from exc
    if p is None:
        return UniPoly(Fraction(c) for c in ints)
    return UniPoly.over(p, ints)


def format_poly(f: UniPoly) -> str:
    return ",".join(str(int(c)) if isinstance(c, FieldElement) else fraction_str(c)
                    for c in f.coeffs)


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------

def to_exact(x):
    if isinstance(x, (FieldElement, Fraction)):
        return x
    if isinstance(x, bool):
        raise InvalidInput("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise InvalidInput(f"bad rational {x!r}") from exc
    raise InvalidInput(f"inexact or unsupported entry {x!r}")


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    """Dense row-major matrix of exact entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        rs = tuple(tuple(to_exact(x) for x in row) for row in rows)
        if ncols is None:
            if not rs:
                raise InvalidInput("empty matrix needs an explicit column count")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise InvalidInput("matrix is not rectangular")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @property
    def dims(self):
        return self.nrows, self.ncols

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise InvalidInput("matrix JSON must be an array of arrays")
        return cls(data)

    def to_json(self) -> str:
        return json.dumps([[_entry_json(x) for x in r] for r in self.rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _zero(self):
        for r in self.rows:
            for x in r:
                return x * 0
        return Fraction(0)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise InvalidInput("vector length does not match column count")
        zero = self._zero()
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.rows)] if self.nrows
                           else [[] for _ in range(self.ncols)], self.nrows)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            piv = next((i for i in range(row, self.nrows) if m[i][col]), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for i in range(self.nrows):
                if i != row and m[i][col]:
                    c = m[i][col]
                    m[i] = [a - c * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[list]:
        m, pivots = self.rref()
        return _kernel_from_rref(m, pivots, self.ncols, self._zero())

    def determinant(self):
        if self.nrows != self.ncols:
            raise InvalidInput("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = self._zero() + 1
        for col in range(n):
            piv = next((i for i in range(col, n) if m[i][col]), None)
            if piv is None:
                return det * 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv = 1 / m[col][col]
            for i in range(col + 1, n):
                if m[i][col]:
                    c = m[i][col] * inv
                    m[i] = [a - c * b for a, b in zip(m[i], m[col])]
        return det


def _entry_json(x):
    if isinstance(x, FieldElement):
        return x.value
    return fraction_str(x)


def _kernel_from_rref(m, pivots, ncols, zero):
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve_exact(M: ExactMatrix, v: Sequence):
    """Solve ``M x = v`` exactly.

    Returns ``(x, kernel)``. ``x`` is a particular solution (free variables
    set to zero) or None when the system is inconsistent; ``kernel`` is a
    basis of the null space of ``M`` either way.
    """
    if len(v) != M.nrows:
        raise InvalidInput(f"right-hand side has length {len(v)}, expected {M.nrows}")
    vv = [to_exact(x) for x in v]
    aug = ExactMatrix([list(r) + [b] for r, b in zip(M.rows, vv)], M.ncols + 1)
    m, pivots = aug.rref()
    zero = M._zero() if M.nrows else Fraction(0)
    if M.ncols in pivots:
        x = None
    else:
        x = [zero] * M.ncols
        for i, pc in enumerate(pivots):
            x[pc] = m[i][M.ncols]
    coef_pivots = [c for c in pivots if c < M.ncols]
    kernel = _kernel_from_rref(m, coef_pivots, M.ncols, zero)
    return x, kernel
