"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/L)).

Every form value -cos(pi/m) of a Coxeter matrix with finite labels m
lies in Q(c) with c = 2cos(pi/L), L the lcm of the labels >= 3, because
2cos(k x) is an integer polynomial in 2cos(x).  Elements are stored as
rational coefficient vectors in the power basis 1, c, ..., c^(d-1).

Signs are decided exactly: zero by the coefficient vector, nonzero signs
by interval evaluation on a rational isolating interval of c that is
refined by bisection until the result excludes zero.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldContext",
    "FieldElem",
    "FieldError",
    "FieldTooSmallError",
    "INF",
    "make_context",
    "form_entry",
    "arith",
    "sign_of",
    "cyclotomic_polynomial",
    "chebyshev_c",
]

INF = math.inf

Number = Union[int, Fraction]

_CACHE_LIMIT = 200_000  # entries per memo table before it is flushed


def _q(x):
    # integral values are kept as int, which is much faster than Fraction
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class FieldError(ArithmeticError):
    """Raised on invalid field operations (context mismatch, bad input)."""


class FieldTooSmallError(FieldError):
    """Raised when a requested cosine does not live in the context's field."""


# --- integer polynomial helpers (coefficient lists, lowest degree first) ---

def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if len(b) == 1 and b[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = r[k + len(b) - 1] / lead
        q[k] = coef
        if coef:
            for j, y in enumerate(b):
                r[k + j] -= coef * y
    r = _trim(r[: len(b) - 1] or [Fraction(0)])
    return _trim(q), r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert rem == [0]
    return tuple(int(x) for x in num)


@lru_cache(maxsize=None)
def chebyshev_c(k: int) -> tuple[int, ...]:
    """Coefficients of C_k with C_k(z + 1/z) = z^k + z^-k (C_0 = 2)."""
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    prev, cur = [2], [0, 1]
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, x in enumerate(prev):
            nxt[i] -= x
        prev, cur = cur, nxt
    return tuple(cur)


def _real_cyclotomic_minpoly(L: int) -> tuple[int, ...]:
    # Minimal polynomial of 2cos(pi/L) = zeta + zeta^-1 with zeta a primitive
    # 2L-th root of unity: substitute x = z + 1/z into Phi_{2L}.
    phi = cyclotomic_polynomial(2 * L)
    if len(phi) == 2:
        # Phi_2 = z + 1: 2cos(pi) = -2
        return (2, 1)
    half = (len(phi) - 1) // 2
    out = [phi[half]]
    for k in range(1, half + 1):
        ck = chebyshev_c(k)
        out += [0] * (len(ck) - len(out))
        for i, x in enumerate(ck):
            out[i] += phi[half + k] * x
    return tuple(_trim(out))


def _eval(p: Sequence, x):
    acc = 0
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


def _sturm_count(p: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    seq = [[Fraction(x) for x in p]]
    deriv = [Fraction(i * x) for i, x in enumerate(p)][1:] or [Fraction(0)]
    seq.append(_trim(deriv))
    while not (len(seq[-1]) == 1 and seq[-1][0] == 0):
        _, r = _poly_divmod(seq[-2], seq[-1])
        r = [-x for x in r]
        if len(r) == 1 and r[0] == 0:
            break
        seq.append(r)

    def changes(x):
        signs = [v for v in (_eval(q, x) for q in seq) if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    return changes(lo) - changes(hi)


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class FieldContext:
    """The field Q(c), c = 2cos(pi/level), with a refinable isolating interval.

    Contexts are interned by level, so equal levels give the same object and
    elements can be compared by context identity.
    """

    _registry: dict[int, "FieldContext"] = {}
    _registry_lock = threading.Lock()

    def __new__(cls, level: int):
        with cls._registry_lock:
            ctx = cls._registry.get(level)
            if ctx is None:
                ctx = super().__new__(cls)
                ctx._init(level)
                cls._registry[level] = ctx
        return ctx

    def _init(self, level: int) -> None:
        if level < 1:
            raise FieldError("level must be a positive integer")
        self.level = level
        self.minimal_polynomial = _real_cyclotomic_minpoly(level)
        self.degree = len(self.minimal_polynomial) - 1
        self._lock = threading.Lock()
        d = self.degree
        mp = self.minimal_polynomial
        # c^k for d <= k <= 2d-2 written in the power basis
        self._reduce_rows: list[tuple[Fraction, ...]] = []
        row = [-x for x in mp[:d]]  # c^d
        for _ in range(max(0, d - 1)):
            self._reduce_rows.append(tuple(row))
            top = row[-1]
            row = [0] + row[:-1]
            for i in range(d):
                row[i] += top * -mp[i]
        if d == 1:
            value = Fraction(-mp[0], mp[1])
            self.isolating_interval = (value, value)
        else:
            approx = Fraction(2 * math.cos(math.pi / level))
            eps = Fraction(1, 2**30)
            lo, hi = approx - eps, approx + eps
            if _sturm_count(mp, lo, hi) != 1 or _eval(mp, lo) * _eval(mp, hi) >= 0:
                raise FieldError(f"could not isolate 2cos(pi/{level})")
            self.isolating_interval = (lo, hi)
        self._power_cache: dict[tuple, list] = {}
        self._inverse_cache: dict[tuple, FieldElem] = {}
        self._mul_cache: dict[tuple, FieldElem] = {}
        self._sign_cache: dict[tuple, int] = {}
        self.zero = FieldElem(self, (0,) * d)
        self.one = FieldElem(self, (1,) + (0,) * (d - 1))
        self.gen = self._from_poly((0, 1))

    def __repr__(self) -> str:
        return f"FieldContext(level={self.level}, degree={self.degree})"

    def __reduce__(self):
        return (FieldContext, (self.level,))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # --- construction ---
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldError("context mismatch")
            return value
        if isinstance(value, (int, Fraction, str)):
            return FieldElem(self, (_q(Fraction(value)),) + (0,) * (self.degree - 1))
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def _from_poly(self, poly: Sequence) -> "FieldElem":
        return FieldElem(self, self._reduce([_q(Fraction(x)) for x in poly]))

    def _reduce(self, coeffs: list) -> tuple:
        d = self.degree
        if len(coeffs) <= d:
            return tuple(_q(x) for x in coeffs) + (0,) * (d - len(coeffs))
        if d == 1:
            c = self.isolating_interval[0]
            return (_q(_eval(coeffs, c)),)
        out = list(coeffs[:d])
        for k in range(d, len(coeffs)):
            a = coeffs[k]
            if a:
                row = self._reduce_rows[k - d]
                for i in range(d):
                    out[i] += a * row[i]
        return tuple(_q(x) for x in out)

    def cos_multiple(self, m: int) -> "FieldElem":
        """2cos(pi/m) as a field element; raises if it is not in the field."""
        if m == 1:
            return self(-2)
        if m == 2:
            return self.zero
        if m == 3:
            return self.one
        if self.level % m:
            raise FieldTooSmallError(f"cos(pi/{m}) is not in Q(2cos(pi/{self.level}))")
        return self._from_poly(chebyshev_c(self.level // m))

    def contains_label(self, m) -> bool:
        return m == INF or m in (1, 2, 3) or (isinstance(m, int) and m > 0 and self.level % m == 0)

    def sqrt(self, n: int) -> "FieldElem":
        """sqrt(2), sqrt(3) or sqrt(6) when the field holds them."""
        if n == 2:
            return self.cos_multiple(4)
        if n == 3:
            return self.cos_multiple(6)
        if n == 6:
            return self.cos_multiple(4) * self.cos_multiple(6)
        raise FieldError(f"sqrt({n}) is not supported")

    # --- isolating interval ---
    def refine(self, halvings: int = 16) -> tuple[Fraction, Fraction]:
        """Halve the isolating interval `halvings` times (thread safe, monotone)."""
        if self.degree == 1:
            return self.isolating_interval
        mp = self.minimal_polynomial
        with self._lock:
            lo, hi = self.isolating_interval
            slo = _eval(mp, lo) > 0
            for _ in range(halvings):
                mid = (lo + hi) / 2
                v = _eval(mp, mid)
                if v == 0:
                    lo = hi = mid
                    break
                if (v > 0) == slo:
                    lo = mid
                else:
                    hi = mid
            self.isolating_interval = (lo, hi)
        return lo, hi

    def _power_intervals(self, interval) -> list:
        cached = self._power_cache.get(interval)
        if cached is None:
            lo, hi = interval
            # c >= sqrt(2) > 0 whenever the degree exceeds one
            cached = [(lo**k, hi**k) for k in range(self.degree)]
            self._power_cache = {interval: cached}
        return cached

    def interval_of(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        if self.degree == 1:
            return coeffs[0], coeffs[0]
        powers = self._power_intervals(self.isolating_interval)
        lo = hi = Fraction(0)
        for a, (plo, phi) in zip(coeffs, powers):
            if a > 0:
                lo += a * plo
                hi += a * phi
            elif a < 0:
                lo += a * phi
                hi += a * plo
        return lo, hi

    def embed(self, x: "FieldElem") -> float:
        c = 2 * math.cos(math.pi / self.level)
        return float(sum(float(a) * c**k for k, a in enumerate(x.coeffs)))


class FieldElem:
    """An immutable element of a FieldContext."""

    __slots__ = ("ctx", "coeffs", "_sign", "_hash")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs
        self._sign = None
        self._hash = None

    # --- coercion ---
    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx(other)
        return NotImplemented

    # --- arithmetic ---
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, tuple(_q(a + b) for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, tuple(_q(a - b) for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElem(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.ctx, tuple(_q(a * other) for a in self.coeffs))
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if self.ctx.degree == 1:
            return FieldElem(self.ctx, (_q(a[0] * b[0]),))
        if not any(b[1:]):
            k = b[0]
            return FieldElem(self.ctx, tuple(_q(x * k) for x in a)) if k else self.ctx.zero
        if not any(a[1:]):
            k = a[0]
            return FieldElem(self.ctx, tuple(_q(y * k) for y in b)) if k else self.ctx.zero
        cache = self.ctx._mul_cache
        hit = cache.get((a, b))
        if hit is not None:
            return hit
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = FieldElem(self.ctx, self.ctx._reduce(prod))
        if len(cache) > _CACHE_LIMIT:
            cache.clear()
        cache[(a, b)] = out
        return out

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        if self.ctx.degree == 1:
            return FieldElem(self.ctx, (_q(1 / Fraction(self.coeffs[0])),))
        cache = self.ctx._inverse_cache
        hit = cache.get(self.coeffs)
        if hit is not None:
            return hit
        if not any(self.coeffs[1:]):
            inv = self.ctx(1 / Fraction(self.coeffs[0]))
            cache[self.coeffs] = inv
            return inv
        # extended Euclid on (minpoly, self) over Q
        r0 = [Fraction(x) for x in self.ctx.minimal_polynomial]
        r1 = _trim(list(self.coeffs))
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1 and r1[0] == 0):
            q, r = _poly_divmod(r0, r1)
            qt = _poly_mul(q, t1)
            n = max(len(t0), len(qt))
            t2 = [(t0[i] if i < len(t0) else 0) - (qt[i] if i < len(qt) else 0) for i in range(n)]
            r0, r1 = r1, r
            t0, t1 = t1, _trim(t2)
        # r0 is a nonzero constant gcd
        g = r0[0]
        inv = self.ctx._from_poly([x / g for x in t0])
        if len(cache) < 100_000:
            cache[self.coeffs] = inv
        return inv

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- comparison ---
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sign(self) -> int:
        s = self._sign
        if s is None:
            table = self.ctx._sign_cache
            s = table.get(self.coeffs)
            if s is None:
                s = _decide_sign(self)
                if len(table) > _CACHE_LIMIT:
                    table.clear()
                table[self.coeffs] = s
            self._sign = s
        return s

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if not any(self.coeffs[1:]):
                h = hash(self.coeffs[0])
            else:
                h = hash(self.coeffs)
            self._hash = h
        return h

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return self.ctx.embed(self)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is irrational")
        return Fraction(self.coeffs[0])

    def __repr__(self):
        return f"FieldElem({format_elem(self)})"

    def __str__(self):
        return format_elem(self)


def _decide_sign(x: FieldElem) -> int:
    if x.is_zero():
        return 0
    ctx = x.ctx
    if ctx.degree == 1:
        return 1 if x.coeffs[0] > 0 else -1
    while True:
        lo, hi = ctx.interval_of(x.coeffs)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        # the interval width shrinks with each refinement; nonzero x terminates
        ctx.refine(32)


# --- printing ---

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _surd_basis(ctx: FieldContext):
    # Rewrites c-polynomials over the familiar surd bases when available.
    L = ctx.level
    if L == 4:
        return [("", ctx.one), ("r2", ctx.sqrt(2))]
    if L == 6:
        return [("", ctx.one), ("r3", ctx.sqrt(3))]
    if L == 12:
        return [("", ctx.one), ("r2", ctx.sqrt(2)), ("r3", ctx.sqrt(3)), ("r6", ctx.sqrt(6))]
    return None


@lru_cache(maxsize=None)
def _surd_change_of_basis(level: int):
    from coxkit import linalg

    ctx = FieldContext(level)
    basis = _surd_basis(ctx)
    if basis is None:
        return None
    names = [n for n, _ in basis]
    # columns: surd basis vectors expressed in the power basis (rational)
    rows = [[ctx(b.coeffs[i]) for _, b in basis] for i in range(ctx.degree)]
    inv = linalg.inverse(rows, ctx)
    return names, inv


def format_elem(x: FieldElem) -> str:
    """Human readable exact form: rationals, r2/r3/r6 surds, or a polynomial in c."""
    ctx = x.ctx
    if x.is_rational():
        return _frac_str(x.coeffs[0])
    change = _surd_change_of_basis(ctx.level)
    if change is not None:
        names, inv = change
        coords = [sum((inv[i][j] * x.coeffs[j] for j in range(ctx.degree)), ctx.zero) for i in range(ctx.degree)]
        terms = [(c.as_fraction(), name) for c, name in zip(coords, names)]
    else:
        terms = [(a, "" if k == 0 else ("c" if k == 1 else f"c^{k}")) for k, a in enumerate(x.coeffs)]
    parts = []
    for a, name in terms:
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if name:
            body = name if mag == 1 else f"{_frac_str(mag)} {name}"
        else:
            body = _frac_str(mag)
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# --- operation-level API ---

def make_context(finite_labels: Iterable) -> FieldContext:
    """Smallest context Q(2cos(pi/L)) holding cos(pi/m) for every finite label m."""
    labels = []
    for m in finite_labels:
        if m == INF:
            continue
        if not isinstance(m, int) or m < 1:
            raise FieldError(f"invalid Coxeter label {m!r}")
        if m >= 3:
            labels.append(m)
    return FieldContext(_lcm(labels))


def form_entry(ctx: FieldContext, m) -> FieldElem:
    """The bilinear form value -cos(pi/m); 1 on the diagonal (m = 1), -1 at m = infinity."""
    if m == INF:
        return -ctx.one
    if m == 1:
        return ctx.one
    return ctx.cos_multiple(m) * Fraction(-1, 2)


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.ctx is not b.ctx:
        raise FieldError("context mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown operation {op!r}")


def sign_of(a: FieldElem) -> int:
    return a.sign()
