"""Finite fields F_{p^e} for odd p.

Elements are encoded as integers ``0 <= a < p**e``: the base-p digits of
``a`` (least significant first) are the coefficients of the residue
polynomial in the polynomial basis ``1, X, ..., X^{e-1}``.  The prime
subfield is therefore exactly ``range(p)``, and arithmetic on two
prime-field elements never touches a table.

Multiplication outside the prime field goes through log/exp tables built
lazily on first use.  Bulk work (point enumeration, codeword weights) uses
the ``*_arr`` numpy variants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import EvenCharacteristic, FieldTooLarge, NonPrime

ENUMERATION_LIMIT = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def check_characteristic(p: int) -> None:
    if p == 2:
        raise EvenCharacteristic("p must be an odd prime (characteristic 2 is not supported)")
    if not is_prime(p):
        raise NonPrime(f"p must be an odd prime, got {p}")


# -- univariate polynomials over F_p, coefficient lists low -> high ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] = (prod_[i + j] + ai * bj) % p
    return _poly_mod(prod_, f, p)


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    n = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) > n:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - n
        for k, fk in enumerate(f):
            a[shift + k] = (a[shift + k] - c * fk) % p
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_pk_mod(k: int, f: Sequence[int], p: int) -> list[int]:
    """X^(p^k) mod f by k successive p-th powerings."""
    r = _poly_mod([0, 1], f, p)
    for _ in range(k):
        acc = [1]
        base = r
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        r = acc
    return r


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` over F_p."""
    e = len(f) - 1
    if e <= 0:
        return False
    if e == 1:
        return True
    if _poly_mod(_x_pow_pk_mod(e, f, p), f, p) != _poly_mod([0, 1], f, p):
        return False
    for r in prime_factors(e):
        h = _x_pow_pk_mod(e // r, f, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        g = _poly_gcd(list(f), h, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e with the smallest integer encoding of
    its lower coefficients (constant term as least significant digit)."""
    if e == 1:
        return (0, 1)
    for n in range(p**e):
        low = [(n // p**k) % p for k in range(e)]
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # impossible for a field


@dataclass(frozen=True, eq=False)
class FieldContext:
    """The field F_{p^e} = F_p[X]/(modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]
    order: int = field(init=False)

    def __post_init__(self):
        check_characteristic(self.p)
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "order", self.p**self.e)

    def __repr__(self):
        return f"FieldContext(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other):
        return (isinstance(other, FieldContext) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(value))

    # -- encoding ----------------------------------------------------------
    def from_int(self, n: int) -> int:
        """Prime-field integer (any sign) to encoded element."""
        return n % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        cs = list(cs)
        if len(cs) > self.e:
            cs = _poly_mod([c % self.p for c in cs], self.modulus, self.p)
        n = 0
        for c in reversed(cs):
            n = n * self.p + c % self.p
        return n

    @property
    def gen(self) -> int:
        """The class of X."""
        return self.from_coeffs([0, 1])

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    # -- scalar arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if a < p and b < p:
            return (a + b) % p
        out, pw = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * pw
            pw *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if a < p:
            return (-a) % p
        out, pw = 0, 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * pw
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p = self.p
        if a < p and b < p:
            return a * b % p
        if a < p or b < p:
            s, v = (a, b) if a < p else (b, a)
            return self.from_coeffs([s * c for c in self.coeffs(v)])
        log, exp = self._tables
        return int(exp[(log[a] + log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if a < self.p:
            return pow(a, self.p - 2, self.p)
        log, exp = self._tables
        return int(exp[(-log[a]) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        if a < self.p:
            return pow(a, n % (self.p - 1), self.p)
        log, exp = self._tables
        return int(exp[(log[a] * n) % (self.order - 1)])

    def frobenius_p(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        if a < self.p:
            return a
        return self.pow(a, self.p ** (self.e - 1))

    # -- tables ------------------------------------------------------------
    def _mul_raw(self, a: int, b: int) -> int:
        return self.from_coeffs(
            _poly_mulmod(list(self.coeffs(a)), list(self.coeffs(b)), self.modulus, self.p))

    @cached_property
    def primitive_element(self) -> int:
        n = self.order - 1
        factors = prime_factors(n)

        def raw_pow(a, k):
            acc, base = 1, a
            while k:
                if k & 1:
                    acc = self._mul_raw(acc, base)
                base = self._mul_raw(base, base)
                k >>= 1
            return acc

        for g in range(2, self.order):
            if all(raw_pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("unit group has no generator")

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self.order > ENUMERATION_LIMIT:
            raise FieldTooLarge(f"log tables need p^e <= {ENUMERATION_LIMIT}, got {self.order}")
        n = self.order - 1
        g = self.primitive_element
        exp = np.zeros(n, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for k in range(n):
            exp[k] = v
            log[v] = k
            v = self._mul_raw(v, g)
        return log, exp

    @cached_property
    def _digit_table(self) -> np.ndarray:
        vals = np.arange(self.order, dtype=np.int64)
        return np.stack([(vals // self.p**k) % self.p for k in range(self.e)], axis=1)

    # -- vectorised arithmetic on encoded arrays ---------------------------
    def add_arr(self, a, b) -> np.ndarray:
        d = (self._digit_table[np.asarray(a)] + self._digit_table[np.asarray(b)]) % self.p
        return d @ (self.p ** np.arange(self.e, dtype=np.int64))

    def neg_arr(self, a) -> np.ndarray:
        d = (-self._digit_table[np.asarray(a)]) % self.p
        return d @ (self.p ** np.arange(self.e, dtype=np.int64))

    def mul_arr(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        log, exp = self._tables
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_arr(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        log, exp = self._tables
        out = exp[(log[a] * n) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    # -- enumeration -------------------------------------------------------
    def elements(self) -> Iterator[int]:
        """Every element once, in increasing encoding order."""
        if self.order > ENUMERATION_LIMIT:
            raise FieldTooLarge(f"refusing to enumerate {self.order} elements")
        return iter(range(self.order))

    def element_array(self) -> np.ndarray:
        if self.order > ENUMERATION_LIMIT:
            raise FieldTooLarge(f"refusing to enumerate {self.order} elements")
        return np.arange(self.order, dtype=np.int64)

    def format(self, a: int) -> str:
        if a < self.p:
            return str(a)
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs(a)))):
            if c:
                mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
                terms.append(mono if c == 1 and mono else f"{c}{'*' if mono else ''}{mono}")
        return "(" + " + ".join(terms) + ")"


def build_field(p: int, e: int) -> FieldContext:
    check_characteristic(p)
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    return FieldContext(p, e, smallest_irreducible(p, e))


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper pairing an encoded element with its field."""

    ctx: FieldContext
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                from .errors import ContextMismatch
                raise ContextMismatch("elements of different fields")
            return other.value
        return self.ctx.from_int(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return isinstance(other, FieldElement) and self.ctx == other.ctx and self.value == other.value

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __repr__(self):
        return self.ctx.format(self.value)


def frobenius_p(ctx: FieldContext, a: FieldElement | int):
    if isinstance(a, FieldElement):
        return FieldElement(ctx, ctx.frobenius_p(a.value))
    return ctx.frobenius_p(a)


def pth_root(ctx: FieldContext, a: FieldElement | int):
    if isinstance(a, FieldElement):
        return FieldElement(ctx, ctx.pth_root(a.value))
    return ctx.pth_root(a)


def enumerate_elements(ctx: FieldContext) -> list[FieldElement]:
    return [FieldElement(ctx, a) for a in ctx.elements()]


# -- exact linear algebra ---------------------------------------------------

def row_reduce(ctx: FieldContext, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = np.array(rows, dtype=np.int64) % p
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def matrix_rank(ctx: FieldContext, rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over the field by Gaussian elimination."""
    if not rows or not rows[0]:
        return 0
    if all(v < ctx.p for row in rows for v in row):
        return _rank_mod_p(rows, ctx.p)
    return len(row_reduce(ctx, rows)[1])

