"""Arithmetic in F_q = F_{p^a} with the power basis v_k = x^(k-1).

Elements are encoded as integers ``sum c_i p^i`` where ``c_i`` is the
coefficient of ``x^i``; :class:`FFElement` wraps a code together with its
field for operator-style use.  Addition and multiplication go through
lazily built ``q x q`` tables, which is plenty for the desk-scale fields
used here (q <= a few hundred).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, a)`` with ``q == p**a``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, rest = 0, q
    while rest % p == 0:
        rest //= p
        a += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a


# -- polynomials over F_p, coefficient tuples low-to-high --------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    num = _trim([x % p for x in num])
    dn = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) - 1 >= dn and num:
        shift = len(num) - 1 - dn
        coef = num[-1] * inv_lead % p
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - coef * d) % p
        _trim(num)
    return num


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(list(poly), low + (1,), p):
                return False
    return True


def least_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``a``.

    Coefficients are compared from ``x^(a-1)`` down to the constant term,
    so for (p, a) = (5, 2) this is x^2 + 2.
    """
    for high_to_low in itertools.product(range(p), repeat=a):
        poly = tuple(reversed(high_to_low)) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteField:
    """F_{p^a} = F_p[x]/(modulus) with basis v_k = x^(k-1), v_1 = 1."""

    p: int
    a: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.a < 1:
            raise ValueError("degree a must be >= 1")
        if len(self.modulus) != self.a + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree a")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "q", self.p ** self.a)

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FiniteField(p={self.p}, a={self.a}, modulus={list(self.modulus)})"

    # encoding ---------------------------------------------------------------
    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.a:
            coeffs = _polymod(coeffs, self.modulus, self.p)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + (int(c) % self.p)
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.a):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    # tables -----------------------------------------------------------------
    @cached_property
    def _coeff_array(self) -> np.ndarray:
        return np.array([self.decode(c) for c in range(self.q)], dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        C = self._coeff_array
        S = (C[:, None, :] + C[None, :, :]) % self.p
        weights = self.p ** np.arange(self.a, dtype=np.int64)
        return (S * weights).sum(axis=2)

    @cached_property
    def neg_table(self) -> np.ndarray:
        C = (-self._coeff_array) % self.p
        return (C * self.p ** np.arange(self.a, dtype=np.int64)).sum(axis=1)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q, p = self.q, self.p
        table = np.zeros((q, q), dtype=np.int64)
        coeffs = [self.decode(c) for c in range(q)]
        for i in range(q):
            for j in range(i, q):
                prod = np.convolve(coeffs[i], coeffs[j]).tolist()
                table[i, j] = table[j, i] = self.encode(_polymod(prod, self.modulus, p))
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    # elements ---------------------------------------------------------------
    def element(self, value) -> "FFElement":
        """Build an element from an int (embedded prime-field value), a
        coefficient sequence, or an existing element."""
        if isinstance(value, FFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FFElement(self, int(value) % self.p)
        return FFElement(self, self.encode(value))

    @property
    def zero(self) -> "FFElement":
        return FFElement(self, 0)

    @property
    def one(self) -> "FFElement":
        return FFElement(self, 1)

    @property
    def basis(self) -> tuple["FFElement", ...]:
        return tuple(FFElement(self, self.p ** i) for i in range(self.a))

    def elements(self):
        return (FFElement(self, c) for c in range(self.q))

    def regular_matrix(self, code: int) -> np.ndarray:
        """a x a matrix over F_p of multiplication by the element, acting on
        coefficient column vectors."""
        cols = [self.decode(int(self.mul_table[code, self.p ** j])) for j in range(self.a)]
        return np.array(cols, dtype=np.int64).T

    def describe(self) -> dict:
        return {"p": self.p, "a": self.a, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def make_field(p: int, a: int = 1) -> FiniteField:
    """F_{p^a} with the lexicographically least irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if a < 1:
        raise ValueError("degree a must be >= 1")
    return FiniteField(p, a, least_irreducible(p, a))


def field_from_json(d: dict) -> FiniteField:
    return FiniteField(int(d["p"]), int(d["a"]), tuple(int(c) for c in d["modulus"]))


@dataclass(frozen=True)
class FFElement:
    field: FiniteField
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.decode(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.element(other).code

    def __add__(self, other):
        return FFElement(self.field, int(self.field.add_table[self.code, self._other(other)]))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, int(self.field.neg_table[self.code]))

    def __sub__(self, other):
        return self + (-self.field.element(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        return FFElement(self.field, int(self.field.mul_table[self.code, self._other(other)]))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return FFElement(self.field, int(self.field.inv_table[self.code]))

    def __truediv__(self, other):
        return self * self.field.element(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        terms = [f"{c}" + (f"*x^{i}" if i else "") for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def ff_add(x: FFElement, y: FFElement) -> FFElement:
    return x + y


def ff_mul(x: FFElement, y: FFElement) -> FFElement:
    return x * y


def ff_neg(x: FFElement) -> FFElement:
    return -x


def ff_inv(x: FFElement) -> FFElement:
    return x.inverse()


def express_in_basis(u: FFElement) -> tuple[int, ...]:
    """Coordinates of ``u`` in (v_1, ..., v_a), lifted to {0, ..., p-1}.

    With the power basis this is just the coefficient vector.
    """
    return u.coeffs


# -- integer coefficient tables used in relator words ------------------------

@dataclass(frozen=True)
class CoefficientTables:
    """Integer lifts in {0..p-1}; all indices are 0-based (basis index k-1).

    ``c[k, k2, r]``  v_k v_k2            = sum_r c v_r
    ``m[j, i]``      (1/2) v_i           = sum_j m v_j   (p odd only)
    ``r_neg[k, i]``  -v_i^2              = sum_k r_neg v_k
    ``d[i, j, k]``   v_i v_j             = sum_k d v_k
    ``f[i, j, k]``   v_i v_j^2           = sum_k f v_k
    """

    field: FiniteField
    c: np.ndarray
    m: np.ndarray | None
    r_neg: np.ndarray
    d: np.ndarray
    f: np.ndarray
    # c is defined with a plus sign: the commutator [x1(s), x2(t)] is
    # bilinear in (s, t) in both the SL3 and Sp4 models used by verify.
    c_sign: int = 1

    def to_json(self) -> dict:
        out = {
            "field": self.field.describe(),
            "c_sign": self.c_sign,
            "c": self.c.tolist(),
            "r_neg": self.r_neg.tolist(),
            "d": self.d.tolist(),
            "f": self.f.tolist(),
        }
        if self.m is not None:
            out["m"] = self.m.tolist()
        return out


@lru_cache(maxsize=None)
def build_coefficient_tables(F: FiniteField, with_half: bool | None = None) -> CoefficientTables:
    """Tables for the linear relator families.  ``m`` (halves) is built
    whenever p is odd; asking for it explicitly with p = 2 is an error."""
    if with_half and F.p == 2:
        raise ValueError("the 1/2 table m(j, i) needs odd characteristic")
    a = F.a
    v = F.basis
    c = np.zeros((a, a, a), dtype=np.int64)
    d = np.zeros((a, a, a), dtype=np.int64)
    f = np.zeros((a, a, a), dtype=np.int64)
    r_neg = np.zeros((a, a), dtype=np.int64)
    for i in range(a):
        r_neg[:, i] = express_in_basis(-(v[i] * v[i]))
        for j in range(a):
            prod = express_in_basis(v[i] * v[j])
            c[i, j, :] = prod
            d[i, j, :] = prod
            f[i, j, :] = express_in_basis(v[i] * v[j] * v[j])
    m = None
    if F.p != 2 and with_half is not False:
        half = F.element((F.p + 1) // 2)
        m = np.zeros((a, a), dtype=np.int64)
        for i in range(a):
            m[:, i] = express_in_basis(half * v[i])
    for arr in (c, d, f, r_neg):
        arr.setflags(write=False)
    if m is not None:
        m.setflags(write=False)
    return CoefficientTables(F, c, m, r_neg, d, f)
