"""Finite fields GF(p^m) with elements packed as integers.

An element is stored as the integer sum(c_k * p**k) where (c_0, ..., c_{m-1})
are its coordinates in the power basis of a root of the modulus.  All the
arithmetic goes through small precomputed tables, which keeps the series
code free of object overhead.
"""

from functools import lru_cache
from itertools import product

from .errors import DivisionByZero, ReducibleModulus


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _poly_mod(num, den, p):
    # coefficient lists, low degree first, den monic
    num = list(num)
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] % p
        if c:
            for j in range(dd + 1):
                num[k - dd + j] = (num[k - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def is_irreducible(modulus, p):
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for deg in range(1, m // 2 + 1):
        for low in product(range(p), repeat=deg):
            if any(_poly_mod(modulus, list(low) + [1], p)):
                continue
            return False
    return True


def default_modulus(p, m):
    """First monic irreducible polynomial of degree m in lexicographic order."""
    if m == 1:
        return (0, 1)
    for low in product(range(p), repeat=m):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} mod {p}")


class GF:
    """The field with p**m elements."""

    def __init__(self, p, m=2, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        modulus = tuple(modulus) if modulus is not None else default_modulus(p, m)
        if len(modulus) != m + 1 or not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is not an irreducible modulus of degree {m}")
        self.p, self.m, self.modulus = p, m, modulus
        self.order = n = p ** m
        vecs = [self.coords(v) for v in range(n)]
        self._add = [[self._pack([(x + y) % p for x, y in zip(u, w)]) for w in vecs] for u in vecs]
        self._neg = [self._pack([(-x) % p for x in u]) for u in vecs]
        self._mul = [[self._pack(self._vmul(u, w)) for w in vecs] for u in vecs]
        self._inv = [0] * n
        for a in range(1, n):
            for b in range(1, n):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self._frob = [self.pow(a, p) for a in range(n)]
        # the Frobenius has order m, so its inverse is its (m-1)-th iterate
        self._root = list(range(n))
        for _ in range(m - 1):
            self._root = [self._frob[v] for v in self._root]

    def _pack(self, cs):
        v = 0
        for c in reversed(cs):
            v = v * self.p + c
        return v

    def coords(self, v):
        out = []
        for _ in range(self.m):
            v, c = divmod(v, self.p)
            out.append(c)
        return tuple(out)

    def _vmul(self, u, w):
        p = self.p
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(w):
                    prod[i + j] = (prod[i + j] + x * y) % p
        if self.m == 1:
            return prod
        return _poly_mod(prod, self.modulus, p)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    # raw integer arithmetic
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        r, b = 1, a
        while k:
            if k & 1:
                r = self._mul[r][b]
            b = self._mul[b][b]
            k >>= 1
        return r

    def frob(self, a, k=1):
        for _ in range(k % self.m if self.m > 1 else 0):
            a = self._frob[a]
        return a

    def root(self, a, k=1):
        """The unique (p**k)-th root."""
        for _ in range(k % self.m if self.m > 1 else 0):
            a = self._root[a]
        return a

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.order)

    def elem(self, value):
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (tuple, list)):
            value = self._pack([c % self.p for c in value])
        return FieldElem(self, value)


class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def coordinates(self):
        return self.field.coords(self.value)

    def _other(self, o):
        if isinstance(o, FieldElem):
            if o.field != self.field:
                raise ValueError("elements of different fields")
            return o.value
        return self.field.from_int(o)

    def __add__(self, o):
        return FieldElem(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElem(self.field, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElem(self.field, self.field.sub(self._other(o), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, o):
        return FieldElem(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElem(self.field, self.field.mul(self.value, self.field.inv(self._other(o))))

    def __pow__(self, k):
        return FieldElem(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, k=1):
        return FieldElem(self.field, self.field.frob(self.value, k))

    def root(self, k=1):
        return FieldElem(self.field, self.field.root(self.value, k))

    def __eq__(self, o):
        if isinstance(o, FieldElem):
            return self.field == o.field and self.value == o.value
        if isinstance(o, int):
            return self.value == self.field.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}{list(self.coordinates)}"


@lru_cache(maxsize=None)
def lucas_binomial(n, k, p):
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        return 0
    r = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        c = 1
        for i in range(kd):
            c = c * (nd - i) // (i + 1)
        r = r * c % p
        n //= p
        k //= p
    return r
