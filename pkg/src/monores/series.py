"""Truncated power series in two variables and homogeneous forms.

A series keeps the terms of total degree below its precision; everything
at or above that degree is unknown.  Sums and products carry the smaller
precision, exact division by a monomial lowers it by the monomial's degree.
"""

from math import ceil

from .errors import DivisionFailure, NotAPower
from .field import lucas_binomial


class AbovePrec:
    """Signal that nothing qualifying was seen below the known precision."""

    __slots__ = ("prec",)

    def __init__(self, prec):
        self.prec = prec

    def __repr__(self):
        return f"AbovePrec({self.prec})"

    def __eq__(self, other):
        return isinstance(other, AbovePrec) and other.prec == self.prec

    def __hash__(self):
        return hash(("above", self.prec))


def is_above(v):
    return isinstance(v, AbovePrec)


def as_value(field, c):
    if isinstance(c, int):
        return c % field.order
    if isinstance(c, (tuple, list)):
        return field.elem(tuple(c)).value
    return c.value


def _is_power_exp(i, j, q):
    return i % q == 0 and j % q == 0


class BiSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field, terms, prec):
        self.field = field
        self.prec = prec
        self.terms = {k: c for k, c in terms.items() if c and k[0] + k[1] < prec}

    @classmethod
    def zero(cls, field, prec):
        return cls(field, {}, prec)

    @classmethod
    def monomial(cls, field, i, j, c=1, prec=64):
        return cls(field, {(i, j): c}, prec)

    @classmethod
    def from_pairs(cls, field, pairs, prec):
        """Build from (i, j, c) triples, summing repeated exponents.

        c may be a FieldElem, a coordinate tuple or a packed integer."""
        out = {}
        for i, j, c in pairs:
            c = as_value(field, c)
            out[(i, j)] = field.add(out.get((i, j), 0), c)
        return cls(field, out, prec)

    # basic protocol
    def __eq__(self, other):
        return (isinstance(other, BiSeries) and self.field == other.field
                and self.prec == other.prec and self.terms == other.terms)

    def __hash__(self):
        return hash((self.prec, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"BiSeries({body or '0'}; prec={self.prec})"

    def is_zero(self):
        return not self.terms

    def coefficient(self, i, j):
        return self.terms.get((i, j), 0)

    def truncate(self, prec):
        return BiSeries(self.field, self.terms, min(prec, self.prec))

    def with_prec(self, prec):
        """Same known terms, precision set to prec (callers vouch for it)."""
        return BiSeries(self.field, self.terms, prec)

    # arithmetic
    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = F.add(out.get(k, 0), c)
        return BiSeries(F, out, min(self.prec, other.prec))

    def __neg__(self):
        F = self.field
        return BiSeries(F, {k: F.neg(c) for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.field
        if c == 0:
            return BiSeries(F, {}, self.prec)
        return BiSeries(F, {k: F.mul(v, c) for k, v in self.terms.items()}, self.prec)

    def _order_bound(self):
        return min(i + j for i, j in self.terms) if self.terms else self.prec

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        F = self.field
        # unknown tails sit at degree >= prec, shifted up by the other factor's order
        prec = min(self.prec + other._order_bound(), other.prec + self._order_bound())
        out = {}
        mul, add = F.mul, F.add
        for (i1, j1), c1 in self.terms.items():
            d1 = i1 + j1
            for (i2, j2), c2 in other.terms.items():
                if d1 + i2 + j2 >= prec:
                    continue
                k = (i1 + i2, j1 + j2)
                out[k] = add(out.get(k, 0), mul(c1, c2))
        return BiSeries(F, out, prec)

    def __pow__(self, n):
        if n == 0:
            return BiSeries(self.field, {(0, 0): 1}, self.prec)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, k):
        """The (p**k)-th power, computed termwise."""
        F = self.field
        q = F.p ** k
        return BiSeries(F, {(i * q, j * q): F.frob(c, k) for (i, j), c in self.terms.items()},
                        self.prec * q)

    # orders
    def order(self):
        if not self.terms:
            return AbovePrec(self.prec)
        return min(i + j for i, j in self.terms)

    def var_order(self, var):
        """Largest r such that the variable's r-th power divides every visible term."""
        if not self.terms:
            return AbovePrec(self.prec)
        return min(k[var] for k in self.terms)

    def initial_form(self):
        d = self.order()
        if is_above(d):
            return d
        cs = [0] * (d + 1)
        for (i, j), c in self.terms.items():
            if i + j == d:
                cs[i] = c
        return HomogPoly(self.field, d, cs)

    def divisor_initial(self, var):
        """(r, g) with var^r * g the lowest layer in the variable var.

        g is returned as a series in the other variable (placed in its slot)."""
        r = self.var_order(var)
        if is_above(r):
            return r, None
        layer = {k: c for k, c in self.terms.items() if k[var] == r}
        g = {((0, k[1]) if var == 0 else (k[0], 0)): c for k, c in layer.items()}
        return r, BiSeries(self.field, g, self.prec - r)

    def layer(self, var, r):
        return BiSeries(self.field, {k: c for k, c in self.terms.items() if k[var] == r}, self.prec)

    def is_pe_power(self, e):
        q = self.field.p ** e
        return all(_is_power_exp(i, j, q) for i, j in self.terms)

    def pe_root(self, e):
        F = self.field
        q = F.p ** e
        if not self.is_pe_power(e):
            raise NotAPower("series has a term outside q-th powers")
        return BiSeries(F, {(i // q, j // q): F.root(c, e) for (i, j), c in self.terms.items()},
                        ceil(self.prec / q))

    def res_ord(self, e):
        q = self.field.p ** e
        degs = [i + j for i, j in self.terms if not _is_power_exp(i, j, q)]
        return min(degs) if degs else AbovePrec(self.prec)

    # structural maps
    def divide_monomial(self, i, j):
        if any(a < i or b < j for a, b in self.terms):
            raise DivisionFailure(f"x^{i} y^{j} does not divide the series")
        return BiSeries(self.field, {(a - i, b - j): c for (a, b), c in self.terms.items()},
                        self.prec - i - j)

    def mul_monomial(self, i, j):
        return BiSeries(self.field, {(a + i, b + j): c for (a, b), c in self.terms.items()},
                        self.prec + i + j)

    def swap(self):
        return BiSeries(self.field, {(j, i): c for (i, j), c in self.terms.items()}, self.prec)

    def substitute_y_chart(self):
        """x -> x*y, y -> y."""
        return BiSeries(self.field, {(i, i + j): c for (i, j), c in self.terms.items()}, self.prec)

    def substitute_x_chart(self, c):
        """x -> x, y -> x*(y + c)."""
        F = self.field
        p = F.p
        prec = self.prec
        out = {}
        if c == 0:
            return BiSeries(F, {(i + j, j): v for (i, j), v in self.terms.items()}, prec)
        for (i, j), v in self.terms.items():
            xi = i + j
            for k in range(j + 1):
                if xi + k >= prec:
                    break
                b = lucas_binomial(j, k, p)
                if not b:
                    continue
                t = F.mul(v, F.mul(F.from_int(b), F.pow(c, j - k)))
                out[(xi, k)] = F.add(out.get((xi, k), 0), t)
        return BiSeries(F, out, prec)


class HomogPoly:
    """Homogeneous form of degree d; coeffs[i] multiplies x^i y^(d-i)."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree, coeffs):
        if len(coeffs) != degree + 1:
            raise ValueError("need degree + 1 coefficients")
        self.field, self.degree, self.coeffs = field, degree, tuple(coeffs)

    def __eq__(self, other):
        return (isinstance(other, HomogPoly) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        d = self.degree
        body = " + ".join(f"{c}*x^{i}*y^{d - i}" for i, c in enumerate(self.coeffs) if c)
        return f"HomogPoly({body or '0'})"

    def is_zero(self):
        return not any(self.coeffs)

    def to_series(self, prec):
        d = self.degree
        return BiSeries(self.field, {(i, d - i): c for i, c in enumerate(self.coeffs)}, prec)

    def __mul__(self, other):
        F = self.field
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return HomogPoly(F, self.degree + other.degree, out)

    def scale(self, c):
        F = self.field
        return HomogPoly(F, self.degree, [F.mul(a, c) for a in self.coeffs])

    def is_pe_power(self, e):
        q = self.field.p ** e
        return all(not c or (i % q == 0 and (self.degree - i) % q == 0) for i, c in enumerate(self.coeffs))

    def pe_root(self, e):
        F = self.field
        q = F.p ** e
        if self.degree % q or not self.is_pe_power(e):
            raise NotAPower("form is not a q-th power")
        return HomogPoly(F, self.degree // q, [F.root(c, e) for c in self.coeffs[::q]])

    def dehomogenize_x(self):
        """Coefficients of f(1, t) in t, low degree first."""
        return list(reversed(self.coeffs))

    def eval_shift(self, c):
        """Coefficients of f(1, c + t) in t, low degree first."""
        return poly_taylor_shift(self.field, self.dehomogenize_x(), c)

    def var_order(self, var):
        nz = [i for i, c in enumerate(self.coeffs) if c]
        if not nz:
            return AbovePrec(self.degree + 1)
        return min(nz) if var == 0 else self.degree - max(nz)

    def rescale_y(self, c):
        """f(x, c*y)."""
        F = self.field
        d = self.degree
        return HomogPoly(F, d, [F.mul(a, F.pow(c, d - i)) for i, a in enumerate(self.coeffs)])

    def swap(self):
        return HomogPoly(self.field, self.degree, list(reversed(self.coeffs)))


def linear_power(field, n, c):
    """(y - c*x)^n as a form."""
    lin = HomogPoly(field, 1, [field.neg(c), 1])
    out = HomogPoly(field, 0, [1])
    for _ in range(n):
        out = out * lin
    return out


# univariate helpers, coefficient lists low degree first

def poly_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def poly_mul(F, a, b, cap=None):
    n = len(a) + len(b) - 1 if a and b else 0
    if cap is not None:
        n = min(n, cap)
    out = [0] * max(n, 0)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def poly_taylor_shift(F, a, c):
    """Coefficients of f(c + t) from those of f(t)."""
    p = F.p
    out = [0] * len(a)
    for n, v in enumerate(a):
        if not v:
            continue
        for k in range(n + 1):
            b = lucas_binomial(n, k, p)
            if b:
                out[k] = F.add(out[k], F.mul(v, F.mul(F.from_int(b), F.pow(c, n - k))))
    return out


def poly_divmod(F, a, b):
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = F.mul(r[k + len(b) - 1], inv)
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = F.sub(r[k + j], F.mul(c, y))
    return q, poly_trim(r)


def poly_inverse_series(F, a, n):
    """First n coefficients of 1/a(t), a(0) != 0."""
    inv0 = F.inv(a[0])
    out = [0] * n
    for k in range(n):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s = F.sub(s, F.mul(a[j], out[k - j]))
        out[k] = F.mul(s, inv0)
    return out


def root_multiplicity(F, a, c):
    """Order of vanishing of the polynomial a(t) at t = c."""
    sh = poly_taylor_shift(F, a, c)
    for k, v in enumerate(sh):
        if v:
            return k
    return len(sh)
