"""Tower finite fields F_p < F_q = F_{p^e} < F_{q^m}.

Elements are plain ints. The F_p coefficient of x^i t^j (x the extension
variable over F_q, t the variable of F_q over F_p) is base-p digit i*e + j.
Consequently the base-q digits of an element are its F_q coordinates in the
power basis 1, x, ..., x^{m-1}, and the subfield F_q is exactly range(q).

Fields with at most ``ACCEL_LIMIT`` elements get exp/log/Zech tables; larger
ones fall back to polynomial arithmetic so constructions still work there.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np
from sympy import factorint, isprime

from mrdscatter import _elim
from mrdscatter.errors import (
    DegreeMismatch,
    DivisionByZero,
    NonPrimeP,
    NotAnElement,
    ReducibleModulus,
)

ACCEL_LIMIT = 2**20
_BASE_TABLE_LIMIT = 256


class PrimeField:
    """F_p with plain modular arithmetic."""

    def __init__(self, p):
        self.p = p
        self.order = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, -1, self.p)


# -- polynomials over a field K, coefficient lists with constant term first --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, K):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _trim(out)


def poly_divmod(a, b, K):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by 0")
    db = len(b) - 1
    lead_inv = K.inv(b[-1])
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = K.mul(c, lead_inv)
            quo[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    a[i - db + j] = K.sub(a[i - db + j], K.mul(c, b[j]))
    return _trim(quo), _trim(a[:db])


def poly_mod(a, f, K):
    return poly_divmod(a, f, K)[1]


def poly_gcd(a, b, K):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, K)
    return a


def poly_powmod(base, n, f, K):
    result = [1]
    base = poly_mod(base, f, K)
    while n:
        if n & 1:
            result = poly_mod(poly_mul(result, base, K), f, K)
        base = poly_mod(poly_mul(base, base, K), f, K)
        n >>= 1
    return result


def is_irreducible(f, K):
    """Rabin's test for a monic polynomial over K (|K| = K.order)."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    Q = K.order
    x = [0, 1]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = poly_powmod(h, Q, f, K)
        return h

    if frob_iter(d) != x:
        return False
    for r in factorint(d):
        diff = list(frob_iter(d // r))
        diff += [0] * (2 - len(diff))
        diff[1] = K.sub(diff[1], 1)
        if len(poly_gcd(f, _trim(diff), K)) != 1:
            return False
    return True


def _monic_candidates(deg, Q):
    for v in range(Q**deg):
        coeffs = []
        for _ in range(deg):
            v, c = divmod(v, Q)
            coeffs.append(c)
        yield coeffs + [1]


def default_modulus(deg, K):
    """Monic irreducible of degree ``deg`` with the smallest integer encoding."""
    for f in _monic_candidates(deg, K.order):
        if is_irreducible(f, K):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class BaseField:
    """F_q = F_p[t]/(base_modulus), elements are ints in range(q)."""

    def __init__(self, p, e, modulus):
        self.p, self.e = p, e
        self.q = self.order = p**e
        self.modulus = tuple(modulus)
        self._fp = PrimeField(p)
        if e == 1:
            return
        if self.q <= _BASE_TABLE_LIMIT:
            q = self.q
            mul = [[self._mul_poly(a, b) for b in range(q)] for a in range(q)]
            self._mul_tab = mul
            self._inv_tab = [0] + [next(b for b in range(1, q) if mul[a][b] == 1) for a in range(1, q)]

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds):
        v = 0
        for c in reversed(ds):
            v = v * self.p + c
        return v

    def _mul_poly(self, a, b):
        prod = poly_mul(_trim(self._digits(a)), _trim(self._digits(b)), self._fp)
        r = poly_mod(prod, self.modulus, self._fp)
        return self._undigits(r + [0] * (self.e - len(r)))

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._undigits([-x % self.p for x in self._digits(a)])

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if hasattr(self, "_mul_tab"):
            return self._mul_tab[a][b]
        return self._mul_poly(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.e == 1:
            return pow(a, -1, self.p)
        if hasattr(self, "_inv_tab"):
            return self._inv_tab[a]
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r


def _as_fq(c, p, e):
    """Accept an F_q element as an int or as a list of e residues."""
    if isinstance(c, (list, tuple)):
        if len(c) != e or any(not 0 <= x < p for x in c):
            raise NotAnElement(f"bad F_q coordinates {c!r}")
        v = 0
        for x in reversed(c):
            v = v * p + x
        return v
    if not 0 <= c < p**e:
        raise NotAnElement(f"{c} is not an element of F_{p**e}")
    return int(c)


class FieldTower:
    """The extension F_{q^m} / F_q with q = p^e.

    Immutable after construction; equality is by (p, e, m, moduli, primitive
    element). Build instances through ``tower_build``.
    """

    def __init__(self, p, e, m, base_modulus, ext_modulus, primitive_elem=None):
        if not isprime(p):
            raise NonPrimeP(f"p={p} is not prime")
        if e < 1 or m < 1:
            raise DegreeMismatch("e and m must be positive")
        base_modulus = tuple(int(c) for c in base_modulus)
        if len(base_modulus) != e + 1 or base_modulus[-1] != 1:
            raise DegreeMismatch(f"base modulus must be monic of degree {e}")
        if any(not 0 <= c < p for c in base_modulus):
            raise DegreeMismatch("base modulus coefficients must lie in [0, p)")
        fp = PrimeField(p)
        if not is_irreducible(base_modulus, fp):
            raise ReducibleModulus(f"base modulus {base_modulus} is reducible over F_{p}")
        self.p, self.e, self.m = p, e, m
        self.base_modulus = base_modulus
        self.base = BaseField(p, e, base_modulus)
        self.q = q = p**e
        ext_modulus = tuple(_as_fq(c, p, e) for c in ext_modulus)
        if len(ext_modulus) != m + 1 or ext_modulus[-1] != 1:
            raise DegreeMismatch(f"extension modulus must be monic of degree {m}")
        if not is_irreducible(ext_modulus, self.base):
            raise ReducibleModulus(f"extension modulus {ext_modulus} is reducible over F_{q}")
        self.ext_modulus = ext_modulus
        self.order = q**m
        self.N = self.order - 1
        self._qpow = [q**i for i in range(m)]
        self._frob_img = [self._pow_generic(q**j, q) for j in range(m)]

        self.accelerated = self.order <= ACCEL_LIMIT
        if primitive_elem is None:
            primitive_elem = self._find_primitive()
        else:
            primitive_elem = self.elem(primitive_elem)
            if not self._is_primitive(primitive_elem):
                raise NotAnElement(f"{primitive_elem} is not primitive")
        self.primitive_elem = primitive_elem
        if self.accelerated:
            self._build_tables()

    # -- construction helpers --

    @property
    def key(self):
        return (self.p, self.e, self.m, self.base_modulus, self.ext_modulus, self.primitive_elem)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        sub = f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"
        return f"FieldTower(GF({self.q}^{self.m}) over {sub})"

    def _order_primes(self):
        return list(factorint(self.N)) if self.N > 1 else []

    def _is_primitive(self, a):
        if a == 0:
            return False
        if self._pow_generic(a, self.N) != 1:
            return False
        return all(self._pow_generic(a, self.N // r) != 1 for r in self._order_primes())

    def _find_primitive(self):
        if self.order == 2:
            return 1
        primes = self._order_primes()
        for a in range(2, self.order):
            if all(self._pow_generic(a, self.N // r) != 1 for r in primes):
                return a
        raise AssertionError("no primitive element")

    def _build_tables(self):
        N = self.N
        exp = [0] * (2 * N + 1)
        log = [-1] * self.order
        x = 1
        for i in range(N):
            exp[i] = x
            log[x] = i
            x = self._mul_generic(x, self.primitive_elem)
        for i in range(N, 2 * N + 1):
            exp[i] = exp[i - N]
        self._exp, self._log = exp, log
        if self.p != 2:
            zech = [0] * N
            for d in range(N):
                s = self._add_generic(1, exp[d])
                zech[d] = log[s]
            self._zech = zech
            self._half = N // 2

    # -- digits --

    def digits(self, a):
        """F_q coordinates of a, length m."""
        q = self.q
        out = []
        for _ in range(self.m):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def from_digits(self, ds):
        v = 0
        for c in reversed(ds):
            v = v * self.q + c
        return v

    def coords(self, a):
        """Nested [[F_p residues] * e] * m encoding used in files."""
        return [self.base._digits(d) for d in self.digits(a)]

    def elem(self, x):
        """Coerce an int or nested coordinate list into an element."""
        if isinstance(x, (list, tuple)):
            if len(x) != self.m:
                raise NotAnElement(f"expected {self.m} coordinates, got {len(x)}")
            return self.from_digits([_as_fq(c, self.p, self.e) for c in x])
        x = int(x)
        if not 0 <= x < self.order:
            raise NotAnElement(f"{x} is not an element of F_{self.q}^{self.m}")
        return x

    def in_subfield(self, a):
        return 0 <= a < self.q

    # -- generic (table-free) arithmetic --

    def _add_generic(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        out, w = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def _neg_generic(self, a):
        if self.p == 2:
            return a
        p = self.p
        out, w = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * w
            w *= p
        return out

    def _mul_generic(self, a, b):
        if a == 0 or b == 0:
            return 0
        K = self.base
        da, db = self.digits(a), self.digits(b)
        prod = poly_mul(_trim(da), _trim(db), K)
        f = self.ext_modulus
        m = self.m
        for i in range(len(prod) - 1, m - 1, -1):
            c = prod[i]
            if c:
                for j in range(m + 1):
                    if f[j]:
                        prod[i - m + j] = K.sub(prod[i - m + j], K.mul(c, f[j]))
        return self.from_digits(prod[:m])

    def _pow_generic(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._mul_generic(r, a)
            a = self._mul_generic(a, a)
            n >>= 1
        return r

    def _frob1_generic(self, a):
        K = self.base
        out = 0
        for d, img in zip(self.digits(a), self._frob_img):
            if d:
                term = img if d == 1 else self.from_digits([K.mul(d, c) for c in self.digits(img)])
                out = self._add_generic(out, term)
        return out

    # -- public arithmetic --

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not self.accelerated:
            return self._add_generic(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self.N
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        if not self.accelerated:
            return self._neg_generic(a)
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if not self.accelerated:
            return self._mul_generic(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if not self.accelerated:
            return self._pow_generic(a, self.N - 1)
        return self._exp[self.N - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        """a^n by square-and-multiply (table lookup when accelerated)."""
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.accelerated:
            return self._exp[self._log[a] * n % self.N]
        return self._pow_generic(a, n % self.N or self.N)

    def frobenius(self, a, i=1):
        """a^{q^i}, i taken mod m."""
        i %= self.m
        if i == 0 or a == 0:
            return a
        if self.accelerated:
            return self._exp[self._log[a] * self._qpow[i] % self.N]
        for _ in range(i):
            a = self._frob1_generic(a)
        return a

    def rel_trace(self, a):
        t = 0
        for i in range(self.m):
            t = self.add(t, self.frobenius(a, i))
        return t

    def rel_norm(self, a):
        if a == 0:
            return 0
        if self.accelerated:
            return self._exp[self._log[a] * (self.N // (self.q - 1)) % self.N]
        r = 1
        for i in range(self.m):
            r = self.mul(r, self.frobenius(a, i))
        return r

    def log(self, a):
        if not self.accelerated:
            raise NotImplementedError("discrete logs need the table accelerator")
        if a == 0:
            raise DivisionByZero("log of 0")
        return self._log[a]

    def xi_pow(self, j):
        """primitive_elem ** j."""
        return self.pow(self.primitive_elem, j)

    def qpow_sum(self, a, exps):
        """Product of a^{q^i} over the multiset ``exps`` (chained Frobenius)."""
        r = 1
        for i in exps:
            r = self.mul(r, self.frobenius(a, i))
        return r

    def is_square(self, a):
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.pow(a, self.N // 2) == 1

    def sqrt(self, a):
        """A square root of a, or None. Tonelli-Shanks in odd characteristic."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.order // 2)
        if not self.is_square(a):
            return None
        if self.accelerated:
            return self._exp[self._log[a] // 2]
        s, t = 0, self.N
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self.primitive_elem
        c = self.pow(z, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        while b != 1:
            i, bb = 0, b
            while bb != 1:
                bb, i = self.mul(bb, bb), i + 1
            g = c
            for _ in range(s - i - 1):
                g = self.mul(g, g)
            x, c = self.mul(x, g), self.mul(g, g)
            b, s = self.mul(b, c), i
        return x

    # -- vectorised helpers (accelerated fields only) --

    @cached_property
    def np_log(self):
        return np.array(self._log, dtype=np.int64)

    @cached_property
    def np_exp(self):
        return np.array(self._exp, dtype=np.int64)

    @cached_property
    def np_pdigits(self):
        width = self.m * self.e
        vals = np.arange(self.order, dtype=np.int64)
        out = np.empty((self.order, width), dtype=np.int64)
        for j in range(width):
            vals, out[:, j] = np.divmod(vals, self.p)
        return out

    @cached_property
    def np_pweights(self):
        return self.p ** np.arange(self.m * self.e, dtype=np.int64)

    def vadd(self, A, B):
        if self.p == 2:
            return np.bitwise_xor(A, B)
        d = (self.np_pdigits[A] + self.np_pdigits[B]) % self.p
        return d @ self.np_pweights

    def vneg(self, A):
        if self.p == 2:
            return A
        d = (-self.np_pdigits[A]) % self.p
        return d @ self.np_pweights

    def vmul(self, A, B):
        A, B = np.broadcast_arrays(np.asarray(A), np.asarray(B))
        la, lb = self.np_log[A], self.np_log[B]
        zero = (la < 0) | (lb < 0)
        out = self.np_exp[np.where(zero, 0, la + lb)]
        return np.where(zero, 0, out)

    def vsmul(self, c, A):
        if c == 0:
            return np.zeros_like(A)
        if c == 1:
            return A
        return self.vmul(np.asarray(A), c)

    # -- serialisation --

    def to_descriptor(self):
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "base_modulus": list(self.base_modulus),
            "ext_modulus": [self.base._digits(c) for c in self.ext_modulus],
            "primitive_elem": self.coords(self.primitive_elem),
        }


_TOWER_CACHE: dict = {}


def tower_build(p, e, m, base_modulus=None, ext_modulus=None, primitive_elem=None):
    """Build (or fetch from cache) a validated tower.

    Omitted moduli are the monic irreducibles with the smallest integer
    encoding, i.e. ascending search over coefficient vectors read as base-p
    (resp. base-q) numbers with the constant term least significant.
    """
    if not isprime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if e < 1 or m < 1:
        raise DegreeMismatch("e and m must be positive")
    if base_modulus is None:
        base_modulus = default_modulus(e, PrimeField(p))
    base_modulus = tuple(int(c) for c in base_modulus)
    if ext_modulus is None:
        base = BaseField(p, e, base_modulus) if is_irreducible(base_modulus, PrimeField(p)) else None
        if base is None:
            raise ReducibleModulus(f"base modulus {base_modulus} is reducible")
        ext_modulus = default_modulus(m, base)
    ext_modulus = tuple(_as_fq(c, p, e) for c in ext_modulus)
    key = (p, e, m, base_modulus, ext_modulus, None if primitive_elem is None else repr(primitive_elem))
    if key not in _TOWER_CACHE:
        _TOWER_CACHE[key] = FieldTower(p, e, m, base_modulus, ext_modulus, primitive_elem)
    return _TOWER_CACHE[key]


def tower_from_descriptor(d):
    return tower_build(
        d["p"], d.get("e", 1), d["m"],
        d.get("base_modulus"), d.get("ext_modulus"), d.get("primitive_elem"),
    )


def ker_trace_basis(F):
    """F_q-basis (m-1 elements) of the kernel of the relative trace."""
    row = [F.rel_trace(F.q**j) for j in range(F.m)]
    return [F.from_digits(v) for v in _elim.kernel([row], F.m, F.base)]


def norm_one_iter(F):
    """Each norm-1 element once, as powers of primitive_elem^(q-1)."""
    g = F.pow(F.primitive_elem, F.q - 1)
    x = 1
    for _ in range(F.N // (F.q - 1)):
        yield x
        x = F.mul(x, g)


def fq_combinations(q, n):
    """All coefficient tuples in F_q^n, lexicographic (first slowest)."""
    return itertools.product(range(q), repeat=n)
