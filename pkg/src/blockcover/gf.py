"""Exact arithmetic in GF(p^e).

Elements are handled as integer *codes*: the code of an element is its
position in the canonical enumeration, which lists coefficient vectors
(constant term first) in lexicographic order.  So ``coeffs = [c0, ..., c_{e-1}]``
has code ``c0*p^(e-1) + c1*p^(e-2) + ... + c_{e-1}``, zero has code 0 and the
integer order of codes is the lexicographic order of coefficient lists.
For prime fields the code is just the residue.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import FieldDivisionError, InvalidFieldError, MalformedElementError

MAX_ORDER = 1 << 16
# add/mul tables are materialized only up to this order
TABLE_LIMIT = 256

Poly = tuple[int, ...]  # coefficients, constant term first


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
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise if not a prime power."""
    if q < 2:
        raise InvalidFieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise InvalidFieldError(f"{q} is not a prime power")
    return p, e


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by the monic polynomial ``m`` over GF(p)."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _trim(r)
    return r


def _monic_polys(p: int, d: int):
    for low in itertools.product(range(p), repeat=d):
        yield low + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(poly) - 1
    if d < 1 or poly[-1] % p != 1:
        return False
    for k in range(1, d // 2 + 1):
        for f in _monic_polys(p, k):
            if not poly_mod(poly, f, p):
                return False
    return True


def find_irreducible(p: int, e: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree ``e`` over GF(p).

    Candidates are compared coefficient by coefficient starting from the
    constant term, so for ``e == 1`` the answer is ``x``.
    """
    if not is_prime(p):
        raise InvalidFieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise InvalidFieldError("extension degree must be >= 1")
    for poly in _monic_polys(p, e):
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^e) = GF(p)[x] / (modulus)."""

    p: int
    e: int
    modulus: Poly = field(default=())

    def __post_init__(self):
        p, e = self.p, self.e
        if not is_prime(p):
            raise InvalidFieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise InvalidFieldError("extension degree must be >= 1")
        if p**e > MAX_ORDER:
            raise InvalidFieldError(f"field order {p}^{e} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus) if self.modulus else find_irreducible(p, e)
        if len(mod) != e + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
            raise InvalidFieldError(f"modulus {list(mod)} is not monic of degree {e} over GF({p})")
        if e == 1 and mod != (0, 1):
            raise InvalidFieldError("prime fields use the modulus x, i.e. [0, 1]")
        if not is_irreducible(mod, p):
            raise InvalidFieldError(f"modulus {list(mod)} is reducible over GF({p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.p ** (self.e - 1)

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.q}, modulus={list(self.modulus)})"

    # -- coefficient <-> code ------------------------------------------------

    def coeffs(self, x: int) -> Poly:
        self.check(x)
        out = []
        for _ in range(self.e):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(reversed(out))

    def elem(self, coeffs: Sequence[int]) -> int:
        """Code of the element with the given coefficients (constant term first)."""
        if len(coeffs) != self.e:
            raise MalformedElementError(f"expected {self.e} coefficients, got {len(coeffs)}")
        code = 0
        for c in coeffs:
            if not isinstance(c, int) or not 0 <= c < self.p:
                raise MalformedElementError(f"coefficient {c!r} outside [0, {self.p})")
            code = code * self.p + c
        return code

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.q:
            raise MalformedElementError(f"{x!r} is not an element code of {self!r}")
        return x

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return (n % self.p) * self.one

    def format(self, x: int) -> str:
        return ",".join(str(c) for c in self.coeffs(x))

    def parse(self, text: str) -> int:
        try:
            parts = [int(t) for t in text.strip().split(",")]
        except ValueError:
            raise MalformedElementError(f"cannot parse field element {text!r}") from None
        return self.elem(parts)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["p"]), int(data["e"]), tuple(data.get("modulus") or ()))

    # -- raw arithmetic on coefficient vectors --------------------------------

    def _code(self, poly: Sequence[int]) -> int:
        cs = list(poly) + [0] * (self.e - len(poly))
        return self.elem(cs[: self.e])

    def _add_slow(self, x: int, y: int) -> int:
        a, b = self.coeffs(x), self.coeffs(y)
        return self.elem([(s + t) % self.p for s, t in zip(a, b)])

    def _neg_slow(self, x: int) -> int:
        return self.elem([(-s) % self.p for s in self.coeffs(x)])

    def _mul_slow(self, x: int, y: int) -> int:
        a, b = self.coeffs(x), self.coeffs(y)
        prod = [0] * (2 * self.e - 1)
        for i, s in enumerate(a):
            if s:
                for j, t in enumerate(b):
                    prod[i + j] += s * t
        return self._code(poly_mod(prod, self.modulus, self.p))

    @cached_property
    def _tables(self):
        q = self.q
        if q > TABLE_LIMIT:
            return None
        add = [[self._add_slow(x, y) for y in range(q)] for x in range(q)]
        mul = [[self._mul_slow(x, y) for y in range(q)] for x in range(q)]
        neg = [self._neg_slow(x) for x in range(q)]
        inv = [0] * q
        for x in range(1, q):
            inv[x] = mul[x].index(self.one)
        return add, mul, neg, inv

    @property
    def add_table(self) -> list[list[int]]:
        t = self._tables
        if t is None:
            raise InvalidFieldError(f"no arithmetic tables above order {TABLE_LIMIT}")
        return t[0]

    @property
    def mul_table(self) -> list[list[int]]:
        t = self._tables
        if t is None:
            raise InvalidFieldError(f"no arithmetic tables above order {TABLE_LIMIT}")
        return t[1]

    # -- checked public arithmetic -------------------------------------------

    def add(self, x: int, y: int) -> int:
        self.check(x), self.check(y)
        t = self._tables
        return t[0][x][y] if t else self._add_slow(x, y)

    def neg(self, x: int) -> int:
        self.check(x)
        t = self._tables
        return t[2][x] if t else self._neg_slow(x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        self.check(x), self.check(y)
        t = self._tables
        return t[1][x][y] if t else self._mul_slow(x, y)

    def inv(self, x: int) -> int:
        self.check(x)
        if x == 0:
            raise FieldDivisionError(f"0 has no inverse in {self!r}")
        t = self._tables
        if t:
            return t[3][x]
        # x^(q-2) by square-and-multiply
        result, base, k = self.one, x, self.q - 2
        while k:
            if k & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            k >>= 1
        return result

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def elements(self) -> list[int]:
        """All ``q`` elements in canonical (lexicographic coefficient) order."""
        return list(range(self.q))


def GF(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Field of order ``q``; the default modulus is from :func:`find_irreducible`."""
    p, e = prime_power(q)
    return FieldSpec(p, e, tuple(modulus) if modulus else ())


def field_arith(spec: FieldSpec, op: str, x: int, y: int | None = None) -> int:
    if op == "neg":
        return spec.neg(x)
    if y is None:
        raise MalformedElementError(f"operation {op!r} needs two operands")
    try:
        fn = {"add": spec.add, "sub": spec.sub, "mul": spec.mul}[op]
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None
    return fn(x, y)


def field_inv(spec: FieldSpec, x: int) -> int:
    return spec.inv(x)


def field_enumerate(spec: FieldSpec) -> list[Poly]:
    """All elements as coefficient tuples, zero first, lexicographic."""
    return [spec.coeffs(x) for x in spec.elements()]
