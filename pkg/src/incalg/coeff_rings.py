"""Finite coefficient rings with enumerable carriers.

Three families are supported: integers modulo n ("Z/12"), finite direct
products ("Z/2 x Z/3"), and square matrix rings over a modular base
("M(2,Z/3)").  Elements are plain hashable Python values in a canonical
encoding:

* ``Z/n``       residue ``int`` in ``range(n)``
* products      tuple of component elements, left to right
* ``M(k,Z/n)``  tuple of k row tuples of residues, row major

Canonical encodings make element equality plain ``==``, which the file
formats and the enumeration code rely on.
"""

from __future__ import annotations

import itertools
import json
import math
import re


class RingParseError(ValueError):
    """Ring spec or element text that does not match the grammar."""


class NonUnitError(ArithmeticError):
    """Inverse requested for an element without a two-sided inverse."""


class RingMismatchError(ValueError):
    """Carriers or encodings from different rings were mixed."""


class Ring:
    """Interface shared by all coefficient rings.

    Subclasses provide zero/one/add/neg/mul/int_scale, a deterministic
    ``elements()`` enumeration, unit testing and inversion, the central
    units, and text encoding of elements.
    """

    commutative = False

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @property
    def order(self) -> int:
        return len(self.elements())

    def units(self):
        """All invertible elements, in enumeration order."""
        return [a for a in self.elements() if self.is_unit(a)]

    def is_central_unit(self, a) -> bool:
        cache = getattr(self, "_central_set", None)
        if cache is None:
            cache = frozenset(self.central_units())
            self._central_set = cache
        return a in cache

    def __ne__(self, other):
        return not self.__eq__(other)


class ZMod(Ring):
    """Integers modulo n, elements encoded as residues in range(n)."""

    commutative = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise RingParseError(f"modulus must be an integer >= 2, got {n!r}")
        self.n = n

    def check(self, a):
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.n:
            raise RingMismatchError(f"{a!r} is not a canonical element of {self}")

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def int_scale(self, k, a):
        return (k * a) % self.n

    def elements(self):
        return range(self.n)

    def is_unit(self, a) -> bool:
        return math.gcd(a, self.n) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise NonUnitError(f"{a} is not invertible in {self}")
        return pow(a, -1, self.n)

    def central_units(self):
        cache = getattr(self, "_central", None)
        if cache is None:
            cache = tuple(a for a in range(self.n) if math.gcd(a, self.n) == 1)
            self._central = cache
        return cache

    def parse_element(self, text: str):
        t = text.strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            raise RingParseError(f"cannot parse {text!r} as an element of {self}")
        return int(t) % self.n

    def format_element(self, a) -> str:
        return str(a)

    def __str__(self):
        return f"Z/{self.n}"

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, ZMod) and other.n == self.n

    def __hash__(self):
        return hash(("ZMod", self.n))


class ProductRing(Ring):
    """Direct product of two or more rings; elements are flat tuples."""

    def __init__(self, factors):
        flat = []
        for f in factors:
            if isinstance(f, ProductRing):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if len(flat) < 2:
            raise RingParseError("product needs at least two factors")
        self.factors = tuple(flat)
        self.commutative = all(f.commutative for f in self.factors)

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise RingMismatchError(f"{a!r} is not a canonical element of {self}")
        for f, c in zip(self.factors, a):
            f.check(c)

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def int_scale(self, k, a):
        return tuple(f.int_scale(k, x) for f, x in zip(self.factors, a))

    def elements(self):
        cache = getattr(self, "_elements", None)
        if cache is None:
            cache = tuple(itertools.product(*(f.elements() for f in self.factors)))
            self._elements = cache
        return cache

    def is_unit(self, a) -> bool:
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def inverse(self, a):
        if not self.is_unit(a):
            raise NonUnitError(f"{self.format_element(a)} is not invertible in {self}")
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def central_units(self):
        cache = getattr(self, "_central", None)
        if cache is None:
            cache = tuple(itertools.product(*(f.central_units() for f in self.factors)))
            self._central = cache
        return cache

    def parse_element(self, text: str):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise RingParseError(f"cannot parse {text!r} as an element of {self}")
        parts = _split_top_level(t[1:-1])
        if len(parts) != len(self.factors):
            raise RingParseError(
                f"{text!r} has {len(parts)} components, {self} expects {len(self.factors)}"
            )
        return tuple(f.parse_element(p) for f, p in zip(self.factors, parts))

    def format_element(self, a) -> str:
        return "(" + ",".join(f.format_element(x) for f, x in zip(self.factors, a)) + ")"

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, ProductRing) and other.factors == self.factors

    def __hash__(self):
        return hash(("Product", self.factors))


class MatrixRing(Ring):
    """k x k matrices over Z/n; elements are row-major tuples of row tuples."""

    commutative = False

    def __init__(self, size: int, base: ZMod):
        if not isinstance(size, int) or size < 1:
            raise RingParseError(f"matrix size must be an integer >= 1, got {size!r}")
        if not isinstance(base, ZMod):
            raise RingParseError("matrix rings are supported over Z/n bases only")
        self.size = size
        self.base = base

    def check(self, a):
        k, n = self.size, self.base.n
        ok = (
            isinstance(a, tuple)
            and len(a) == k
            and all(
                isinstance(row, tuple)
                and len(row) == k
                and all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n for v in row)
                for row in a
            )
        )
        if not ok:
            raise RingMismatchError(f"{a!r} is not a canonical element of {self}")

    def zero(self):
        k = self.size
        return tuple(tuple(0 for _ in range(k)) for _ in range(k))

    def one(self):
        k = self.size
        return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))

    def add(self, a, b):
        n = self.base.n
        return tuple(tuple((x + y) % n for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        n = self.base.n
        return tuple(tuple((-x) % n for x in row) for row in a)

    def mul(self, a, b):
        k, n = self.size, self.base.n
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % n for j in range(k))
            for i in range(k)
        )

    def int_scale(self, k, a):
        n = self.base.n
        return tuple(tuple((k * x) % n for x in row) for row in a)

    def elements(self):
        cache = getattr(self, "_elements", None)
        if cache is None:
            k, n = self.size, self.base.n
            cache = tuple(
                tuple(flat[i * k:(i + 1) * k] for i in range(k))
                for flat in itertools.product(range(n), repeat=k * k)
            )
            self._elements = cache
        return cache

    def determinant(self, a):
        return _int_det([list(row) for row in a]) % self.base.n

    def is_unit(self, a) -> bool:
        return math.gcd(self.determinant(a), self.base.n) == 1

    def inverse(self, a):
        n = self.base.n
        det = self.determinant(a)
        if math.gcd(det, n) != 1:
            raise NonUnitError(
                f"{self.format_element(a)} has non-unit determinant {det} in {self}"
            )
        dinv = pow(det, -1, n)
        k = self.size
        rows = [list(row) for row in a]
        adj = [
            [(-1) ** (i + j) * _int_det(_minor(rows, j, i)) for j in range(k)]
            for i in range(k)
        ]
        return tuple(tuple((dinv * adj[i][j]) % n for j in range(k)) for i in range(k))

    def central_units(self):
        # center of a full matrix ring over a commutative base: scalar matrices
        cache = getattr(self, "_central", None)
        if cache is None:
            k = self.size
            cache = tuple(
                tuple(tuple(u if i == j else 0 for j in range(k)) for i in range(k))
                for u in self.base.central_units()
            )
            self._central = cache
        return cache

    def parse_element(self, text: str):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raise RingParseError(f"cannot parse {text!r} as an element of {self}") from None
        k, n = self.size, self.base.n
        ok = (
            isinstance(raw, list)
            and len(raw) == k
            and all(
                isinstance(row, list)
                and len(row) == k
                and all(isinstance(v, int) and not isinstance(v, bool) for v in row)
                for row in raw
            )
        )
        if not ok:
            raise RingParseError(f"{text!r} is not a {k}x{k} integer matrix for {self}")
        return tuple(tuple(v % n for v in row) for row in raw)

    def format_element(self, a) -> str:
        return json.dumps([list(row) for row in a], separators=(",", ":"))

    def __str__(self):
        return f"M({self.size},{self.base})"

    __repr__ = __str__

    def __eq__(self, other):
        return (
            isinstance(other, MatrixRing)
            and other.size == self.size
            and other.base == self.base
        )

    def __hash__(self):
        return hash(("Matrix", self.size, self.base.n))


def _minor(rows, i, j):
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def _int_det(rows) -> int:
    """Laplace expansion over the integers; fine for desk-scale sizes."""
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a == 0:
            continue
        total += (-1) ** j * a * _int_det(_minor(rows, 0, j))
    return total


def _split_top_level(text: str):
    """Split on commas that are not nested inside parentheses or brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise RingParseError(f"unbalanced brackets in {text!r}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise RingParseError(f"unbalanced brackets in {text!r}")
    parts.append(text[start:])
    return parts


_ZMOD_RE = re.compile(r"Z/(\d+)\Z")
_MATRIX_RE = re.compile(r"M\((\d+),Z/(\d+)\)\Z")


def _parse_atom(token: str) -> Ring:
    t = token.strip()
    m = _ZMOD_RE.fullmatch(t)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise RingParseError(f"modulus below 2 in spec token {t!r}")
        return ZMod(n)
    m = _MATRIX_RE.fullmatch(t)
    if m:
        k, n = int(m.group(1)), int(m.group(2))
        if k < 1:
            raise RingParseError(f"matrix size below 1 in spec token {t!r}")
        if n < 2:
            raise RingParseError(f"modulus below 2 in spec token {t!r}")
        return MatrixRing(k, ZMod(n))
    raise RingParseError(f"cannot parse ring spec token {t!r}")


def parse_ring_spec(text: str) -> Ring:
    """Parse "Z/n", "M(k,Z/n)", or " x "-joined products of those."""
    if not isinstance(text, str) or not text.strip():
        raise RingParseError(f"empty ring spec {text!r}")
    parts = text.strip().split(" x ")
    if len(parts) == 1:
        return _parse_atom(parts[0])
    return ProductRing(tuple(_parse_atom(p) for p in parts))
