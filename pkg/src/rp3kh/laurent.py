"""Exact Laurent polynomials in the two variables ``A`` and ``z``.

Coefficients are Python integers, so there is no overflow at any size.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Tuple

Exponent = Tuple[int, int]


class LaurentPoly2:
    """Immutable element of Z[A, A^-1, z, z^-1].

    Terms are stored as ``{(a, z): coeff}`` with no zero coefficients.

    >>> A = LaurentPoly2.A()
    >>> str((A + A ** -1) ** 2)
    'A^2 + 2 + A^-2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        acc: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (a, z), c in items:
            key = (int(a), int(z))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, a: int = 0, z: int = 0, coeff: int = 1) -> "LaurentPoly2":
        return cls({(a, z): coeff})

    @classmethod
    def A(cls, power: int = 1) -> "LaurentPoly2":
        return cls({(power, 0): 1})

    @classmethod
    def z(cls, power: int = 1) -> "LaurentPoly2":
        return cls({(0, power): 1})

    @classmethod
    def delta(cls) -> "LaurentPoly2":
        """The trivial-circle weight ``-A^2 - A^-2``."""
        return cls({(2, 0): -1, (-2, 0): -1})

    # accessors

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def coeff(self, a: int, z: int = 0) -> int:
        return self._terms.get((a, z), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def in_A_only(self) -> bool:
        return all(z == 0 for _, z in self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms ordered by A-exponent descending, then z-exponent descending."""
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly2":
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for (a1, z1), c1 in self._terms.items():
            for (a2, z2), c2 in other._terms.items():
                key = (a1 + a2, z1 + z2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentPoly2":
        return LaurentPoly2({k: c * v for k, v in self._terms.items()})

    def shift(self, a: int = 0, z: int = 0) -> "LaurentPoly2":
        """Multiply by the monomial ``A^a z^z``."""
        return LaurentPoly2({(ka + a, kz + z): v for (ka, kz), v in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly2":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((a, z), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly2({(a * n, z * n): c ** (-n)})
        result = LaurentPoly2.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other})
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # printing

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((a, z), c) in enumerate(self.sorted_terms()):
            mono = _monomial_str(a, z)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly2({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self._terms)


def _var_str(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


def _monomial_str(a: int, z: int) -> str:
    return "*".join(s for s in (_var_str("A", a), _var_str("z", z)) if s)


