"""Exact sparse polynomials in the dimension variables ``n`` and ``p``.

Terms are stored as ``{(e_n, e_p): coeff}`` with Python ints, so coefficients
never overflow. Zero coefficients are never stored.
"""

from __future__ import annotations

from typing import Iterable, Mapping

Exponent = tuple[int, int]


class MomentPolynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for (en, ep), c in items:
            if en < 0 or ep < 0:
                raise ValueError(f"negative exponent {(en, ep)}")
            acc[(en, ep)] = acc.get((en, ep), 0) + int(c)
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int]) -> "MomentPolynomial":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int = 1, en: int = 0, ep: int = 0) -> "MomentPolynomial":
        return cls._raw({(en, ep): coeff} if coeff else {})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MomentPolynomial.monomial(other)
        if not isinstance(other, MomentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "MomentPolynomial | int") -> "MomentPolynomial":
        if isinstance(other, int):
            other = MomentPolynomial.monomial(other)
        if not isinstance(other, MomentPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MomentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MomentPolynomial":
        return MomentPolynomial._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "MomentPolynomial | int") -> "MomentPolynomial":
        if isinstance(other, int):
            other = MomentPolynomial.monomial(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "MomentPolynomial":
        return MomentPolynomial.monomial(other) - self

    def __mul__(self, other: "MomentPolynomial | int") -> "MomentPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, MomentPolynomial):
            return NotImplemented
        if len(other._terms) < len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out: dict[Exponent, int] = {}
        for (an, ap), ac in a.items():
            for (bn, bp), bc in b.items():
                k = (an + bn, ap + bp)
                out[k] = out.get(k, 0) + ac * bc
        return MomentPolynomial._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MomentPolynomial":
        if k < 0:
            raise ValueError("negative power")
        result, base = poly_one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "MomentPolynomial":
        if not c:
            return poly_zero()
        return MomentPolynomial._raw({k: v * c for k, v in self._terms.items()})

    def shift(self, en: int = 0, ep: int = 0, c: int = 1) -> "MomentPolynomial":
        """Multiply by the monomial ``c * n^en * p^ep``."""
        if not c:
            return poly_zero()
        return MomentPolynomial._raw(
            {(a + en, b + ep): v * c for (a, b), v in self._terms.items()}
        )

    def evaluate(self, n: int = 0, p: int = 0) -> int:
        return sum(c * n**en * p**ep for (en, ep), c in self._terms.items())

    def degree_n(self) -> int:
        """Largest power of ``n``; -1 for the zero polynomial."""
        return max((en for en, _ in self._terms), default=-1)

    def degree_p(self) -> int:
        return max((ep for _, ep in self._terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        # p-major lexicographic descending, so p^2*n precedes p*n^2
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]), reverse=True)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((en, ep), c) in enumerate(self.sorted_terms()):
            factors = []
            if ep:
                factors.append("p" if ep == 1 else f"p^{ep}")
            if en:
                factors.append("n" if en == 1 else f"n^{en}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag), *factors])
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def to_json(self) -> list[dict]:
        return [{"en": en, "ep": ep, "coeff": str(c)} for (en, ep), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "MomentPolynomial":
        terms: dict[Exponent, int] = {}
        for t in data:
            key = (int(t["en"]), int(t["ep"]))
            if key in terms:
                raise ValueError(f"duplicate term {key}")
            coeff = t["coeff"]
            if not isinstance(coeff, str):
                raise ValueError("coefficients are encoded as decimal strings")
            terms[key] = int(coeff)
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MomentPolynomial({self.to_text()!r})"


def poly_zero() -> MomentPolynomial:
    return MomentPolynomial._raw({})


def poly_one() -> MomentPolynomial:
    return MomentPolynomial._raw({(0, 0): 1})


def poly_var_n() -> MomentPolynomial:
    return MomentPolynomial._raw({(1, 0): 1})


def poly_var_p() -> MomentPolynomial:
    return MomentPolynomial._raw({(0, 1): 1})


def poly_add(a: MomentPolynomial, b: MomentPolynomial) -> MomentPolynomial:
    return a + b


def poly_mul(a: MomentPolynomial, b: MomentPolynomial) -> MomentPolynomial:
    return a * b


def poly_scale(a: MomentPolynomial, c: int) -> MomentPolynomial:
    return a.scale(c)


def poly_eval(a: MomentPolynomial, n_val: int, p_val: int = 0) -> int:
    return a.evaluate(n_val, p_val)
