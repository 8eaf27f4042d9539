"""Exact truncated power series in q and the generating-function catalog."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0..c_N`` of a series known modulo ``q^(N+1)``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def from_list(cls, coeffs: Iterable[int], order: int) -> "TruncatedSeries":
        cs = list(coeffs)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_list([1], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff: int = 1) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if degree <= order:
            cs[degree] = coeff
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries(tuple(a * other for a in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def dump(self) -> str:
        """One ``n c_n`` line per coefficient, the OEIS b-file layout."""
        return "".join(f"{n} {c}\n" for n, c in enumerate(self.coeffs))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    n = min(a.order, b.order)
    out = [0] * (n + 1)
    bc = b.coeffs
    for i, x in enumerate(a.coeffs[: n + 1]):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * bc[j]
    return TruncatedSeries(tuple(out))


def geom_factor(m: int, sign: int, exponent: int, order: int) -> TruncatedSeries:
    """``(1 - q^m)^(-exponent)`` for ``sign=-1``, ``(1 + q^m)^exponent`` for ``sign=+1``."""
    if m < 1 or exponent < 0:
        raise ValueError("need m >= 1 and a nonnegative exponent")
    cs = [0] * (order + 1)
    if sign > 0:
        for j in range(exponent + 1):
            if j * m > order:
                break
            cs[j * m] = comb(exponent, j)
    else:
        for j in range(order // m + 1):
            # coefficient of x^j in (1-x)^(-e)
            cs[j * m] = comb(exponent + j - 1, j) if exponent else int(j == 0)
    return TruncatedSeries(tuple(cs))


def product(factors: Iterable[TruncatedSeries], order: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(order)
    for f in factors:
        acc = mul(acc, f)
    return acc


def powers(base: int, order: int) -> list[int]:
    """Powers of ``base`` not exceeding ``order``; only these factors touch q^0..q^order."""
    out, p = [], 1
    while p <= order:
        out.append(p)
        p *= base
    return out


def dary_product(d: int, order: int) -> TruncatedSeries:
    """prod over i of 1/(1 - q^(d^i)); its coefficients count d-ary partitions."""
    return product((geom_factor(p, -1, 1, order) for p in powers(d, order)), order)


def binary_product(order: int) -> TruncatedSeries:
    return dary_product(2, order)


def _poly(coeffs: dict[int, int], order: int) -> TruncatedSeries:
    cs = [0] * (order + 1)
    for deg, c in coeffs.items():
        if deg <= order:
            cs[deg] += c
    return TruncatedSeries(tuple(cs))


def gf_a(order: int) -> TruncatedSeries:
    return mul(_poly({2: 1}, order), mul(geom_factor(1, -1, 2, order), binary_product(order)))


def gf_b(order: int) -> TruncatedSeries:
    pre = product([_poly({3: 1}, order), geom_factor(1, -1, 1, order), geom_factor(2, -1, 1, order)], order)
    return mul(pre, binary_product(order))


def gf_c(order: int) -> TruncatedSeries:
    pre = product(
        [_poly({4: 1, 5: 1, 6: 2}, order), geom_factor(2, -1, 1, order), geom_factor(4, -1, 1, order)],
        order,
    )
    return mul(pre, binary_product(order))


def gf_a_d(d: int, order: int) -> TruncatedSeries:
    return mul(_poly({2: 1}, order), mul(geom_factor(1, -1, 2, order), dary_product(d, order)))


def gf_b_d(d: int, order: int) -> TruncatedSeries:
    pre = product(
        [_poly({d + 1: 1}, order), geom_factor(1, -1, 1, order), geom_factor(d, -1, 1, order)], order
    )
    return mul(pre, dary_product(d, order))


def gf_q(order: int) -> TruncatedSeries:
    return product((geom_factor(2**i, +1, i + 3, order) for i in range(len(powers(2, order)))), order)


def gf_color(order: int) -> TruncatedSeries:
    return mul(_poly({2: 1}, order), gf_q(order))


def gf_q_pow(d: int, order: int) -> TruncatedSeries:
    """prod over i of (1 + q^(2^i))^(floor(i/d) + 3)."""
    return product(
        (geom_factor(2**i, +1, i // d + 3, order) for i in range(len(powers(2, order)))), order
    )


def gf_color_pow(d: int, order: int) -> TruncatedSeries:
    return mul(_poly({2: 1}, order), gf_q_pow(d, order))


def gf_q_odd(d: int, order: int) -> TruncatedSeries:
    """prod (1 + q^(2^n))^2 times prod over i, j of (1 + q^(2^i (2d+1)^j))."""
    odd = 2 * d + 1
    factors = [geom_factor(p, +1, 2, order) for p in powers(2, order)]
    for t in powers(odd, order):
        factors += [geom_factor(t * p, +1, 1, order) for p in powers(2, order // t)]
    return product(factors, order)


def gf_color_odd(d: int, order: int) -> TruncatedSeries:
    return mul(_poly({2: 1}, order), gf_q_odd(d, order))


GF_CATALOG: dict[str, Callable[..., TruncatedSeries]] = {
    "GF_A": gf_a,
    "GF_B": gf_b,
    "GF_C": gf_c,
    "GF_A_D": gf_a_d,
    "GF_B_D": gf_b_d,
    "GF_COLOR": gf_color,
    "GF_Q": gf_q,
    "GF_COLOR_POW": gf_color_pow,
    "GF_Q_POW": gf_q_pow,
    "GF_COLOR_ODD": gf_color_odd,
    "GF_Q_ODD": gf_q_odd,
}

_PARAMETRIZED = {"GF_A_D", "GF_B_D", "GF_COLOR_POW", "GF_Q_POW", "GF_COLOR_ODD", "GF_Q_ODD"}


def gf(name: str, order: int, d: int | None = None) -> TruncatedSeries:
    """Look up a generating function by catalog name and expand it through ``q^order``."""
    try:
        build = GF_CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown generating function {name!r}") from None
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    if name in _PARAMETRIZED:
        if d is None:
            raise ValueError(f"{name} needs the parameter d")
        return build(d, order)
    return build(order)


def identity_check_euler(order: int, shift: int = 0) -> bool:
    """Check 1/(1 - q^(2^shift)) = prod over i of (1 + q^(2^(i+shift))) through q^order."""
    step = 2**shift
    lhs = geom_factor(step, -1, 1, order)
    rhs = product((geom_factor(p, +1, 1, order) for p in powers(2, order) if p >= step), order)
    return lhs == rhs
