"""Exact rational generating functions: expansion, Padé fitting and verification.

Polynomials are coefficient lists in ascending powers of ``t``.  Everything is
done with Python integers and :class:`fractions.Fraction`; nothing is floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path

from .errors import InsufficientCoefficientsError

# -- polynomial helpers ------------------------------------------------------------


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def poly_mul(*polys) -> list[int]:
    out = [1]
    for p in polys:
        prod = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                prod[i + j] += a * b
        out = prod
    return _trim(out)


def _divmod(a: list[Fraction], b: list[Fraction]):
    a, b = _trim(a), _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and any(r):
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = _trim(r[:-1]) if len(r) > 1 else [Fraction(0)]
        if len(r) < len(b):
            break
    return _trim(q), _trim(r)


def poly_gcd(a, b) -> list[Fraction]:
    a = _trim([Fraction(v) for v in a])
    b = _trim([Fraction(v) for v in b])
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def _primitive_pair(num: list[Fraction], den: list[Fraction]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Clear denominators, divide out the content, make ``den(0) > 0``."""
    vals = [Fraction(v) for v in num + den]
    lcm = reduce(lambda x, y: x * y // math.gcd(x, y), (v.denominator for v in vals), 1)
    ints = [int(v * lcm) for v in vals]
    g = reduce(math.gcd, ints, 0) or 1
    ints = [v // g for v in ints]
    n, d = ints[: len(num)], ints[len(num) :]
    if d[0] < 0:
        n, d = [-v for v in n], [-v for v in d]
    return tuple(_trim(n)), tuple(_trim(d))


def format_poly(p, var: str = "t") -> str:
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' if mono else ''}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str) -> list[int]:
    """Comma-separated ascending coefficients, e.g. ``"1,-2"`` for 1 - 2t."""
    try:
        return _trim([int(v) for v in text.replace(" ", "").split(",") if v != ""])
    except ValueError:
        raise ValueError(f"cannot read polynomial coefficients from {text!r}") from None


# -- rational functions -------------------------------------------------------------


@dataclass(frozen=True)
class RationalFn:
    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        if not self.den or self.den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")

    @classmethod
    def from_factors(cls, num_factors, den_factors, sign: int = 1) -> RationalFn:
        num = [sign * c for c in poly_mul(*num_factors)]
        return cls(tuple(num), tuple(poly_mul(*den_factors)))

    def canonical(self) -> RationalFn:
        """Coprime integer form with content 1 and positive denominator constant."""
        g = poly_gcd(self.num, self.den)
        num, _ = _divmod([Fraction(v) for v in self.num], g)
        den, _ = _divmod([Fraction(v) for v in self.den], g)
        return RationalFn(*_primitive_pair(num, den))

    @property
    def degrees(self) -> tuple[int, int]:
        return len(_trim(list(self.num))) - 1, len(_trim(list(self.den))) - 1

    def __str__(self):
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


@dataclass
class Series:
    coeffs: list[int]
    label: str = ""

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]


def expand(r: RationalFn, N: int) -> list[int]:
    """First ``N + 1`` Taylor coefficients of ``r`` at 0."""
    num, den = list(r.num), list(r.den)
    d0 = den[0]
    out: list[Fraction] = []
    for k in range(N + 1):
        acc = Fraction(num[k] if k < len(num) else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    result = []
    for k, v in enumerate(out):
        if v.denominator != 1:
            raise ValueError(f"coefficient {k} is not an integer ({v})")
        result.append(int(v))
    return result


# -- fitting ------------------------------------------------------------------------


def _solve(rows: list[list[Fraction]], rhs: list[Fraction], unknowns: int) -> list[Fraction] | None:
    """Gaussian elimination; free variables set to 0, ``None`` if inconsistent."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(unknowns):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * unknowns
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return x


def pade_fit(coeffs, d_num: int, d_den: int) -> RationalFn | None:
    """Rational function of degrees at most ``(d_num, d_den)`` matching every coefficient.

    The first ``d_num + d_den + 1`` coefficients determine the candidate; all the
    others must agree with its expansion.  Returns ``None`` when no such function
    exists.  Needs at least one coefficient beyond the fit window.
    """
    c = [int(v) for v in coeffs]
    window = d_num + d_den + 1
    if d_num < 0 or d_den < 0:
        raise ValueError("degrees must be non-negative")
    if len(c) < window + 1:
        raise InsufficientCoefficientsError(
            f"degrees ({d_num}, {d_den}) need at least {window + 1} coefficients, got {len(c)}"
        )
    get = lambda k: Fraction(c[k]) if k >= 0 else Fraction(0)  # noqa: E731
    # Q = 1 + q_1 t + ... ; coefficients d_num+1 .. d_num+d_den of c*Q vanish
    rows = [[get(k - j) for j in range(1, d_den + 1)] for k in range(d_num + 1, window)]
    rhs = [-get(k) for k in range(d_num + 1, window)]
    q = _solve(rows, rhs, d_den) if d_den else []
    if q is None:
        return None
    den = [Fraction(1)] + q
    num = [sum((den[j] * get(k - j) for j in range(0, min(k, d_den) + 1)), Fraction(0)) for k in range(d_num + 1)]
    n_int, d_int = _primitive_pair(num, den)
    cand = RationalFn(n_int, d_int).canonical()
    try:
        if expand(cand, len(c) - 1) != c:
            return None
    except ValueError:
        return None
    return cand


@dataclass
class FitResult:
    fn: RationalFn
    d_num: int
    d_den: int
    surplus: int


def find_fit(coeffs, max_total: int, min_surplus: int = 3) -> FitResult | None:
    """Minimal-degree fit: total degree ascending, ties broken by the smaller denominator degree.

    A pair of degrees is tried only if the data leave at least ``min_surplus``
    coefficients beyond its fit window.
    """
    c = list(coeffs)
    for total in range(max_total + 1):
        if len(c) < total + 1 + min_surplus:
            break
        for d_den in range(total + 1):
            d_num = total - d_den
            fn = pade_fit(c, d_num, d_den)
            if fn is not None:
                return FitResult(fn, d_num, d_den, len(c) - total - 1)
    return None


# -- verification ------------------------------------------------------------------


@dataclass
class VerifyReport:
    checked: int
    first_mismatch: int | None = None
    expected: int | None = None
    actual: int | None = None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def __str__(self):
        if self.ok:
            return f"full match on {self.checked} coefficients"
        return f"first mismatch at t^{self.first_mismatch}: series has {self.actual}, function gives {self.expected}"


def verify(series, r: RationalFn) -> VerifyReport:
    coeffs = list(series.coeffs if isinstance(series, Series) else series)
    if not coeffs:
        return VerifyReport(0)
    ref = expand(r, len(coeffs) - 1)
    for k, (a, b) in enumerate(zip(coeffs, ref)):
        if a != b:
            return VerifyReport(k, k, b, a)
    return VerifyReport(len(coeffs))


# -- plain-text series files ----------------------------------------------------------


def read_series(path, label: str = "") -> Series:
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return Series(values, label or Path(path).stem)


def write_series(path, coeffs) -> None:
    Path(path).write_text("".join(f"{int(v)}\n" for v in coeffs))
