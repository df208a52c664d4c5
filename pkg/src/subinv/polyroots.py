"""Exact univariate polynomials over the rationals and certified real roots.

Polynomials are coefficient lists in ascending degree order with Fraction
entries and no trailing zeros. Root finding proceeds in two stages: all
rational roots are split off exactly (divisor enumeration plus synthetic
division), then the remaining square-free factors are isolated with Sturm
sequences and refined by bisection to a requested interval width. After the
rational stage no remaining root is rational, so bisection midpoints are
never roots and sign counts stay unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import ZeroPolynomial

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_WIDTH = Fraction(1, 10**12)

# divisor enumeration gives up beyond this (trial division cost cap)
_FACTOR_LIMIT = 10**12


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def evaluate(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO)
                 for i in range(n)])


def scale(c, p):
    c = Fraction(c)
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p, q):
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [ZERO] * max(0, len(r) - len(q) + 1)
    lead = q[-1]
    while len(r) >= len(q) and trim(r):
        r = trim(r)
        if len(r) < len(q):
            break
        f = r[-1] / lead
        k = len(r) - len(q)
        quot[k] = f
        for i, b in enumerate(q):
            r[k + i] -= f * b
        r.pop()
    return trim(quot), trim(r)


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def monic(p):
    p = trim(p)
    return [c / p[-1] for c in p] if p else p


def poly_gcd(p, q):
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def squarefree_decomposition(p):
    """Yun's algorithm. Returns [(factor, multiplicity), ...] with factors
    monic, square-free, pairwise coprime."""
    p = monic(p)
    if degree(p) < 1:
        return []
    g = poly_gcd(p, derivative(p))
    if degree(g) == 0:
        return [(p, 1)]
    out = []
    c = divmod_poly(p, g)[0]
    d = add(divmod_poly(derivative(p), g)[0], scale(-1, derivative(c)))
    i = 1
    while degree(c) > 0:
        f = poly_gcd(c, d)
        if degree(f) > 0:
            out.append((f, i))
        c2 = divmod_poly(c, f)[0]
        d = add(divmod_poly(d, f)[0], scale(-1, derivative(c2)))
        c = c2
        i += 1
    return out


# -- rational roots -----------------------------------------------------------

def _divisors(n):
    n = abs(n)
    if n == 0:
        return None
    if n > _FACTOR_LIMIT:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _integer_clear(p):
    """Scale to integer coefficients and divide out the content."""
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    return ints


def rational_roots(p):
    """All rational roots with multiplicities, and the deflated cofactor.

    Returns (roots, remainder) where roots is a list of (Fraction, mult) and
    remainder has no rational roots. When the integer coefficients are too
    large to enumerate divisors, returns ([], p) and lets Sturm isolation
    handle everything as intervals.
    """
    p = trim(p)
    roots = []
    # strip zero roots first
    z = 0
    while p and p[0] == 0:
        p = p[1:]
        z += 1
    if z:
        roots.append((ZERO, z))
    if degree(p) < 1:
        return roots, p
    ints = _integer_clear(p)
    d0 = _divisors(ints[0])
    dn = _divisors(ints[-1])
    if d0 is None or dn is None:
        return roots, p
    candidates = set()
    for num in d0:
        for den in dn:
            if gcd(num, den) == 1:
                candidates.add(Fraction(num, den))
                candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        if evaluate(p, cand) != 0:
            continue
        mult = 0
        while True:
            q, r = divmod_poly(p, [-cand, ONE])
            if r:
                break
            p, mult = q, mult + 1
        roots.append((cand, mult))
    return roots, p


# -- Sturm isolation ----------------------------------------------------------

def sturm_chain(p):
    chain = [trim(p), derivative(p)]
    while trim(chain[-1]):
        rem = divmod_poly(chain[-2], chain[-1])[1]
        chain.append(scale(-1, rem))
    chain.pop()
    return chain


def sign_variations(chain, x):
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p):
    """Cauchy bound: all real roots lie in (-B, B)."""
    p = trim(p)
    lead = abs(p[-1])
    return ONE + max(abs(c) for c in p) / lead


@dataclass(frozen=True)
class Root:
    """A certified real root: exact rational value, or an isolating interval."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    value: Fraction | None = None  # set iff the root is exactly rational

    @property
    def is_exact(self):
        return self.value is not None

    def midpoint(self):
        return self.value if self.value is not None else (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())


def _isolate_squarefree(p, width):
    """Isolating intervals for a square-free polynomial with no rational
    roots, refined to the requested width."""
    if degree(p) < 1:
        return []
    chain = sturm_chain(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B, sign_variations(chain, -B) - sign_variations(chain, B))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(chain, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        vm = sign_variations(chain, mid)
        stack.append((lo, mid, sign_variations(chain, lo) - vm))
        stack.append((mid, hi, vm - sign_variations(chain, hi)))
    out.sort()
    return out


def _refine(chain, lo, hi, width):
    vlo = sign_variations(chain, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        vm = sign_variations(chain, mid)
        if vlo - vm == 1:
            hi = mid
        else:
            lo, vlo = mid, vm
    return (lo, hi)


def real_roots(p, width=DEFAULT_WIDTH):
    """All real roots of p, sorted ascending.

    Rational roots come back exact with multiplicity; the rest as isolating
    intervals of width at most ``width``. Raises ZeroPolynomial on the zero
    polynomial.
    """
    p = trim(p)
    if not p:
        raise ZeroPolynomial("zero polynomial has no isolated roots")
    if degree(p) == 0:
        return []
    rats, rest = rational_roots(p)
    roots = [Root(lo=v, hi=v, multiplicity=m, value=v) for v, m in rats]
    for factor, mult in squarefree_decomposition(rest):
        for lo, hi in _isolate_squarefree(factor, width):
            roots.append(Root(lo=lo, hi=hi, multiplicity=mult))
    roots.sort(key=lambda r: r.midpoint())
    return roots


def interpolate(points, values):
    """Exact Lagrange interpolation through (points[i], values[i])."""
    n = len(points)
    if len(values) != n:
        raise ValueError("points/values length mismatch")
    result = []
    for i in range(n):
        num = [ONE]
        denom = ONE
        for j in range(n):
            if j == i:
                continue
            num = mul(num, [-points[j], ONE])
            denom *= points[i] - points[j]
        result = add(result, scale(values[i] / denom, num))
    return trim(result)
