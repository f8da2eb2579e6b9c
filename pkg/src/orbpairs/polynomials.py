"""Exact polynomial arithmetic for contact-order computations.

Univariate polynomials over Q are tuples of Fractions in ascending degree.
Homogeneous binary forms in (s, u) wrap such a tuple indexed by the s-power;
homogeneous ternary forms in (x0, x1, x2) are sparse monomial maps.  Full
factorization over Q is implemented here: content extraction, Yun squarefree
decomposition by derivative gcds, Berlekamp factoring modulo a small prime,
linear Hensel lifting past the Mignotte bound, and subset recombination with
exact trial division.  Every factorization is verified by multiplying back
before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .orbcore import DomainError

QPoly = tuple[Fraction, ...]
IPoly = tuple[int, ...]


# ---------------------------------------------------------------------------
# univariate arithmetic over Q


def qpoly(coeffs: Iterable[Fraction | int]) -> QPoly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def qdeg(f: QPoly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def qsub(f: QPoly, g: QPoly) -> QPoly:
    n = max(len(f), len(g))
    return qpoly(
        [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]
    )


def qmul(f: QPoly, g: QPoly) -> QPoly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return qpoly(out)


def qscale(f: QPoly, c: Fraction | int) -> QPoly:
    return qpoly([a * c for a in f])


def qdivmod(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    quo = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    inv = 1 / g[-1]
    for i in range(len(rem) - len(g), -1, -1):
        c = rem[i + len(g) - 1] * inv
        if c == 0:
            continue
        quo[i] = c
        for j, b in enumerate(g):
            rem[i + j] -= c * b
    return qpoly(quo), qpoly(rem)


def qdiv_exact(f: QPoly, g: QPoly) -> QPoly:
    q, r = qdivmod(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def qderiv(f: QPoly) -> QPoly:
    return qpoly([i * f[i] for i in range(1, len(f))])


def qmonic(f: QPoly) -> QPoly:
    if not f:
        return f
    return qscale(f, 1 / f[-1])


def qgcd(f: QPoly, g: QPoly) -> QPoly:
    """Monic gcd by the Euclidean algorithm over Q."""
    a, b = f, g
    while b:
        a, b = b, qdivmod(a, b)[1]
    return qmonic(a)


def content_primitive(f: QPoly) -> tuple[Fraction, IPoly]:
    """Write f = content * primitive with an integer primitive part of
    positive leading coefficient."""
    if not f:
        return Fraction(0), ()
    denom = math.lcm(*(c.denominator for c in f))
    ints = [c.numerator * (denom // c.denominator) for c in f]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, denom), tuple(c // g for c in ints)


def squarefree_decomposition(f: QPoly) -> list[tuple[IPoly, int]]:
    """Yun's algorithm via derivative gcds.

    Returns pairwise-coprime primitive squarefree parts with multiplicities,
    so that f is a constant times the product of part^multiplicity."""
    if qdeg(f) < 1:
        raise DomainError("squarefree decomposition needs degree >= 1")
    out: list[tuple[IPoly, int]] = []
    d = qgcd(f, qderiv(f))
    b = qdiv_exact(f, d)
    c = qdiv_exact(qderiv(f), d)
    z = qsub(c, qderiv(b))
    i = 1
    while qdeg(b) > 0:
        a = qgcd(b, z)
        if qdeg(a) > 0:
            out.append((content_primitive(a)[1], i))
        b = qdiv_exact(b, a)
        c = qdiv_exact(z, a)
        z = qsub(c, qderiv(b))
        i += 1
    return out


# ---------------------------------------------------------------------------
# arithmetic modulo a prime

GFPoly = tuple[int, ...]


def gf_trim(f: Sequence[int], p: int) -> GFPoly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def gf_sub(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    n = max(len(f), len(g))
    return gf_trim(
        [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p
    )


def gf_mul(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return gf_trim(out, p)


def gf_divmod(f: GFPoly, g: GFPoly, p: int) -> tuple[GFPoly, GFPoly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    quo = [0] * max(len(f) - len(g) + 1, 0)
    inv = pow(g[-1], -1, p)
    for i in range(len(rem) - len(g), -1, -1):
        c = rem[i + len(g) - 1] * inv % p
        if c:
            quo[i] = c
            for j, b in enumerate(g):
                rem[i + j] = (rem[i + j] - c * b) % p
    return gf_trim(quo, p), gf_trim(rem, p)


def gf_gcd(f: GFPoly, g: GFPoly, p: int) -> GFPoly:
    a, b = f, g
    while b:
        a, b = b, gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = gf_trim([c * inv for c in a], p)
    return a


def gf_pow_mod(base: GFPoly, e: int, mod: GFPoly, p: int) -> GFPoly:
    result: GFPoly = (1,)
    base = gf_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = gf_divmod(gf_mul(result, base, p), mod, p)[1]
        base = gf_divmod(gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def gf_deriv(f: GFPoly, p: int) -> GFPoly:
    return gf_trim([i * f[i] for i in range(1, len(f))], p)


def gf_inverse_mod(a: GFPoly, mod: GFPoly, p: int) -> GFPoly:
    """Inverse of a modulo (mod, p) by the extended Euclidean algorithm."""
    r0, r1 = mod, gf_divmod(a, mod, p)[1]
    t0: GFPoly = ()
    t1: GFPoly = (1,)
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("element is not invertible")
    inv = pow(r0[0], -1, p)
    return gf_trim([c * inv for c in t0], p)


def _gf_nullspace(matrix: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right nullspace of a square matrix over GF(p)."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    pivot_col_of_row: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if m[r][col] % p), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [c * inv % p for c in m[row]]
        for r in range(n):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[row])]
        pivot_col_of_row.append(col)
        row += 1
        if row == n:
            break
    pivot_cols = set(pivot_col_of_row)
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = [0] * n
        vec[free] = 1
        for r, col in enumerate(pivot_col_of_row):
            vec[col] = (-m[r][free]) % p
        basis.append(vec)
    return basis


def gf_berlekamp(f: GFPoly, p: int) -> list[GFPoly]:
    """Monic irreducible factors of a monic squarefree polynomial mod p."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    xp = gf_pow_mod((0, 1), p, f, p)
    rows: list[list[int]] = []
    cur: GFPoly = (1,)
    for _ in range(n):
        rows.append(list(cur) + [0] * (n - len(cur)))
        cur = gf_divmod(gf_mul(cur, xp, p), f, p)[1]
    for i in range(n):
        rows[i][i] = (rows[i][i] - 1) % p
    transposed = [[rows[r][c] for r in range(n)] for c in range(n)]
    basis = _gf_nullspace(transposed, p)
    count = len(basis)
    if count == 1:
        return [f]
    factors: list[GFPoly] = [f]
    for vec in basis:
        vpoly = gf_trim(vec, p)
        if len(vpoly) <= 1:
            continue
        refined: list[GFPoly] = []
        for u in factors:
            pieces = [u]
            if len(u) - 1 > 1:
                for c in range(p):
                    shifted = gf_sub(vpoly, (c,), p)
                    next_pieces: list[GFPoly] = []
                    for w in pieces:
                        if len(w) - 1 <= 1:
                            next_pieces.append(w)
                            continue
                        g = gf_gcd(w, shifted, p)
                        if 0 < len(g) - 1 < len(w) - 1:
                            next_pieces.append(g)
                            next_pieces.append(gf_divmod(w, g, p)[0])
                        else:
                            next_pieces.append(w)
                    pieces = next_pieces
            refined.extend(pieces)
        factors = refined
        if len(factors) == count:
            break
    return sorted(factors)


# ---------------------------------------------------------------------------
# factorization over Z / Q

_FACTOR_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
)


def _symmetric(c: int, modulus: int) -> int:
    c %= modulus
    return c - modulus if c > modulus // 2 else c


def _imul_mod(f: Sequence[int], g: Sequence[int], modulus: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % modulus
    return out


def _hensel_lift(f: IPoly, modular: list[GFPoly], p: int, k: int) -> list[list[int]]:
    """Lift the congruence f = lc(f) * prod(monic g_i) from mod p to mod p^k
    one linear step at a time; the g_i stay monic throughout."""
    lc = f[-1]
    gs = [list(g) for g in modular]
    inverses: list[GFPoly] = []
    for i, g in enumerate(modular):
        others: GFPoly = (lc % p,)
        for j, h in enumerate(modular):
            if j != i:
                others = gf_mul(others, h, p)
        inverses.append(gf_inverse_mod(others, g, p))
    pj = p
    for _ in range(1, k):
        modulus = pj * p
        prod = [lc % modulus]
        for g in gs:
            prod = _imul_mod(prod, g, modulus)
        err = [
            ((f[i] if i < len(f) else 0) - (prod[i] if i < len(prod) else 0)) % modulus
            for i in range(max(len(f), len(prod)))
        ]
        ebar = gf_trim([c // pj for c in err], p)
        for i, g in enumerate(gs):
            gi = gf_trim(g, p)
            delta = gf_divmod(gf_mul(ebar, inverses[i], p), gi, p)[1]
            for deg, c in enumerate(delta):
                g[deg] = (g[deg] + pj * c) % modulus
        pj = modulus
    return gs


def _zassenhaus(f: IPoly) -> list[IPoly]:
    """Irreducible factors of a primitive squarefree integer polynomial with
    positive leading coefficient."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    prime = None
    for p in _FACTOR_PRIMES:
        if lc % p == 0:
            continue
        fp = gf_trim(f, p)
        if len(fp) - 1 != n:
            continue
        if len(gf_gcd(fp, gf_deriv(fp, p), p)) == 1:
            prime = p
            break
    if prime is None:
        raise ArithmeticError("no usable prime found for factorization")
    p = prime
    inv_lc = pow(lc % p, -1, p)
    monic_fp = gf_trim([c * inv_lc for c in f], p)
    modular = gf_berlekamp(monic_fp, p)
    if len(modular) == 1:
        return [f]

    # lift until p^k exceeds twice 2^n * |f|_2 * |lc|, so the symmetric
    # representative of any lc-adjusted true factor is exact (Mignotte)
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    bound = 2 * (1 << n) * norm2 * abs(lc)
    pk = p
    k = 1
    while pk <= bound:
        pk *= p
        k += 1

    lifted = _hensel_lift(f, modular, p, k)

    result: list[IPoly] = []
    active = list(range(len(lifted)))
    remaining = f
    size = 1
    while 2 * size <= len(active):
        found = False
        for subset in combinations(active, size):
            prod: list[int] = [remaining[-1] % pk]
            for idx in subset:
                prod = _imul_mod(prod, lifted[idx], pk)
            candidate = qpoly([_symmetric(c, pk) for c in prod])
            if qdeg(candidate) < 1:
                continue
            cand_prim = content_primitive(candidate)[1]
            quo, rem = qdivmod(qpoly(remaining), qpoly(cand_prim))
            if not rem and all(c.denominator == 1 for c in quo):
                result.append(cand_prim)
                remaining = tuple(int(c) for c in quo)
                active = [i for i in active if i not in subset]
                found = True
                break
        if not found:
            size += 1
    if len(remaining) - 1 >= 1:
        result.append(content_primitive(qpoly(remaining))[1])
    return sorted(result)


def factor_rational(f: QPoly) -> tuple[Fraction, list[tuple[IPoly, int]]]:
    """Factor a nonzero univariate polynomial over Q.

    Returns (content, factors) with primitive integer irreducible factors of
    positive leading coefficient and their exponents, verified by expanding
    the product back."""
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    if qdeg(f) == 0:
        return f[0], []
    factors: list[tuple[IPoly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for irr in _zassenhaus(part):
            factors.append((irr, mult))
    factors.sort(key=lambda fe: (len(fe[0]), fe[0]))
    check: QPoly = (Fraction(1),)
    for irr, e in factors:
        for _ in range(e):
            check = qmul(check, qpoly(irr))
    content = f[-1] / check[-1]
    if qscale(check, content) != f:
        raise ArithmeticError("factorization self-check failed")
    return content, factors


# ---------------------------------------------------------------------------
# homogeneous binary forms in (s, u)


@dataclass(frozen=True)
class HomogeneousPoly2:
    """A homogeneous polynomial in (s, u); coeffs[i] multiplies s^i u^(d-i)."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise DomainError(f"degree must be nonnegative, got {self.degree}")
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.degree + 1:
            raise DomainError(
                f"degree-{self.degree} form needs {self.degree + 1} coefficients, got {len(cs)}"
            )
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly2":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def one(cls) -> "HomogeneousPoly2":
        return cls(0, (Fraction(1),))

    @classmethod
    def variable(cls, name: str) -> "HomogeneousPoly2":
        if name == "s":
            return cls(1, (Fraction(0), Fraction(1)))
        if name == "u":
            return cls(1, (Fraction(1), Fraction(0)))
        raise DomainError(f"unknown parameter variable {name!r}")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def mul(self, other: "HomogeneousPoly2") -> "HomogeneousPoly2":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return HomogeneousPoly2(self.degree + other.degree, tuple(out))

    def add(self, other: "HomogeneousPoly2") -> "HomogeneousPoly2":
        if self.degree != other.degree:
            raise DomainError("cannot add forms of different degrees")
        return HomogeneousPoly2(
            self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def scale(self, c: Fraction | int) -> "HomogeneousPoly2":
        return HomogeneousPoly2(self.degree, tuple(a * c for a in self.coeffs))

    def power(self, e: int) -> "HomogeneousPoly2":
        result = HomogeneousPoly2.one()
        for _ in range(e):
            result = result.mul(self)
        return result

    def s_valuation(self) -> int:
        """Exponent of s dividing the form (form must be nonzero)."""
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def u_valuation(self) -> int:
        """Exponent of u dividing the form (form must be nonzero)."""
        return self.degree - max(i for i, c in enumerate(self.coeffs) if c != 0)

    def canonical(self) -> "HomogeneousPoly2":
        """Primitive integer form, positive at the top s-power: the canonical
        representative used to group irreducible factors across pullbacks."""
        if self.is_zero:
            raise DomainError("the zero form has no canonical representative")
        denom = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (denom // c.denominator) for c in self.coeffs]
        g = math.gcd(*ints)
        top = max(i for i, c in enumerate(ints) if c != 0)
        if ints[top] < 0:
            g = -g
        return HomogeneousPoly2(self.degree, tuple(Fraction(c, g) for c in ints))

    def factor(self) -> tuple[Fraction, list[tuple["HomogeneousPoly2", int]]]:
        """Factor into canonical irreducible forms with exponents.

        Powers of s and of u split off first; the remainder dehomogenizes to
        a univariate polynomial with nonzero constant term and full degree,
        which is factored over Q and homogenized back."""
        if self.is_zero:
            raise DomainError("cannot factor the zero form")
        sval = self.s_valuation()
        uval = self.u_valuation()
        out: list[tuple[HomogeneousPoly2, int]] = []
        if sval:
            out.append((HomogeneousPoly2.variable("s"), sval))
        if uval:
            out.append((HomogeneousPoly2.variable("u"), uval))
        core = qpoly(self.coeffs[sval : self.degree - uval + 1])
        if qdeg(core) < 1:
            return core[0], out
        content, factors = factor_rational(core)
        for irr, e in factors:
            form = HomogeneousPoly2(len(irr) - 1, tuple(Fraction(c) for c in irr))
            out.append((form, e))
        out.sort(key=lambda fe: (fe[0].degree, fe[0].coeffs))
        return content, out

    def __str__(self) -> str:
        return render_poly2(self)


def poly2_gcd(f: HomogeneousPoly2, g: HomogeneousPoly2) -> HomogeneousPoly2:
    """gcd of two nonzero homogeneous forms, in canonical form."""
    if f.is_zero or g.is_zero:
        raise DomainError("gcd with the zero form")
    sval = min(f.s_valuation(), g.s_valuation())
    uval = min(f.u_valuation(), g.u_valuation())
    core_f = qpoly(f.coeffs[f.s_valuation() : f.degree - f.u_valuation() + 1])
    core_g = qpoly(g.coeffs[g.s_valuation() : g.degree - g.u_valuation() + 1])
    core = qgcd(core_f, core_g)
    base = HomogeneousPoly2(qdeg(core), core)
    result = (
        HomogeneousPoly2.variable("s")
        .power(sval)
        .mul(HomogeneousPoly2.variable("u").power(uval))
        .mul(base)
    )
    return result.canonical()


# ---------------------------------------------------------------------------
# homogeneous ternary forms in (x0, x1, x2)


@dataclass(frozen=True)
class HomogeneousPoly3:
    """A homogeneous form in (x0, x1, x2) as a sparse monomial map."""

    degree: int
    terms: tuple[tuple[tuple[int, int, int], Fraction], ...]

    def __post_init__(self) -> None:
        seen: dict[tuple[int, int, int], Fraction] = {}
        for expo, c in self.terms:
            i, j, k = expo
            if i < 0 or j < 0 or k < 0 or i + j + k != self.degree:
                raise DomainError(
                    f"monomial {expo} is not homogeneous of degree {self.degree}"
                )
            c = Fraction(c)
            if c != 0:
                seen[expo] = seen.get(expo, Fraction(0)) + c
        canon = tuple(sorted((e, c) for e, c in seen.items() if c != 0))
        object.__setattr__(self, "terms", canon)

    @classmethod
    def from_dict(
        cls, degree: int, terms: Mapping[tuple[int, int, int], Fraction | int]
    ) -> "HomogeneousPoly3":
        return cls(degree, tuple((e, Fraction(c)) for e, c in terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def substitute(
        self,
        x0: HomogeneousPoly2,
        x1: HomogeneousPoly2,
        x2: HomogeneousPoly2,
    ) -> HomogeneousPoly2:
        """Pull the form back along a degree-d parametrization; the result is
        homogeneous of degree d * deg(form) in (s, u)."""
        if not (x0.degree == x1.degree == x2.degree):
            raise DomainError("parametrization coordinates must share one degree")
        d = x0.degree
        total = HomogeneousPoly2.zero(d * self.degree)
        powers: dict[tuple[int, int], HomogeneousPoly2] = {}

        def power_of(which: int, e: int) -> HomogeneousPoly2:
            key = (which, e)
            if key not in powers:
                powers[key] = (x0, x1, x2)[which].power(e)
            return powers[key]

        for (i, j, k), c in self.terms:
            term = HomogeneousPoly2.one()
            for which, e in ((0, i), (1, j), (2, k)):
                if e:
                    term = term.mul(power_of(which, e))
            total = total.add(term.scale(c))
        return total

    def __str__(self) -> str:
        return render_poly3(self)


# ---------------------------------------------------------------------------
# rendering


def _render_coeff(c: Fraction, varpart: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if varpart and mag == 1:
        return f"{sign}{varpart}"
    if varpart:
        return f"{sign}{mag}*{varpart}"
    return f"{sign}{mag}"


def _varpart(pairs: Sequence[tuple[str, int]]) -> str:
    parts = []
    for name, e in pairs:
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render_poly2(form: HomogeneousPoly2) -> str:
    if form.is_zero:
        return "0"
    chunks = []
    first = True
    for i in range(form.degree, -1, -1):
        c = form.coeffs[i]
        if c == 0:
            continue
        varpart = _varpart((("s", i), ("u", form.degree - i)))
        chunks.append(_render_coeff(c, varpart, first))
        first = False
    return "".join(chunks)


def render_poly3(form: HomogeneousPoly3) -> str:
    if form.is_zero:
        return "0"
    chunks = []
    first = True
    for (i, j, k), c in sorted(form.terms, key=lambda t: (-t[0][0], -t[0][1])):
        varpart = _varpart((("x0", i), ("x1", j), ("x2", k)))
        chunks.append(_render_coeff(c, varpart, first))
        first = False
    return "".join(chunks)
