"""The K-ring Z[P, T]/((1-P)^2, (1-PT)^2 (1-T)) of the compactified conifold.

With u = 1 - P and v = 1 - T the ring has rank 6 with normal-form basis
{1, u, v, v^2, uv, uv^2}; the reduction rules are u^2 = 0 and v^3 = -2 uv^2
(hence uv^3 = 0 and v^4 = 0). The coefficient of uv^2 in the v^3 rule is a
parameter so that a deliberately wrong relation can be exercised.

The normal form is checked against brute-force linear algebra in the
truncated polynomial ring Q[u, v]/(u, v)^N: the quotient ring is Artinian
and supported at u = v = 0, so once (u, v)^4 lies in the ideal modulo
(u, v)^N for some N > 4, the truncated computation is exact.
"""

from fractions import Fraction
from functools import lru_cache

from ..exact import QRat, row_reduce
from ..report import Report

BASIS = ((0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (1, 2))
BASIS_NAMES = ("1", "u", "v", "v^2", "uv", "uv^2")
W_BASIS_NAMES = ("1", "w", "w^2", "w^3", "u", "uw")
DEFAULT_V3 = -2


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


class KRing:
    """Normal-form arithmetic with v^3 = v3_coeff * u v^2."""

    def __init__(self, v3_coeff=DEFAULT_V3):
        self.v3_coeff = Fraction(v3_coeff)
        self._w_matrix = None

    def __eq__(self, other):
        return isinstance(other, KRing) and other.v3_coeff == self.v3_coeff

    def __hash__(self):
        return hash(self.v3_coeff)

    def reduce_monomial(self, a, b):
        """u^a v^b as {basis monomial: rational}."""
        return dict(_reduce_monomial(self.v3_coeff, a, b))

    def elem(self, coeffs):
        return KRingElem(self, coeffs)

    def scalar(self, c):
        return KRingElem(self, {(0, 0): c})

    def one(self):
        return self.scalar(1)

    def zero(self):
        return KRingElem(self, {})

    def u(self):
        return KRingElem(self, {(1, 0): 1})

    def v(self):
        return KRingElem(self, {(0, 1): 1})

    def P(self):
        return KRingElem(self, {(0, 0): 1, (1, 0): -1})

    def T(self):
        return KRingElem(self, {(0, 0): 1, (0, 1): -1})

    def w(self):
        """1 - PT = u + v - uv."""
        return KRingElem(self, {(1, 0): 1, (0, 1): 1, (1, 1): -1})

    def w_basis(self):
        """Elements 1, w, w^2, w^3, u, uw."""
        w = self.w()
        return [self.one(), w, w * w, w * w * w, self.u(), self.u() * w]

    def w_matrix_inverse(self):
        """Rows express the monomial basis coordinates in the w-basis."""
        if self._w_matrix is None:
            cols = [e.coordinates() for e in self.w_basis()]
            n = len(BASIS)
            mat = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
                   for i in range(n)]
            red, piv = row_reduce(mat, n)
            if piv != list(range(n)):
                raise ValueError("1, w, w^2, w^3, u, uw is not a basis for this relation")
            self._w_matrix = [row[n:] for row in red]
        return self._w_matrix

    def from_w_coordinates(self, coords):
        out = self.zero()
        for c, e in zip(coords, self.w_basis()):
            if not _is_zero(c):
                out = out + e * c
        return out


@lru_cache(maxsize=None)
def _reduce_monomial(c, a, b):
    if a >= 2:
        return ()
    if b <= 2:
        return (((a, b), Fraction(1)),)
    # v^3 = c u v^2, so u^a v^b = c u^{a+1} v^{b-1}
    return tuple((k, c * x) for k, x in _reduce_monomial(c, a + 1, b - 1))


class KRingElem:
    """Element of the K-ring with scalar coefficients of any exact type."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=None):
        self.ring = ring
        clean = {}
        for key, c in (coeffs or {}).items():
            if key not in BASIS:
                raise ValueError(f"{key} is not a normal-form monomial")
            if not _is_zero(c):
                clean[key] = c
        self.coeffs = clean

    def coefficient(self, key):
        return self.coeffs.get(key, 0)

    def coordinates(self):
        return [self.coefficient(k) for k in BASIS]

    def w_coordinates(self):
        """Coordinates in the basis 1, w, w^2, w^3, u, uw."""
        inv = self.ring.w_matrix_inverse()
        coords = self.coordinates()
        out = []
        for row in inv:
            acc = 0
            for f, c in zip(row, coords):
                if f and not _is_zero(c):
                    acc = c * f if _is_zero(acc) else acc + c * f
            out.append(acc)
        return out

    def scalar_part(self):
        return self.coefficient((0, 0))

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if other.ring != self.ring:
            raise ValueError("elements of different K-rings")

    def __add__(self, other):
        if not isinstance(other, KRingElem):
            other = self.ring.scalar(other)
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return KRingElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return KRingElem(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, KRingElem):
            return KRingElem(self.ring, {k: c * other for k, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                red = _reduce_monomial(self.ring.v3_coeff, a1 + a2, b1 + b2)
                if not red:
                    continue
                p = c1 * c2
                for key, f in red:
                    term = p * f if f != 1 else p
                    out[key] = out[key] + term if key in out else term
        return KRingElem(self.ring, out)

    def __rmul__(self, other):
        return KRingElem(self.ring, {k: other * c for k, c in self.coeffs.items()})

    def __pow__(self, n):
        if n < 0:
            return ring_invert_unit(self) ** (-n)
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, KRingElem):
            other = self.ring.scalar(other)
        return (self - other).is_zero()

    __hash__ = None

    def map(self, fn):
        return KRingElem(self.ring, {k: fn(c) for k, c in self.coeffs.items()})

    def __repr__(self):
        parts = [f"({c})*{BASIS_NAMES[BASIS.index(k)]}" for k, c in sorted(self.coeffs.items())]
        return "KRingElem(" + (" + ".join(parts) or "0") + ")"


def _scalar_inverse(s):
    if isinstance(s, int):
        return Fraction(1, s)
    if isinstance(s, QRat):
        return s.inverse()
    return 1 / s


def ring_invert_unit(x):
    """Inverse of an element whose scalar part is invertible.

    With x = s (1 - n) and n nilpotent ((u, v)^4 = 0), the inverse is
    s^{-1} (1 + n + n^2 + n^3).
    """
    s = x.scalar_part()
    if _is_zero(s):
        raise ZeroDivisionError("element has zero augmentation and is not a unit")
    try:
        sinv = _scalar_inverse(s)
    except (ZeroDivisionError, ValueError) as exc:
        raise ZeroDivisionError(f"scalar part {s} is not invertible") from exc
    n = x.ring.one() - x * sinv
    out = x.ring.one()
    power = x.ring.one()
    for _ in range(3):
        power = power * n
        out = out + power
    return out * sinv


def ring_reduce(poly, ring=None):
    """Normal form of sum c_{a,b} P^a T^b; exponents may be negative."""
    ring = KRing() if ring is None else ring
    P, T = ring.P(), ring.T()
    out = ring.zero()
    for (a, b), c in sorted(poly.items()):
        if _is_zero(c):
            continue
        out = out + (P ** a) * (T ** b) * c
    return out


# ----- brute-force validation in Q[u, v]/(u, v)^N ---------------------------

def _uv_monomials(N):
    return [(a, d - a) for d in range(N) for a in range(d + 1)]


def _uv_mul(f, g, N):
    out = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            if a1 + a2 + b1 + b2 < N:
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _uv_pow(f, e, N):
    """f^e in the truncated ring; negative e needs f(0, 0) = 1."""
    if e < 0:
        if f.get((0, 0)) != 1:
            raise ValueError("only unit-augmentation elements are inverted")
        n = {k: -c for k, c in f.items() if k != (0, 0)}
        inv = {(0, 0): Fraction(1)}
        power = {(0, 0): Fraction(1)}
        for _ in range(N):
            power = _uv_mul(power, n, N)
            for k, c in power.items():
                inv[k] = inv.get(k, 0) + c
        f, e = {k: c for k, c in inv.items() if c}, -e
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _uv_mul(out, f, N)
    return out


def _uv_from_PT(a, b, N):
    P = {(0, 0): Fraction(1), (1, 0): Fraction(-1)}
    T = {(0, 0): Fraction(1), (0, 1): Fraction(-1)}
    return _uv_mul(_uv_pow(P, a, N), _uv_pow(T, b, N), N)


class TruncatedQuotient:
    """The ideal (u^2, (1-PT)^2 (1-T)) inside Q[u, v]/(u, v)^N, in row-reduced form."""

    def __init__(self, N=6):
        if N < 5:
            raise ValueError("truncation order must exceed the nilpotency order 4")
        self.N = N
        mons = _uv_monomials(N)
        # normal-form monomials last, so pivots fall on the others when they span
        self.columns = [m for m in mons if m not in BASIS] + list(BASIS)
        self.index = {m: i for i, m in enumerate(self.columns)}
        w = {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(-1)}
        v = {(0, 1): Fraction(1)}
        gens = [{(2, 0): Fraction(1)}, _uv_mul(_uv_mul(w, w, N), v, N)]
        rows = []
        for g in gens:
            for m in mons:
                prod = _uv_mul({m: Fraction(1)}, g, N)
                if prod:
                    rows.append(self._vector(prod))
        self.rows, self.pivots = row_reduce(rows, len(self.columns))

    def _vector(self, f):
        vec = [Fraction(0)] * len(self.columns)
        for m, c in f.items():
            vec[self.index[m]] += c
        return vec

    @property
    def quotient_dimension(self):
        return len(self.columns) - len(self.pivots)

    def reduce(self, f):
        """Remainder of f modulo the ideal, as a coordinate vector."""
        vec = self._vector(f)
        for row, p in zip(self.rows, self.pivots):
            if vec[p]:
                c = vec[p]
                vec = [x - c * y for x, y in zip(vec, row)]
        return vec

    def contains(self, f):
        return not any(self.reduce(f))

    def normal_form(self, f):
        vec = self.reduce(f)
        out = {}
        for m, c in zip(self.columns, vec):
            if c:
                if m not in BASIS:
                    raise ValueError(f"remainder involves the non-basis monomial {m}")
                out[m] = c
        return out


def verify_ring_presentation(N=6, ring=None, exponent_range=(-2, 4), q_shifts=4):
    """Rank, basis, reduction rules, nilpotency and the identity (1-PT)^2(1-Pq^mT) = (1-PT)^2(1-Pq^m)."""
    ring = KRing() if ring is None else ring
    rep = Report("verify ring", {"truncation": N, "v3_coeff": ring.v3_coeff})
    tq = TruncatedQuotient(N)
    non_basis = len(tq.columns) - len(BASIS)
    rep.add("quotient-rank", [], tq.quotient_dimension == 6, {"rank": tq.quotient_dimension})
    rep.add("basis-independent-and-spanning", [], tq.pivots == list(range(non_basis)),
            {"pivots": len(tq.pivots)})
    c = ring.v3_coeff
    rules = {"u^2": {(2, 0): Fraction(1)},
             "v^3 - c uv^2": {(0, 3): Fraction(1), (1, 2): -c},
             "uv^3": {(1, 3): Fraction(1)}}
    for name, f in rules.items():
        rep.add("rule-in-ideal", [name], tq.contains(f), {"c": c})
    deg4 = [(a, 4 - a) for a in range(5)]
    rep.add("nilpotency-order-4", ["(u,v)^4"], all(tq.contains({m: Fraction(1)}) for m in deg4)
            and not tq.contains({(1, 2): Fraction(1)}), {})
    lo, hi = exponent_range
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            brute = tq.normal_form(_uv_from_PT(a, b, N))
            fast = ring_reduce({(a, b): 1}, ring)
            ok = all(Fraction(fast.coefficient(k)) == brute.get(k, 0) for k in BASIS)
            rep.add("normal-form", [f"P^{a} T^{b}"], ok,
                    {"ring": ";".join(str(fast.coefficient(k)) for k in BASIS),
                     "brute": ";".join(str(brute.get(k, 0)) for k in BASIS)})
    P, T, w = ring.P(), ring.T(), ring.w()
    rep.add("relation", ["(1-P)^2"], (ring.one() - P) ** 2 == 0, {})
    rep.add("relation", ["(1-PT)^2(1-T)"], w * w * (ring.one() - T) == 0, {})
    one = ring.one()
    for m in range(1, q_shifts + 1):
        qm = QRat.q(m)
        lhs = w * w * (one - P * T * qm)
        rhs = w * w * (one - P * qm)
        rep.add("q-shift-identity", [m], lhs == rhs, {})
    return rep
