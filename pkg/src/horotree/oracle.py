"""Brute-force cross-checks on the tree of lattice classes over F_q((1/t)).

Everything here is classical SL2/PGL2 over the rational function field: the
(q+1)-regular tree is realized as homothety classes of rank-2 lattices over
the valuation ring of F_q((1/t)), the arithmetic group is generated by 2x2
matrices over F_q[t], and the quotient by it is a semi-infinite ray.  This
module computes, by explicit matrix and valuation arithmetic, the quantities
that the abstract tree/ray modules produce symbolically, so the two routes
can be compared.

Conventions.  The local uniformizer is pi = 1/t, so a polynomial of degree d
has valuation -d.  A lattice class has a unique normal form
u(x) * diag(pi**m, 1) * (units): the pair (m, x mod pi**m) is the vertex key,
m is the height (the ray vertex sigma_n is diag(t**n, 1) with m = -n), and
the bottom row of any representative g gives

    m = v(det g) - 2 * min(v(C), v(D)).

Coset representatives of (upper-unipotent)\\Gamma are parametrized by coprime
bottom rows (c, d) in F_q[t]^2 up to scalars.  Because the height of
gamma * sigma_n depends only on (deg c, deg d), the brute Eisenstein sum over
all cosets up to degree D can be aggregated degree block by degree block:
block cardinalities come from exact coprime-pair counts (cross-checked
against explicit enumeration), and each block's height is verified against
`vertex_of` on an explicit representative.  The aggregated sum is exactly the
per-coset sum, reorganized; explicit per-coset summation remains available
for small degrees.

The prime restriction on q applies only to this module (plain modular
arithmetic); the abstract modules accept any q >= 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import tree as tree_mod
from .eisenstein import eisenstein_ray

ZERO = ()


class InsufficientPrecisionError(ValueError):
    pass


def _require_prime(q: int):
    if q < 2 or any(q % p == 0 for p in range(2, int(q ** 0.5) + 1)):
        raise ValueError("oracle mode requires prime q, got %d" % q)


# ----------------------------------------------------------------------------
# polynomials over F_q as ascending coefficient tuples
# ----------------------------------------------------------------------------

def poly_trim(t):
    t = tuple(t)
    while t and t[-1] == 0:
        t = t[:-1]
    return t


def poly_deg(a):
    """Degree, or None for the zero polynomial."""
    return len(a) - 1 if a else None


def poly_add(a, b, q):
    n = max(len(a), len(b))
    return poly_trim((( (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % q
                      for i in range(n)))


def poly_neg(a, q):
    return tuple((-x) % q for x in a)


def poly_sub(a, b, q):
    return poly_add(a, poly_neg(b, q), q)


def poly_mul(a, b, q):
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return poly_trim(out)


def poly_scale(a, c, q):
    c %= q
    if c == 0:
        return ZERO
    return tuple((x * c) % q for x in a)


def poly_divmod(a, b, q):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, q)
    qt = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        f = (a[i + len(b) - 1] * inv) % q
        if f:
            qt[i] = f
            for j, bc in enumerate(b):
                a[i + j] = (a[i + j] - f * bc) % q
    return poly_trim(qt), poly_trim(a)


def poly_gcd(a, b, q):
    """Monic gcd."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b, q)[1]
    if a:
        a = poly_scale(a, pow(a[-1], -1, q), q)
    return a


def poly_ext_gcd(a, b, q):
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = poly_trim(a), poly_trim(b)
    u0, u1 = (1,), ZERO
    v0, v1 = ZERO, (1,)
    while r1:
        qt, rem = poly_divmod(r0, r1, q)
        r0, r1 = r1, rem
        u0, u1 = u1, poly_sub(u0, poly_mul(qt, u1, q), q)
        v0, v1 = v1, poly_sub(v0, poly_mul(qt, v1, q), q)
    if r0:
        inv = pow(r0[-1], -1, q)
        r0 = poly_scale(r0, inv, q)
        u0 = poly_scale(u0, inv, q)
        v0 = poly_scale(v0, inv, q)
    return r0, u0, v0


def poly_is_one(a):
    return a == (1,)


def t_power(k: int):
    return poly_trim([0] * k + [1])


def poly_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            var = "t" if e == 1 else "t^%d" % e
            parts.append(var if c == 1 else "%d%s" % (c, var))
    return "+".join(parts)


def all_polys(q: int, deg: int):
    """All polynomials of exact degree `deg` (deg = None gives the zero poly)."""
    if deg is None:
        yield ZERO
        return
    for lead in range(1, q):
        for rest in itertools.product(range(q), repeat=deg):
            yield poly_trim(rest + (lead,))


def monic_polys(q: int, deg: int):
    for rest in itertools.product(range(q), repeat=deg):
        yield poly_trim(rest + (1,))


# ----------------------------------------------------------------------------
# matrices and lattice-class vertices
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix over F_q[t], entries as ascending coefficient tuples."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple
    q: int

    def det(self):
        return poly_sub(poly_mul(self.a, self.d, self.q),
                        poly_mul(self.b, self.c, self.q), self.q)

    def mul(self, other: "Matrix2") -> "Matrix2":
        q = self.q
        return Matrix2(
            poly_add(poly_mul(self.a, other.a, q), poly_mul(self.b, other.c, q), q),
            poly_add(poly_mul(self.a, other.b, q), poly_mul(self.b, other.d, q), q),
            poly_add(poly_mul(self.c, other.a, q), poly_mul(self.d, other.c, q), q),
            poly_add(poly_mul(self.c, other.b, q), poly_mul(self.d, other.d, q), q),
            q,
        )


def identity_matrix(q: int) -> Matrix2:
    return Matrix2((1,), ZERO, ZERO, (1,), q)


def ray_vertex_matrix(q: int, n: int) -> Matrix2:
    """diag(t**n, 1): the ray vertex sigma_n (height -n)."""
    if n < 0:
        raise ValueError("ray index must be nonnegative")
    return Matrix2(t_power(n), ZERO, ZERO, (1,), q)


def unipotent_upper(q: int, x) -> Matrix2:
    return Matrix2((1,), poly_trim(x), ZERO, (1,), q)


@dataclass(frozen=True)
class LatticeClassVertex:
    """Normal-form key (m, nonzero pi-digits of x below pi**m)."""

    m: int
    digits: tuple
    q: int

    @property
    def height(self) -> int:
        return self.m

    @property
    def type_j(self) -> int:
        return 1 if self.m % 2 == 0 else 2

    def sort_key(self):
        return (self.m, self.digits)


def bottom_row_height(detdeg: int, c, d) -> int:
    """v(det) - 2 min(v(C), v(D)) from bottom-row degrees (v = -deg)."""
    dc, dd = poly_deg(c), poly_deg(d)
    if dc is None and dd is None:
        raise ValueError("zero bottom row")
    mx = max(x for x in (dc, dd) if x is not None)
    return -detdeg + 2 * mx


def matrix_height(g: Matrix2) -> int:
    det = g.det()
    if not det:
        raise ValueError("singular matrix")
    return bottom_row_height(poly_deg(det), g.c, g.d)


def _ratio_digits(num, den, stop: int, q: int, precision: int):
    """pi-digits of num/den for exponents k0 <= k < stop (k0 = deg den - deg num)."""
    if not num:
        return ()
    k0 = poly_deg(den) - poly_deg(num)
    if stop <= k0:
        return ()
    needed = stop - k0
    if needed > precision:
        raise InsufficientPrecisionError(
            "need %d series digits, precision is %d" % (needed, precision))

    def digits_with(extra):
        # digits at pi-exponent k are quotient coefficients at t^(N-k); N must
        # dominate every requested exponent, whatever the sign of k0
        N = stop - min(k0, 0) + extra
        quot, _ = poly_divmod(poly_mul(num, t_power(N), q), den, q)
        out = []
        for k in range(k0, stop):
            idx = N - k
            e = quot[idx] if 0 <= idx < len(quot) else 0
            if e:
                out.append((k, e))
        return tuple(out)

    first = digits_with(4)
    if first != digits_with(8):
        raise InsufficientPrecisionError("series digits unstable under refinement")
    return first


def vertex_of(g: Matrix2, precision: int = None) -> LatticeClassVertex:
    """Canonical lattice-class vertex of a polynomial matrix.

    Column reduction over the valuation ring sends g to u(x) diag(pi**m, 1)
    up to units and homothety; the key is (m, x mod pi**m).  The digit
    expansion is exact; `precision` caps how many digits may be required.
    """
    q = g.q
    det = g.det()
    if not det:
        raise ValueError("matrix is singular")
    if precision is None:
        degs = [poly_deg(x) for x in (g.a, g.b, g.c, g.d) if x]
        precision = 2 * (max(degs) + poly_deg(det) + 8)
    dc, dd = poly_deg(g.c), poly_deg(g.d)
    if g.d and (not g.c or dc <= dd):
        m = -poly_deg(det) + 2 * dd
        digits = _ratio_digits(g.b, g.d, m, q, precision)
    else:
        m = -poly_deg(det) + 2 * dc
        digits = _ratio_digits(g.a, g.c, m, q, precision)
    return LatticeClassVertex(m=m, digits=digits, q=q)


def tree_neighbor_moves(q: int):
    """Right multipliers producing the q+1 neighbor classes (t-scaled forms)."""
    moves = [Matrix2(t_power(1), ZERO, ZERO, (1,), q)]
    for c in range(q):
        moves.append(Matrix2((1,), poly_trim((0, c)), ZERO, t_power(1), q))
    return moves


@dataclass
class LatticeBall:
    q: int
    radius: int
    reps: list            # Matrix2 per id
    keys: list            # LatticeClassVertex per id
    index: dict           # key.sort_key() -> id
    adj: list             # sorted neighbor ids per id
    H: list
    depth: list


def lattice_ball(q: int, radius: int, precision: int = None) -> LatticeBall:
    """Ball of radius `radius` around the base class, built by matrix moves."""
    _require_prime(q)
    if precision is None:
        precision = 2 * (radius + 12)
    moves = tree_neighbor_moves(q)
    g0 = identity_matrix(q)
    k0 = vertex_of(g0, precision)
    ball = LatticeBall(q, radius, [g0], [k0], {k0.sort_key(): 0},
                       [set()], [k0.m], [0])
    frontier = [0]
    for depth in range(1, radius + 1):
        nxt = []
        for v in frontier:
            gv = ball.reps[v]
            for mv in moves:
                gu = gv.mul(mv)
                ku = vertex_of(gu, precision)
                sk = ku.sort_key()
                u = ball.index.get(sk)
                if u is None:
                    u = len(ball.reps)
                    ball.reps.append(gu)
                    ball.keys.append(ku)
                    ball.index[sk] = u
                    ball.adj.append(set())
                    ball.H.append(ku.m)
                    ball.depth.append(depth)
                    nxt.append(u)
                if u != v:
                    ball.adj[v].add(u)
                    ball.adj[u].add(v)
        frontier = nxt
    ball.adj = [sorted(s) for s in ball.adj]
    return ball


# ----------------------------------------------------------------------------
# coset enumeration and degree-block aggregation
# ----------------------------------------------------------------------------

def enumerate_bottom_rows(q: int, D: int):
    """Coprime bottom rows (c, d), one per scalar class, grouped by max degree.

    Yields (k, c, d) with k = max(deg c, deg d) ascending; within a block the
    order is lexicographic, so the stream is deterministic.  Classes are
    normalized by making c monic (or d = 1 when c = 0).
    """
    _require_prime(q)
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    yield (0, ZERO, (1,))
    for d0 in range(q):
        yield (0, (1,), poly_trim((d0,)))
    for k in range(1, D + 1):
        for c in monic_polys(q, k):
            for dd in [None] + list(range(k + 1)):
                for d in all_polys(q, dd):
                    if poly_is_one(poly_gcd(c, d, q)):
                        yield (k, c, d)
        for jc in range(k):
            for c in monic_polys(q, jc):
                for d in all_polys(q, k):
                    if poly_is_one(poly_gcd(c, d, q)):
                        yield (k, c, d)


def complete_to_unimodular(q: int, c, d) -> Matrix2:
    """Some (a, b; c, d) of determinant 1, via the extended Euclidean identity."""
    g, u, v = poly_ext_gcd(c, d, q)
    if not poly_is_one(g):
        raise ValueError("bottom row is not coprime")
    # v*d + u*c = 1, so take a = v, b = -u
    return Matrix2(v, poly_neg(u, q), poly_trim(c), poly_trim(d), q)


def enumerate_cosets(q: int, D: int):
    """Unimodular representatives of the unipotent cosets, bottom rows <= D."""
    for _, c, d in enumerate_bottom_rows(q, D):
        yield complete_to_unimodular(q, c, d)


def coprime_class_count(q: int, dc, dd) -> int:
    """Number of coprime scalar classes with exact degrees (dc, dd); None = zero poly.

    Closed forms, cross-checked against explicit enumeration in the tests:
    the mixed blocks with a constant are always coprime, and for both degrees
    >= 1 the count is (q-1)**2 * q**(dc+dd-1).
    """
    if dc is None and dd is None:
        return 0
    if dc is None:
        return 1 if dd == 0 else 0
    if dd is None:
        return 1 if dc == 0 else 0
    if dc == 0 and dd == 0:
        return q - 1
    if dc == 0:
        return (q - 1) * q ** dd
    if dd == 0:
        return (q - 1) * q ** dc
    return (q - 1) ** 2 * q ** (dc + dd - 1)


def _blocks_with_max(k: int):
    if k == 0:
        return [(None, 0), (0, None), (0, 0)]
    out = [(k, b) for b in range(k + 1)]
    out += [(a, k) for a in range(k)]
    return out


def _block_height(n: int, dc, dd) -> int:
    cands = []
    if dc is not None:
        cands.append(dc + n)
    if dd is not None:
        cands.append(dd)
    return 2 * max(cands) - n


def _block_rep(q: int, dc, dd):
    if dc is None:
        return ZERO, (1,)
    if dd is None:
        return (1,), ZERO
    if dc == 0:
        return (1,), t_power(dd)
    if dd == 0:
        return t_power(dc), (1,)
    return t_power(dc), poly_add(t_power(dd), (1,), q)


@dataclass
class BruteSeries:
    """Partial sums of the coset sum, grouped by bottom-row degree."""

    q: int
    z0: Fraction
    increments: list
    partial_sums: list
    value: Fraction
    tail_ratio: Fraction
    tail_bound: Fraction


def _series_from_increments(q, z0, increments) -> BruteSeries:
    sums = []
    total = Fraction(0)
    for inc in increments:
        total += inc
        sums.append(total)
    ratio = None
    bound = None
    if len(increments) >= 2 and increments[-2] != 0:
        ratio = increments[-1] / increments[-2]
        if 0 < ratio < 1:
            bound = increments[-1] * ratio / (1 - ratio)
    return BruteSeries(q=q, z0=z0, increments=increments, partial_sums=sums,
                       value=total, tail_ratio=ratio, tail_bound=bound)


def brute_eisenstein(q: int, v, z0, D: int, method: str = "auto") -> BruteSeries:
    """Sum of z0**height(gamma * v) over unipotent cosets of degree <= D.

    `v` is a ray index (int) or an explicit Matrix2.  For ray vertices the
    per-block aggregation is used (exactly the per-coset sum, reorganized);
    each block's height exponent is validated against `vertex_of` on an
    explicit representative.  method="enumerate" forces the per-coset loop.
    """
    _require_prime(q)
    z0 = Fraction(z0)
    if not 0 < z0 < 1:
        raise ValueError("z0 must lie in (0, 1)")
    if method not in ("auto", "blocks", "enumerate"):
        raise ValueError("unknown method %r" % method)
    if isinstance(v, int) and method != "enumerate":
        return _brute_ray_blocks(q, v, z0, D)
    if isinstance(v, int):
        g = ray_vertex_matrix(q, v)
    else:
        g = v
    return _brute_explicit(q, g, z0, D)


def _brute_ray_blocks(q, n, z0, D) -> BruteSeries:
    if n < 0:
        raise ValueError("ray index must be nonnegative")
    g = ray_vertex_matrix(q, n)
    detdeg = poly_deg(g.det())
    increments = []
    for k in range(D + 1):
        inc = Fraction(0)
        for dc, dd in _blocks_with_max(k):
            cnt = coprime_class_count(q, dc, dd)
            if cnt == 0:
                continue
            expo = _block_height(n, dc, dd)
            c, d = _block_rep(q, dc, dd)
            gamma = complete_to_unimodular(q, c, d)
            h = vertex_of(gamma.mul(g), precision=2 * (k + n + 12)).m
            if h != expo:
                raise AssertionError("block height disagrees with lattice reduction")
            rowh = bottom_row_height(detdeg,
                                     poly_mul(c, g.a, q),
                                     poly_mul(d, g.d, q))
            if rowh != expo:
                raise AssertionError("block height disagrees with valuation formula")
            inc += cnt * z0 ** expo
        increments.append(inc)
    return _series_from_increments(q, z0, increments)


def _brute_explicit(q, g: Matrix2, z0, D) -> BruteSeries:
    detdeg = poly_deg(g.det())
    increments = [Fraction(0)] * (D + 1)
    for k, c, d in enumerate_bottom_rows(q, D):
        r1 = poly_add(poly_mul(c, g.a, q), poly_mul(d, g.c, q), q)
        r2 = poly_add(poly_mul(c, g.b, q), poly_mul(d, g.d, q), q)
        increments[k] += z0 ** bottom_row_height(detdeg, r1, r2)
    return _series_from_increments(q, z0, increments)


def iwasawa_n(H: int) -> int:
    """Cell index from height: H = 2n (type 1) or 2n - 1 (type 2)."""
    return (H + 1) // 2


def orbit_height_bound(q: int, v, D: int):
    """Minimum of the cell index n over cosets, cumulative by degree.

    Returns [(k, min_n)] for k = 0..D; the minimum is over all enumerated
    cosets of bottom-row degree <= k applied to v (a ray index or Matrix2).
    """
    _require_prime(q)
    if isinstance(v, int):
        mins = []
        best = None
        for k in range(D + 1):
            for dc, dd in _blocks_with_max(k):
                if coprime_class_count(q, dc, dd) == 0:
                    continue
                n_val = iwasawa_n(_block_height(v, dc, dd))
                best = n_val if best is None else min(best, n_val)
            mins.append((k, best))
        return mins
    g = v
    detdeg = poly_deg(g.det())
    best = None
    mins = {}
    for k, c, d in enumerate_bottom_rows(q, D):
        r1 = poly_add(poly_mul(c, g.a, q), poly_mul(d, g.c, q), q)
        r2 = poly_add(poly_mul(c, g.b, q), poly_mul(d, g.d, q), q)
        n_val = iwasawa_n(bottom_row_height(detdeg, r1, r2))
        best = n_val if best is None else min(best, n_val)
        mins[k] = best
    return sorted(mins.items())


@dataclass
class QuotientRayReport:
    ok: bool
    num_classes: int
    multiplicities: list
    ray_indices_ok: bool
    multiplicities_ok: bool
    stable: bool

    def __bool__(self):
        return self.ok


def quotient_ray_check(q: int, radius: int, D: int) -> QuotientRayReport:
    """Verify that orbit identification collapses the ball onto the ray.

    The orbit invariant is r(v) = -min over cosets of height(gamma v); the
    check requires r to be stable from degree D-1 to D (else the enumeration
    is flagged as insufficient), to index the ray vertices correctly, and to
    produce the edge multiplicity pattern (q+1; q,1; q,1; ...) on interior
    vertices.
    """
    _require_prime(q)
    if D < 1:
        raise ValueError("need degree bound >= 1 for a stability check")
    ball = lattice_ball(q, radius)
    rows = list(enumerate_bottom_rows(q, D))

    r_final = []
    r_prev = []
    for g in ball.reps:
        detdeg = poly_deg(g.det())
        best = None
        best_prev = None
        for k, c, d in rows:
            r1 = poly_add(poly_mul(c, g.a, q), poly_mul(d, g.c, q), q)
            r2 = poly_add(poly_mul(c, g.b, q), poly_mul(d, g.d, q), q)
            h = bottom_row_height(detdeg, r1, r2)
            best = h if best is None else min(best, h)
            if k < D:
                best_prev = h if best_prev is None else min(best_prev, h)
        r_final.append(-best)
        r_prev.append(-best_prev)

    stable = r_final == r_prev

    ray_ok = True
    for jj in range(radius + 1):
        sk = vertex_of(ray_vertex_matrix(q, jj)).sort_key()
        vid = ball.index.get(sk)
        if vid is None or r_final[vid] != jj:
            ray_ok = False

    mult_ok = True
    pattern = [(q + 1,)] + [(q, 1)] * max(0, radius - 1)
    for v in range(len(ball.reps)):
        if ball.depth[v] >= radius:
            continue
        rv = r_final[v]
        got = sorted(r_final[u] for u in ball.adj[v])
        if rv == 0:
            want = [1] * (q + 1)
        else:
            want = sorted([rv - 1] * q + [rv + 1])
        if got != want:
            mult_ok = False

    classes = sorted(set(r_final))
    ok = stable and ray_ok and mult_ok and classes == list(range(max(classes) + 1))
    return QuotientRayReport(ok=ok, num_classes=len(classes),
                             multiplicities=pattern, ray_indices_ok=ray_ok,
                             multiplicities_ok=mult_ok, stable=stable)


# ----------------------------------------------------------------------------
# comparison against the ray model
# ----------------------------------------------------------------------------

def measure_scale(q: int, z0, D: int) -> Fraction:
    """Empirical absolute scale: brute value at sigma_0 over the ray-model value."""
    z0 = Fraction(z0)
    data = eisenstein_ray(q)
    return brute_eisenstein(q, 0, z0, D).value / data.value(0).evaluate(z0)


@dataclass
class CompareRow:
    vertex: str
    brute: Fraction
    ray_model: Fraction
    ratio: Fraction
    tail_bound: Fraction


def compare_with_ray(q: int, z0, D: int, n_max: int = 5):
    """Per-vertex brute/ray comparison rows for sigma_0..sigma_{n_max}."""
    z0 = Fraction(z0)
    data = eisenstein_ray(q)
    rows = []
    for n in range(n_max + 1):
        series = brute_eisenstein(q, n, z0, D)
        ray_val = data.value(n).evaluate(z0)
        bound = series.tail_bound if series.tail_bound is not None else Fraction(0)
        rows.append(CompareRow(vertex="sigma_%d" % n, brute=series.value,
                               ray_model=ray_val, ratio=series.value / ray_val,
                               tail_bound=bound / abs(series.value)))
    return rows


def lift_to_tree(q: int, radius: int):
    """Pair the abstract labeled ball with lattice representatives.

    Returns (T, reps) where T = tree.build_tree(q, radius, 1) and reps[v] is
    a Matrix2 whose lattice class realizes vertex v: heights agree, the
    distinguished neighbor matches, and up-neighbors are matched in canonical
    key order.
    """
    _require_prime(q)
    T = tree_mod.build_tree(q, radius, 1)
    precision = 2 * (radius + 12)
    moves = tree_neighbor_moves(q)
    reps = [None] * T.num_vertices()
    keys = [None] * T.num_vertices()
    reps[0] = identity_matrix(q)
    keys[0] = vertex_of(reps[0], precision)
    if keys[0].m != T.H[0]:
        raise AssertionError("base height mismatch")
    for v in T.vertices():
        kids = T.children(v)
        if not kids:
            continue
        gv = reps[v]
        nbrs = []
        for mv in moves:
            gu = gv.mul(mv)
            ku = vertex_of(gu, precision)
            nbrs.append((ku.sort_key(), ku.m, gu))
        parent = T.parent[v]
        parent_key = keys[parent].sort_key() if parent >= 0 else None
        downs = [x for x in nbrs if x[1] == T.H[v] - 1]
        ups = sorted((x for x in nbrs if x[1] == T.H[v] + 1))
        if len(downs) != 1 or len(ups) != q:
            raise AssertionError("lattice neighbor heights are not (1 down, q up)")
        up_iter = iter(u for u in ups if u[0] != parent_key)
        for c in kids:
            if c == T.down[v]:
                sk, hh, gg = downs[0]
            else:
                sk, hh, gg = next(up_iter)
            if hh != T.H[c]:
                raise AssertionError("height mismatch while lifting")
            reps[c] = gg
            keys[c] = vertex_of(gg, precision)
    return T, reps
