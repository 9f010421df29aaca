"""Adjacency and radial operators on the tree and on the ray quotient.

Vertex functions are plain dicts {vertex id: value}; values may be exact
rationals or objects from `exactalg` (everything is summed with `+` and
scaled by exact rationals, so all identities here hold with zero tolerance).

The character `psi` assigns z**H(v) to every vertex; it is constant on
horospheres and an adjacency eigenfunction with eigenvalue q*z + 1/z.  On the
ray quotient the adjacency operator acts by (Tf)(n) = q f(n-1) + f(n+1) for
n >= 1; at the end vertex the q+1 edges all map to index 1, giving the
boundary rule (Tf)(0) = (q+1) f(1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import LaurentPoly, RationalFunc
from .tree import Tree, horosphere


def psi(T: Tree, z0=None):
    """The height character: z**H(v), or the exact rational z0**H(v)."""
    if z0 is None:
        cache = {}
        out = {}
        for v in T.vertices():
            H = T.H[v]
            val = cache.get(H)
            if val is None:
                val = LaurentPoly.term(1, H)
                cache[H] = val
            out[v] = val
        return out
    z0 = Fraction(z0)
    if z0 == 0:
        raise ValueError("psi is undefined at z0 = 0")
    cache = {}
    out = {}
    for v in T.vertices():
        H = T.H[v]
        val = cache.get(H)
        if val is None:
            val = z0 ** H
            cache[H] = val
        out[v] = val
    return out


def adjacency_apply(T: Tree, f: dict) -> dict:
    """Sum over neighbors; defined on interior vertices of f's domain."""
    out = {}
    down = T.down
    ups = T.ups
    depth = T.depth
    R = T.radius
    for v in f:
        if depth[v] >= R:
            continue
        acc = f[down[v]]
        for u in ups[v]:
            acc = acc + f[u]
        out[v] = acc
    return out


def eigen_check(T: Tree, z0=None):
    """Verify adjacency_apply(psi) == (q z + 1/z) psi on every interior vertex.

    Returns (ok, exceptional_ids); the exceptional set is reported rather than
    tolerated.
    """
    f = psi(T, z0)
    Tf = adjacency_apply(T, f)
    if z0 is None:
        lam = LaurentPoly({1: T.q, -1: 1})
    else:
        z0 = Fraction(z0)
        lam = T.q * z0 + 1 / z0
    expected = {}
    bad = []
    for v, val in Tf.items():
        H = T.H[v]
        want = expected.get(H)
        if want is None:
            want = lam * f[v]
            expected[H] = want
        if val != want:
            bad.append(v)
    return (not bad), bad


def ray_adjacency_apply(q: int, f):
    """(Tf)(0) = (q+1) f(1); (Tf)(n) = q f(n-1) + f(n+1) for 1 <= n <= N-1."""
    if len(f) < 2:
        raise ValueError("ray function must have length >= 2")
    out = [(q + 1) * f[1]]
    for n in range(1, len(f) - 1):
        out.append(q * f[n - 1] + f[n + 1])
    return out


def _shells(T: Tree, x: int, max_dist: int):
    """Vertices grouped by tree distance 0..max_dist from x (BFS)."""
    dist = {x: 0}
    shells = [[x]]
    frontier = [x]
    for d in range(1, max_dist + 1):
        nxt = []
        for v in frontier:
            for u in T.neighbors(v):
                if u not in dist:
                    dist[u] = d
                    nxt.append(u)
        shells.append(nxt)
        frontier = nxt
    return shells


def radial_apply(K: dict, T: Tree, f: dict) -> dict:
    """Apply the kernel F(n) on distance-n shells: sum_n F(n) sum_{d(x,y)=n} f(y)."""
    if not K:
        return {}
    support = max(K)
    if support < 0 or any(n < 0 for n in K):
        raise ValueError("radial kernel indices must be nonnegative")
    if support > T.radius:
        raise ValueError("kernel support %d exceeds tree radius %d" % (support, T.radius))
    out = {}
    for v in f:
        if T.depth[v] + support > T.radius:
            continue
        shells = _shells(T, v, support)
        acc = None
        for n, coef in K.items():
            if coef == 0:
                continue
            tot = None
            for y in shells[n]:
                tot = f[y] if tot is None else tot + f[y]
            if tot is None:
                continue
            term = tot * coef
            acc = term if acc is None else acc + term
        out[v] = acc if acc is not None else 0 * f[v]
    return out


def shell_eigenvalues(q: int, upto: int):
    """Eigenvalues S_n of the distance-n shell operators on the height character.

    S_0 = 1, S_1 = q z + 1/z, S_2 = S_1**2 - (q+1), and
    S_{n+1} = S_1 S_n - q S_{n-1} for n >= 2.
    """
    S = [LaurentPoly.one(), LaurentPoly({1: q, -1: 1})]
    if upto >= 2:
        S.append(S[1] * S[1] - LaurentPoly.const(q + 1))
    while len(S) <= upto:
        S.append(S[1] * S[-1] - q * S[-2])
    return S[:upto + 1]


def radial_eigenvalue(q: int, K: dict) -> LaurentPoly:
    """Eigenvalue of the radial operator with kernel K on the height character."""
    if not K:
        return LaurentPoly.zero()
    S = shell_eigenvalues(q, max(K))
    out = LaurentPoly.zero()
    for n, coef in K.items():
        out = out + S[n] * coef
    return out


def constant_term(T: Tree, f: dict, k: int, D: int):
    """Uniform average of f over the depth-D truncated horosphere at level k."""
    hs = horosphere(T, k, D)
    acc = None
    for v in hs.members:
        acc = f[v] if acc is None else acc + f[v]
    return acc * hs.weight


def truncate_ray(q: int, f, profile):
    """Pointwise difference f - (constant-term profile).

    The profile may be a list of per-index values or an object exposing
    `value(n)` (an Eisenstein data package).
    """
    if hasattr(profile, "value"):
        prof = [profile.value(n) for n in range(len(f))]
    else:
        prof = list(profile)
    if len(prof) < len(f):
        raise ValueError("profile shorter than the ray function")
    return [f[n] - prof[n] for n in range(len(f))]


@dataclass
class L2Report:
    partial_sum: Fraction
    tail_ratio: Fraction
    diverges: bool


def weighted_l2_norm(q: int, f, ell) -> L2Report:
    """Truncated sum of |f(n)|^2 q**(-(1+2 ell) n) plus a geometric tail ratio.

    Requires numeric (exact rational) entries and 2*ell integral so the
    weights stay rational.  The divergence flag is set when the last computed
    increment ratio is >= 1.
    """
    ell = Fraction(ell)
    two_ell = 2 * ell
    if two_ell.denominator != 1:
        raise ValueError("2*ell must be an integer for rational weights")
    expo = 1 + int(two_ell)
    if len(f) < 2:
        raise ValueError("ray function must have length >= 2")
    w = Fraction(1, q) ** expo
    total = Fraction(0)
    weight = Fraction(1)
    for val in f:
        val = Fraction(val)
        total += val * val * weight
        weight *= w
    last, prev = Fraction(f[-1]), Fraction(f[-2])
    if prev == 0:
        raise ValueError("cannot estimate a tail ratio from a zero entry")
    ratio = (last / prev) ** 2 * w
    return L2Report(partial_sum=total, tail_ratio=ratio, diverges=ratio >= 1)
