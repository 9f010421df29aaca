"""Truncated (q+1)-homogeneous bipartite tree with height and cell labels.

Vertices carry three coordinated labelings:

* orbit type j in {1, 2}, alternating along edges (bipartite classes);
* a cell label (i, n, j) whose derived height H is 2n when j == i and 2n - 1
  when j == 3 - i.  Every interior vertex has exactly one neighbor at height
  H - 1 (the distinguished "down" neighbor) and q at height H + 1;
* an even-length alternating Bruhat word, propagated along edges by pure word
  arithmetic and therefore an independent consistency check on n: a word
  (i 3-i)^k means n = +k and (3-i i)^k means n = -k.

The ball of radius R is built around a base vertex of type 1 with label
(i, 0, 1).  The standard apartment is the bi-infinite (within truncation)
path of distinguished edges through the base edge; the height function is
injective on it, which gives the level index used by horospheres.

A depth-D truncated horosphere at level k collects the height-k vertices
whose distinguished chains merge with the apartment's level-k vertex within D
steps; it has exactly q**D members, weighted uniformly.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IwasawaLabel:
    i: int
    n: int
    j: int

    def __post_init__(self):
        if self.i not in (1, 2) or self.j not in (1, 2):
            raise ValueError("label indices must be 1 or 2")

    @property
    def height(self) -> int:
        return 2 * self.n if self.j == self.i else 2 * self.n - 1


def neighbor_labels(L: IwasawaLabel):
    """(down, up) labels adjacent to L; heights come out H - 1 and H + 1."""
    i, n, j = L.i, L.n, L.j
    if j == 3 - i:
        return IwasawaLabel(i, n - 1, i), IwasawaLabel(i, n, i)
    return IwasawaLabel(i, n, 3 - i), IwasawaLabel(i, n + 1, 3 - i)


def _append_pair(word: str, x: str, y: str) -> str:
    # reduced append of the two distinct letters x, y to an alternating word
    if word.endswith(x):
        return word[:-2]
    return word + x + y


def _word_down(word: str, j: int, i: int) -> str:
    if j == i:
        return word
    return _append_pair(word, str(3 - i), str(i))


def _word_up(word: str, j: int, i: int) -> str:
    if j == i:
        return _append_pair(word, str(i), str(3 - i))
    return word


def word_cell_index(word: str, i: int):
    """The n encoded by an even alternating word, or None if malformed."""
    if word == "":
        return 0
    if len(word) % 2 != 0:
        return None
    for k in range(1, len(word)):
        if word[k] == word[k - 1]:
            return None
    k = len(word) // 2
    return k if word[0] == str(i) else -k


class HorosphereError(ValueError):
    pass


@dataclass
class Horosphere:
    level: int
    depth: int
    members: list
    weight: Fraction

    @property
    def weights(self):
        return [self.weight] * len(self.members)


@dataclass
class TreeVertex:
    id: int
    j: int
    word: str
    label: IwasawaLabel
    H: int
    down: int
    up: list


class Tree:
    """Explicit truncated ball; immutable once built."""

    __slots__ = ("q", "radius", "i", "n", "j", "H", "word", "down", "ups",
                 "depth", "parent", "apartment", "on_down_ray", "on_up_ray")

    def __init__(self, q, radius, i):
        self.q = q
        self.radius = radius
        self.i = i
        self.n = []
        self.j = []
        self.H = []
        self.word = []
        self.down = []
        self.ups = []
        self.depth = []
        self.parent = []
        self.apartment = {}
        self.on_down_ray = []
        self.on_up_ray = []

    def num_vertices(self) -> int:
        return len(self.n)

    def label(self, v: int) -> IwasawaLabel:
        return IwasawaLabel(self.i, self.n[v], self.j[v])

    def neighbors(self, v: int):
        d = self.down[v]
        if d >= 0:
            return self.ups[v] + [d]
        return list(self.ups[v])

    def is_interior(self, v: int) -> bool:
        return self.depth[v] < self.radius

    def apartment_vertex(self, level: int) -> int:
        if level not in self.apartment:
            raise HorosphereError("level %d is outside the truncated apartment" % level)
        return self.apartment[level]

    def vertex(self, v: int) -> TreeVertex:
        return TreeVertex(v, self.j[v], self.word[v], self.label(v),
                          self.H[v], self.down[v], list(self.ups[v]))

    def vertices(self):
        return range(self.num_vertices())

    def _add(self, n, j, word, depth, parent, on_down, on_up) -> int:
        vid = len(self.n)
        self.n.append(n)
        self.j.append(j)
        H = 2 * n if j == self.i else 2 * n - 1
        self.H.append(H)
        self.word.append(word)
        self.down.append(-1)
        self.ups.append([])
        self.depth.append(depth)
        self.parent.append(parent)
        self.on_down_ray.append(on_down)
        self.on_up_ray.append(on_up)
        if on_down or on_up or parent == -1:
            self.apartment[H] = vid
        return vid

    def children(self, v: int):
        out = []
        d = self.down[v]
        if d >= 0 and self.parent[d] == v:
            out.append(d)
        for u in self.ups[v]:
            if self.parent[u] == v:
                out.append(u)
        return sorted(out)


def build_tree(q: int, radius: int, i: int = 1, child_seed=None) -> Tree:
    """Ball of radius `radius` around the base vertex, fully labeled.

    With `child_seed` set, the creation order of the children of every vertex
    is shuffled; the labeled tree is isomorphic to the canonical one.
    """
    if q < 2:
        raise ValueError("tree degree parameter q must be >= 2")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if i not in (1, 2):
        raise ValueError("labeling index i must be 1 or 2")
    rng = random.Random(child_seed) if child_seed is not None else None

    T = Tree(q, radius, i)
    base = T._add(0, 1, "", 0, -1, False, False)
    queue = deque([base])
    while queue:
        v = queue.popleft()
        d = T.depth[v]
        if d == radius:
            continue
        nv, jv, wv = T.n[v], T.j[v], T.word[v]
        if jv == 3 - i:
            down_cell = (nv - 1, i)
            up_cell = (nv, i)
        else:
            down_cell = (nv, 3 - i)
            up_cell = (nv + 1, 3 - i)
        wdown = _word_down(wv, jv, i)
        wup = _word_up(wv, jv, i)

        if v == base:
            specs = [("down", True, False), ("up", False, True)] + \
                    [("up", False, False)] * (q - 1)
        elif T.on_down_ray[v]:
            specs = [("down", True, False)] + [("up", False, False)] * (q - 1)
        elif T.on_up_ray[v]:
            specs = [("up", False, True)] + [("up", False, False)] * (q - 1)
        else:
            specs = [("up", False, False)] * q
        if rng is not None:
            rng.shuffle(specs)

        for kind, on_down, on_up in specs:
            if kind == "down":
                c = T._add(down_cell[0], down_cell[1], wdown, d + 1, v, on_down, on_up)
                T.down[v] = c
                T.ups[c].append(v)
            else:
                c = T._add(up_cell[0], up_cell[1], wup, d + 1, v, on_down, on_up)
                T.ups[v].append(c)
                T.down[c] = v
            queue.append(c)
    return T


def verify_bruhat_iwasawa(T: Tree) -> bool:
    """Words (propagated by word arithmetic) agree with cell indices n."""
    return not bruhat_iwasawa_failures(T)


def bruhat_iwasawa_failures(T: Tree):
    bad = []
    for v in T.vertices():
        n_word = word_cell_index(T.word[v], T.i)
        if n_word is None or n_word != T.n[v]:
            bad.append(v)
    return bad


def label_transitions_ok(T: Tree) -> bool:
    """Re-derive every edge's labels through `neighbor_labels` and compare."""
    for v in T.vertices():
        down_lab, up_lab = neighbor_labels(T.label(v))
        d = T.down[v]
        if d >= 0 and T.label(d) != down_lab:
            return False
        for u in T.ups[v]:
            if T.label(u) != up_lab:
                return False
        if T.H[v] != T.label(v).height:
            return False
    return True


def relabel(T: Tree, i_new: int) -> Tree:
    """The same underlying ball labeled with the other cell family.

    Off the apartment the distinguished direction is unchanged (both height
    functions decrease toward the apartment); along the apartment it flips.
    """
    if i_new not in (1, 2):
        raise ValueError("labeling index must be 1 or 2")
    if i_new == T.i:
        return T
    S = Tree(T.q, T.radius, i_new)
    nv = T.num_vertices()
    S.n = [0] * nv
    S.j = list(T.j)
    S.H = [0] * nv
    S.word = [""] * nv
    S.down = [-1] * nv
    S.ups = [[] for _ in range(nv)]
    S.depth = list(T.depth)
    S.parent = list(T.parent)
    S.on_down_ray = list(T.on_up_ray)
    S.on_up_ray = list(T.on_down_ray)

    on_apartment = set(T.apartment.values())
    for v in T.vertices():
        if v in on_apartment:
            H = T.H[v]
            toward_down_end = T.apartment.get(H - 1, -1)
            toward_up_end = T.apartment.get(H + 1, -1)
            S.down[v] = toward_up_end
            S.ups[v] = [u for u in T.neighbors(v) if u != toward_up_end]
        else:
            S.down[v] = T.down[v]
            S.ups[v] = list(T.ups[v])

    base = 0
    S.n[base] = 0
    S.word[base] = ""
    S.H[base] = 0 if S.j[base] == i_new else -1
    S.apartment = {S.H[base]: base}
    seen = [False] * nv
    seen[base] = True
    queue = deque([base])
    while queue:
        v = queue.popleft()
        lab = IwasawaLabel(i_new, S.n[v], S.j[v])
        down_lab, up_lab = neighbor_labels(lab)
        targets = [(S.down[v], down_lab)] + [(u, up_lab) for u in S.ups[v]]
        for u, lab_u in targets:
            if u < 0 or seen[u]:
                continue
            seen[u] = True
            S.n[u] = lab_u.n
            if lab_u.j != S.j[u]:
                raise AssertionError("bipartite type mismatch during relabel")
            S.H[u] = lab_u.height
            if S.down[u] == v:
                S.word[u] = _word_up(S.word[v], S.j[v], i_new)
            else:
                S.word[u] = _word_down(S.word[v], S.j[v], i_new)
            if S.on_down_ray[u] or S.on_up_ray[u]:
                S.apartment[S.H[u]] = u
            queue.append(u)
    return S


def horosphere(T: Tree, k: int, D: int) -> Horosphere:
    """Depth-D truncated horosphere at level k (q**D members, uniform weights)."""
    if D < 0:
        raise HorosphereError("depth must be nonnegative")
    a = T.apartment_vertex(k)
    m = a
    for _ in range(D):
        m = T.down[m]
        if m < 0:
            raise HorosphereError("truncation too small for depth %d at level %d" % (D, k))
    frontier = [m]
    for _ in range(D):
        nxt = []
        for v in frontier:
            ups = T.ups[v]
            if len(ups) < T.q:
                raise HorosphereError("truncation too small for depth %d at level %d" % (D, k))
            nxt.extend(ups)
        frontier = nxt
    members = sorted(frontier)
    for v in members:
        if T.H[v] != k:
            raise AssertionError("horosphere member off level")
    return Horosphere(level=k, depth=D, members=members,
                      weight=Fraction(1, T.q ** D))


def to_jsonl(T: Tree) -> str:
    """One vertex record per line; byte-identical across runs given (q, R, i)."""
    lines = []
    for v in T.vertices():
        rec = {
            "id": v,
            "j": T.j[v],
            "word": T.word[v],
            "i": T.i,
            "n": T.n[v],
            "H": T.H[v],
            "down": T.down[v] if T.down[v] >= 0 else None,
            "up": list(T.ups[v]),
        }
        lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def canonical_signature(T: Tree) -> tuple:
    """Order-independent signature of the labeled rooted tree (for isomorphy tests)."""

    def rel(v):
        p = T.parent[v]
        if p < 0:
            return "root"
        return "down" if T.down[p] == v else "up"

    def sig(v):
        kids = tuple(sorted(sig(u) for u in T.children(v)))
        return (T.n[v], T.j[v], T.word[v], rel(v), kids)

    return sig(0)
