"""Finite groupoids and truncated oversimplicial sets.

An oversimplicial set assigns a finite set P_n to each [0, n] and a map
f*: P_n -> P_m to every map of sets f: [0, m] -> [0, n] (not only the
monotone ones), contravariantly.  Maps f are written as tuples
(f(0), ..., f(m)).

Composition in a groupoid is diagrammatic: mu(a, b) is "a then b" and is
defined when t(a) = s(b).  The nerve has P_n = composable chains
(x_1, ..., x_n), and for a chain the element x_ab of P_1 is the product
x_(a+1) ... x_b when a < b, its inverse when a > b, and the identity at the
a-th vertex when a = b.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidGroupoid, NotMultiplicative, PreconditionError


# -- groupoids ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Tables indexed by integers; ``mu[a, b]`` is -1 off the composable pairs."""

    s: np.ndarray
    t: np.ndarray
    e: np.ndarray
    mu: np.ndarray
    iota: np.ndarray
    object_names: tuple = field(default=())
    morphism_names: tuple = field(default=())

    def __post_init__(self):
        for name in ("s", "t", "e", "iota"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=np.int64))
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=np.int64))
        if not self.object_names:
            object.__setattr__(self, "object_names", tuple(str(i) for i in range(len(self.e))))
        if not self.morphism_names:
            object.__setattr__(self, "morphism_names", tuple(str(i) for i in range(len(self.s))))
        self.validate()

    @property
    def n_objects(self) -> int:
        return len(self.e)

    @property
    def n_morphisms(self) -> int:
        return len(self.s)

    def validate(self):
        S, P = self.n_objects, self.n_morphisms
        s, t, e, mu, iota = self.s, self.t, self.e, self.mu, self.iota
        if len(t) != P or len(iota) != P or mu.shape != (P, P):
            raise InvalidGroupoid("table sizes disagree")
        for arr, hi, what in ((s, S, "s"), (t, S, "t"), (e, P, "e"), (iota, P, "iota")):
            if len(arr) and (arr.min() < 0 or arr.max() >= hi):
                raise InvalidGroupoid(f"{what} has values out of range")
        composable = t[:, None] == s[None, :]
        if np.any((mu >= 0) != composable):
            raise InvalidGroupoid("mu must be defined exactly on pairs with t(a) = s(b)")
        if np.any(mu >= P):
            raise InvalidGroupoid("mu has values out of range")
        a, b = np.nonzero(composable)
        c = mu[a, b]
        if np.any(s[c] != s[a]) or np.any(t[c] != t[b]):
            raise InvalidGroupoid("source/target of a composite are wrong")
        if np.any(s[e] != np.arange(S)) or np.any(t[e] != np.arange(S)):
            raise InvalidGroupoid("identities must be endomorphisms of their object")
        allp = np.arange(P)
        if np.any(mu[e[s], allp] != allp) or np.any(mu[allp, e[t]] != allp):
            raise InvalidGroupoid("unit law fails")
        if np.any(s[iota] != t) or np.any(t[iota] != s):
            raise InvalidGroupoid("inverse has the wrong endpoints")
        if np.any(mu[allp, iota] != e[s]) or np.any(mu[iota, allp] != e[t]):
            raise InvalidGroupoid("inverse law fails")
        # associativity over all composable triples
        for x in range(P):
            ys = np.nonzero(composable[x])[0]
            if not len(ys):
                continue
            xy = mu[x, ys]
            for y, z in zip(ys, xy):
                zs = np.nonzero(composable[y])[0]
                if np.any(mu[z, zs] != mu[x, mu[y, zs]]):
                    raise InvalidGroupoid("associativity fails")

    def is_group(self) -> bool:
        return bool(np.all(self.s == self.t))

    def same_tables(self, other: "FiniteGroupoid") -> bool:
        return all(np.array_equal(getattr(self, k), getattr(other, k)) for k in ("s", "t", "e", "mu", "iota"))

    def to_dict(self) -> dict:
        on, mn = self.object_names, self.morphism_names
        P = self.n_morphisms
        return {
            "objects": list(on),
            "morphisms": list(mn),
            "s": {mn[a]: on[self.s[a]] for a in range(P)},
            "t": {mn[a]: on[self.t[a]] for a in range(P)},
            "e": {on[x]: mn[self.e[x]] for x in range(self.n_objects)},
            "mu": [[mn[a], mn[b], mn[self.mu[a, b]]] for a in range(P) for b in range(P) if self.mu[a, b] >= 0],
            "iota": {mn[a]: mn[self.iota[a]] for a in range(P)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteGroupoid":
        try:
            on, mn = [str(x) for x in d["objects"]], [str(x) for x in d["morphisms"]]
            oi = {n: i for i, n in enumerate(on)}
            mi = {n: i for i, n in enumerate(mn)}
            P = len(mn)
            mu = -np.ones((P, P), dtype=np.int64)
            for a, b, c in d["mu"]:
                mu[mi[str(a)], mi[str(b)]] = mi[str(c)]
            return cls(
                [oi[str(d["s"][m])] for m in mn],
                [oi[str(d["t"][m])] for m in mn],
                [mi[str(d["e"][o])] for o in on],
                mu,
                [mi[str(d["iota"][m])] for m in mn],
                tuple(on),
                tuple(mn),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGroupoid(f"malformed groupoid table: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroupoid":
        return cls.from_dict(json.loads(text))


# -- small groups and groupoid constructors ----------------------------------


def _perm_group(gens: list[tuple]) -> list[tuple]:
    n = len(gens[0])
    ident = tuple(range(n))
    elems, frontier = [ident], [ident]
    seen = {ident}
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = tuple(h[g[i]] for i in range(n))
                if k not in seen:
                    seen.add(k)
                    elems.append(k)
                    nxt.append(k)
        frontier = nxt
    return elems


def _cyclic(n: int) -> list[tuple]:
    return _perm_group([tuple((i + 1) % n for i in range(n))]) if n > 1 else [(0,)]


SMALL_GROUPS = {
    "C1": [(0,)],
    "C2": _cyclic(2),
    "C3": _cyclic(3),
    "C4": _cyclic(4),
    "C5": _cyclic(5),
    "C6": _cyclic(6),
    "V4": _perm_group([(1, 0, 3, 2), (2, 3, 0, 1)]),
    "S3": _perm_group([(1, 0, 2), (1, 2, 0)]),
}


def connected_groupoid(n_objects: int, group: list[tuple]) -> FiniteGroupoid:
    """Morphisms (i, g, j): i -> j for g in the group; (i,g,j)(j,h,l) = (i, gh, l)."""
    G = list(group)
    gi = {g: k for k, g in enumerate(G)}
    n = len(G[0])
    mul = [[gi[tuple(h[g[x]] for x in range(n))] for h in G] for g in G]
    inv = [next(k for k in range(len(G)) if mul[a][k] == 0) for a in range(len(G))]
    mors = [(i, g, j) for i in range(n_objects) for g in range(len(G)) for j in range(n_objects)]
    mi = {m: k for k, m in enumerate(mors)}
    P = len(mors)
    mu = -np.ones((P, P), dtype=np.int64)
    for a, (i, g, j) in enumerate(mors):
        for h in range(len(G)):
            for l in range(n_objects):
                mu[a, mi[(j, h, l)]] = mi[(i, mul[g][h], l)]
    return FiniteGroupoid(
        [m[0] for m in mors],
        [m[2] for m in mors],
        [mi[(x, 0, x)] for x in range(n_objects)],
        mu,
        [mi[(j, inv[g], i)] for (i, g, j) in mors],
    )


def disjoint_union(parts: list[FiniteGroupoid]) -> FiniteGroupoid:
    s, t, e, iota, blocks = [], [], [], [], []
    off_o = off_m = 0
    for G in parts:
        s += list(G.s + off_o)
        t += list(G.t + off_o)
        e += list(G.e + off_m)
        iota += list(G.iota + off_m)
        blocks.append((off_m, G))
        off_o += G.n_objects
        off_m += G.n_morphisms
    mu = -np.ones((off_m, off_m), dtype=np.int64)
    for off, G in blocks:
        P = G.n_morphisms
        sub = G.mu.copy()
        sub[sub >= 0] += off
        mu[off : off + P, off : off + P] = sub
    return FiniteGroupoid(s, t, e, mu, iota)


def relabel(G: FiniteGroupoid, obj_perm, mor_perm) -> FiniteGroupoid:
    """Transport G along bijections old -> new of objects and morphisms."""
    op, mp = np.asarray(obj_perm), np.asarray(mor_perm)
    P, S = G.n_morphisms, G.n_objects
    s, t, iota = (np.empty(P, np.int64) for _ in range(3))
    e = np.empty(S, np.int64)
    s[mp] = op[G.s]
    t[mp] = op[G.t]
    iota[mp] = mp[G.iota]
    e[op] = mp[G.e]
    mu = -np.ones((P, P), dtype=np.int64)
    a, b = np.nonzero(G.mu >= 0)
    mu[mp[a], mp[b]] = mp[G.mu[a, b]]
    return FiniteGroupoid(s, t, e, mu, iota)


def group_groupoid(name: str) -> FiniteGroupoid:
    return connected_groupoid(1, SMALL_GROUPS[name])


def pair_groupoid(n: int) -> FiniteGroupoid:
    return connected_groupoid(n, SMALL_GROUPS["C1"])


def discrete_groupoid(n: int) -> FiniteGroupoid:
    return disjoint_union([connected_groupoid(1, SMALL_GROUPS["C1"]) for _ in range(n)])


def random_groupoid(rng: random.Random, max_objects: int = 4, max_morphisms: int = 24) -> FiniteGroupoid:
    """Disjoint union of connected pieces k^2 * |G| with shuffled labels."""
    budget_o = rng.randint(1, max_objects)
    budget_m = max_morphisms
    parts = []
    while budget_o > 0:
        k = rng.randint(1, budget_o)
        while k * k > budget_m - (budget_o - k):
            k -= 1
        room = budget_m - (budget_o - k)  # leave one morphism per remaining object
        names = [g for g, els in SMALL_GROUPS.items() if k * k * len(els) <= room]
        grp = SMALL_GROUPS[rng.choice(names)]
        parts.append(connected_groupoid(k, grp))
        budget_o -= k
        budget_m -= k * k * len(grp)
    G = disjoint_union(parts)
    op = list(range(G.n_objects))
    mp = list(range(G.n_morphisms))
    rng.shuffle(op)
    rng.shuffle(mp)
    return relabel(G, op, mp)


# -- maps of finite sets -----------------------------------------------------


@lru_cache(maxsize=None)
def all_maps(m: int, n: int) -> np.ndarray:
    """Every map [0, m] -> [0, n] as rows of an array of shape ((n+1)^(m+1), m+1)."""
    grids = np.array(list(itertools.product(range(n + 1), repeat=m + 1)), dtype=np.int64)
    return grids.reshape(-1, m + 1)


def compose(g: tuple, f: tuple) -> tuple:
    """g o f for f: [0,l] -> [0,m] and g: [0,m] -> [0,n]."""
    return tuple(g[i] for i in f)


def additive_squares(N: int):
    """Every additive cocartesian square [0,m] -> [0,n] <- [0,l] glued along
    a in [0,m] and b in [0,l], with n = m + l <= N and m, l >= 1.

    Yields (m, l, n, a, b, alpha, beta) with alpha, beta the two maps into
    [0,n]: alpha is the inclusion and beta sends b to a and the remaining
    points of [0,l] in order to m+1, ..., n."""
    for n in range(2, N + 1):
        for m in range(1, n):
            l = n - m
            for a in range(m + 1):
                for b in range(l + 1):
                    alpha = tuple(range(m + 1))
                    rest = iter(range(m + 1, n + 1))
                    beta = tuple(a if j == b else next(rest) for j in range(l + 1))
                    yield m, l, n, a, b, alpha, beta


# -- oversimplicial sets -----------------------------------------------------


class TruncatedOversimplicialSet:
    """Levels P_0..P_N given by their sizes, structure maps by ``pull``.

    Subclasses implement ``size(n)`` and ``pull(f, n, idx)`` returning the
    image in P_m of the elements ``idx`` of P_n under f*.
    """

    N: int

    def size(self, n: int) -> int:
        raise NotImplementedError

    def pull(self, f: tuple, n: int, idx: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_map(self, f: tuple, n: int):
        m = len(f) - 1
        if m < 0 or m > self.N or n > self.N or min(f) < 0 or max(f) > n:
            raise PreconditionError(f"map {f} is not [0,{m}] -> [0,{n}] within truncation {self.N}")

    def table(self, f: tuple, n: int) -> np.ndarray:
        return self.pull(tuple(f), n, np.arange(self.size(n)))

    def to_dict(self, max_level: int | None = None) -> dict:
        """Full structure tables for inspection (small truncations only)."""
        top = self.N if max_level is None else max_level
        maps = {}
        for m in range(top + 1):
            for n in range(top + 1):
                for f in all_maps(m, n):
                    key = f"{n}:{','.join(map(str, f))}"
                    maps[key] = self.table(tuple(int(v) for v in f), n).tolist()
        return {"levels": [self.size(n) for n in range(top + 1)], "maps": maps}


def _encode(chains: np.ndarray, base: int) -> np.ndarray:
    code = np.zeros(chains.shape[:-1], dtype=np.int64)
    for i in range(chains.shape[-1] - 1, -1, -1):
        code = code * base + chains[..., i]
    return code


class Nerve(TruncatedOversimplicialSet):
    """P_0 = objects; P_n = composable chains of length n, in lexicographic
    order, so P_1 is the morphism set in its own order."""

    def __init__(self, G: FiniteGroupoid, N: int = 4):
        if N < 2:
            raise PreconditionError("truncation must be at least 2")
        if G.n_morphisms ** N >= 2**62:
            raise PreconditionError("groupoid too large for this truncation")
        self.G, self.N = G, N
        P = G.n_morphisms
        self.chains = [np.zeros((G.n_objects, 0), dtype=np.int64), np.arange(P, dtype=np.int64)[:, None]]
        # morphisms grouped by source, for extending chains on the right
        by_src = np.argsort(G.s, kind="stable")
        deg = np.bincount(G.s, minlength=G.n_objects)
        start = np.concatenate([[0], np.cumsum(deg)[:-1]])
        for n in range(2, N + 1):
            prev = self.chains[-1]
            end = G.t[prev[:, -1]]
            reps = deg[end]
            rows = np.repeat(np.arange(len(prev)), reps)
            offs = np.arange(len(rows)) - np.repeat(np.cumsum(reps) - reps, reps)
            nxt = by_src[np.repeat(start[end], reps) + offs]
            self.chains.append(np.hstack([prev[rows], nxt[:, None]]))
        self._codes = [None] + [_encode(c, P) for c in self.chains[1:]]
        self._order = [None] + [np.argsort(c, kind="stable") for c in self._codes[1:]]
        self._sorted = [None] + [c[o] for c, o in zip(self._codes[1:], self._order[1:])]

    def size(self, n: int) -> int:
        return len(self.chains[n])

    def vertices(self, n: int, idx: np.ndarray) -> np.ndarray:
        """Objects o_0..o_n of the chains idx, shape (n+1, len(idx))."""
        if n == 0:
            return np.asarray(idx)[None, :]
        ch = self.chains[n][idx]
        return np.vstack([self.G.s[ch[:, 0]][None, :], self.G.t[ch].T])

    def segments(self, n: int, idx: np.ndarray) -> np.ndarray:
        """x_ab for all a, b in [0, n]; shape (n+1, n+1, len(idx))."""
        G = self.G
        idx = np.asarray(idx)
        ch = self.chains[n][idx]
        verts = self.vertices(n, idx)
        X = np.empty((n + 1, n + 1, len(idx)), dtype=np.int64)
        for a in range(n + 1):
            X[a, a] = G.e[verts[a]]
            for b in range(a + 1, n + 1):
                # mu_(b-a) built one factor at a time
                X[a, b] = ch[:, a] if b == a + 1 else G.mu[X[a, b - 1], ch[:, b - 1]]
        for a in range(n + 1):
            for b in range(a):
                X[a, b] = G.iota[X[b, a]]
        return X

    def index_of(self, m: int, chains: np.ndarray) -> np.ndarray:
        """Positions in P_m of chains given as an array (..., m)."""
        if m == 1:
            return chains[..., 0]
        code = _encode(chains, self.G.n_morphisms)
        pos = np.searchsorted(self._sorted[m], code)
        pos = np.minimum(pos, len(self._sorted[m]) - 1)
        if np.any(self._sorted[m][pos] != code):
            raise AssertionError("pulled chain is not composable")
        return self._order[m][pos]

    def pull(self, f: tuple, n: int, idx: np.ndarray) -> np.ndarray:
        self._check_map(f, n)
        idx = np.asarray(idx)
        m = len(f) - 1
        if m == 0:
            return self.vertices(n, idx)[f[0]]
        X = self.segments(n, idx)
        pairs = np.stack([X[f[i], f[i + 1]] for i in range(m)], axis=-1)
        return self.index_of(m, pairs)

    def pull_many(self, maps: np.ndarray, n: int, idx: np.ndarray) -> np.ndarray:
        """f* for every row f of ``maps`` at once; shape (len(maps), len(idx))."""
        m = maps.shape[1] - 1
        if m == 0:
            return self.vertices(n, idx)[maps[:, 0]]
        X = self.segments(n, idx)
        pairs = np.stack([X[maps[:, i], maps[:, i + 1]] for i in range(m)], axis=-1)
        return self.index_of(m, pairs)


def nerve(G: FiniteGroupoid, N: int = 4) -> Nerve:
    return Nerve(G, N)


class ProductSet(TruncatedOversimplicialSet):
    """P_n = (n+1)-tuples in X with a common image in S; f* permutes and
    repeats coordinates: (f* x)_i = x_f(i)."""

    def __init__(self, image: list[int], N: int = 4):
        self.image = np.asarray(image, dtype=np.int64)
        self.N = N
        X = len(self.image)
        self.tuples = []
        for n in range(N + 1):
            rows = [
                tup
                for s in sorted(set(self.image.tolist()))
                for tup in itertools.product(np.nonzero(self.image == s)[0].tolist(), repeat=n + 1)
            ]
            self.tuples.append(np.array(rows, dtype=np.int64).reshape(-1, n + 1))
        self._base = max(X, 1)
        codes = [_encode(t, self._base) for t in self.tuples]
        self._order = [np.argsort(c) for c in codes]
        self._sorted = [c[o] for c, o in zip(codes, self._order)]

    def size(self, n: int) -> int:
        return len(self.tuples[n])

    def pull(self, f: tuple, n: int, idx: np.ndarray) -> np.ndarray:
        self._check_map(f, n)
        m = len(f) - 1
        out = self.tuples[n][np.asarray(idx)][:, list(f)]
        code = _encode(out, self._base)
        return self._order[m][np.searchsorted(self._sorted[m], code)]


class PaddedSet(TruncatedOversimplicialSet):
    """A copy z of one element w of P_level added to P_level.

    z behaves like w under every map except the bijections of [0, level],
    which fix it.  The result is still functorial, but P_level no longer
    injects into the iterated fibre product."""

    def __init__(self, base: TruncatedOversimplicialSet, level: int, w: int):
        self.base, self.level, self.w, self.N = base, level, w, base.N
        self.z = base.size(level)

    def size(self, n: int) -> int:
        return self.base.size(n) + (1 if n == self.level else 0)

    def pull(self, f: tuple, n: int, idx: np.ndarray) -> np.ndarray:
        self._check_map(f, n)
        idx = np.array(idx, dtype=np.int64)
        is_z = (idx == self.z) if n == self.level else np.zeros(len(idx), bool)
        idx[is_z] = self.w
        out = self.base.pull(f, n, idx)
        m = len(f) - 1
        if m == self.level and n == self.level and sorted(f) == list(range(n + 1)):
            out = np.where(is_z, self.z, out)
        return out


def identity_chain(O: Nerve, level: int, obj: int = 0) -> int:
    """Index of the chain of identities at ``obj``."""
    ch = np.full((1, level), O.G.e[obj], dtype=np.int64)
    return int(O.index_of(level, ch)[0]) if level > 1 else int(ch[0, 0])


class SubObject(TruncatedOversimplicialSet):
    """Levelwise subsets of a parent closed under every f*."""

    def __init__(self, parent: TruncatedOversimplicialSet, members: list[np.ndarray]):
        self.parent, self.N = parent, parent.N
        self.members = [np.unique(np.asarray(mem, dtype=np.int64)) for mem in members]
        if len(self.members) != self.N + 1:
            raise PreconditionError("need one member set per level")

    def size(self, n: int) -> int:
        return len(self.members[n])

    def inclusion(self, n: int) -> np.ndarray:
        return self.members[n]

    def pull(self, f: tuple, n: int, idx: np.ndarray) -> np.ndarray:
        self._check_map(f, n)
        m = len(f) - 1
        image = self.parent.pull(f, n, self.members[n][np.asarray(idx)])
        pos = np.searchsorted(self.members[m], image)
        pos = np.minimum(pos, max(len(self.members[m]) - 1, 0))
        if len(image) and np.any(self.members[m][pos] != image):
            raise PreconditionError("member sets are not closed under the structure maps")
        return pos


def chains_within(O: Nerve, allowed: set) -> SubObject:
    """Chains all of whose x_ab lie in ``allowed``; level 0 keeps objects
    whose identity is allowed."""
    ok = np.zeros(O.G.n_morphisms, dtype=bool)
    ok[list(allowed)] = True
    members = [np.nonzero(ok[O.G.e])[0]]
    for n in range(1, O.N + 1):
        X = O.segments(n, np.arange(O.size(n)))
        members.append(np.nonzero(ok[X].all(axis=(0, 1)))[0])
    return SubObject(O, members)


# -- multiplicativity --------------------------------------------------------


def _square_is_cartesian(O, m, l, n, a, b, alpha, beta) -> bool:
    allx = np.arange(O.size(n))
    pm = O.pull(alpha, n, allx)
    pl = O.pull(beta, n, allx)
    am = O.table((a,), m)
    bl = O.table((b,), l)
    if np.any(am[pm] != bl[pl]):
        return False
    if len(np.unique(pm * O.size(l) + pl)) != O.size(n):
        return False
    size0 = O.size(0)
    fibre = np.bincount(am, minlength=size0) @ np.bincount(bl, minlength=size0)
    return int(fibre) == O.size(n)


def is_multiplicative(O: TruncatedOversimplicialSet, max_level: int | None = None) -> bool:
    """Every additive square within truncation goes to a cartesian square."""
    top = O.N if max_level is None else min(max_level, O.N)
    return all(_square_is_cartesian(O, *sq) for sq in additive_squares(top))


def is_morphism_multiplicative(Q: SubObject, max_level: int | None = None) -> bool:
    """The inclusion Q -> P is multiplicative: for each additive square, Q_n
    maps bijectively to (Q_m x_{P_m} P_n) x_{P_n} (Q_l x_{P_l} P_n)."""
    P = Q.parent
    top = Q.N if max_level is None else min(max_level, Q.N)
    for m, l, n, a, b, alpha, beta in additive_squares(top):
        alln = np.arange(P.size(n))
        inQm = np.isin(P.pull(alpha, n, alln), Q.inclusion(m))
        inQl = np.isin(P.pull(beta, n, alln), Q.inclusion(l))
        target = np.nonzero(inQm & inQl)[0]
        if not np.array_equal(np.sort(target), Q.inclusion(n)):
            return False
    return True


# -- groupoid of a multiplicative oversimplicial set -------------------------


def groupoid_from(O: TruncatedOversimplicialSet) -> FiniteGroupoid:
    if O.N < 3:
        raise PreconditionError("associativity needs level 3; truncation must be >= 3")
    if not is_multiplicative(O, 3):
        raise NotMultiplicative("oversimplicial set is not multiplicative")
    P1 = O.size(1)
    s = O.table((0,), 1)
    t = O.table((1,), 1)
    e = O.table((0, 0), 0)
    iota = O.table((1, 0), 1)
    # mu = (02)* o ((01)*, (12)*)^(-1)
    first, second, outer = O.table((0, 1), 2), O.table((1, 2), 2), O.table((0, 2), 2)
    mu = -np.ones((P1, P1), dtype=np.int64)
    mu[first, second] = outer
    return FiniteGroupoid(s, t, e, mu, iota)


# -- functoriality -----------------------------------------------------------


def _sample(rng: np.random.Generator, size: int, cap: int) -> np.ndarray:
    if size <= cap:
        return np.arange(size)
    return np.sort(rng.choice(size, cap, replace=False))


def nerve_functoriality(O: Nerve, max_level: int = 4, cap: int = 64, seed: int = 0) -> int:
    """Check (g o f)* = f* o g* for every g: [0,m] -> [0,n] with m, n <=
    max_level and every f with source [0,0] or [0,1].  Elements of large
    levels are sampled (at most ``cap`` per level).  Returns the number of
    (g, element) pairs checked; raises AssertionError on a failure.

    On a nerve an element of P_l is determined by its images under the maps
    [0,1] -> [0,l], so these sources cover every f."""
    rng = np.random.default_rng(seed)
    top = min(max_level, O.N)
    checked = 0
    for n in range(top + 1):
        idx = _sample(rng, O.size(n), cap)
        if not len(idx):
            continue
        Xn = O.segments(n, idx)
        Vn = O.vertices(n, idx)
        for m in range(top + 1):
            maps = all_maps(m, n)
            gx = O.pull_many(maps, n, idx)  # (ng, E) indices in P_m
            # many (g, x) share an image; evaluate each element of P_m once
            uniq, inv = np.unique(gx.ravel(), return_inverse=True)
            inv = inv.reshape(gx.shape)
            Vm = O.vertices(m, uniq)
            for a in range(m + 1):
                if not np.array_equal(Vm[a][inv], Vn[maps[:, a]]):
                    raise AssertionError(f"vertex {a} fails for maps {m}<-{n}")
            if m:
                Xm = O.segments(m, uniq)
                for a in range(m + 1):
                    for b in range(m + 1):
                        if not np.array_equal(Xm[a, b][inv], Xn[maps[:, a], maps[:, b]]):
                            raise AssertionError(f"pair ({a},{b}) fails for maps {m}<-{n}")
            checked += gx.size
    return checked


def sampled_functoriality(O: TruncatedOversimplicialSet, trials: int = 200, seed: int = 0, max_level=None) -> int:
    """Literal check of (g o f)* = f* o g* on random f, g and all elements."""
    rng = random.Random(seed)
    top = O.N if max_level is None else min(max_level, O.N)
    for _ in range(trials):
        l, m, n = (rng.randint(0, top) for _ in range(3))
        f = tuple(rng.randint(0, m) for _ in range(l + 1))
        g = tuple(rng.randint(0, n) for _ in range(m + 1))
        allx = np.arange(O.size(n))
        lhs = O.pull(compose(g, f), n, allx)
        rhs = O.pull(f, m, O.pull(g, n, allx))
        if not np.array_equal(lhs, rhs):
            raise AssertionError(f"functoriality fails for f={f}, g={g}")
    return trials


def telescoping_product(G: FiniteGroupoid, chain, a: int, b: int, verts) -> int:
    """x_ab computed directly from the chain with the groupoid tables."""
    if a == b:
        return int(G.e[verts[a]])
    if a > b:
        return int(G.iota[telescoping_product(G, chain, b, a, verts)])
    acc = int(chain[a])
    for k in range(a + 1, b):
        acc = int(G.mu[acc, chain[k]])
    return acc


def random_chain(G: FiniteGroupoid, n: int, rng: random.Random) -> list[int]:
    x = rng.randrange(G.n_morphisms)
    chain = [x]
    for _ in range(n - 1):
        options = np.nonzero(G.s == G.t[chain[-1]])[0]
        chain.append(int(rng.choice(list(options))))
    return chain


def product_to_nerve(prod: ProductSet, pair_nerve: Nerve, n: int, pair_index) -> np.ndarray:
    """Image in the nerve of the pair groupoid of each tuple in P_n of the
    product set; pair_index[x, y] is the morphism x -> y."""
    tup = prod.tuples[n]
    if n == 0:
        return tup[:, 0]
    chains = pair_index[tup[:, :-1], tup[:, 1:]]
    return pair_nerve.index_of(n, chains)
