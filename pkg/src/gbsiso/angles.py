"""Rank-two lattice work around limit angles.

Vectors live in the exponent group; everything here is exact integer or
rational arithmetic on their exponent parts, with parity tracked separately
when membership in a subgroup is in question.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .config import (
    Configuration,
    degeneracy,
    find_root,
    is_full_tree,
    is_root,
    iterate_sons,
    minimal_full_tree_sons,
    twin_of,
    UniqueRoot,
)
from .errors import (
    DegenerateAngle,
    GbsError,
    IncompatibleSubgroups,
    InvalidConfiguration,
    NoPositiveVector,
    NotBasisElement,
    NotInSubgroup,
    NotStrictlyPositive,
    SearchLimit,
)
from .exponents import ExpVector, union_primes
from .sequence import LimitAngle, RootSequence, limit_directions, root_sequence


# ---- lattice helpers ---------------------------------------------------------

def _minor_primes(u: ExpVector, v: ExpVector) -> tuple[int, int] | None:
    primes = union_primes(u, v)
    for p, q in combinations(primes, 2):
        if u.get(p) * v.get(q) - u.get(q) * v.get(p):
            return p, q
    return None


def rational_coords(u: ExpVector, v: ExpVector, y: ExpVector) -> tuple[Fraction, Fraction] | None:
    """(s, t) with exps(y) = s exps(u) + t exps(v); u, v independent."""
    pq = _minor_primes(u, v)
    if pq is None:
        raise DegenerateAngle("vectors are dependent")
    p, q = pq
    det = u.get(p) * v.get(q) - u.get(q) * v.get(p)
    s = Fraction(y.get(p) * v.get(q) - y.get(q) * v.get(p), det)
    t = Fraction(u.get(p) * y.get(q) - u.get(q) * y.get(p), det)
    for r in union_primes(u, v, y):
        if s * u.get(r) + t * v.get(r) != y.get(r):
            return None
    return s, t


def coordinates(h1: ExpVector, h2: ExpVector, y: ExpVector) -> tuple[int, int] | None:
    """Integer (a, b) with y = a h1 + b h2 in the full group (parity included)."""
    got = rational_coords(h1, h2, y)
    if got is None:
        return None
    s, t = got
    if s.denominator != 1 or t.denominator != 1:
        return None
    a, b = int(s), int(t)
    return (a, b) if a * h1 + b * h2 == y else None


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class SubgroupClass:
    kind: str                              # "rank2", "rank1" or "parity"
    basis: tuple[ExpVector, ...] = ()      # (h1, h2) for rank2, (z,) for rank1
    torsion: bool = False

    @property
    def z(self) -> ExpVector:
        return self.basis[0]


def subgroup_class(x1: ExpVector, x2: ExpVector) -> SubgroupClass:
    if x1.is_parity_only() and x2.is_parity_only():
        return SubgroupClass("parity", (), not (x1.is_zero() and x2.is_zero()))
    if _minor_primes(x1, x2) is not None:
        return SubgroupClass("rank2", (x1, x2), False)
    # proportional exponent parts: x1 = a z0, x2 = c z0 with z0 primitive
    ref = x1 if x1.exps else x2
    g0 = math.gcd(*(e for _, e in ref.exps))
    z0 = ExpVector(((p, e // g0) for p, e in ref.exps))
    a = x1.get(ref.exps[0][0]) // z0.exps[0][1]
    c = x2.get(ref.exps[0][0]) // z0.exps[0][1]
    g, u, v = _egcd(a, c)
    z = u * x1 + v * x2          # generator of the exponent image
    # relation (c/g) x1 - (a/g) x2 has zero exponents; odd parity means torsion
    rel = (c // g) * x1 - (a // g) * x2
    return SubgroupClass("rank1", (z,), rel.parity == 1)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u a + v b = g = gcd(a, b) >= 0."""
    r0, r1, u0, u1, v0, v1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0 < 0:
        r0, u0, v0 = -r0, -u0, -v0
    return r0, u0, v0


def same_basis_pair(x: tuple[ExpVector, ExpVector], y: tuple[ExpVector, ExpVector]):
    """Integer matrix M with y_i = M[i][0] x1 + M[i][1] x2 and |det M| = 1, or None.

    For two generators this change-of-basis test is the Nielsen equivalence test.
    """
    if _minor_primes(*x) is None:
        raise InvalidConfiguration("x is not a rank-two pair")
    rows = []
    for yi in y:
        c = coordinates(x[0], x[1], yi)
        if c is None:
            return None
        rows.append(c)
    m = (tuple(rows[0]), tuple(rows[1]))
    return m if abs(det2(m[0], m[1])) == 1 else None


def in_angle(c: Configuration, y1: ExpVector, y2: ExpVector) -> str | None:
    """Son path from the full-tree configuration ``c`` to vectors (y1, y2), or None."""
    if not is_full_tree(c):
        raise InvalidConfiguration("in_angle needs a full-tree configuration")
    m = same_basis_pair((c.x1, c.x2), (y1, y2))
    if m is None or det2(m[0], m[1]) != 1:
        return None
    if min(m[0] + m[1]) < 0:
        return None
    (lam, mu), (sig, tau) = m
    path = []
    # Euclid on the first row; the second row follows the same basis change
    while lam > 0 and mu > 0:
        if mu >= lam:
            path.append("1")
            mu -= lam
            tau -= sig
        else:
            path.append("2")
            lam -= mu
            sig -= tau
    if lam == 0:
        return None
    # now y1 is the first basis vector, so lam == 1 and tau == 1
    if sig < 0:
        return None
    path.append("2" * sig)
    s = "".join(path)
    d = iterate_sons(c, s)
    if d is None or d.x1 != y1 or d.x2 != y2:
        return None
    return s


def in_limit_angle(angle: LimitAngle, y: ExpVector) -> bool:
    got = rational_coords(angle.minus, angle.plus, y)
    if got is None:
        return False
    return got[0] >= 0 and got[1] >= 0


# ---- realizability -------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    kind: str                              # "infinite_right", "finite_right", "not_realizable"
    witness: Configuration | None = None   # a root whose sequence has l as right limit


def _ambient_primes(a1, a2, hclass: SubgroupClass) -> tuple[int, ...]:
    return union_primes(a1, a2, *hclass.basis)


def _check_witness(root: Configuration, l: ExpVector, infinite: bool) -> bool:
    if degeneracy(root) is not None or not is_root(root) or twin_of(root) is not None:
        return False
    seq = root_sequence(root)
    if seq.right.infinite != infinite:
        return False
    lim = limit_directions(seq)
    return lim is not None and lim.plus == l


def _root_if_valid(a1, a2, x1, x2) -> Configuration | None:
    try:
        c = Configuration(a1, a2, x1, x2)
    except InvalidConfiguration:
        return None
    if degeneracy(c) is not None:
        return None
    return c


def realizable_limit_direction(a1: ExpVector, a2: ExpVector, hclass: SubgroupClass, l: ExpVector,
                               search_cap: int = 2000) -> Realization:
    primes = _ambient_primes(a1, a2, hclass)
    if not l.is_positive_on(primes) or not l.exps:
        raise NotStrictlyPositive(str(l))
    if hclass.kind == "rank2":
        h1, h2 = hclass.basis
        xy = coordinates(h1, h2, l)
        if xy is None:
            raise NotInSubgroup(str(l))
        x, y = xy
        if math.gcd(x, y) != 1:
            raise NotBasisElement(f"{l} is not primitive in the subgroup")
        d = coordinates(h1, h2, a1 - a2)
        if d is not None and abs(det2(xy, d)) == 1:
            raise NotBasisElement(f"{l} forms a basis together with a1 - a2")
        # p with det(p, l) = 1 in basis coordinates
        _, s, t = _egcd(y, -x)
        p = s * h1 + t * h2
        partner = lambda big: p + big * l  # noqa: E731
    elif hclass.kind == "rank1":
        z = hclass.z
        ratio = rational_coords_1d(z, l)
        if ratio is None:
            raise NotInSubgroup(str(l))
        partner = None
    else:
        raise NotInSubgroup("subgroup has no exponent part")

    if not (a2 + l).geq(a1):
        kind = "infinite_right"
    elif not (a1 + l).geq(a2):
        kind = "finite_right"
    else:
        return Realization("not_realizable")

    for cand in _candidates(a1, a2, hclass, l, kind, partner, search_cap):
        if kind == "infinite_right":
            if cand is not None and is_root(cand) and _check_witness(cand, l, True):
                return Realization(kind, cand)
        else:
            if cand is None or not is_full_tree(cand):
                continue
            found = find_root(cand)
            if isinstance(found, UniqueRoot) and _check_witness(found.root, l, False):
                return Realization(kind, found.root)
    raise SearchLimit("no witness found for a realizable direction")


def rational_coords_1d(z: ExpVector, l: ExpVector) -> int | None:
    """Integer m >= 1 with exps(l) = m exps(z)."""
    p, zp = z.exps[0]
    m, r = divmod(l.get(p), zp)
    if r or m < 1 or (m * z).drop_parity() != l.drop_parity():
        return None
    return m


def _candidates(a1, a2, hclass, l, kind, partner, cap) -> Iterator[Configuration | None]:
    if hclass.kind == "rank2":
        for big in range(-cap, cap):
            v0 = partner(big)
            if not v0.is_nonneg():
                continue
            if kind == "infinite_right":
                yield _root_if_valid(a1, a2, v0, v0 + l)
            else:
                yield _root_if_valid(a1, a2, v0, l)
        return
    z = hclass.z
    ell = rational_coords_1d(z, l)
    shifts = [ExpVector()] + ([ExpVector.torsion()] if hclass.torsion else [])
    for lam in range(1, cap):
        for e in shifts:
            v = lam * z + e
            if kind == "infinite_right":
                if math.gcd(lam, ell) == 1:
                    yield _root_if_valid(a1, a2, v, v + l)
            else:
                for first, second in ((v, l), (l, v)):
                    yield _root_if_valid(a1, a2, first, second)


# ---- enumeration of limit directions -----------------------------------------

@dataclass(frozen=True)
class ProgressionFamily:
    """Vectors base + i*step (basis coordinates) for 0 <= i < count."""
    h1: ExpVector
    h2: ExpVector
    base: tuple[int, int]
    step: tuple[int, int]
    count: int | None          # None for an unbounded family

    def coords(self, i: int) -> tuple[int, int]:
        return (self.base[0] + i * self.step[0], self.base[1] + i * self.step[1])

    def member(self, i: int) -> ExpVector:
        x, y = self.coords(i)
        return x * self.h1 + y * self.h2

    @property
    def base_vector(self) -> ExpVector:
        return self.member(0)

    @property
    def step_vector(self) -> ExpVector:
        sx, sy = self.step
        return sx * self.h1 + sy * self.h2

    def instantiate(self, bound: int) -> list[ExpVector]:
        """Members whose exponents are all at most ``bound``."""
        out = []
        i = 0
        while self.count is None or i < self.count:
            v = self.member(i)
            if max(e for _, e in v.exps) > bound:
                if self.count is None and self.step_vector.is_nonneg():
                    break
            else:
                out.append(v)
            i += 1
            if self.count is None and i > 10 ** 6:
                raise SearchLimit("family instantiation ran away")
        return out


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _positive_range(h1, h2, primes, x0, y0, dx, dy) -> tuple[float | int, float | int] | None:
    # t range (inclusive, +-inf allowed) keeping (x0 + t dx) h1 + (y0 + t dy) h2 > 0
    lo, hi = -math.inf, math.inf
    for q in primes:
        c = x0 * h1.get(q) + y0 * h2.get(q)
        s = dx * h1.get(q) + dy * h2.get(q)
        if s == 0:
            if c < 1:
                return None
        elif s > 0:
            lo = max(lo, _ceil_div(1 - c, s))
        else:
            hi = min(hi, (c - 1) // (-s))
    if lo > hi:
        return None
    return lo, hi


def _split(fam: ProgressionFamily, bad) -> list[ProgressionFamily]:
    """Drop members whose index lies in the sorted list of half-open index
    intervals ``bad``; keeps the remaining runs as families."""
    runs = []
    start = 0
    end = fam.count  # None = infinity
    for lo, hi in bad:  # each interval [lo, hi) possibly with hi None
        lo = max(lo, start)
        if end is not None and lo >= end:
            break
        if hi is not None and hi <= start:
            continue
        if lo > start:
            runs.append((start, lo))
        if hi is None:
            start = None
            break
        start = hi
    if start is not None and (end is None or start < end):
        runs.append((start, end))
    out = []
    for a, b in runs:
        out.append(ProgressionFamily(fam.h1, fam.h2, fam.coords(a), fam.step, None if b is None else b - a))
    return out


def _linear_bad_interval(f0: int, f1: int, pred) -> list[tuple[int, int | None]]:
    """Index set {i >= 0 : pred(f0 + i f1)} for monotone threshold predicates,
    returned as half-open intervals.  ``pred`` is (op, value) with op '<'."""
    op, c = pred
    assert op == "<"
    if f1 == 0:
        return [(0, None)] if f0 < c else []
    if f1 > 0:
        # f0 + i f1 < c  <=>  i < (c - f0) / f1
        hi = _ceil_div(c - f0, f1)
        return [(0, hi)] if hi > 0 else []
    lo = (f0 - c) // (-f1) + 1
    return [(max(lo, 0), None)]


def _points_bad(indices: Sequence[int]) -> list[tuple[int, int | None]]:
    return [(i, i + 1) for i in sorted(set(indices)) if i >= 0]


def _merge(bad: list[tuple[int, int | None]]) -> list[tuple[int, int | None]]:
    bad = sorted(bad, key=lambda iv: iv[0])
    out: list[tuple[int, int | None]] = []
    for lo, hi in bad:
        if out:
            plo, phi = out[-1]
            if phi is None or lo <= phi:
                out[-1] = (plo, None if (phi is None or hi is None) else max(phi, hi))
                continue
        out.append((lo, hi))
    return out


def has_positive_vector(h1: ExpVector, h2: ExpVector, primes: Sequence[int]) -> bool:
    normals = [(h1.get(q), h2.get(q)) for q in primes]
    if any(n == (0, 0) for n in normals):
        return False
    cands = [n for n in normals]
    cands += [(-b, a) for a, b in normals] + [(b, -a) for a, b in normals]
    pool = list(cands)
    for u, v in combinations(cands, 2):
        pool.append((u[0] + v[0], u[1] + v[1]))
    return any(all(x * a + y * b > 0 for a, b in normals) for x, y in pool)


def enumerate_limit_directions(a1: ExpVector, a2: ExpVector, h1: ExpVector, h2: ExpVector) -> list[ProgressionFamily]:
    """Families covering the strictly positive realizable limit directions for
    configurations with minimal points a1, a2 and vectors generating <h1, h2>."""
    if _minor_primes(h1, h2) is None:
        raise InvalidConfiguration("h1, h2 must span a rank-two subgroup")
    primes = union_primes(a1, a2, h1, h2)
    if not has_positive_vector(h1, h2, primes):
        raise NoPositiveVector("the subgroup has no strictly positive vector")
    gap = {q: abs(a1.get(q) - a2.get(q)) for q in primes}
    twin_d = coordinates(h1, h2, a1 - a2)
    families: list[ProgressionFamily] = []
    done: list[int] = []
    for p0 in primes:
        c = gap[p0]
        a, b = h1.get(p0), h2.get(p0)
        g = math.gcd(a, b)
        for d in range(1, c):
            if g == 0 or d % g:
                continue
            g_, u, v = _egcd(a, b)
            x0, y0 = u * (d // g), v * (d // g)
            dx, dy = b // g, -(a // g)
            rng = _positive_range(h1, h2, primes, x0, y0, dx, dy)
            if rng is None:
                continue
            lo, hi = rng
            for r in range(d):
                if math.gcd(x0 + r * dx, y0 + r * dy) != 1:
                    continue
                # t = r + d*j stays inside [lo, hi]
                if lo != -math.inf:
                    j0 = _ceil_div(lo - r, d)
                    t0, sgn = r + d * j0, 1
                    count = None if hi == math.inf else max(0, (hi - t0) // d + 1)
                else:
                    j0 = (hi - r) // d
                    t0, sgn = r + d * j0, -1
                    count = None
                if count == 0:
                    continue
                fam = ProgressionFamily(h1, h2, (x0 + t0 * dx, y0 + t0 * dy),
                                        (sgn * d * dx, sgn * d * dy), count)
                bad: list[tuple[int, int | None]] = []
                for q in done:
                    f0 = fam.base_vector.get(q)
                    f1 = fam.step_vector.get(q)
                    bad += _linear_bad_interval(f0, f1, ("<", gap[q]))
                if twin_d is not None:
                    k0 = det2(fam.base, twin_d)
                    k1 = det2(fam.step, twin_d)
                    pts = []
                    for target in (1, -1):
                        if k1 == 0:
                            if k0 == target:
                                bad.append((0, None))
                        elif (target - k0) % k1 == 0:
                            pts.append((target - k0) // k1)
                    bad += _points_bad(pts)
                families += _split(fam, _merge(bad))
        done.append(p0)
    return [f for f in families if f.count is None or f.count > 0]


def realizable_set_bruteforce(a1, a2, h1, h2, bound: int, box: int) -> set[ExpVector]:
    """Independent check: scan basis coordinates in a box."""
    primes = union_primes(a1, a2, h1, h2)
    twin_d = coordinates(h1, h2, a1 - a2)
    out = set()
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if math.gcd(x, y) != 1:
                continue
            l = x * h1 + y * h2
            if not l.is_positive_on(primes) or max(l.get(q) for q in primes) > bound:
                continue
            if twin_d is not None and abs(det2((x, y), twin_d)) == 1:
                continue
            if (a2 + l).geq(a1) and (a1 + l).geq(a2):
                continue
            out.add(l)
    return out


# ---- cones -------------------------------------------------------------------

def cone_relation(first: LimitAngle, second: LimitAngle) -> str:
    """"coincide", "share_boundary" or "disjoint" for two limit angles."""
    u, v = first.minus, first.plus
    pq = _minor_primes(u, v)
    if pq is None:
        raise DegenerateAngle("first angle is degenerate")
    for w in (second.minus, second.plus):
        if rational_coords(u, v, w) is None:
            raise IncompatibleSubgroups("angles lie in different planes")
    p, q = pq
    flat = lambda x: (x.get(p), x.get(q))  # noqa: E731

    def cmp(x, y) -> int:
        # angular order inside the quadrant: negative when x comes first
        c = det2(flat(x), flat(y))
        return -1 if c > 0 else (1 if c < 0 else 0)

    def interval(a: LimitAngle):
        return (a.minus, a.plus) if cmp(a.minus, a.plus) <= 0 else (a.plus, a.minus)

    s1, e1 = interval(first)
    s2, e2 = interval(second)
    if cmp(s1, s2) == 0 and cmp(e1, e2) == 0:
        return "coincide"
    if cmp(e1, s2) < 0 or cmp(e2, s1) < 0:
        return "disjoint"
    if cmp(e1, s2) == 0 or cmp(e2, s1) == 0:
        return "share_boundary"
    raise GbsError("limit angles overlap in their interiors")


# ---- rank one classes -------------------------------------------------------------

@dataclass(frozen=True)
class RankOneClass:
    sequence: RootSequence | None     # None for a twin class
    twins: tuple[Configuration, ...] = ()

    @property
    def representative(self) -> Configuration:
        if self.sequence is not None:
            return self.sequence.root(0)
        return self.twins[0]

    def contains(self, r: Configuration) -> bool:
        if self.sequence is not None:
            return self.sequence.contains(r)
        return r in self.twins


def _has_full_tree_son(cls: RankOneClass) -> bool:
    if cls.sequence is not None:
        return limit_directions(cls.sequence) is not None
    return any(minimal_full_tree_sons(t) for t in cls.twins)


def enumerate_rank1_classes(a1: ExpVector, a2: ExpVector, hclass: SubgroupClass,
                            bound: int | None = None) -> list[RankOneClass]:
    """Isomorphism classes of full-tree configurations with vectors generating
    a rank-one subgroup, one root sequence each, smallest roots first."""
    if hclass.kind != "rank1":
        raise InvalidConfiguration("rank-one subgroup expected")
    z = hclass.z
    if bound is None:
        t = 1
        while not ((a1 + t * z).geq(a2) and (a2 + t * z).geq(a1)):
            t += 1
            if t > 10 ** 5:
                raise NoPositiveVector("subgroup never dominates the minimal points")
        bound = 4 * t + 16
    shifts = [ExpVector()] + ([ExpVector.torsion()] if hclass.torsion else [])
    elems = [(k, e) for k in range(1, bound + 1) for e in shifts]
    pairs = []
    for (k1, e1), (k2, e2) in ((p, q) for p in elems for q in elems):
        if math.gcd(k1, k2) != 1:
            continue
        if hclass.torsion and (k1 * e2.parity - k2 * e1.parity) % 2 == 0:
            continue
        pairs.append((k1 + k2, k1, k2, k1 * z + e1, k2 * z + e2))
    pairs.sort(key=lambda t: t[:3])
    classes: list[RankOneClass] = []
    for _, _, _, x1, x2 in pairs:
        r = _root_if_valid(a1, a2, x1, x2)
        if r is None or not is_root(r):
            continue
        if any(c.contains(r) for c in classes):
            continue
        tw = twin_of(r)
        if tw is not None:
            classes.append(RankOneClass(None, tuple(tw.members())))
        else:
            classes.append(RankOneClass(root_sequence(r)))
    return [c for c in classes if _has_full_tree_son(c)]
