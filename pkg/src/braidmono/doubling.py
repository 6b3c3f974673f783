"""Explicit braid factorizations of line and conic arrangements, the sextic
branch curve of the quadratic self-map of CP^2, and the degree-doubling
formula that builds the branch-curve factorization of the doubled covering
from that of the original one.

Strand order for the doubled curve is 1..d, 1'..d', then three clusters
alpha, beta, gamma, each laid out 1_X, 1'_X, ..., n_X, n'_X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .braid_core import (
    ABOVE,
    BELOW,
    BraidInputError,
    BraidWord,
    HalfTwist,
    above_arc,
    band_generator,
    conjugate,
    twist_along_path,
)
from .factorization import Factor, Factorization, is_certified, product
from .monodromy import GeomRep, check_factorization, standard_pairs

CLUSTERS = ("alpha", "beta", "gamma")


def _z(d: int, i: int, j: int) -> HalfTwist:
    return band_generator(min(i, j), max(i, j), d)


def _factors(twist: HalfTwist, r: int) -> list[Factor]:
    # r = 4 contacts are two node factors along the same arc
    if r == 4:
        return [Factor(twist, 2), Factor(twist, 2)]
    return [Factor(twist, r)]


def _check_input(f: Factorization, d: int | None = None) -> None:
    if d is not None and f.strands != d:
        raise BraidInputError(f"factorization lives on {f.strands} strands, expected {d}")
    if not f.target_is_delta2 or not is_certified(f):
        raise BraidInputError("input factorization is not a certified factorization of the full twist")


# --------------------------------------------------------------------------
# lines, smooth curves, conics


def lines_factorization(d: int) -> Factorization:
    """prod_{i<j} Z_ij^2: d lines in general position."""
    if d < 1:
        raise BraidInputError("d must be >= 1")
    fs = [Factor(band_generator(i, j, d), 2) for i in range(1, d) for j in range(i + 1, d + 1)]
    return Factorization(d, tuple(fs))


def smooth_curve_factorization(d: int) -> Factorization:
    """(X_1 ... X_{d-1})^d as d(d-1) tangency factors."""
    if d < 1:
        raise BraidInputError("d must be >= 1")
    fs = [Factor(HalfTwist(d, i), 1) for _ in range(d) for i in range(1, d)]
    return Factorization(d, tuple(fs))


def _primed_nodes(n_strands: int, d: int, offset: int = 0) -> list[Factor]:
    """prod_{i<j} Z_{i'j'}^2 where k' sits at position offset + d + k."""
    o = offset + d
    return [Factor(band_generator(o + i, o + j, n_strands), 2)
            for i in range(1, d) for j in range(i + 1, d + 1)]


def _pair_tangencies(n_strands: int, d: int) -> list[Factor]:
    return [Factor(band_generator(i, d + i, n_strands), 1) for i in range(1, d + 1)]


def _embed(f: Factorization, n_strands: int, offset: int = 0) -> list[Factor]:
    return [Factor(x.twist.shifted(n_strands, offset), x.r) for x in f.factors]


def conics_factorization(d: int) -> Factorization:
    """d conics: L' . prod Z_{ii'} . (smooth degree d on 1..d) . L'^2 . prod Z_{ii'}."""
    if d < 1:
        raise BraidInputError("d must be >= 1")
    n = 2 * d
    lp = _primed_nodes(n, d)
    fs = lp + _pair_tangencies(n, d) + _embed(smooth_curve_factorization(d), n) \
        + lp + lp + _pair_tangencies(n, d)
    return Factorization(n, tuple(fs))


def hat_twist(n_strands: int, d: int, i: int) -> HalfTwist:
    """Arc from i over i+1..d and 1'..d', back under d'..1', over 1'..(i-1)' to i'."""
    return twist_along_path(n_strands, i, d + i, [(ABOVE, 2 * d), (BELOW, d), (ABOVE, None)])


@dataclass(frozen=True)
class FoldingForms:
    before_moves: Factorization
    after_moves: Factorization


def folding_factorization(fk: Factorization, d: int) -> FoldingForms:
    """Both forms of the factorization for the preimage of a degree-d curve under
    the quadratic map (x:y:z) -> (x^2:y^2:z^2), restricted to one folding.

    ``before_moves``: L' . prod Z_{ii'} . F_k . L'^2 . prod Z_{ii'};
    ``after_moves``:  prod Zhat_{ii'} . F_k . L'^3 . prod Z_{ii'}.
    """
    _check_input(fk, d)
    n = 2 * d
    lp = _primed_nodes(n, d)
    inner = _embed(fk, n)
    zs = _pair_tangencies(n, d)
    f0 = lp + zs + inner + lp + lp + zs
    hats = [Factor(hat_twist(n, d, i), 1) for i in range(1, d + 1)]
    f1 = hats + inner + lp + lp + lp + zs
    return FoldingForms(Factorization(n, tuple(f0)), Factorization(n, tuple(f1)))


# --------------------------------------------------------------------------
# the sextic and the regeneration pieces


def _semicolon(n: int, a: int, b: int, around: tuple[int, ...]) -> HalfTwist:
    """Z_{ab;(c..)} = (Z_bc^2 ...) Z_ab (Z_bc^2 ...)^-1."""
    w = BraidWord.identity(n)
    for c in around:
        w = w * _z(n, b, c).word(2)
    return conjugate(_z(n, a, b), w.inverse())


def v2_branch_factorization() -> Factorization:
    """Nine cusps and three tangencies on six strands."""
    n = 6
    z = lambda a, b: _z(n, a, b)  # noqa: E731
    pieces = [
        (z(1, 3), 3), (z(1, 4), 3), (_semicolon(n, 1, 2, (3, 4)), 1), (z(2, 3), 3),
        (z(1, 5), 3), (z(1, 6), 3), (_semicolon(n, 1, 2, (5, 6)), 1), (z(2, 5), 3),
        (z(3, 5), 3), (z(3, 6), 3), (_semicolon(n, 3, 4, (5, 6)), 1), (z(4, 5), 3),
    ]
    return Factorization(n, tuple(Factor(h, r) for h, r in pieces))


def v2_local_factorization() -> Factorization:
    """Three cusps and a tangency on four strands, with product
    Z_12 Z_34 Z_13^2 Z_14^2 Z_23^2 Z_24^2."""
    n = 4
    z = lambda a, b: _z(n, a, b)  # noqa: E731
    fs = (Factor(z(1, 3), 3), Factor(z(1, 4), 3), Factor(_semicolon(n, 1, 2, (3, 4)), 1),
          Factor(z(2, 3), 3))
    target = z(1, 2).word() * z(3, 4).word()
    for a, b in ((1, 3), (1, 4), (2, 3), (2, 4)):
        target = target * z(a, b).word(2)
    return Factorization(n, fs, target, False)


def regeneration_triple() -> Factorization:
    """Z_12^3 Z_13^3 Z_{12;(3)}^3 with product Z_23 (Z_12^2 Z_13^2)^2."""
    n = 3
    fs = (Factor(_z(n, 1, 2), 3), Factor(_z(n, 1, 3), 3), Factor(_semicolon(n, 1, 2, (3,)), 3))
    target = _z(n, 2, 3).word() * (_z(n, 1, 2).word(2) * _z(n, 1, 3).word(2)) ** 2
    return Factorization(n, fs, target, False)


def delta_2n_identity(n: int) -> Factorization:
    """Full twist on n pairs (i, i'): the nodes between pairs, then Z_{ii'}^2."""
    if n < 1:
        raise BraidInputError("n must be >= 1")
    m = 2 * n
    at = lambda i, primed: 2 * i - 1 + primed  # noqa: E731
    fs = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
                fs.append(Factor(_z(m, at(i, a), at(j, b)), 2))
    fs += [Factor(_z(m, at(i, 0), at(i, 1)), 2) for i in range(1, n + 1)]
    return Factorization(m, tuple(fs))


def assemble_transverse(fp: Factorization, fq: Factorization) -> Factorization:
    """Union of two transverse curves: F_p . prod Z_ij^2 (i <= p < j) . F_q."""
    _check_input(fp)
    _check_input(fq)
    p, q = fp.strands, fq.strands
    n = p + q
    mid = [Factor(band_generator(i, j, n), 2) for i in range(1, p + 1) for j in range(p + 1, n + 1)]
    return Factorization(n, tuple(_embed(fp, n) + mid + _embed(fq, n, p)))


# --------------------------------------------------------------------------
# point layout for the conics-and-lines curve and the doubled curve


@dataclass(frozen=True)
class Layout:
    """Positions of 1..d, 1'..d' and three clusters of ``m`` points each."""

    d: int
    m: int

    @property
    def strands(self) -> int:
        return 2 * self.d + 3 * self.m

    def base(self, i: int) -> int:
        return i

    def prime(self, i: int) -> int:
        return self.d + i

    def cluster(self, x: str, c: int) -> int:
        """c-th point (1-based) of cluster x."""
        return 2 * self.d + CLUSTERS.index(x) * self.m + c

    def pt(self, x: str, i: int, primed: bool = False) -> int:
        """i_X or i'_X in a cluster of n pairs."""
        return self.cluster(x, 2 * i - 1 + int(primed))

    def first(self, x: str) -> int:
        return self.cluster(x, 1)

    def last(self, x: str) -> int:
        return self.cluster(x, self.m)

    def cluster_of(self, p: int) -> str:
        return CLUSTERS[(p - 2 * self.d - 1) // self.m]

    # ---- decorated twists

    def path(self, a: int, b: int, legs) -> HalfTwist:
        return twist_along_path(self.strands, a, b, legs)

    def z(self, a: int, b: int) -> HalfTwist:
        return above_arc(self.strands, a, b)

    def hat(self, i: int) -> HalfTwist:
        d = self.d
        return self.path(i, d + i, [(ABOVE, 2 * d), (BELOW, d), (ABOVE, None)])

    def check(self, i: int) -> HalfTwist:
        """From i over i+1..d, under everything right of d, back over the
        clusters, under d'..1', over 1'..(i-1)' to i'."""
        d = self.d
        return self.path(i, d + i, [(ABOVE, d), (BELOW, self.strands), (ABOVE, 2 * d),
                                    (BELOW, d), (ABOVE, None)])

    def tilde(self, tau: int, ups: int) -> HalfTwist:
        """Arc joining a point of one cluster to a point of a later cluster,
        threading around the conic points first."""
        d = self.d
        x, y = self.cluster_of(tau), self.cluster_of(ups)
        if (x, y) == ("alpha", "beta"):
            legs = [(ABOVE, 2 * d), (BELOW, self.last(y)), (ABOVE, d), (BELOW, 2 * d), (ABOVE, None)]
        elif y == "gamma" and x in ("alpha", "beta"):
            legs = [(ABOVE, 2 * d), (BELOW, d), (ABOVE, None)]
        else:
            raise BraidInputError(f"no connecting arc from {x} to {y}")
        return self.path(tau, ups, legs)

    def tilde_around(self, a: int, b: int, c: int, e: int) -> HalfTwist:
        """Z_ab conjugated by (Ztilde_bc^2 Ztilde_be^2): a and b exchanged around c, e."""
        w = self.tilde(b, c).word(2) * self.tilde(b, e).word(2)
        return conjugate(self.z(a, b), w.inverse())

    def acute(self, r: int, tau: int) -> HalfTwist:
        """Over everything up to the cluster of tau, then under its points to tau."""
        return self.path(r, tau, [(ABOVE, self.first(self.cluster_of(tau)) - 1), (BELOW, None)])

    def grave(self, r: int, tau: int) -> HalfTwist:
        """Over the whole cluster of tau, then back under its points to tau."""
        return self.path(r, tau, [(ABOVE, self.last(self.cluster_of(tau))), (BELOW, None)])

    def around_one(self, r: int, p: int, q: int) -> HalfTwist:
        """Over everything to just past q, under q, then back over to p."""
        return self.path(r, p, [(ABOVE, q), (BELOW, q - 1), (ABOVE, None)])

    def around_cluster(self, i: int, j: int, x: str) -> HalfTwist:
        """i' to j' after encircling cluster x: Z_{i'X}^-2 Z_{i'j'} Z_{i'X}^2 when x is one point."""
        return self.path(self.prime(i), self.prime(j),
                         [(ABOVE, self.last(x)), (BELOW, self.first(x) - 1), (ABOVE, None)])


# --------------------------------------------------------------------------
# conics and three lines


def conics_and_lines_factorization(d: int) -> Factorization:
    """d conics with three lines tangent to all of them, on 2d+3 strands."""
    if d < 1:
        raise BraidInputError("d must be >= 1")
    lay = Layout(d, 1)
    n = lay.strands
    fs: list[Factor] = [Factor(lay.hat(i), 1) for i in range(1, d + 1)]
    fs += _embed(lines_factorization(d), n) if d > 1 else []
    a, b, c = (lay.first(x) for x in CLUSTERS)

    def block(x: str) -> list[Factor]:
        out: list[Factor] = []
        for i in range(1, d + 1):
            out += _factors(lay.z(lay.prime(i), lay.first(x)), 4)
            out += [Factor(lay.around_cluster(i, j, x), 2) for j in range(i + 1, d + 1)]
        return out

    fs += block("alpha") + block("beta")
    fs += [Factor(lay.tilde(a, b), 2), Factor(lay.tilde(a, c), 2), Factor(lay.tilde(b, c), 2)]
    fs += block("gamma")
    fs += [Factor(lay.check(i), 1) for i in range(1, d + 1)]
    return Factorization(n, tuple(fs))


# --------------------------------------------------------------------------
# degree doubling


def mutual_block(rp: int, p: int, q: int, d: int, n: int, flavor: str,
                 layout: Layout | None = None) -> Factorization:
    """Contribution of the tangency between the conic piece r' and the 2n lines
    of cluster ``flavor``; sheet indices p < q mark the pair that also meets
    in three cusps.  The target is the fragment's own product."""
    if not 1 <= p < q <= n or not 1 <= rp <= d or flavor not in CLUSTERS:
        raise BraidInputError(f"bad block parameters r'={rp}, p={p}, q={q}, n={n}, {flavor}")
    lay = layout or Layout(d, 2 * n)
    r = lay.prime(rp)
    pt = lambda i, pr=False: lay.pt(flavor, i, pr)  # noqa: E731
    fs: list[Factor] = []
    for i in range(n, 0, -1):
        fs.append(Factor(lay.acute(r, pt(i, True)), 2))
        if i not in (p, q):
            fs.append(Factor(lay.acute(r, pt(i)), 2))
    fs += [Factor(lay.z(r, pt(p)), 3), Factor(lay.z(r, pt(q)), 3),
           Factor(lay.around_one(r, pt(p), pt(q)), 3)]
    for i in range(n, 0, -1):
        fs.append(Factor(lay.grave(r, pt(i, True)), 2))
        if i not in (p, q):
            fs.append(Factor(lay.grave(r, pt(i)), 2))
    frag = Factorization(lay.strands, tuple(fs))
    return frag.with_target(product(frag))


def _inner_block(lay: Layout, pq: list[tuple[int, int]], d: int, n: int, x: str) -> list[Factor]:
    fs: list[Factor] = []
    pt = lambda i, pr=False: lay.pt(x, i, pr)  # noqa: E731
    for i in range(1, d + 1):
        p, q = pq[i - 1]
        fs += mutual_block(i, p, q, d, n, x, lay).factors
        fs += [Factor(lay.around_cluster(i, j, x), 2) for j in range(i + 1, d + 1)]
        if i % 2 == 0:
            fs += [Factor(lay.z(pt(p), pt(q, True)), 2), Factor(lay.z(pt(p, True), pt(q)), 2),
                   Factor(lay.z(pt(p, True), pt(q, True)), 2)]
    for i in range(d // 2 + 1, n * (n - 1) // 2 + 1):
        p, q = pq[2 * i - 1]
        fs += [Factor(lay.z(pt(p), pt(q)), 2), Factor(lay.z(pt(p), pt(q, True)), 2),
               Factor(lay.z(pt(p, True), pt(q)), 2), Factor(lay.z(pt(p, True), pt(q, True)), 2)]
    return fs


def _cross_block(lay: Layout, n: int, x: str, y: str) -> list[Factor]:
    fs: list[Factor] = []
    px = lambda i, pr=False: lay.pt(x, i, pr)  # noqa: E731
    py = lambda i, pr=False: lay.pt(y, i, pr)  # noqa: E731

    def nodes(i: int, j: int) -> list[Factor]:
        return [Factor(lay.tilde(px(i, a), py(j, b)), 2)
                for a, b in ((False, False), (False, True), (True, False), (True, True))]

    for i in range(1, n + 1):
        for j in range(1, i):
            fs += nodes(i, j)
        fs += [Factor(lay.tilde(px(i), py(i)), 3), Factor(lay.tilde(px(i), py(i, True)), 3),
               Factor(lay.tilde_around(px(i), px(i, True), py(i), py(i, True)), 1),
               Factor(lay.tilde(px(i, True), py(i)), 3)]
        for j in range(i + 1, n + 1):
            fs += nodes(i, j)
    return fs


@dataclass(frozen=True)
class DoublingBlocks:
    """The doubled factorization and the index ranges of its named blocks."""

    factorization: Factorization
    blocks: tuple[tuple[str, int, int], ...]  # (name, start, stop) into factors

    def block(self, name: str) -> tuple[Factor, ...]:
        for nm, a, b in self.blocks:
            if nm == name:
                return self.factorization.factors[a:b]
        raise KeyError(name)


def degree_doubling_blocks(fk: Factorization | None, theta: GeomRep, d: int, n: int) -> DoublingBlocks:
    """Doubled factorization with its named blocks.  For d = 0 (a single
    sheet, no branch points) ``fk`` must be None."""
    if d == 0:
        if fk is not None and len(fk):
            raise BraidInputError("d = 0 takes no input factorization")
    else:
        _check_input(fk, d)
    if theta.degree != d or theta.sheets != n:
        raise BraidInputError("representation does not match (d, n)")
    if d > n * (n - 1) or d % 2:
        raise BraidInputError(f"need d even and d <= n(n-1), got d={d}, n={n}")
    std = standard_pairs(n)
    if theta.pairs() != std[:d]:
        raise BraidInputError("representation must send gamma_i to the i-th term of prod (ij)(ij)")
    bad = [c for c in check_factorization(theta, fk) if not c.ok] if d else []
    if bad:
        raise BraidInputError(f"input factorization is not compatible with theta: {bad[0].describe()}")
    lay = Layout(d, 2 * n)
    N = lay.strands
    parts: list[tuple[str, list[Factor]]] = [
        ("T", [Factor(lay.check(i), 1) for i in range(1, d + 1)]
         + [Factor(lay.hat(i), 1) for i in range(1, d + 1)]),
        ("F", _embed(fk, N) if d else []),
        ("I_alpha", _inner_block(lay, std, d, n, "alpha")),
        ("I_beta", _inner_block(lay, std, d, n, "beta")),
        ("V_alpha_beta", _cross_block(lay, n, "alpha", "beta")),
        ("V_alpha_gamma", _cross_block(lay, n, "alpha", "gamma")),
        ("V_beta_gamma", _cross_block(lay, n, "beta", "gamma")),
        ("I_gamma", _inner_block(lay, std, d, n, "gamma")),
    ]
    factors: list[Factor] = []
    spans = []
    for name, fs in parts:
        spans.append((name, len(factors), len(factors) + len(fs)))
        factors += fs
    return DoublingBlocks(Factorization(N, tuple(factors)), tuple(spans))


def degree_doubling(fk: Factorization | None, theta: GeomRep, d: int, n: int) -> Factorization:
    """Branch-curve factorization of the doubled covering on 2d+6n strands."""
    return degree_doubling_blocks(fk, theta, d, n).factorization


def iter_named(blocks: DoublingBlocks) -> Iterator[tuple[str, Factor]]:
    for name, a, b in blocks.blocks:
        for f in blocks.factorization.factors[a:b]:
            yield name, f
