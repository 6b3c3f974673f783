"""Permutations, geometric monodromy representations and the per-factor
compatibility rules between a factorization and a representation.

Permutations compose left to right, in word order: ``(p * q)(x) = q(p(x))``.
This pairs with the right Artin action so that ``theta(w * Q)`` is simply the
image of the substituted word.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .braid_core import BraidInputError, BraidWord, FreeWord, HalfTwist, action_table, artin_action
from .factorization import Factor, Factorization


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..degree}; ``images[k-1]`` is the image of k."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidInputError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        if a == b or not (1 <= a <= n and 1 <= b <= n):
            raise BraidInputError(f"bad transposition ({a} {b}) on {n} points")
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(tuple(other(self(x)) for x in range(1, self.degree + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def support(self) -> frozenset[int]:
        return frozenset(k for k, v in enumerate(self.images, start=1) if k != v)

    def is_identity(self) -> bool:
        return not self.support()

    def is_transposition(self) -> bool:
        s = self.support()
        return len(s) == 2 and all(self(self(x)) == x for x in s)

    def commutes(self, other: Permutation) -> bool:
        return self * other == other * self

    def disjoint(self, other: Permutation) -> bool:
        return not (self.support() & other.support())

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def cycle_str(self, labels: Sequence[str] | None = None) -> str:
        name = (lambda k: labels[k - 1]) if labels else str
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(name(x) for x in c) + ")" for c in cyc)


def _transitive(n: int, perms: Sequence[Permutation]) -> bool:
    reach, todo = {1}, [1]
    while todo:
        x = todo.pop()
        for p in perms:
            for y in (p(x), p.inverse()(x)):
                if y not in reach:
                    reach.add(y)
                    todo.append(y)
    return len(reach) == n


@dataclass(frozen=True)
class GeomRep:
    """Transposition images of the geometric generators gamma_1..gamma_d.

    ``sheet_labels`` only affects printing.
    """

    sheets: int
    images: tuple[Permutation, ...]
    sheet_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        for k, t in enumerate(self.images, start=1):
            if t.degree != self.sheets or not t.is_transposition():
                raise BraidInputError(f"image of generator {k} is not a transposition on {self.sheets} sheets")
        total = Permutation.identity(self.sheets)
        for t in self.images:
            total = total * t
        if not total.is_identity():
            raise BraidInputError(f"product of generator images is {total.cycle_str()}, not the identity")
        if not _transitive(self.sheets, self.images):
            raise BraidInputError("generator images do not act transitively")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def from_pairs(cls, sheets: int, pairs: Sequence[tuple[int, int]],
                   sheet_labels: Sequence[str] | None = None) -> GeomRep:
        return cls(sheets, tuple(Permutation.transposition(sheets, a, b) for a, b in pairs),
                   tuple(sheet_labels) if sheet_labels else None)

    def pairs(self) -> list[tuple[int, int]]:
        return [tuple(sorted(t.support())) for t in self.images]  # type: ignore[misc]

    def label(self, k: int) -> str:
        return self.sheet_labels[k - 1] if self.sheet_labels else str(k)


def theta_eval(theta: GeomRep, w: FreeWord) -> Permutation:
    if w.rank != theta.degree:
        raise BraidInputError(f"rank mismatch: word on {w.rank}, rep on {theta.degree}")
    return _eval_letters(theta, w.letters)


def _eval_letters(theta: GeomRep, letters: Sequence[int]) -> Permutation:
    # transpositions are involutions, so the sign of a letter is irrelevant
    img = list(range(1, theta.sheets + 1))
    for x in letters:
        t = theta.images[abs(x) - 1]
        img = [t(y) for y in img]
    return Permutation(tuple(img))


def endpoint_transpositions(theta: GeomRep, h: HalfTwist) -> tuple[Permutation, Permutation]:
    """theta(gamma_i * Q) and theta(gamma_{i+1} * Q) for the factor shape Q^-1 X_i Q."""
    if h.strands != theta.degree:
        raise BraidInputError("twist and representation have different ranks")
    table = action_table(h.conj.inverse())
    return (_eval_letters(theta, table[h.base - 1]), _eval_letters(theta, table[h.base]))


@dataclass(frozen=True)
class CompatResult:
    ok: bool
    r: int
    t1: Permutation
    t2: Permutation
    index: int | None = None

    def describe(self, theta: GeomRep | None = None) -> str:
        labels = theta.sheet_labels if theta else None
        status = "ok" if self.ok else "VIOLATION"
        where = f"factor {self.index}: " if self.index is not None else ""
        return (f"{where}r={self.r} t1={self.t1.cycle_str(labels)} "
                f"t2={self.t2.cycle_str(labels)} {status}")


def compat_rule(r: int, t1: Permutation, t2: Permutation) -> bool:
    if r == 1:
        return t1 == t2
    if abs(r) == 2:
        return t1 != t2 and t1.commutes(t2)
    if r == 3:
        return not t1.commutes(t2)
    raise BraidInputError(f"exponent {r} has no compatibility rule")


def check_factor_compat(theta: GeomRep, factor: Factor, index: int | None = None) -> CompatResult:
    t1, t2 = endpoint_transpositions(theta, factor.twist)
    return CompatResult(compat_rule(factor.r, t1, t2), factor.r, t1, t2, index)


def check_factorization(theta: GeomRep, f: Factorization) -> list[CompatResult]:
    return [check_factor_compat(theta, x, k) for k, x in enumerate(f.factors, start=1)]


def b_d0_membership(theta: GeomRep, q: BraidWord) -> bool:
    """True iff theta(gamma_i * q) = theta(gamma_i) for every i."""
    if q.strands != theta.degree:
        raise BraidInputError("braid and representation have different ranks")
    table = action_table(q)
    return all(_eval_letters(theta, img) == t for img, t in zip(table, theta.images))


def pull_back(theta: GeomRep, q: BraidWord) -> GeomRep:
    """The representation gamma_i -> theta(gamma_i * q)."""
    table = action_table(q)
    return GeomRep(theta.sheets, tuple(_eval_letters(theta, img) for img in table), theta.sheet_labels)


# --------------------------------------------------------------------------
# standard representations


def standard_pairs(n: int) -> list[tuple[int, int]]:
    """The n(n-1) transpositions of prod_{i<j} (ij)(ij), in order."""
    out = []
    for a, b in combinations(range(1, n + 1), 2):
        out += [(a, b), (a, b)]
    return out


def theta_std(d: int, n: int) -> GeomRep:
    """gamma_i -> (p(i) q(i)), the first d terms of prod_{i<j} (ij)(ij)."""
    if n < 1 or d % 2 or d < 0 or d > n * (n - 1) or d < 2 * n - 2:
        raise BraidInputError(f"need d even with 2n-2 <= d <= n(n-1), got d={d}, n={n}")
    return GeomRep.from_pairs(n, standard_pairs(n)[:d])


def theta_pencil(g: int, n: int) -> GeomRep:
    """(1 2)^{2g} followed by (i i+1)^2 for i = 1..n-1, on d = 2g-2+2n generators."""
    if g < 0 or n < 1:
        raise BraidInputError(f"need g >= 0 and n >= 1, got g={g}, n={n}")
    if n == 1:
        raise BraidInputError("a single sheet carries no transpositions")
    pairs = [(1, 2)] * (2 * g) + [p for i in range(1, n) for p in [(i, i + 1)] * 2]
    return GeomRep.from_pairs(n, pairs)


SHEET_GROUPS = "abcd"


def sheet_index(i: int, group: str, n: int) -> int:
    """Sheets of the doubled cover are ordered 1a..na, 1b..nb, 1c..nc, 1d..nd."""
    return SHEET_GROUPS.index(group) * n + i


def doubled_sheet_labels(n: int) -> tuple[str, ...]:
    return tuple(f"{i}{g}" for g in SHEET_GROUPS for i in range(1, n + 1))


def theta_doubled(theta: GeomRep, d: int, n: int) -> GeomRep:
    """Representation on 2d+6n generators and 4n sheets for the doubled curve.

    Generators r and r' map to (i_a j_a) where theta(gamma_r) = (i j).  For each
    sheet index i the six points i_X, i'_X (X = alpha, beta, gamma) map to
    (i_a i_b), (i_c i_d), (i_a i_c), (i_b i_d), (i_a i_d), (i_b i_c).
    """
    if theta.degree != d or theta.sheets != n:
        raise BraidInputError("representation does not match (d, n)")
    s = lambda i, g: sheet_index(i, g, n)  # noqa: E731
    pairs = [(s(a, "a"), s(b, "a")) for a, b in theta.pairs()] * 2
    for grp in (("ab", "cd"), ("ac", "bd"), ("ad", "bc")):
        for i in range(1, n + 1):
            (g1, g2), (g3, g4) = grp
            pairs += [(s(i, g1), s(i, g2)), (s(i, g3), s(i, g4))]
    return GeomRep.from_pairs(4 * n, pairs, doubled_sheet_labels(n))


def theta_v2() -> GeomRep:
    """The six-generator representation on 4 sheets for the branch curve of
    the quadratic self-map: (12), (34), (13), (24), (14), (23)."""
    return GeomRep.from_pairs(4, [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)])


# --------------------------------------------------------------------------
# file format

HEADER = "theta v1"


def dumps(theta: GeomRep) -> str:
    lines = [HEADER, f"sheets: {theta.sheets}"]
    for k, (a, b) in enumerate(theta.pairs(), start=1):
        lines.append(f"gen {k}: ({theta.label(a)} {theta.label(b)})")
    return "\n".join(lines) + "\n"


def loads(text: str) -> GeomRep:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or rows[0] != HEADER:
        raise BraidInputError(f"expected header {HEADER!r}")
    if len(rows) < 2 or not rows[1].startswith("sheets:"):
        raise BraidInputError("missing sheets line")
    try:
        sheets = int(rows[1].split(":", 1)[1])
    except ValueError as exc:
        raise BraidInputError(f"bad sheet count {rows[1]!r}") from exc
    # numeric labels, or the doubled labels 1a..nd when sheets is a multiple of 4
    lookup = {str(k): k for k in range(1, sheets + 1)}
    labels = None
    if sheets % 4 == 0:
        labels = doubled_sheet_labels(sheets // 4)
        lookup.update({lab: k for k, lab in enumerate(labels, start=1)})
    pairs, used_named = [], False
    for k, row in enumerate(rows[2:], start=1):
        head, _, body = row.partition(":")
        if head.strip() != f"gen {k}":
            raise BraidInputError(f"expected 'gen {k}:', got {row!r}")
        body = body.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise BraidInputError(f"bad transposition {body!r}")
        toks = body[1:-1].split()
        if len(toks) != 2 or any(t not in lookup for t in toks):
            raise BraidInputError(f"bad transposition {body!r}")
        used_named |= any(not t.isdigit() for t in toks)
        pairs.append((lookup[toks[0]], lookup[toks[1]]))
    return GeomRep.from_pairs(sheets, pairs, labels if used_named else None)
