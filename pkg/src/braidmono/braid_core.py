"""Braid words on d strands, free words on d generators, and the Artin action.

Letters are stored as nonzero ints: ``+i`` is the generator X_i (or gamma_i),
``-i`` its inverse.  Braid equality is decided through the right action of the
braid group on the free group, which is faithful.

Action convention (frozen)::

    X_i :  g_i -> g_i g_{i+1} g_i^-1,   g_{i+1} -> g_i,   others fixed

and ``w * (a b) = (w * a) * b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


class BraidInputError(ValueError):
    """Malformed or incompatible input (wrong strand count, bad index, bad syntax)."""


# --------------------------------------------------------------------------
# free words


def _inv(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def _free_reduce(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _join(*parts: Sequence[int]) -> tuple[int, ...]:
    """Concatenate freely reduced words, cancelling only at the seams."""
    out: list[int] = []
    for part in parts:
        n = len(part)
        k = 0
        while k < n and out and out[-1] == -part[k]:
            out.pop()
            k += 1
        out.extend(part[k:] if k else part)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in gamma_1..gamma_rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise BraidInputError(f"rank must be positive, got {self.rank}")
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise BraidInputError(f"generator {x} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", tuple(_free_reduce(self.letters)))

    @classmethod
    def gen(cls, rank: int, i: int) -> FreeWord:
        return cls(rank, (i,))

    @classmethod
    def product_class(cls, rank: int) -> FreeWord:
        """gamma_1 gamma_2 ... gamma_rank."""
        return cls(rank, tuple(range(1, rank + 1)))

    def __mul__(self, other: FreeWord) -> FreeWord:
        _check_rank(self.rank, other.rank)
        return FreeWord(self.rank, _join(self.letters, other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, _inv(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"g{x}" if x > 0 else f"G{-x}" for x in self.letters)


def _check_rank(a: int, b: int) -> None:
    if a != b:
        raise BraidInputError(f"strand/rank mismatch: {a} vs {b}")


# --------------------------------------------------------------------------
# braid words

_TOKEN = re.compile(r"^([xX])(\d+)$")


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators X_1..X_{strands-1}.

    Adjacent ``X_i X_i^-1`` pairs are dropped at construction; nothing else
    is normalized.  ``==`` is syntactic, use :func:`braid_eq` for equality in
    the group.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidInputError(f"strand count must be positive, got {self.strands}")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidInputError(f"generator {x} out of range on {self.strands} strands")
        object.__setattr__(self, "letters", tuple(_free_reduce(self.letters)))

    @classmethod
    def identity(cls, strands: int) -> BraidWord:
        return cls(strands, ())

    @classmethod
    def gen(cls, strands: int, i: int, power: int = 1) -> BraidWord:
        return cls(strands, (i if power > 0 else -i,) * abs(power))

    @classmethod
    def parse(cls, strands: int, text: str) -> BraidWord:
        letters = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise BraidInputError(f"bad braid token {tok!r}")
            i = int(m.group(2))
            letters.append(i if m.group(1) == "x" else -i)
        return cls(strands, tuple(letters))

    def __str__(self) -> str:
        return " ".join(f"x{x}" if x > 0 else f"X{-x}" for x in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        _check_rank(self.strands, other.strands)
        return BraidWord(self.strands, _join(self.letters, other.letters))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, _inv(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Strand permutation as a tuple: entry k is where the strand starting at
        position k+1 ends (1-based values)."""
        pos = list(range(self.strands))  # pos[strand] = current position
        at = list(range(self.strands))  # at[position] = strand
        for x in self.letters:
            i = abs(x) - 1
            a, b = at[i], at[i + 1]
            at[i], at[i + 1] = b, a
            pos[a], pos[b] = i + 1, i
        return tuple(p + 1 for p in pos)

    def shifted(self, strands: int, offset: int) -> BraidWord:
        """The same braid on a larger strand count, acting on the block of
        positions offset+1 .. offset+self.strands."""
        if offset < 0 or offset + self.strands > strands:
            raise BraidInputError("embedding does not fit")
        return BraidWord(strands, tuple(x + offset if x > 0 else x - offset for x in self.letters))


def delta_squared(d: int) -> BraidWord:
    """Full twist (X_1 ... X_{d-1})^d."""
    if d < 1:
        raise BraidInputError("d must be >= 1")
    return BraidWord(d, tuple(range(1, d)) * d)


# --------------------------------------------------------------------------
# the action


def action_table(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Images gamma_k * b for k = 1..strands (0-based tuple)."""
    return _action_table(b.strands, b.letters)


@lru_cache(maxsize=4096)
def _action_table(strands: int, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    # gamma_k * (x b) = phi_x(gamma_k) with gamma_j replaced by gamma_j * b,
    # so walking the word from the right only ever touches two table entries.
    table: list[tuple[int, ...]] = [(k,) for k in range(1, strands + 1)]
    for x in reversed(letters):
        i = abs(x) - 1
        a, b = table[i], table[i + 1]
        if x > 0:
            table[i] = _join(a, b, _inv(a))
            table[i + 1] = a
        else:
            table[i] = b
            table[i + 1] = _join(_inv(b), a, b)
    return tuple(table)


def substitute(table: Sequence[Sequence[int]], letters: Sequence[int]) -> tuple[int, ...]:
    """Apply the endomorphism gamma_k -> table[k-1] to a word."""
    parts = [table[x - 1] if x > 0 else _inv(table[-x - 1]) for x in letters]
    return _join(*parts)


def artin_action(b: BraidWord, w: FreeWord) -> FreeWord:
    """w * b under the right Artin action."""
    _check_rank(b.strands, w.rank)
    return FreeWord(w.rank, substitute(action_table(b), w.letters))


def braid_eq(a: BraidWord, b: BraidWord) -> bool:
    """True iff a and b are the same element of the braid group."""
    _check_rank(a.strands, b.strands)
    if a.letters == b.letters:
        return True
    return action_table(a) == action_table(b)


def is_identity(b: BraidWord) -> bool:
    return all(img == (k + 1,) for k, img in enumerate(action_table(b)))


# --------------------------------------------------------------------------
# half-twists


@dataclass(frozen=True)
class HalfTwist:
    """The half-twist W X_base W^-1, stored structurally.

    A factor written Q^-1 X_base^r Q has ``conj == Q^-1``.
    """

    strands: int
    base: int
    conj: BraidWord = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not 1 <= self.base < self.strands:
            raise BraidInputError(f"base {self.base} out of range on {self.strands} strands")
        if self.conj is None:
            object.__setattr__(self, "conj", BraidWord.identity(self.strands))
        _check_rank(self.strands, self.conj.strands)

    def word(self, r: int = 1) -> BraidWord:
        """The realized braid raised to the power r."""
        w = self.conj.letters
        core = (self.base if r > 0 else -self.base,) * abs(r)
        return BraidWord(self.strands, _join(w, core, _inv(w)))

    def table(self, sign: int = 1) -> tuple[tuple[int, ...], ...]:
        """Action table of the twist (sign 1) or of its inverse (sign -1)."""
        key = (self.strands, self.base, self.conj.letters, sign)
        t = _TWIST_TABLES.get(key)
        if t is None:
            t = action_table(self.word(sign))
            _remember(key, t)
        return t

    def power_table(self, r: int) -> tuple[tuple[int, ...], ...]:
        t = tuple((k,) for k in range(1, self.strands + 1))
        step = self.table(1 if r > 0 else -1)
        for _ in range(abs(r)):
            t = compose_tables(t, step)
        return t

    def endpoints(self) -> tuple[FreeWord, FreeWord]:
        """gamma_i * Q and gamma_{i+1} * Q for Q = conj^-1: the two loops
        around the endpoints of the arc."""
        q = self.conj.inverse()
        return (artin_action(q, FreeWord.gen(self.strands, self.base)),
                artin_action(q, FreeWord.gen(self.strands, self.base + 1)))

    def strand_pair(self) -> tuple[int, int]:
        """Positions (1-based) of the two points the twist exchanges."""
        perm = self.conj.permutation()
        inv = {v: k + 1 for k, v in enumerate(perm)}
        a, b = inv[self.base], inv[self.base + 1]
        return (a, b) if a < b else (b, a)

    def same_as(self, other: HalfTwist) -> bool:
        return braid_eq(self.word(), other.word())

    def shifted(self, strands: int, offset: int) -> HalfTwist:
        return HalfTwist(strands, self.base + offset, self.conj.shifted(strands, offset))

    def __str__(self) -> str:
        return f"base={self.base} conj=[{self.conj}]"


def conjugate(h: HalfTwist, q: BraidWord) -> HalfTwist:
    """The half-twist q^-1 h q."""
    _check_rank(h.strands, q.strands)
    return HalfTwist(h.strands, h.base, q.inverse() * h.conj)


# Conjugator words grow quickly under Hurwitz moves and rebuilding an action
# table from a long word passes through enormous intermediate words.  Tables
# of twists made by conjugate_by_twist are instead composed from known ones.
_TWIST_TABLES: dict[tuple, tuple[tuple[int, ...], ...]] = {}
_TWIST_TABLES_MAX = 200_000


def _remember(key: tuple, table: tuple[tuple[int, ...], ...]) -> None:
    if len(_TWIST_TABLES) >= _TWIST_TABLES_MAX:
        _TWIST_TABLES.clear()
    _TWIST_TABLES[key] = table


def compose_tables(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]
                   ) -> tuple[tuple[int, ...], ...]:
    """Table of the braid 'first then second' from the two tables."""
    return tuple(substitute(second, img) for img in first)


def conjugate_by_twist(h: HalfTwist, g: HalfTwist, r: int) -> HalfTwist:
    """The half-twist q^-1 h q for q = g^r, with its tables precomputed."""
    _check_rank(h.strands, g.strands)
    out = HalfTwist(h.strands, h.base, g.word(-r) * h.conj)
    pre, post = g.power_table(-r), g.power_table(r)
    for sign in (1, -1):
        _remember((out.strands, out.base, out.conj.letters, sign),
                  compose_tables(compose_tables(pre, h.table(sign)), post))
    return out


def band_generator(i: int, j: int, d: int) -> HalfTwist:
    """Z_ij = X_{j-1}..X_{i+1} X_i X_{i+1}^-1..X_{j-1}^-1 (arc above the points between)."""
    if not 1 <= i < j <= d:
        raise BraidInputError(f"need 1 <= i < j <= d, got ({i}, {j}, {d})")
    return HalfTwist(d, i, BraidWord(d, tuple(range(j - 1, i, -1))))


# --------------------------------------------------------------------------
# half-twists along drawn arcs

ABOVE, BELOW = "above", "below"


def twist_along_path(strands: int, start: int, end: int,
                     legs: Sequence[tuple[str, int | None]]) -> HalfTwist:
    """Half-twist along an arc described by how it crosses the real axis.

    Points sit at 1..strands on the real line.  The arc leaves ``start`` and
    runs in the half-plane given by ``legs[0][0]`` until it crosses the axis in
    gap ``legs[0][1]``; gap g is the interval between points g and g+1 (gap 0
    is left of everything, gap ``strands`` right of everything).  Each leg
    must switch half-plane.  The last leg has gap ``None`` and ends at ``end``.

    The twist is built by sliding ``start`` along the arc until it sits next
    to ``end``; with m the sliding braid the result is m X_k m^-1.
    """
    if not (1 <= start <= strands and 1 <= end <= strands) or start == end:
        raise BraidInputError(f"bad endpoints {start}, {end}")
    if not legs or legs[-1][1] is not None:
        raise BraidInputError("last leg must end at the endpoint")
    order = [p for p in range(1, strands + 1)]  # order[pos-1] = label
    moves: list[int] = []
    x = float(start)  # geometric position of the moving point
    prev_side = None
    for side, gap in legs:
        if side not in (ABOVE, BELOW):
            raise BraidInputError(f"bad side {side!r}")
        if side == prev_side:
            raise BraidInputError("consecutive legs must alternate sides")
        prev_side = side
        target = end if gap is None else gap + 0.5
        if gap is not None and not 0 <= gap <= strands:
            raise BraidInputError(f"gap {gap} out of range")
        k = order.index(start)  # 0-based position of the moving point
        step = 1 if target > x else -1
        while True:
            nb = k + step
            if not 0 <= nb < strands:
                break
            lab = order[nb]
            if lab == end and gap is None:
                break
            if (step > 0 and lab > target) or (step < 0 and lab < target):
                break
            if step > 0:
                # right over the top: X_{k+1}^-1, underneath: X_{k+1}
                moves.append(-(k + 1) if side == ABOVE else (k + 1))
            else:
                # left over the top of position nb+1: X_{nb+1}, underneath: inverse
                moves.append((nb + 1) if side == ABOVE else -(nb + 1))
            order[k], order[nb] = order[nb], order[k]
            k = nb
        x = target
    k = order.index(start)
    j = order.index(end)
    if abs(k - j) != 1:
        raise BraidInputError("arc does not reach its endpoint")
    return HalfTwist(strands, min(k, j) + 1, BraidWord(strands, tuple(moves)))


def above_arc(strands: int, a: int, b: int) -> HalfTwist:
    """Arc from a to b passing above everything between."""
    return twist_along_path(strands, a, b, [(ABOVE, None)])


def forget_strands(b: BraidWord, keep: Sequence[int]) -> BraidWord:
    """Braid traced by the points starting at positions ``keep`` once all other
    strands are erased.  The strands in ``keep`` must end at positions in
    ``keep``."""
    keep_set = set(keep)
    if not keep_set or min(keep_set) < 1 or max(keep_set) > b.strands:
        raise BraidInputError("kept positions out of range")
    kept = [p in keep_set for p in range(1, b.strands + 1)]  # by current position
    out = []
    for x in b.letters:
        k = abs(x) - 1
        if kept[k] and kept[k + 1]:
            out.append((sum(kept[:k]) + 1) * (1 if x > 0 else -1))
        kept[k], kept[k + 1] = kept[k + 1], kept[k]
    if {p for p in range(1, b.strands + 1) if kept[p - 1]} != keep_set:
        raise BraidInputError("braid does not return the kept strands to the kept positions")
    return BraidWord(len(keep_set), tuple(out))
