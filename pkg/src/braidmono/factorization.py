"""Factorized expressions of braids: products, Hurwitz moves, node pairs,
bounded Hurwitz-equivalence search, and the ``braidfact v1`` file format."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Sequence

from .braid_core import (
    BraidInputError,
    BraidWord,
    HalfTwist,
    _join,
    action_table,
    braid_eq,
    conjugate,
    conjugate_by_twist,
    delta_squared,
)

if TYPE_CHECKING:
    from .monodromy import GeomRep

ALLOWED_R = (-2, 1, 2, 3)
KIND = {1: "tangency", 2: "node", -2: "negative node", 3: "cusp"}


class FactorizationError(ValueError):
    """A move or edit whose precondition does not hold."""


@dataclass(frozen=True)
class Factor:
    twist: HalfTwist
    r: int

    def __post_init__(self) -> None:
        if self.r not in ALLOWED_R:
            raise BraidInputError(f"exponent {self.r} not in {ALLOWED_R}")

    def word(self) -> BraidWord:
        return self.twist.word(self.r)

    def key(self) -> tuple:
        """Hashable semantic identity: exponent plus the action of the twist."""
        return (self.r, self.twist.table())


@dataclass(frozen=True)
class Factorization:
    strands: int
    factors: tuple[Factor, ...] = ()
    target: BraidWord = field(default=None)  # type: ignore[assignment]
    target_is_delta2: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.twist.strands != self.strands:
                raise BraidInputError("factor strand count differs from factorization")
        if self.target is None:
            object.__setattr__(self, "target", delta_squared(self.strands))
        elif self.target.strands != self.strands:
            raise BraidInputError("target strand count differs from factorization")

    def __len__(self) -> int:
        return len(self.factors)

    def with_factors(self, factors: Iterable[Factor]) -> Factorization:
        return replace(self, factors=tuple(factors))

    def with_target(self, target: BraidWord) -> Factorization:
        return replace(self, target=target, target_is_delta2=False)

    def census(self) -> dict[int, int]:
        out = {r: 0 for r in ALLOWED_R}
        for f in self.factors:
            out[f.r] += 1
        return out

    def exponent_sum(self) -> int:
        return sum(f.r for f in self.factors)


def product(f: Factorization) -> BraidWord:
    """Left-to-right product of the realized factors."""
    return BraidWord(f.strands, _join(*(x.word().letters for x in f.factors)))


def product_table(f: Factorization) -> tuple[tuple[int, ...], ...]:
    return action_table(product(f))


def is_certified(f: Factorization) -> bool:
    return braid_eq(product(f), f.target)


def first_mismatch(f: Factorization) -> int | None:
    """Smallest k such that gamma_k * product differs from gamma_k * target,
    or None when the factorization is certified."""
    got, want = product_table(f), action_table(f.target)
    for k, (a, b) in enumerate(zip(got, want), start=1):
        if a != b:
            return k
    return None


# --------------------------------------------------------------------------
# moves

RIGHT, LEFT = "right", "left"


def hurwitz_move(f: Factorization, i: int, direction: str = RIGHT) -> Factorization:
    """Act on factors i, i+1 (1-based): right move (A, B) -> (A B A^-1, A),
    left move (A, B) -> (B, B^-1 A B)."""
    if not 1 <= i < len(f.factors):
        raise FactorizationError(f"move index {i} out of range for {len(f.factors)} factors")
    a, b = f.factors[i - 1], f.factors[i]
    if direction == RIGHT:
        pair = (Factor(conjugate_by_twist(b.twist, a.twist, -a.r), b.r), a)
    elif direction == LEFT:
        pair = (b, Factor(conjugate_by_twist(a.twist, b.twist, b.r), a.r))
    else:
        raise BraidInputError(f"unknown direction {direction!r}")
    fs = list(f.factors)
    fs[i - 1 : i + 1] = pair
    return f.with_factors(fs)


def global_conjugate(f: Factorization, q: BraidWord) -> Factorization:
    """Conjugate every factor (and the target) by q: x -> q^-1 x q."""
    if q.strands != f.strands:
        raise BraidInputError("conjugator strand count differs")
    factors = [Factor(conjugate(x.twist, q), x.r) for x in f.factors]
    if f.target_is_delta2:
        return f.with_factors(factors)
    return replace(f, factors=tuple(factors), target=q.inverse() * f.target * q)


def pair_cancel(f: Factorization, i: int) -> Factorization:
    """Remove factors i, i+1 (1-based) when they are inverse node factors."""
    if not 1 <= i < len(f.factors):
        raise FactorizationError(f"index {i} out of range")
    a, b = f.factors[i - 1], f.factors[i]
    if abs(a.r) != 2 or a.r != -b.r:
        raise FactorizationError(f"factors {i},{i + 1} have exponents {a.r},{b.r}, not a node pair")
    if not a.twist.same_as(b.twist):
        raise FactorizationError(f"factors {i},{i + 1} twist along different arcs")
    fs = list(f.factors)
    del fs[i - 1 : i + 1]
    return f.with_factors(fs)


def pair_create(f: Factorization, i: int, h: HalfTwist, theta: GeomRep,
                r: int = -2) -> Factorization:
    """Insert (h, r), (h, -r) before position i (1-based; len+1 appends).

    Legal only when the two endpoint transpositions of h under theta are
    disjoint, as for any node."""
    from .monodromy import endpoint_transpositions

    if abs(r) != 2:
        raise BraidInputError("only node pairs (r = -2, 2) may be created")
    if not 1 <= i <= len(f.factors) + 1:
        raise FactorizationError(f"insert position {i} out of range")
    t1, t2 = endpoint_transpositions(theta, h)
    if t1 == t2 or not t1.disjoint(t2):
        raise FactorizationError(
            f"illegal node pair: endpoint transpositions {t1.cycle_str()} and {t2.cycle_str()} "
            "are not disjoint")
    fs = list(f.factors)
    fs[i - 1 : i - 1] = [Factor(h, r), Factor(h, -r)]
    return f.with_factors(fs)


# --------------------------------------------------------------------------
# bounded Hurwitz search


@dataclass(frozen=True)
class HurwitzResult:
    equivalent: bool
    moves: tuple[tuple[int, str], ...] = ()
    explored: int = 0


def replay(f: Factorization, moves: Sequence[tuple[int, str]]) -> Factorization:
    for i, direction in moves:
        f = hurwitz_move(f, i, direction)
    return f


def same_factors(f1: Factorization, f2: Factorization) -> bool:
    return len(f1) == len(f2) and all(a.key() == b.key() for a, b in zip(f1.factors, f2.factors))


def _state_key(f: Factorization) -> tuple:
    return tuple(x.key() for x in f.factors)


def _complexity(h: HalfTwist) -> int:
    return max(len(img) for img in h.table())


def hurwitz_equivalent_bounded(f1: Factorization, f2: Factorization, depth: int,
                               max_states: int = 2_000_000,
                               max_complexity: int = 200) -> HurwitzResult:
    """Breadth-first search for a Hurwitz move sequence turning f1 into f2.

    Searches from both ends (each side to about half the depth) and meets in
    the middle.  States with a factor whose action table has an image longer
    than ``max_complexity`` letters are not expanded: arc complexity grows
    geometrically along some branches and those are never on a short
    certificate in practice.  A positive answer carries a move certificate
    that has been replayed; a negative one only says nothing was found.
    """
    if f1.strands != f2.strands or len(f1) != len(f2):
        raise BraidInputError("factorizations differ in strand count or length")
    if not braid_eq(product(f1), product(f2)):
        raise BraidInputError("factorizations have different products")
    if same_factors(f1, f2):
        return HurwitzResult(True, (), 1)

    def expand(frontier, seen, other_seen, inverse: bool):
        nxt = {}
        for key, (state, path) in frontier.items():
            for i in range(1, len(state)):
                a, b = state.factors[i - 1].twist, state.factors[i].twist
                if _complexity(a) * _complexity(b) > max_complexity * 10:
                    continue
                for direction in (RIGHT, LEFT):
                    s = hurwitz_move(state, i, direction)
                    moved = s.factors[i - 1 if direction == RIGHT else i].twist
                    if _complexity(moved) > max_complexity:
                        continue
                    k = _state_key(s)
                    if k in seen:
                        continue
                    step = (i, LEFT if direction == RIGHT else RIGHT) if inverse else (i, direction)
                    p = path + (step,)
                    seen[k] = (s, p)
                    nxt[k] = (s, p)
                    if k in other_seen:
                        return nxt, k
        return nxt, None

    k1, k2 = _state_key(f1), _state_key(f2)
    seen1 = {k1: (f1, ())}
    seen2 = {k2: (f2, ())}
    front1, front2 = dict(seen1), dict(seen2)
    d1 = d2 = 0
    while d1 + d2 < depth and (front1 or front2):
        if len(seen1) + len(seen2) > max_states:
            break
        if (d1 <= d2 and front1) or not front2:
            front1, hit = expand(front1, seen1, seen2, inverse=False)
            d1 += 1
        else:
            front2, hit = expand(front2, seen2, seen1, inverse=True)
            d2 += 1
        if hit is not None:
            forward = seen1[hit][1]
            backward = seen2[hit][1]
            moves = forward + tuple(reversed(backward))
            if not same_factors(replay(f1, moves), f2):
                raise AssertionError("Hurwitz certificate failed to replay")
            return HurwitzResult(True, moves, len(seen1) + len(seen2))
    return HurwitzResult(False, (), len(seen1) + len(seen2))


# --------------------------------------------------------------------------
# file format

HEADER = "braidfact v1"


def dumps(f: Factorization) -> str:
    lines = [HEADER, f"strands: {f.strands}"]
    lines.append("target: delta2" if f.target_is_delta2 else f"target: {f.target}")
    for x in f.factors:
        lines.append(f"factor r={x.r} base={x.twist.base} conj=[{x.twist.conj}]")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Factorization:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows or rows[0] != HEADER:
        raise BraidInputError(f"expected header {HEADER!r}, got {rows[0] if rows else ''!r}")
    if len(rows) < 3 or not rows[1].startswith("strands:") or not rows[2].startswith("target:"):
        raise BraidInputError("missing strands/target lines")
    try:
        strands = int(rows[1].split(":", 1)[1])
    except ValueError as exc:
        raise BraidInputError(f"bad strand count: {rows[1]!r}") from exc
    tgt_text = rows[2].split(":", 1)[1].strip()
    if tgt_text == "delta2":
        target, is_d2 = delta_squared(strands), True
    else:
        target, is_d2 = BraidWord.parse(strands, tgt_text), False
    factors = []
    for line in rows[3:]:
        factors.append(_parse_factor(strands, line))
    return Factorization(strands, tuple(factors), target, is_d2)


def _parse_factor(strands: int, line: str) -> Factor:
    if not line.startswith("factor ") or "conj=[" not in line or not line.endswith("]"):
        raise BraidInputError(f"bad factor line {line!r}")
    head, conj = line[len("factor "):].split("conj=[", 1)
    fields = dict(tok.split("=", 1) for tok in head.split() if "=" in tok)
    try:
        r, base = int(fields["r"]), int(fields["base"])
    except (KeyError, ValueError) as exc:
        raise BraidInputError(f"bad factor line {line!r}") from exc
    return Factor(HalfTwist(strands, base, BraidWord.parse(strands, conj[:-1])), r)
