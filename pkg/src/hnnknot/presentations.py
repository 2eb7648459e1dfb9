"""Finite group presentations: words, parsing, Tietze simplification.

Words are tuples of nonzero signed integers; letter k > 0 is the k-th
generator, -k its inverse.  The text syntax for presentations is

    < a, t | a^8, a^-2*t*a*t*a^2*t^-2 >

with ``*`` for concatenation, ``^`` for (possibly negative) powers, and
parentheses allowed, e.g. ``(s*t)^3``.  Relator lists may also be written
as equations ``u = v`` which become ``u v^-1``.

Tietze simplification eliminates redundant generators by substitution and
reduces relators against shorter ones; every run returns a trace whose
replay is checked move by move, and which carries words expressing each
presentation's generators in the other's, so a simplification is evidence
rather than an act of faith.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "Word",
    "free_reduce",
    "cyclic_reduce",
    "invert_word",
    "parse_word",
    "format_word",
    "Presentation",
    "AbelianInvariants",
    "abelian_invariants",
    "TietzeMove",
    "TietzeTrace",
    "tietze_simplify",
    "substitute",
    "verify_hom_on_relators",
    "ParseError",
]

Word = tuple[int, ...]


class ParseError(ValueError):
    """Malformed presentation or word text."""


# ---------------------------------------------------------------------------
# words


def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("letter 0 is not allowed")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    """Freely reduce, then cancel first-against-last letters."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Iterable[int]) -> Word:
    return tuple(-letter for letter in reversed(tuple(word)))


def conjugate_word(word: Word, by: Word) -> Word:
    """by * word * by^-1, freely reduced."""
    return free_reduce(tuple(by) + tuple(word) + invert_word(by))


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _WordParser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.pos = 0
        self.index = {nm: i + 1 for i, nm in enumerate(names)}

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, msg: str):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def parse(self) -> Word:
        w = self._product()
        self._skip()
        if self.pos != len(self.text):
            self._fail("trailing input")
        return free_reduce(w)

    def _product(self) -> list[int]:
        out = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                out += self._factor()
            elif ch and (ch.isalnum() or ch in "(_"):
                # juxtaposition also means product
                out += self._factor()
            else:
                return out

    def _factor(self) -> list[int]:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._product()
            if self._peek() != ")":
                self._fail("expected ')'")
            self.pos += 1
            base = inner
        else:
            m = _NAME_RE.match(self.text, self.pos)
            if not m:
                self._fail("expected generator name")
            name = m.group(0)
            if name not in self.index:
                self._fail(f"unknown generator {name!r}")
            self.pos = m.end()
            base = [self.index[name]]
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            m = re.compile(r"-?\d+").match(self.text, self.pos)
            if not m:
                self._fail("expected integer exponent")
            self.pos = m.end()
            e = int(m.group(0))
            if e >= 0:
                return base * e
            return list(invert_word(base)) * (-e)
        return base


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a word in the given generator names."""
    return _WordParser(text, names).parse()


def format_word(word: Word, names: Sequence[str]) -> str:
    """Render a word compactly, merging runs into powers."""
    if not word:
        return "1"
    parts = []
    i = 0
    w = tuple(word)
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = j - i
        nm = names[abs(w[i]) - 1]
        e = k if w[i] > 0 else -k
        parts.append(nm if e == 1 else f"{nm}^{e}")
        i = j
    return "*".join(parts)


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """A finite presentation: generator names plus relator words.

    Relators are freely and cyclically reduced at construction; empty
    relators are dropped.
    """

    def __init__(self, names: Sequence[str], relators: Iterable[Word]):
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise ParseError("duplicate generator name")
        for nm in self.names:
            if not _NAME_RE.fullmatch(nm):
                raise ParseError(f"bad generator name {nm!r}")
        self.ngens = len(self.names)
        rels = []
        for r in relators:
            w = cyclic_reduce(r)
            for letter in w:
                if not 1 <= abs(letter) <= self.ngens:
                    raise ParseError(f"letter {letter} out of range")
            if w:
                rels.append(w)
        self.relators: list[Word] = rels

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse ``< gens | relators >``; relators may be equations."""
        t = text.strip()
        if not (t.startswith("<") and t.endswith(">")):
            raise ParseError("presentation must be wrapped in < ... >")
        body = t[1:-1]
        if "|" in body:
            gpart, rpart = body.split("|", 1)
        else:
            gpart, rpart = body, ""
        names = [g.strip() for g in gpart.split(",") if g.strip()]
        if not names:
            raise ParseError("no generators")
        rels = []
        for chunk in rpart.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" in chunk:
                sides = [s.strip() for s in chunk.split("=")]
                if any(not s for s in sides):
                    raise ParseError(f"malformed equation {chunk!r}")
                base = parse_word(sides[0], names)
                for rhs in sides[1:]:
                    w = parse_word(rhs, names)
                    rels.append(free_reduce(base + invert_word(w)))
            else:
                rels.append(parse_word(chunk, names))
        return cls(names, rels)

    def to_text(self) -> str:
        rs = ", ".join(format_word(r, self.names) for r in self.relators)
        return f"< {', '.join(self.names)} | {rs} >"

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def format(self, word: Word) -> str:
        return format_word(word, self.names)

    def exponent_matrix(self) -> list[list[int]]:
        """Abelianized relator matrix: one row per relator."""
        out = []
        for r in self.relators:
            row = [0] * self.ngens
            for letter in r:
                row[abs(letter) - 1] += 1 if letter > 0 else -1
            out.append(row)
        return out

    def total_relator_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __repr__(self) -> str:
        return (f"Presentation(<{len(self.names)} gens, "
                f"{len(self.relators)} relators>)")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Presentation)
                and self.names == other.names
                and self.relators == other.relators)


@dataclass
class AbelianInvariants:
    """Abelianization as free rank plus invariant factors > 1."""

    free_rank: int
    torsion: list[int]

    def pretty(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, AbelianInvariants):
            return (self.free_rank == other.free_rank
                    and self.torsion == other.torsion)
        return NotImplemented


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    """Abelianization of the presented group via Smith normal form of the
    exponent matrix."""
    from . import grphom
    M = grphom.IntMatrix.from_dense(P.exponent_matrix()) \
        if P.relators else grphom.IntMatrix(0, P.ngens, {})
    sf = grphom.smith_normal_form(M)
    return AbelianInvariants(P.ngens - sf.rank, sf.torsion())


# ---------------------------------------------------------------------------
# Tietze transformations


@dataclass
class TietzeMove:
    """One primitive move.  kind is one of

    'replace_relator': relators[index] replaced by ``word`` (must define
        the same normal closure; justified by ``reason``).
    'remove_relator': relators[index] dropped (it lay in the normal
        closure of the others; ``reason`` carries a derivation hint).
    'remove_generator': generator ``gen`` (1-based) eliminated using
        relator ``index`` which reads gen = ``word`` (a word in the other
        generators); every other relator gets the substitution.
    """

    kind: str
    index: int = -1
    gen: int = 0
    word: Optional[Word] = None
    reason: str = ""


@dataclass
class TietzeTrace:
    """Replayable record of a simplification run.

    start and end are the presentations before and after.  fwd_images[i]
    is a word in end's generators equal to start's generator i+1;
    bwd_images the other way around.  verify() replays the moves from
    start, checks the result equals end syntactically, and checks both
    image lists are consistent under the replayed substitutions.
    """

    start: Presentation
    end: Presentation
    moves: list[TietzeMove] = field(default_factory=list)
    fwd_images: list[Word] = field(default_factory=list)
    bwd_images: list[Word] = field(default_factory=list)

    def verify(self) -> bool:
        try:
            self._verify_or_raise()
            return True
        except AssertionError:
            return False

    def _verify_or_raise(self) -> None:
        names = list(self.start.names)
        rels = [tuple(r) for r in self.start.relators]
        for mv in self.moves:
            if mv.kind == "replace_relator":
                assert 0 <= mv.index < len(rels), "bad relator index"
                assert mv.word is not None
                rels[mv.index] = cyclic_reduce(mv.word)
            elif mv.kind == "remove_relator":
                assert 0 <= mv.index < len(rels), "bad relator index"
                rels.pop(mv.index)
            elif mv.kind == "remove_generator":
                assert mv.word is not None
                g = mv.gen
                assert 1 <= g <= len(names), "bad generator"
                assert all(abs(x) != g for x in mv.word), \
                    "substitution mentions the removed generator"
                assert 0 <= mv.index < len(rels), "bad relator index"
                # the cited relator must reduce to g * word^-1 up to
                # cyclic rotation and inversion
                target = cyclic_reduce((g,) + invert_word(mv.word))
                r = cyclic_reduce(rels[mv.index])
                assert _cyclically_equivalent(r, target), \
                    "cited relator does not define the substitution"
                rels.pop(mv.index)
                rels = [
                    cyclic_reduce(_substitute_letter(r, g, mv.word))
                    for r in rels]
                rels = [r for r in rels if r]
                # renumber letters above g down by one
                rels = [tuple(x - (1 if x > g else 0) if x > 0
                              else x + (1 if -x > g else 0) for x in r)
                        for r in rels]
                names.pop(g - 1)
            else:
                raise AssertionError(f"unknown move {mv.kind!r}")
        assert names == self.end.names, "generator names differ"
        assert sorted(rels) == sorted(tuple(r) for r in self.end.relators), \
            "replayed relators differ"
        # image lists: check lengths and letter ranges; semantic agreement
        # is checked by the oracle-based tests (the images are words, and
        # equality in the group is not decidable syntactically)
        assert len(self.fwd_images) == self.start.ngens
        assert len(self.bwd_images) == self.end.ngens
        for w in self.fwd_images:
            for x in w:
                assert 1 <= abs(x) <= self.end.ngens
        for w in self.bwd_images:
            for x in w:
                assert 1 <= abs(x) <= self.start.ngens


def _cyclically_equivalent(a: Word, b: Word) -> bool:
    """Equal up to rotation or rotation of the inverse."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    for s in range(len(a)):
        if doubled[s:s + len(a)] == b:
            return True
    ai = invert_word(a)
    doubled = ai + ai
    for s in range(len(a)):
        if doubled[s:s + len(a)] == b:
            return True
    return False


def _substitute_letter(word: Word, gen: int, repl: Word) -> Word:
    out: list[int] = []
    inv = invert_word(repl)
    for letter in word:
        if letter == gen:
            out.extend(repl)
        elif letter == -gen:
            out.extend(inv)
        else:
            out.append(letter)
    return free_reduce(out)


def substitute(word: Word, images: Sequence[Word]) -> Word:
    """Rewrite a word through generator images (images[i] for letter i+1)."""
    out: list[int] = []
    for letter in word:
        w = images[abs(letter) - 1]
        out.extend(w if letter > 0 else invert_word(w))
    return free_reduce(out)


def _relator_rewrites(relators: Sequence[Word]):
    """Length-reducing rewrite rules from cyclic rotations of relators and
    their inverses: for each split r = u v with len(u) > len(v), the rule
    u -> v^-1."""
    rules = []
    for r in relators:
        for w in (r, invert_word(r)):
            doubled = w + w
            n = len(w)
            for s in range(n):
                rot = doubled[s:s + n]
                k = n // 2 + 1
                u = rot[:k]
                v = invert_word(rot[k:])
                rules.append((u, v))
    # longest left sides first so greedy matching prefers big reductions
    rules.sort(key=lambda uv: -len(uv[0]))
    return rules


def rewrite_word(word: Word, relators: Sequence[Word],
                 max_passes: int = 200) -> Word:
    """Greedy length reduction of a word modulo the relators.

    Sound but incomplete: the result is equal to the input in the
    presented group, but need not be a canonical form.
    """
    rules = _relator_rewrites(relators)
    w = free_reduce(word)
    for _ in range(max_passes):
        changed = False
        for u, v in rules:
            lu = len(u)
            if lu > len(w):
                continue
            i = 0
            while i + lu <= len(w):
                if w[i:i + lu] == u:
                    w = free_reduce(w[:i] + v + w[i + lu:])
                    changed = True
                    i = max(i - lu, 0)
                else:
                    i += 1
        if not changed:
            break
    return w


def tietze_simplify(P: Presentation, max_total_length: int = 20_000,
                    passes: int = 30) -> tuple[Presentation, TietzeTrace]:
    """Deterministic simplification: shorten relators against each other,
    then eliminate generators defined by short relators, repeat.

    Returns the simplified presentation and a verified TietzeTrace; the
    trace's verify() is run before returning.
    """
    names = list(P.names)
    rels = [tuple(r) for r in P.relators]
    moves: list[TietzeMove] = []
    # fwd[i]: original generator i+1 as a word in the current generators;
    # bwd[j]: current generator j+1 as a word in the original generators
    fwd: list[Word] = [(i + 1,) for i in range(P.ngens)]
    bwd: list[Word] = [(i + 1,) for i in range(P.ngens)]

    def shorten_pass() -> bool:
        nonlocal rels
        changed = False
        for i in range(len(rels)):
            others = [r for j, r in enumerate(rels) if j != i and r]
            if not others:
                continue
            w = rewrite_word(rels[i], others, max_passes=4)
            w = cyclic_reduce(w)
            if len(w) < len(rels[i]):
                moves.append(TietzeMove("replace_relator", index=i, word=w,
                                        reason="rewritten against other"
                                        " relators"))
                rels[i] = w
                changed = True
        if () in rels or any(not r for r in rels):
            keep = []
            for i in range(len(rels) - 1, -1, -1):
                if not rels[i]:
                    moves.append(TietzeMove("remove_relator", index=i,
                                            reason="relator became empty"))
                    rels.pop(i)
            changed = True
        # drop duplicate relators (up to cyclic rotation and inversion)
        i = len(rels) - 1
        while i >= 0:
            for j in range(i):
                if _cyclically_equivalent(rels[i], rels[j]):
                    moves.append(TietzeMove(
                        "remove_relator", index=i,
                        reason=f"duplicate of relator {j}"))
                    rels.pop(i)
                    changed = True
                    break
            i -= 1
        return changed

    def eliminate_one() -> bool:
        nonlocal rels, names, fwd, bwd
        # find a relator with a letter occurring exactly once
        best = None
        for i, r in enumerate(rels):
            for pos, letter in enumerate(r):
                g = abs(letter)
                occ = sum(1 for x in r if abs(x) == g)
                if occ == 1:
                    cost = (len(r) - 1) * sum(
                        sum(1 for x in rr if abs(x) == g)
                        for j, rr in enumerate(rels) if j != i)
                    if best is None or cost < best[0]:
                        best = (cost, i, pos, g)
        if best is None:
            return False
        _, i, pos, g = best
        r = rels[i]
        # rotate so the solo letter leads, oriented positively:
        # r ~ g * w^-1  =>  g = w
        rot = r[pos:] + r[:pos]
        if rot[0] < 0:
            rot = invert_word(rot)
            rot = rot[-1:] + rot[:-1]
        assert rot[0] == g
        w = invert_word(rot[1:])
        moves.append(TietzeMove("remove_generator", index=i, gen=g, word=w,
                                reason="solo occurrence"))
        rels.pop(i)
        rels = [cyclic_reduce(_substitute_letter(rr, g, w)) for rr in rels]
        rels = [rr for rr in rels if rr]
        # track images: current gen g equals w in the remaining gens
        elim_images = []
        for j in range(1, len(names) + 1):
            if j == g:
                elim_images.append(w)
            else:
                elim_images.append((j,))
        fwd = [substitute(u, elim_images) for u in fwd]
        bwd_g = bwd[g - 1]
        new_bwd = [b for j, b in enumerate(bwd) if j != g - 1]
        # renumber letters above g down by one everywhere
        def renum(word: Word) -> Word:
            return tuple(x - 1 if x > g else (x + 1 if x < -g else x)
                         for x in word)
        rels = [renum(rr) for rr in rels]
        fwd = [renum(u) for u in fwd]
        names.pop(g - 1)
        bwd = new_bwd
        return True

    for _ in range(passes):
        any_change = shorten_pass()
        while eliminate_one():
            any_change = True
            shorten_pass()
        if not any_change:
            break
        if sum(len(r) for r in rels) > max_total_length:
            break

    Q = Presentation(names, rels)
    trace = TietzeTrace(P, Q, moves, fwd, bwd)
    if not trace.verify():
        raise AssertionError("simplification trace failed to replay")
    return Q, trace


def verify_hom_on_relators(P: Presentation, images: Sequence,
                           is_identity) -> bool:
    """Check that mapping generator i+1 to images[i] kills every relator.

    ``images`` are objects of the target; ``is_identity(x)`` decides
    triviality there; the target multiplication is supplied by the images
    themselves via * and ** (or use eval_fn style wrappers upstream).
    """
    for r in P.relators:
        acc = None
        for letter in r:
            x = images[abs(letter) - 1]
            if letter < 0:
                x = x.inverse() if hasattr(x, "inverse") else x ** -1
            acc = x if acc is None else acc * x
        if acc is not None and not is_identity(acc):
            return False
    return True
