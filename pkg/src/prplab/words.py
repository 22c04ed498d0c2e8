"""Exact arithmetic for tree automorphisms given as reduced words.

Elements of the family group attached to a defining sequence omega are
written as words over {a, b, c, d} together with a level offset k: the
letter x in a word at offset k denotes the generator x_k, defined by the
wreath recursion x_k = (a^e, x_{k+1}) with e = 0 iff omega_k = x, and a is
the first-bit flip. Words are kept reduced under the relations

    a^2 = b^2 = c^2 = d^2 = 1,   bc = cb = d,  bd = db = c,  cd = dc = b,

i.e. no two adjacent 'a' and no two adjacent letters from {b,c,d}. Reduced
words over these relations are normal forms for the free product Z2 * V4,
so concatenate-then-reduce is a sound group law at fixed offset (deeper
relations of the actual group are the word problem, handled separately).

Convention: a word acts on strings by function composition with the
rightmost letter applied first, so act(u*v, s) == act(u, act(v, s)).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache

from .omega import BCD, OmegaSequence

LETTERS = "abcd"

# Product of two distinct letters from {b,c,d} is the third one.
_KLEIN = {
    ("b", "c"): "d", ("c", "b"): "d",
    ("b", "d"): "c", ("d", "b"): "c",
    ("c", "d"): "b", ("d", "c"): "b",
}

# Reduced words never exceed this length; squaring past it is refused
# rather than silently eating all memory.
MAX_WORD_LETTERS = 8_000_000


class WordError(ValueError):
    pass


def reduce_letters(raw: str) -> str:
    """Normal form of a letter sequence: idempotent, never longer."""
    stack: list[str] = []
    for ch in raw:
        if ch not in LETTERS:
            raise WordError(f"invalid letter {ch!r}, expected one of a,b,c,d")
        cur: str | None = ch
        while stack and cur is not None:
            top = stack[-1]
            if top == "a" and cur == "a":
                stack.pop()
                cur = None
            elif top in BCD and cur in BCD:
                stack.pop()
                cur = None if top == cur else _KLEIN[(top, cur)]
            else:
                break
        if cur is not None:
            stack.append(cur)
    return "".join(stack)


@dataclass(frozen=True)
class TreeWord:
    """A reduced word at a level offset, denoting one tree automorphism."""

    omega: OmegaSequence
    offset: int
    letters: str

    def __post_init__(self) -> None:
        if self.offset < 0:
            raise WordError("offset must be nonnegative")
        if reduce_letters(self.letters) != self.letters:
            raise WordError(f"letters {self.letters!r} are not reduced")

    # -- group operations ------------------------------------------------

    def __mul__(self, other: "TreeWord") -> "TreeWord":
        self._check_compatible(other)
        return TreeWord(self.omega, self.offset, reduce_letters(self.letters + other.letters))

    def inverse(self) -> "TreeWord":
        # All four generators are involutions, so inversion is reversal.
        return TreeWord(self.omega, self.offset, self.letters[::-1])

    def _check_compatible(self, other: "TreeWord") -> None:
        if self.omega != other.omega:
            raise WordError("words are defined over different sequences")
        if self.offset != other.offset:
            raise WordError(f"offset mismatch: {self.offset} != {other.offset}")

    def conjugate_by(self, h: "TreeWord") -> "TreeWord":
        return h * self * h.inverse()

    def pow(self, e: int) -> "TreeWord":
        if e < 0:
            return self.inverse().pow(-e)
        acc = identity(self.omega, self.offset)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base_needed = e > 1
            if base_needed:
                if 2 * len(base.letters) > MAX_WORD_LETTERS:
                    raise WordError("word length guard exceeded while powering")
                base = base * base
            e >>= 1
        return acc

    # -- tree structure ---------------------------------------------------

    def sections(self) -> "SectionPair":
        """Decompose as (left, right) * a^swapped, one level down.

        Each non-'a' letter contributes one letter to one side and at most
        one 'a' to the other, so both sides have at most (len+1)/2 letters
        before reduction; this contraction is what makes the word problem
        recursion terminate.
        """
        wk = self.omega.letter_at(self.offset)
        left: list[str] = []
        right: list[str] = []
        e = 0
        for ch in self.letters:
            if ch == "a":
                e ^= 1
                continue
            v0 = "" if wk == ch else "a"
            if e == 0:
                left.append(v0)
                right.append(ch)
            else:
                left.append(ch)
                right.append(v0)
        k1 = self.offset + 1
        return SectionPair(
            left=TreeWord(self.omega, k1, reduce_letters("".join(left))),
            right=TreeWord(self.omega, k1, reduce_letters("".join(right))),
            swapped=bool(e),
        )

    def section_at(self, s: str) -> "TreeWord":
        """Iterated section at the vertex s, satisfying g(st) = g(s) g|_s(t).

        With a top swap the input bit selects the opposite wreath
        component: g = (g0, g1) a and g(0t) = 1 g1(t).
        """
        g = self
        for bit in s:
            pair = g.sections()
            pick_right = (bit == "1") != pair.swapped
            g = pair.right if pick_right else pair.left
        return g

    def act(self, s: str) -> str:
        """Image of the binary string s."""
        bits = bytearray(s, "ascii")
        for ch in bits:
            if ch not in (48, 49):
                raise WordError(f"act expects a binary string, got {s!r}")
        for ch in reversed(self.letters):
            if ch == "a":
                if bits:
                    bits[0] ^= 1
                continue
            n = 0
            while n < len(bits) and bits[n] == 49:
                n += 1
            if n >= len(bits):
                continue
            if self.omega.letter_at(self.offset + n) != ch and n + 1 < len(bits):
                bits[n + 1] ^= 1
        return bits.decode("ascii")

    def fixes_level(self, m: int) -> bool:
        return all(self.act(s) == s for s in level_strings(m))

    # -- the word problem --------------------------------------------------

    def is_identity(self) -> bool:
        return _is_identity(self.omega, self.omega.canonical_pos(self.offset), self.letters)

    def equals(self, other: "TreeWord") -> bool:
        self._check_compatible(other)
        return (self * other.inverse()).is_identity()

    def order(self, cap_exponent: int = 30) -> int | None:
        """Exact order when it is a power of two not above 2**cap_exponent.

        Repeated squaring finds the least e with g^(2^e) trivial; any order
        dividing a power of two is itself a power of two, so that e is
        exact. None means the cap fired (possibly infinite order).
        """
        if not 0 <= cap_exponent <= 30:
            raise WordError("cap_exponent must be between 0 and 30")
        if self.is_identity():
            return 1
        g = self
        for e in range(1, cap_exponent + 1):
            if 2 * len(g.letters) > MAX_WORD_LETTERS:
                raise WordError("word length guard exceeded during order computation")
            g = g * g
            if g.is_identity():
                return 2 ** e
        return None

    def support(self, m: int) -> set[str]:
        """Level-m strings below which the section is nontrivial.

        Defined only for words fixing level m pointwise.
        """
        if not self.fixes_level(m):
            raise WordError(f"word does not stabilize level {m}")
        out: set[str] = set()

        def walk(g: TreeWord, path: str) -> None:
            if not g.letters:
                return
            if len(path) == m:
                if not g.is_identity():
                    out.add(path)
                return
            pair = g.sections()
            walk(pair.left, path + "0")
            walk(pair.right, path + "1")

        walk(self, "")
        return out

    def in_rist(self, s: str) -> bool:
        """True iff the word fixes every string not beginning with s."""
        if not self.fixes_level(len(s)):
            return False
        return self.support(len(s)) <= {s}

    def word_length(self, gen_set: str = "abcd") -> int:
        """Letter count; in 'abc' mode each d costs 2 (d = bc).

        An upper bound for geodesic length over the named generating set.
        """
        if gen_set == "abcd":
            return len(self.letters)
        if gen_set == "abc":
            return len(self.letters) + self.letters.count("d")
        raise WordError(f"unknown generating set {gen_set!r}")

    def __repr__(self) -> str:
        return f"TreeWord({self.letters!r}@{self.offset})"


@dataclass(frozen=True)
class SectionPair:
    left: TreeWord
    right: TreeWord
    swapped: bool


def identity(omega: OmegaSequence, offset: int = 0) -> TreeWord:
    return TreeWord(omega, offset, "")


def word(omega: OmegaSequence, raw: str, offset: int = 0) -> TreeWord:
    """Reduce a raw letter sequence into a TreeWord."""
    return TreeWord(omega, offset, reduce_letters(raw))


def level_strings(m: int) -> list[str]:
    """All binary strings of length m in lexicographic order."""
    if m == 0:
        return [""]
    return [format(i, f"0{m}b") for i in range(2 ** m)]


@lru_cache(maxsize=None)
def _is_identity(omega: OmegaSequence, cpos: int, letters: str) -> bool:
    if not letters:
        return True
    if letters.count("a") % 2:
        return False
    if len(letters) == 1:
        return omega.constant_from(letters, cpos)
    g = TreeWord(omega, cpos, letters)
    pair = g.sections()
    for child in (pair.left, pair.right):
        # Contraction must strictly shrink the word, else the recursion
        # would not terminate.
        assert len(child.letters) <= (len(letters) + 1) // 2
    left_ok = _is_identity(omega, omega.canonical_pos(cpos + 1), pair.left.letters)
    if not left_ok:
        return False
    return _is_identity(omega, omega.canonical_pos(cpos + 1), pair.right.letters)


def same_action(u: TreeWord, v: TreeWord) -> bool:
    """Equality as tree automorphisms, allowing different offsets.

    Words at different offsets into the same eventually periodic sequence
    still act on one tree; this compares their section trees by
    bisimulation. Offsets are canonicalized, so the reachable state space
    is finite and cycles may soundly be assumed equal (any genuine
    difference shows up as a parity mismatch at some finite depth).
    """
    if u.omega != v.omega:
        raise WordError("words are defined over different sequences")
    omega = u.omega
    in_progress: set[tuple[int, str, int, str]] = set()
    settled: dict[tuple[int, str, int, str], bool] = {}

    def go(x: TreeWord, y: TreeWord) -> bool:
        if x.letters.count("a") % 2 != y.letters.count("a") % 2:
            return False
        if not x.letters:
            return y.is_identity()
        if not y.letters:
            return x.is_identity()
        key = (
            omega.canonical_pos(x.offset), x.letters,
            omega.canonical_pos(y.offset), y.letters,
        )
        if key in settled:
            return settled[key]
        if key in in_progress:
            return True
        in_progress.add(key)
        xs, ys = x.sections(), y.sections()
        ok = go(xs.left, ys.left) and go(xs.right, ys.right)
        in_progress.discard(key)
        settled[key] = ok
        return ok

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 10_000))
    try:
        return go(u, v)
    finally:
        sys.setrecursionlimit(old_limit)
