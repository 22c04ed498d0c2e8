"""Group backends: the abstract element contract plus concrete groups.

A backend packages identity, multiply, invert, equality and a hashable
canonical key for one group, which is all the product replacement
machinery needs. Keys are exact for the abelian backends (the key is the
element); the tree backend keys by the induced permutation of a fixed
level, which is only a fingerprint, so consumers must fall back to exact
equality on key collisions (key_exact == False).
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterator, Sequence

import numpy as np

from .omega import OmegaSequence
from .words import TreeWord, identity as word_identity, level_strings


class BackendError(ValueError):
    pass


@dataclass(frozen=True)
class FreeAbelianElement:
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ModVectorElement:
    p: int
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


class GroupBackend(ABC):
    """Contract shared by all group backends.

    equals(x, y) implies canonical_key(x) == canonical_key(y); the converse
    holds only when key_exact is True.
    """

    key_exact: bool = True

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def multiply(self, x, y):
        ...

    @abstractmethod
    def invert(self, x):
        ...

    @abstractmethod
    def equals(self, x, y) -> bool:
        ...

    @abstractmethod
    def canonical_key(self, x) -> Hashable:
        ...

    def is_generating(self, entries: Sequence) -> bool | None:
        """True/False where decidable, None where not."""
        return None

    def describe(self) -> str:
        return type(self).__name__


class FreeAbelianBackend(GroupBackend):
    """Integer vectors of fixed dimension d under addition."""

    def __init__(self, d: int):
        if d < 1:
            raise BackendError("dimension must be at least 1")
        self.d = d
        self._identity = FreeAbelianElement((0,) * d)

    @property
    def identity(self) -> FreeAbelianElement:
        return self._identity

    def element(self, coords: Sequence[int]) -> FreeAbelianElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.d:
            raise BackendError(f"expected {self.d} coordinates, got {len(coords)}")
        return FreeAbelianElement(coords)

    def multiply(self, x: FreeAbelianElement, y: FreeAbelianElement) -> FreeAbelianElement:
        self._check(x)
        self._check(y)
        return FreeAbelianElement(tuple(a + b for a, b in zip(x.coords, y.coords)))

    def invert(self, x: FreeAbelianElement) -> FreeAbelianElement:
        self._check(x)
        return FreeAbelianElement(tuple(-a for a in x.coords))

    def equals(self, x: FreeAbelianElement, y: FreeAbelianElement) -> bool:
        return x.coords == y.coords

    def canonical_key(self, x: FreeAbelianElement) -> Hashable:
        return x.coords

    def is_generating(self, entries: Sequence[FreeAbelianElement]) -> bool:
        return is_generating_abelian(list(entries), d=self.d)

    def _check(self, x: FreeAbelianElement) -> None:
        if len(x.coords) != self.d:
            raise BackendError("dimension mismatch")

    def describe(self) -> str:
        return f"Z^{self.d}"


class ModVectorBackend(GroupBackend):
    """Vectors of residues mod a prime p, dimension d, under addition."""

    def __init__(self, p: int, d: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise BackendError(f"p must be prime, got {p}")
        if d < 1:
            raise BackendError("dimension must be at least 1")
        self.p = p
        self.d = d
        self._identity = ModVectorElement(p, (0,) * d)

    @property
    def identity(self) -> ModVectorElement:
        return self._identity

    def element(self, coords: Sequence[int]) -> ModVectorElement:
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.d:
            raise BackendError(f"expected {self.d} coordinates, got {len(coords)}")
        return ModVectorElement(self.p, coords)

    def multiply(self, x: ModVectorElement, y: ModVectorElement) -> ModVectorElement:
        self._check(x)
        self._check(y)
        return ModVectorElement(self.p, tuple((a + b) % self.p for a, b in zip(x.coords, y.coords)))

    def invert(self, x: ModVectorElement) -> ModVectorElement:
        self._check(x)
        return ModVectorElement(self.p, tuple((-a) % self.p for a in x.coords))

    def equals(self, x: ModVectorElement, y: ModVectorElement) -> bool:
        return x.p == y.p and x.coords == y.coords

    def canonical_key(self, x: ModVectorElement) -> Hashable:
        return x.coords

    def is_generating(self, entries: Sequence[ModVectorElement]) -> bool:
        return is_generating_modvector(list(entries))

    def elements(self) -> Iterator[ModVectorElement]:
        for coords in itertools.product(range(self.p), repeat=self.d):
            yield ModVectorElement(self.p, coords)

    def size(self) -> int:
        return self.p ** self.d

    def _check(self, x: ModVectorElement) -> None:
        if x.p != self.p:
            raise BackendError(f"mixed moduli: {x.p} vs {self.p}")
        if len(x.coords) != self.d:
            raise BackendError("dimension mismatch")

    def describe(self) -> str:
        return f"Z_{self.p}^{self.d}"


def is_generating_abelian(entries: list[FreeAbelianElement], d: int | None = None) -> bool:
    """Whether integer vectors generate the full lattice.

    The tuple generates Z^d iff the gcd of all d x d minors of the
    stacked matrix is 1 (the last determinantal divisor of its Smith
    form). Minors are expanded directly, so only d <= 3 is supported;
    that covers every case the finite experiments need.
    """
    if not entries:
        return False
    if d is None:
        d = len(entries[0].coords)
    if any(len(e.coords) != d for e in entries):
        raise BackendError("mixed dimensions in tuple")
    if d > 3:
        raise BackendError(f"unsupported dimension {d} (generation test limited to d <= 3)")
    if len(entries) < d:
        return False
    rows = [e.coords for e in entries]
    g = 0
    for sub in itertools.combinations(rows, d):
        g = gcd(g, abs(_det_int(sub)))
        if g == 1:
            return True
    return g == 1


def _det_int(rows: Sequence[Sequence[int]]) -> int:
    d = len(rows)
    if d == 1:
        return rows[0][0]
    if d == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    (a, b, c), (e, f, g), (h, i, j) = rows
    return a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h)


def is_generating_modvector(entries: list[ModVectorElement]) -> bool:
    """Whether residue vectors span (Z_p)^d, by Gaussian elimination."""
    if not entries:
        return False
    p = entries[0].p
    d = len(entries[0].coords)
    for e in entries:
        if e.p != p:
            raise BackendError(f"mixed moduli: {e.p} vs {p}")
        if len(e.coords) != d:
            raise BackendError("mixed dimensions in tuple")
    rows = [list(e.coords) for e in entries]
    rank = 0
    for col in range(d):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [(v - factor * w) % p for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank == d


class TreeBackend(GroupBackend):
    """Elements of a family group as reduced words at offset 0.

    canonical_key is the permutation the word induces on one tree level
    (fingerprint_level), stored as bytes. Distinct keys certify distinct
    elements; equal keys do not certify equality, hence key_exact False.
    Letter permutations are composed with numpy and memoized per word so
    that breadth-first exploration stays cheap.
    """

    key_exact = False

    def __init__(self, omega: OmegaSequence, fingerprint_level: int = 7):
        if not 1 <= fingerprint_level <= 16:
            raise BackendError("fingerprint_level must be between 1 and 16")
        self.omega = omega
        self.fingerprint_level = fingerprint_level
        self._identity = word_identity(omega)
        n = 2 ** fingerprint_level
        strings = level_strings(fingerprint_level)
        index = {s: i for i, s in enumerate(strings)}
        self._letter_perm = {}
        for letter in "abcd":
            w = TreeWord(omega, 0, letter)
            self._letter_perm[letter] = np.array(
                [index[w.act(s)] for s in strings], dtype=np.int32
            )
        self._eye = np.arange(n, dtype=np.int32)
        self._perm_cache: dict[str, np.ndarray] = {"": self._eye}

    @property
    def identity(self) -> TreeWord:
        return self._identity

    def element(self, raw: str) -> TreeWord:
        from .words import word

        return word(self.omega, raw, offset=0)

    def multiply(self, x: TreeWord, y: TreeWord) -> TreeWord:
        z = x * y
        if z.letters not in self._perm_cache:
            px = self._perm_of(x)
            py = self._perm_of(y)
            # act(x*y, s) == act(x, act(y, s)), so the composed table is
            # px applied after py.
            self._perm_cache[z.letters] = px[py]
        return z

    def invert(self, x: TreeWord) -> TreeWord:
        return x.inverse()

    def equals(self, x: TreeWord, y: TreeWord) -> bool:
        return x.equals(y)

    def canonical_key(self, x: TreeWord) -> Hashable:
        return self._perm_of(x).tobytes()

    def _perm_of(self, x: TreeWord) -> np.ndarray:
        perm = self._perm_cache.get(x.letters)
        if perm is None:
            perm = self._eye
            for letter in reversed(x.letters):
                perm = self._letter_perm[letter][perm]
            self._perm_cache[x.letters] = perm
        return perm

    def is_generating(self, entries: Sequence[TreeWord]) -> None:
        # Undecidable in general; tuples are kept generating by
        # construction (Nielsen moves preserve generation).
        return None

    def describe(self) -> str:
        return f"tree group over {self.omega.describe()}"
