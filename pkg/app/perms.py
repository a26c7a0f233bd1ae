#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Permutations Module
Permutation algebra, segment reversals and the dihedral symmetries of a
cyclic vertex arrangement
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from errors import InvalidParameterError, ParseError


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection on {0..n-1}; images[i] is the image of vertex i.

    The text form is 1-based: "2,1,3,4,5" swaps v_1 and v_2 on five vertices.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidParameterError(f"not a permutation of 0..{len(self.images) - 1}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return ",".join(str(i + 1) for i in self.images)

    @classmethod
    def parse(cls, text: str) -> 'Permutation':
        """Parse a comma-separated 1-based image list"""
        tokens = [tok.strip() for tok in text.strip().split(',')]
        if not tokens or not all(tok.isdigit() for tok in tokens):
            raise ParseError(f"permutation must be comma-separated positive integers, got {text!r}")
        values = [int(tok) for tok in tokens]
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ParseError(f"{text!r} is not a permutation of 1..{len(values)}")
        return cls(tuple(v - 1 for v in values))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> 'Permutation':
        return cls(tuple(int(i) for i in images))


@dataclass(frozen=True)
class SigmaSpec:
    """Reversal of the clockwise cyclic block from position l to position k (1-based)"""

    n: int
    l: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"cycle length must be positive, got {self.n}")
        if not (1 <= self.l <= self.n and 1 <= self.k <= self.n):
            raise InvalidParameterError(f"l and k must lie in 1..{self.n}, got l={self.l}, k={self.k}")

    @property
    def block_length(self) -> int:
        if self.l <= self.k:
            return self.k - self.l + 1
        return self.n - self.l + 1 + self.k

    def block(self) -> List[int]:
        """0-based positions of the block in clockwise order"""
        return [(self.l - 1 + t) % self.n for t in range(self.block_length)]

    def __str__(self) -> str:
        return f"sigma_{self.l},{self.k}"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def transposition(n: int, a: int, b: int) -> Permutation:
    """Swap 0-based vertices a and b"""
    if not (0 <= a < n and 0 <= b < n):
        raise InvalidParameterError(f"transposition vertices out of range: {a}, {b}")
    images = list(range(n))
    images[a], images[b] = b, a
    return Permutation(tuple(images))


def compose(f: Permutation, g: Permutation) -> Permutation:
    """(f o g)(i) = f(g(i))"""
    if f.n != g.n:
        raise InvalidParameterError(f"cannot compose permutations of sizes {f.n} and {g.n}")
    return Permutation(tuple(f.images[j] for j in g.images))


def inverse(f: Permutation) -> Permutation:
    images = [0] * f.n
    for i, image in enumerate(f.images):
        images[image] = i
    return Permutation(tuple(images))


def is_involution(f: Permutation) -> bool:
    return compose(f, f) == identity(f.n)


def sigma_lk(spec: SigmaSpec) -> Permutation:
    """Reverse the cyclic block l..k in place and fix everything else.

    Inside the block v_i goes to v_{k-i+l}, indices taken mod n into 1..n.
    """
    block = spec.block()
    images = list(range(spec.n))
    for position, target in zip(block, reversed(block)):
        images[position] = target
    return Permutation(tuple(images))


def rotation(n: int, j: int) -> Permutation:
    """r_j: v_i -> v_{i+j}"""
    return Permutation(tuple((i + j) % n for i in range(n)))


def reflection(n: int, j: int) -> Permutation:
    """s_j: v_i -> v_{j-i}"""
    return Permutation(tuple((j - i) % n for i in range(n)))


def dihedral(n: int) -> List[Permutation]:
    """The 2n rotations and reflections of v_1..v_n, deduplicated and sorted"""
    if n < 3:
        raise InvalidParameterError(f"dihedral symmetries need n >= 3, got {n}")
    group = {rotation(n, j) for j in range(n)} | {reflection(n, j) for j in range(n)}
    return sorted(group)


def iter_sigma_specs(n: int, min_block: int = 2,
                     max_block: Optional[int] = None) -> Iterator[SigmaSpec]:
    max_block = n - 2 if max_block is None else max_block
    for l in range(1, n + 1):
        for length in range(min_block, max_block + 1):
            k = (l - 1 + length - 1) % n + 1
            yield SigmaSpec(n, l, k)


def all_sigma_candidates(n: int) -> List[Tuple[SigmaSpec, Permutation]]:
    """Every block reversal with block length in [2, n-2], one entry per distinct permutation.

    Lengths 1, n-1 and n are left out: they give the identity or a
    reflection, both automorphisms.
    """
    if n < 5:
        raise InvalidParameterError(f"segment reversal candidates need n >= 5, got {n}")
    seen = {}
    for spec in iter_sigma_specs(n):
        perm = sigma_lk(spec)
        seen.setdefault(perm, spec)
    return sorted(((spec, perm) for perm, spec in seen.items()), key=lambda item: item[1])
