"""Transformations of a finite state set and semigroups generated by them.

States are 0-based internally; every parsing/printing surface is 1-based.
A transformation acts on the right, so the product ``s * t`` means
"first s, then t": ``x^(st) = (x^s)^t``.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainMismatchError(ValueError):
    """Operands act on different state counts."""


class ResourceLimitError(RuntimeError):
    """A configured size cap was exceeded; ``stage`` names the computation."""

    def __init__(self, stage, message):
        super().__init__(message)
        self.stage = stage


@dataclass(frozen=True, repr=False)
class Transformation:
    """A total map on {0..n-1}, stored as the tuple of images."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise ValueError("transformation needs at least one state")
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n:
                raise ValueError(f"image entry {x!r} outside 0..{n - 1}")

    @classmethod
    def from_one_based(cls, seq):
        return cls(tuple(x - 1 for x in seq))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @property
    def n(self):
        return len(self.images)

    @property
    def one_based(self):
        return tuple(x + 1 for x in self.images)

    def __mul__(self, other):
        if not isinstance(other, Transformation):
            return NotImplemented
        if other.n != self.n:
            raise DomainMismatchError(f"cannot compose maps on {self.n} and {other.n} states")
        return Transformation(tuple(other.images[x] for x in self.images))

    def __call__(self, x):
        return self.images[x]

    def is_identity(self):
        return all(v == x for x, v in enumerate(self.images))

    def is_idempotent(self):
        return all(self.images[v] == v for v in self.images)

    def image(self):
        mask = 0
        for v in self.images:
            mask |= 1 << v
        return StateSubset(self.n, mask)

    def __repr__(self):
        return "T[%s]" % " ".join(str(x) for x in self.one_based)

    __str__ = __repr__


def compose(s, t):
    """Right-action composition: first apply s, then t."""
    return s * t


@dataclass(frozen=True, repr=False)
class StateSubset:
    """Subset of the n states as a bit mask (bit x set iff state x is in)."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n, members):
        mask = 0
        for x in members:
            mask |= 1 << x
        return cls(n, mask)

    @classmethod
    def from_one_based(cls, n, members):
        return cls.of(n, (x - 1 for x in members))

    @classmethod
    def full(cls, n):
        return cls(n, (1 << n) - 1)

    @classmethod
    def singleton(cls, n, x):
        return cls(n, 1 << x)

    @property
    def members(self):
        return tuple(x for x in range(self.n) if self.mask >> x & 1)

    @property
    def one_based(self):
        return tuple(x + 1 for x in self.members)

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        # an empty subset is still a meaningful value
        return True

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return 0 <= x < self.n and self.mask >> x & 1 == 1

    def issubset(self, other):
        if other.n != self.n:
            raise DomainMismatchError("subsets live on different state counts")
        return self.mask & ~other.mask == 0

    def apply(self, t):
        """The action image {x^t : x in self}."""
        if t.n != self.n:
            raise DomainMismatchError("subset and map act on different state counts")
        return StateSubset(self.n, apply_mask(self.mask, t.images))

    def sort_key(self):
        return self.members

    def __repr__(self):
        return "{%s}" % ",".join(str(x) for x in self.one_based)

    __str__ = __repr__


def apply_mask(mask, images):
    """Apply an image tuple to a raw bit mask."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << images[low.bit_length() - 1]
        mask ^= low
    return out


def apply_subset(P, s):
    """The subset P^s = {x^s : x in P}."""
    return P.apply(s)


def image(s):
    """im(s): the image of the full state set under s."""
    return s.image()


class TransformationSemigroup:
    """A closed set of transformations of {0..n-1} with a fixed generating set.

    ``elements`` is kept sorted lexicographically by image tuple; that order
    is the canonical element numbering used for all reports and diagrams.
    """

    def __init__(self, n, generators, elements):
        self.n = n
        self.generators = tuple(dict.fromkeys(generators))
        self.elements = tuple(sorted(set(elements), key=lambda t: t.images))
        if not self.elements:
            raise ValueError("semigroup needs at least one element")
        for t in self.generators + self.elements:
            if t.n != n:
                raise DomainMismatchError(f"element {t} does not act on {n} states")
        self._index = {t: i for i, t in enumerate(self.elements)}
        self.has_identity = Transformation.identity(n) in self._index
        self._table = None
        self._one = None
        self._cache = {}

    @classmethod
    def generate(cls, n, generators, max_elements=1_000_000):
        """Close the generators under composition.

        Breadth first: products are taken in order of discovery of the left
        factor, with generator index breaking ties, so the discovery order
        (and everything downstream) is deterministic.
        """
        gens = tuple(dict.fromkeys(generators))
        if not gens:
            raise ValueError("at least one generator required")
        for g in gens:
            if g.n != n:
                raise DomainMismatchError(f"generator {g} does not act on {n} states")
        seen = dict.fromkeys(g.images for g in gens)
        frontier = list(seen)
        gen_images = [g.images for g in gens]
        while frontier:
            fresh = []
            for u in frontier:
                for g in gen_images:
                    w = tuple(g[x] for x in u)
                    if w not in seen:
                        if len(seen) >= max_elements:
                            raise ResourceLimitError(
                                "enumerate",
                                f"element cap {max_elements} exceeded while closing generators",
                            )
                        seen[w] = None
                        fresh.append(w)
            frontier = fresh
        return cls(n, gens, [Transformation(w) for w in seen])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, t):
        return t in self._index

    def index(self, t):
        """Canonical number of an element."""
        return self._index[t]

    def identity(self):
        return Transformation.identity(self.n)

    def adjoin_identity(self):
        """S^1: this semigroup if the identity is present, else identity adjoined."""
        if self.has_identity:
            return self
        if self._one is None:
            one = Transformation.identity(self.n)
            S1 = TransformationSemigroup(self.n, self.generators + (one,), self.elements + (one,))
            S1._one = S1
            self._one = S1
        return self._one

    def table(self):
        """Multiplication table on canonical indices; built once."""
        if self._table is None:
            els = [t.images for t in self.elements]
            index = {imgs: i for i, imgs in enumerate(els)}
            self._table = [
                [index[tuple(t[x] for x in s)] for t in els] for s in els
            ]
        return self._table

    def is_closed(self):
        els = set(self.elements)
        return all(s * t in els for s in self.elements for t in self.elements)

    def __repr__(self):
        return (
            f"TransformationSemigroup(n={self.n}, generators={len(self.generators)}, "
            f"elements={len(self.elements)})"
        )
