"""Image sets of a transformation semigroup and the subduction order on them.

P is subduction-below Q when P fits inside some image of Q under the
action, i.e. P <= Q^s for some s in S^1.  Collapsing mutual subduction
gives the skeleton: the partial order of subduction classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import StateSubset
from .order import Preorder, quotient_cached


@dataclass
class ImageSet:
    """The distinct images of the elements of S^1, plus optional singletons.

    ``origin`` holds one witness element per subset (the identity for the
    full state set).  Singletons adjoined in extended mode never arise as
    images and therefore carry no witness; they are listed in ``adjoined``.
    """

    n: int
    subsets: tuple
    origin: dict
    adjoined: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, P):
        return P in self.origin or P in self.adjoined

    def witness(self, P):
        """An element whose image is P, or None for an adjoined singleton."""
        return self.origin.get(P)


def image_set(ts):
    """I(X): every subset of the state set arising as an element's image."""
    m = ts.adjoin_identity()
    if "image_set" in m._cache:
        return m._cache["image_set"]
    origin = {StateSubset.full(m.n): m.identity()}
    for t in m.elements:
        sub = t.image()
        if sub not in origin:
            origin[sub] = t
    subsets = tuple(sorted(origin, key=StateSubset.sort_key))
    iset = ImageSet(m.n, subsets, origin)
    m._cache["image_set"] = iset
    return iset


def extended_image_set(ts):
    """I(X) together with all singletons; extras are flagged as adjoined."""
    m = ts.adjoin_identity()
    if "extended_image_set" in m._cache:
        return m._cache["extended_image_set"]
    base = image_set(m)
    adjoined = frozenset(
        s for x in range(m.n) if (s := StateSubset.singleton(m.n, x)) not in base.origin
    )
    subsets = tuple(sorted(set(base.subsets) | adjoined, key=StateSubset.sort_key))
    iset = ImageSet(m.n, subsets, dict(base.origin), adjoined)
    m._cache["extended_image_set"] = iset
    return iset


@dataclass(frozen=True)
class SubductionWitness:
    """An element s with P contained in Q^s."""

    s: object
    P: StateSubset
    Q: StateSubset

    def __post_init__(self):
        if not self.P.issubset(self.Q.apply(self.s)):
            raise ValueError(f"{self.s!r} does not carry {self.Q!r} over {self.P!r}")


def _search_order(m):
    """S^1 in witness-search order: identity first, then canonical."""
    if "search_order" not in m._cache:
        one = m.identity()
        m._cache["search_order"] = (one,) + tuple(t for t in m.elements if t != one)
    return m._cache["search_order"]


def _action_images(m, Q):
    """Masks Q^s for s in search order, memoized per Q."""
    key = ("action_images", Q.mask)
    if key not in m._cache:
        m._cache[key] = tuple(Q.apply(s).mask for s in _search_order(m))
    return m._cache[key]


def subduction_leq(P, Q, ts):
    """First witness s (identity first, then canonical) with P <= Q^s, or None.

    |P| > |Q| is rejected outright: images never grow under the action.
    """
    m = ts.adjoin_identity()
    if len(P) > len(Q):
        return None
    pmask = P.mask
    for s, qmask in zip(_search_order(m), _action_images(m, Q)):
        if pmask & ~qmask == 0:
            return SubductionWitness(s, P, Q)
    return None


def subduction_preorder(ts, extended=False):
    """The subduction relation on I(X) (or its extended variant) as a Preorder."""
    m = ts.adjoin_identity()
    key = ("subduction_preorder", extended)
    if key in m._cache:
        return m._cache[key]
    iset = extended_image_set(m) if extended else image_set(m)
    p = Preorder.from_leq(iset.subsets, lambda P, Q: subduction_leq(P, Q, m) is not None)
    m._cache[key] = p
    return p


def inclusion_preorder(ts, extended=False):
    """Plain subset inclusion on the same carrier; already antisymmetric."""
    m = ts.adjoin_identity()
    key = ("inclusion_preorder", extended)
    if key in m._cache:
        return m._cache[key]
    iset = extended_image_set(m) if extended else image_set(m)
    p = Preorder.from_leq(iset.subsets, StateSubset.issubset)
    m._cache[key] = p
    return p


def inclusion_poset(ts, extended=False):
    return quotient_cached(inclusion_preorder(ts, extended))


def skeleton_poset(ts, extended=False):
    """Subduction classes of I(X) (or extended) with their partial order."""
    return quotient_cached(subduction_preorder(ts, extended))
