"""Finite preorders, their partial-order quotients, and maps between them.

Relations are stored densely: ``rows[i]`` is a bit mask whose bit j says
``items[i] <= items[j]``.  Carriers at the scales handled here are at most
a few thousand items, and only once (the J preorder on S^1).
"""

from __future__ import annotations

from dataclasses import dataclass


class MalformedPreorderError(ValueError):
    """Input relation is not reflexive and transitive."""


class NotAMorphismError(ValueError):
    """A map claimed to respect preorders does not; carries a witness pair."""

    def __init__(self, witness):
        a, b = witness
        super().__init__(f"{a!r} <= {b!r} in the source but the images are unrelated")
        self.witness = witness


class Preorder:
    """An indexed carrier plus a reflexive-transitive boolean relation."""

    def __init__(self, items, rows):
        self.items = tuple(items)
        self.rows = list(rows)
        if len(self.rows) != len(self.items):
            raise ValueError("relation size does not match carrier size")
        self._index = {a: i for i, a in enumerate(self.items)}
        if len(self._index) != len(self.items):
            raise ValueError("carrier items must be distinct")
        self._poset = None

    @classmethod
    def from_leq(cls, items, leq):
        """Build the relation matrix by calling ``leq`` on item pairs."""
        items = tuple(items)
        rows = []
        for a in items:
            mask = 0
            for j, b in enumerate(items):
                if leq(a, b):
                    mask |= 1 << j
            rows.append(mask)
        return cls(items, rows)

    def __len__(self):
        return len(self.items)

    def index(self, a):
        return self._index[a]

    def leq_idx(self, i, j):
        return self.rows[i] >> j & 1 == 1

    def leq(self, a, b):
        return self.leq_idx(self._index[a], self._index[b])

    def check(self):
        """Raise MalformedPreorderError unless reflexive and transitive."""
        for i, row in enumerate(self.rows):
            if not row >> i & 1:
                raise MalformedPreorderError(f"relation not reflexive at {self.items[i]!r}")
        for i, row in enumerate(self.rows):
            reach = 0
            rest = row
            while rest:
                low = rest & -rest
                reach |= self.rows[low.bit_length() - 1]
                rest ^= low
            if reach & ~row:
                j = (reach & ~row)
                j = (j & -j).bit_length() - 1
                raise MalformedPreorderError(
                    f"relation not transitive: {self.items[i]!r} reaches {self.items[j]!r} in two steps only"
                )


def transitive_closure_rows(rows):
    """Reflexive-transitive closure of a relation given as bit-mask rows."""
    n = len(rows)
    closed = [row | 1 << i for i, row in enumerate(rows)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = closed[i]
            rest = acc
            while rest:
                low = rest & -rest
                acc |= closed[low.bit_length() - 1]
                rest ^= low
            if acc != closed[i]:
                closed[i] = acc
                changed = True
    return closed


def _tarjan_sccs(rows):
    """Strongly connected components of the relation digraph, iteratively."""
    n = len(rows)
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    comp_of = [-1] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            rest = rows[v] >> pi
            while rest:
                step = (rest & -rest).bit_length()
                w = pi + step - 1
                pi = w + 1
                rest = rows[v] >> pi
                if not visited[w]:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return ncomp, comp_of


@dataclass
class ClassPoset:
    """Quotient of a preorder: equivalence classes under mutual <=, ordered.

    Classes are numbered by their least member's position in the source
    carrier, and each class is named by that least member.
    """

    items: tuple
    classes: tuple
    rows: list
    covers: tuple
    class_of: dict

    def __len__(self):
        return len(self.classes)

    def leq_idx(self, i, j):
        return self.rows[i] >> j & 1 == 1

    def leq(self, a, b):
        return self.leq_idx(self.class_of[a], self.class_of[b])

    def rep(self, ci):
        return self.classes[ci][0]

    def strict_up_mask(self, ci):
        return self.rows[ci] & ~(1 << ci)

    def up_covers(self, ci):
        return tuple(j for lo, j in self.covers if lo == ci)

    def down_covers(self, ci):
        return tuple(lo for lo, j in self.covers if j == ci)

    def levels(self):
        """Longest-chain height of every class above the minimal ones."""
        order = sorted(range(len(self.classes)), key=lambda i: _down_count(self.rows, i))
        level = [0] * len(self.classes)
        for i in order:
            below = [level[lo] + 1 for lo, hi in self.covers if hi == i]
            level[i] = max(below, default=0)
        return level

    def maximal(self):
        return tuple(i for i in range(len(self.classes)) if self.strict_up_mask(i) == 0)

    def minimal(self):
        up = _transpose(self.rows)
        return tuple(i for i in range(len(self.classes)) if up[i] & ~(1 << i) == 0)


def _transpose(rows):
    n = len(rows)
    cols = [0] * n
    for i, row in enumerate(rows):
        rest = row
        while rest:
            low = rest & -rest
            cols[low.bit_length() - 1] |= 1 << i
            rest ^= low
    return cols


def _down_count(rows, i):
    return sum(1 for row in rows if row >> i & 1)


def quotient(p):
    """Collapse mutual comparabilities; the classes inherit a partial order."""
    p.check()
    ncomp, comp_of = _tarjan_sccs(p.rows)
    members = [[] for _ in range(ncomp)]
    for i, c in enumerate(comp_of):
        members[c].append(i)
    # renumber classes by least member in carrier order
    order = sorted(range(ncomp), key=lambda c: members[c][0])
    renumber = {old: new for new, old in enumerate(order)}
    classes = tuple(tuple(p.items[i] for i in members[old]) for old in order)
    class_idx = [renumber[c] for c in comp_of]
    rows = [0] * ncomp
    for ci, cls in enumerate(classes):
        rep = p.rows[p.index(cls[0])]
        mask = 0
        rest = rep
        while rest:
            low = rest & -rest
            mask |= 1 << class_idx[low.bit_length() - 1]
            rest ^= low
        rows[ci] = mask
    covers = _transitive_reduction(rows)
    class_of = {a: class_idx[i] for i, a in enumerate(p.items)}
    poset = ClassPoset(p.items, classes, rows, covers, class_of)
    p._poset = poset
    return poset


def quotient_cached(p):
    return p._poset if p._poset is not None else quotient(p)


def _transitive_reduction(rows):
    n = len(rows)
    strict = [row & ~(1 << i) for i, row in enumerate(rows)]
    strict_down = _transpose(strict)
    covers = []
    for i in range(n):
        rest = strict[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if strict[i] & strict_down[j] & ~(1 << j) == 0:
                covers.append((i, j))
    return tuple(sorted(covers))


def hasse(poset):
    """Cover relation of a ClassPoset: the transitive reduction of its order."""
    return poset.covers


def check_preorder_morphism(f, src, dst):
    """Does a <=1 b imply f(a) <=2 f(b)?  Returns (ok, first witness pair)."""
    fmap = _as_map(f, src.items)
    targets = [dst.index(fmap[a]) for a in src.items]
    for i, a in enumerate(src.items):
        rest = src.rows[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if not dst.leq_idx(targets[i], targets[j]):
                return False, (a, src.items[j])
    return True, None


def _as_map(f, items):
    if callable(f) and not isinstance(f, dict):
        return {a: f(a) for a in items}
    missing = [a for a in items if a not in f]
    if missing:
        raise ValueError(f"map not total on the source carrier, e.g. {missing[0]!r}")
    return f


@dataclass
class InducedMap:
    """The quotient-level map induced by a preorder-respecting item map."""

    source: ClassPoset
    target: ClassPoset
    class_map: tuple
    item_map: dict

    def apply(self, a):
        return self.class_map[self.source.class_of[a]]

    def is_surjective(self):
        return len(set(self.class_map)) == len(self.target)

    def fibers(self):
        """For each target class, the list of source classes mapping onto it."""
        out = [[] for _ in range(len(self.target))]
        for ci, cj in enumerate(self.class_map):
            out[cj].append(ci)
        return out

    def is_order_isomorphism(self):
        """Bijective and order-preserving in both directions."""
        if sorted(self.class_map) != list(range(len(self.target))):
            return False
        m = self.class_map
        for i in range(len(self.source)):
            for j in range(len(self.source)):
                if self.source.leq_idx(i, j) != self.target.leq_idx(m[i], m[j]):
                    return False
        return True


def induce(f, src, dst):
    """Quotient-level map of a preorder morphism, with its laws re-verified.

    Verifies, rather than trusts, that the map is well defined on classes,
    order-preserving, that the square item->class commutes, and that the
    preimage of every target class is a union of source classes.
    """
    fmap = _as_map(f, src.items)
    ok, witness = check_preorder_morphism(fmap, src, dst)
    if not ok:
        raise NotAMorphismError(witness)
    sp = quotient_cached(src)
    tp = quotient_cached(dst)
    class_map = []
    for cls in sp.classes:
        targets = {tp.class_of[fmap[a]] for a in cls}
        if len(targets) != 1:
            raise AssertionError(f"class of {cls[0]!r} maps into {len(targets)} target classes")
        class_map.append(targets.pop())
    class_map = tuple(class_map)
    for a in src.items:
        if class_map[sp.class_of[a]] != tp.class_of[fmap[a]]:
            raise AssertionError(f"quotient square does not commute at {a!r}")
    for ci in range(len(sp)):
        for cj in range(len(sp)):
            if sp.leq_idx(ci, cj) and not tp.leq_idx(class_map[ci], class_map[cj]):
                raise AssertionError("induced class map is not order-preserving")
    # preimage of a target class = union of the source classes mapped to it
    for cj in range(len(tp)):
        preimage = {a for a in src.items if tp.class_of[fmap[a]] == cj}
        from_classes = set()
        for ci, target in enumerate(class_map):
            if target == cj:
                from_classes.update(sp.classes[ci])
        if preimage != from_classes:
            raise AssertionError("target-class preimage is not a union of source classes")
    return InducedMap(sp, tp, class_map, fmap)


def poset_isomorphic(p, q):
    """Search for an order isomorphism p -> q; None if there is none.

    Backtracking over classes, pruned by purely order-theoretic signatures
    (chain level, cover up-degree, cover down-degree); class sizes are
    deliberately ignored since corresponding classes need not have equal
    member counts.
    """
    np_, nq = len(p), len(q)
    if np_ != nq:
        return None
    psig = _signatures(p)
    qsig = _signatures(q)
    if sorted(psig) != sorted(qsig):
        return None
    candidates = [
        tuple(j for j in range(nq) if qsig[j] == psig[i]) for i in range(np_)
    ]
    order = sorted(range(np_), key=lambda i: (len(candidates[i]), i))
    assignment = [-1] * np_
    used = [False] * nq

    def backtrack(k):
        if k == np_:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            good = True
            for prev in order[:k]:
                pj = assignment[prev]
                if (
                    p.leq_idx(i, prev) != q.leq_idx(j, pj)
                    or p.leq_idx(prev, i) != q.leq_idx(pj, j)
                ):
                    good = False
                    break
            if good:
                assignment[i] = j
                used[j] = True
                if backtrack(k + 1):
                    return True
                assignment[i] = -1
                used[j] = False
        return False

    if not backtrack(0):
        return None
    return {i: assignment[i] for i in range(np_)}


def _signatures(poset):
    levels = poset.levels()
    up = [0] * len(poset)
    down = [0] * len(poset)
    for lo, hi in poset.covers:
        up[lo] += 1
        down[hi] += 1
    return [(levels[i], up[i], down[i]) for i in range(len(poset))]


def lattice_violation(poset):
    """First pair of classes lacking a unique join or meet, else None.

    Exhaustive: for each pair the common upper (lower) bounds are collected
    and the pair fails unless exactly one of them is minimal (maximal).
    """
    n = len(poset)
    up = poset.rows
    down = _transpose(poset.rows)
    for i in range(n):
        for j in range(i + 1, n):
            common_up = up[i] & up[j]
            if _extreme_count(common_up, down) != 1:
                return ("join", i, j)
            common_down = down[i] & down[j]
            if _extreme_count(common_down, up) != 1:
                return ("meet", i, j)
    return None


def _extreme_count(candidates, toward):
    """Number of members of ``candidates`` with no other candidate strictly toward them."""
    count = 0
    rest = candidates
    while rest:
        low = rest & -rest
        k = low.bit_length() - 1
        rest ^= low
        if candidates & toward[k] & ~(1 << k) == 0:
            count += 1
    return count
