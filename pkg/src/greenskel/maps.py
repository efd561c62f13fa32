"""The image map and the order morphisms it induces between class posets.

im sends an element of S^1 to its image subset.  It respects <=_L into
inclusion and <=_J into subduction, so it drops to order-preserving
surjections im_bar : S^1/L -> (I(X), inclusion) and
im_bar_S : S^1/J -> skeleton.  Everything here is verified exhaustively,
not trusted: a negative verdict signals an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .green import green_preorder, green_poset
from .order import check_preorder_morphism, induce, quotient_cached
from .skeleton import (
    image_set,
    inclusion_poset,
    inclusion_preorder,
    skeleton_poset,
    subduction_preorder,
)


def im_map(ts):
    """Element -> image subset, for every element of S^1."""
    m = ts.adjoin_identity()
    if "im_map" not in m._cache:
        m._cache["im_map"] = {t: t.image() for t in m.elements}
    return m._cache["im_map"]


def check_im_respects_orders(ts):
    """Verify a <=_L b implies im(a) <= im(b) and a <=_J b implies subduction.

    Returns (ok, witnesses) where witnesses maps the failed implication name
    to the first offending pair.  Also confirms im lands onto I(X).
    """
    m = ts.adjoin_identity()
    f = im_map(m)
    witnesses = {}
    ok_l, w = check_preorder_morphism(f, green_preorder(m, "L"), inclusion_preorder(m))
    if not ok_l:
        witnesses["L_to_inclusion"] = w
    ok_j, w = check_preorder_morphism(f, green_preorder(m, "J"), subduction_preorder(m))
    if not ok_j:
        witnesses["J_to_subduction"] = w
    onto = set(f.values()) == set(image_set(m).subsets)
    if not onto:
        witnesses["im_onto_images"] = None
    return ok_l and ok_j and onto, witnesses


def im_bar(ts):
    """Induced surjection S^1/L -> (I(X), inclusion), laws re-verified."""
    m = ts.adjoin_identity()
    if "im_bar" not in m._cache:
        out = induce(im_map(m), green_preorder(m, "L"), inclusion_preorder(m))
        if not out.is_surjective():
            raise AssertionError("induced map on L-classes misses an image set")
        m._cache["im_bar"] = out
    return m._cache["im_bar"]


def im_bar_S(ts):
    """Induced surjection S^1/J -> skeleton, laws re-verified."""
    m = ts.adjoin_identity()
    if "im_bar_S" not in m._cache:
        out = induce(im_map(m), green_preorder(m, "J"), subduction_preorder(m))
        if not out.is_surjective():
            raise AssertionError("induced map on J-classes misses a subduction class")
        m._cache["im_bar_S"] = out
    return m._cache["im_bar_S"]


@dataclass
class DiagramReport:
    """Verdict sheet for the square of order surjections built from im.

    ``sizes`` records the carrier sizes of the six nodes; ``arrows`` maps
    each arrow name to its (surjective, order_preserving) verdicts;
    ``commutes`` covers the item triangle, the class square, and the two
    composite paths from S^1 to the skeleton; ``preimage_unions`` states
    that arrow fibers are unions of source classes.
    """

    sizes: dict
    arrows: dict
    commutes: dict
    preimage_unions: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self):
        for verdicts in self.arrows.values():
            if not all(verdicts.values()):
                return False
        return all(self.commutes.values()) and all(self.preimage_unions.values())

    def to_dict(self):
        return {
            "sizes": dict(self.sizes),
            "arrows": {k: dict(v) for k, v in self.arrows.items()},
            "commutes": dict(self.commutes),
            "preimage_unions": dict(self.preimage_unions),
            "passed": self.passed,
        }

    def to_text(self):
        lines = []
        for name, size in self.sizes.items():
            lines.append(f"node {name}: {size}")
        for name, verdicts in self.arrows.items():
            flags = ", ".join(f"{k}={'yes' if v else 'NO'}" for k, v in verdicts.items())
            lines.append(f"arrow {name}: {flags}")
        for name, v in self.commutes.items():
            lines.append(f"commutes {name}: {'yes' if v else 'NO'}")
        for name, v in self.preimage_unions.items():
            lines.append(f"preimage union {name}: {'yes' if v else 'NO'}")
        lines.append(f"diagram: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _quotient_arrow(pre, poset):
    """Verdicts for the canonical surjection carrier -> classes."""
    surjective = len({poset.class_of[a] for a in pre.items}) == len(poset)
    order_preserving = True
    for i, a in enumerate(pre.items):
        rest = pre.rows[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if not poset.leq_idx(poset.class_of[a], poset.class_of[pre.items[j]]):
                order_preserving = False
                break
        if not order_preserving:
            break
    return {"surjective": surjective, "order_preserving": order_preserving}


def _class_arrow(src_poset, dst_poset, class_map):
    surjective = len(set(class_map)) == len(dst_poset)
    order_preserving = all(
        dst_poset.leq_idx(class_map[i], class_map[j])
        for i in range(len(src_poset))
        for j in range(len(src_poset))
        if src_poset.leq_idx(i, j)
    )
    return {"surjective": surjective, "order_preserving": order_preserving}


def _fibers_are_class_unions(item_map, src_poset, dst_class_of):
    """Is the preimage of every target class a union of source classes?"""
    for cls in src_poset.classes:
        if len({dst_class_of[item_map[a]] for a in cls}) != 1:
            return False
    return True


def verify_diagram(ts):
    """Build every arrow of the im square and check all of its laws.

    Arrows: the two quotient collapses out of S^1, im itself, the two
    class-level collapses (L-class to J-class, image set to subduction
    class), and the induced maps im_bar and im_bar_S.
    """
    m = ts.adjoin_identity()
    f = im_map(m)
    lp = green_preorder(m, "L")
    jp = green_preorder(m, "J")
    lq = green_poset(m, "L")
    jq = green_poset(m, "J")
    incl = inclusion_preorder(m)
    subd = subduction_preorder(m)
    iq = inclusion_poset(m)
    sq = skeleton_poset(m)

    sizes = {
        "S1": len(m.elements),
        "S1/L": len(lq),
        "S1/J": len(jq),
        "I(X)": len(incl),
        "skeleton": len(sq),
    }

    ok_im_l, w_l = check_preorder_morphism(f, lp, incl)
    ok_im_j, w_j = check_preorder_morphism(f, jp, subd)
    ibar = im_bar(m)
    ibar_s = im_bar_S(m)

    # vertical collapses: L-class -> J-class and image set -> subduction class
    l_to_j = tuple(jq.class_of[cls[0]] for cls in lq.classes)
    i_to_s = tuple(sq.class_of[iq.classes[c][0]] for c in range(len(iq)))

    arrows = {
        "S1->S1/L": _quotient_arrow(lp, lq),
        "S1->S1/J": _quotient_arrow(jp, jq),
        "im": {
            "surjective": set(f.values()) == set(incl.items),
            "order_preserving": ok_im_l and ok_im_j,
        },
        "S1/L->S1/J": _class_arrow(lq, jq, l_to_j),
        "I(X)->skeleton": _class_arrow(iq, sq, i_to_s),
        "im_bar": _class_arrow(lq, iq, ibar.class_map),
        "im_bar_S": _class_arrow(jq, sq, ibar_s.class_map),
    }

    commutes = {
        # item triangle: im_bar after the L-collapse equals im
        "im_bar o /L = im": all(
            iq.classes[ibar.class_map[lq.class_of[t]]][0] == f[t] for t in m.elements
        ),
        # class square: both routes S1/L -> skeleton agree
        "im_bar_S o collapse = collapse o im_bar": all(
            ibar_s.class_map[l_to_j[c]] == i_to_s[ibar.class_map[c]]
            for c in range(len(lq))
        ),
        # composite item paths S1 -> skeleton agree elementwise
        "paths S1->skeleton": all(
            ibar_s.class_map[jq.class_of[t]] == sq.class_of[f[t]] for t in m.elements
        ),
    }

    preimage_unions = {
        "im_bar fibers are unions of L-classes": _fibers_are_class_unions(
            f, lq, iq.class_of
        ),
        "im_bar_S fibers are unions of J-classes": _fibers_are_class_unions(
            f, jq, sq.class_of
        ),
    }

    witnesses = {}
    if w_l is not None:
        witnesses["L_to_inclusion"] = w_l
    if w_j is not None:
        witnesses["J_to_subduction"] = w_j
    return DiagramReport(sizes, arrows, commutes, preimage_unions, witnesses)
