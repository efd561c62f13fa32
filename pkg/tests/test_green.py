import pytest

from greenskel import (
    d_classes,
    eggboxes,
    green_poset,
    green_preorder,
    ideal_masks,
)
from greenskel.catalog import (
    chain_collapse,
    collapse_motif,
    full_tmonoid,
    nonlattice,
    right_zero,
    trivial,
)

import naive


def named(monoid, one_based):
    return monoid.elements[
        [t.one_based for t in monoid.elements].index(tuple(one_based))
    ]


class TestIdeals:
    def test_chain_collapse_two_sided_ideals(self):
        m = chain_collapse()
        _, _, both = ideal_masks(m)
        t1, t2, t3 = (named(m, g) for g in ([1, 3, 3], [3, 1, 3], [3, 3, 3]))

        def members(mask):
            return {m.elements[i] for i in range(len(m)) if mask >> i & 1}

        assert members(both[m.index(t1)]) == {t1, t2, t3}
        assert members(both[m.index(t2)]) == {t2, t3}
        assert members(both[m.index(t3)]) == {t3}
        assert members(both[m.index(m.identity())]) == set(m.elements)

    def test_chain_collapse_left_ideal_chain(self):
        m = chain_collapse()
        _, left, _ = ideal_masks(m)
        t1, t2, t3 = (named(m, g) for g in ([1, 3, 3], [3, 1, 3], [3, 3, 3]))
        chain = [left[m.index(t)] for t in (t3, t2, t1)] + [left[m.index(m.identity())]]
        for small, big in zip(chain, chain[1:]):
            assert small & ~big == 0 and small != big

    @pytest.mark.parametrize("factory", [chain_collapse, collapse_motif, right_zero, trivial])
    def test_ideals_match_naive_products(self, factory):
        m = factory().adjoin_identity()
        monoid = [t.images for t in m]
        right, left, both = ideal_masks(m)
        for i, s in enumerate(m.elements):
            for name, mask, oracle in (
                ("right", right[i], naive.right_ideal(s.images, monoid)),
                ("left", left[i], naive.left_ideal(s.images, monoid)),
                ("both", both[i], naive.two_sided_ideal(s.images, monoid)),
            ):
                got = {m.elements[j].images for j in range(len(m)) if mask >> j & 1}
                assert got == oracle, name


class TestPreorders:
    @pytest.mark.parametrize("kind", ["R", "L", "J", "H"])
    def test_laws_on_fixtures(self, kind, fixtures):
        for ts in fixtures.values():
            green_preorder(ts, kind).check()

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            green_preorder(trivial(1), "Q")

    def test_h_is_meet_of_l_and_r(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            h = green_preorder(m, "H").rows
            l = green_preorder(m, "L").rows
            r = green_preorder(m, "R").rows
            assert h == [a & b for a, b in zip(l, r)]

    def test_l_and_r_imply_j(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            j = green_preorder(m, "J").rows
            for kind in ("L", "R"):
                rows = green_preorder(m, kind).rows
                for fine, coarse in zip(rows, j):
                    assert fine & ~coarse == 0

    @pytest.mark.parametrize("kind", ["R", "L", "J", "H"])
    @pytest.mark.parametrize(
        "factory", [chain_collapse, collapse_motif, right_zero, trivial, full_tmonoid]
    )
    def test_classes_match_naive_oracle(self, kind, factory):
        m = factory().adjoin_identity()
        monoid = [t.images for t in m]
        expected = naive.classes_by_mutual(
            monoid, lambda a, b: naive.green_leq(a, b, monoid, kind)
        )
        got = [tuple(t.images for t in cls) for cls in green_poset(m, kind).classes]
        assert sorted(map(sorted, got)) == sorted(map(sorted, expected))

    def test_preorder_matches_naive_oracle(self):
        m = collapse_motif()
        monoid = [t.images for t in m]
        p = green_preorder(m, "J")
        for a in m.elements:
            for b in m.elements:
                assert p.leq(a, b) == naive.green_leq(a.images, b.images, monoid, "J")


class TestClasses:
    def test_chain_collapse_j_chain(self):
        m = chain_collapse()
        jq = green_poset(m, "J")
        assert len(jq) == 4
        assert all(len(cls) == 1 for cls in jq.classes)
        order = [jq.classes[i][0].one_based for i in range(4)]
        assert order == [(1, 2, 3), (1, 3, 3), (3, 1, 3), (3, 3, 3)]
        # linear: t3 < t2 < t1 < 1
        assert jq.covers == ((1, 0), (2, 1), (3, 2))

    def test_collapse_motif_j_shape(self):
        m = collapse_motif()
        jq = green_poset(m, "J")
        assert len(jq) == 5
        one = jq.class_of[m.identity()]
        a = jq.class_of[named(m, [1, 1, 3])]
        b = jq.class_of[named(m, [3, 2, 3])]
        r = jq.class_of[named(m, [3, 1, 3])]
        z = jq.class_of[named(m, [3, 3, 3])]
        assert not jq.leq_idx(a, b) and not jq.leq_idx(b, a)
        for lower, upper in [(a, one), (b, one), (r, a), (r, b), (z, r)]:
            assert jq.leq_idx(lower, upper) and not jq.leq_idx(upper, lower)

    def test_nonlattice_counts(self):
        m = nonlattice()
        assert len(green_poset(m, "J")) == 13
        assert len(d_classes(m)) == 13

    def test_d_equals_j_on_fixtures(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            d = sorted(tuple(sorted(t.images for t in cls)) for cls in d_classes(m))
            j = sorted(
                tuple(sorted(t.images for t in cls))
                for cls in green_poset(m, "J").classes
            )
            assert d == j

    def test_full_t3_class_counts(self):
        m = full_tmonoid(3)
        assert len(green_poset(m, "J")) == 3
        assert len(green_poset(m, "L")) == 7
        assert len(green_poset(m, "R")) == 5
        assert len(green_poset(m, "H")) == 13


class TestEggBoxes:
    def test_cells_partition_each_d_class(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            seen = []
            for box in eggboxes(m):
                cell_members = [t for row in box.cells for cell in row for t in cell]
                assert sorted(t.images for t in cell_members) == sorted(
                    t.images for t in box.members
                )
                seen.extend(box.members)
            assert sorted(t.images for t in seen) == sorted(t.images for t in m)

    def test_idempotent_flags(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            for box in eggboxes(m):
                for row, flag_row in zip(box.cells, box.idempotent):
                    for cell, flags in zip(row, flag_row):
                        assert flags == tuple(t.is_idempotent() for t in cell)

    def test_column_images_consistent(self, fixtures):
        for ts in fixtures.values():
            m = ts.adjoin_identity()
            for box in eggboxes(m):
                for c, img in enumerate(box.col_images):
                    for row in box.cells:
                        for t in row[c]:
                            assert t.image() == img

    def test_right_zero_single_box(self):
        ts = right_zero(3)
        boxes = eggboxes(ts)
        # identity box (from S^1) plus the constants box
        shapes = sorted(box.shape for box in boxes)
        assert shapes == [(1, 1), (1, 3)]
        constants = next(box for box in boxes if box.shape == (1, 3))
        assert all(all(flags) for row in constants.idempotent for flags in row)

    def test_full_t3_box_shapes(self):
        m = full_tmonoid(3)
        shapes = {box.shape for box in eggboxes(m)}
        # ranks 3, 2, 1: units, 3 kernels x 3 images, 1 kernel x 3 images
        assert shapes == {(1, 1), (3, 3), (1, 3)}
