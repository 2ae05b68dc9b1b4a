import itertools
import unittest

import networkx as nx

import golden_checks as fx
from dyckq_engine import InvalidInput
from labels import pre_order_word, word_string
from paths_trees import enumerate_paths, parse_path, parse_tree
from rational import (
    StirlingPerm,
    VHHTuple,
    all_mu,
    block_eta_covers,
    blocks_of,
    collapse,
    column_counts,
    decompose_1k,
    decompose_ab,
    decompose_mu,
    dual_family,
    dual_tiling,
    enumerate_rational,
    eta_blocks,
    eta_cover_mismatches,
    eta_covers,
    eta_of_label,
    eta_poset,
    expand_D,
    expand_U,
    expand_UD,
    family,
    family_of_tau_1k,
    floor_placements,
    is_rational_path,
    is_trivial_family,
    is_ud_type,
    label_of_eta,
    label_of_sets_1k,
    mu_from_sets,
    mu_from_stirling,
    mu_of_top,
    phi,
    sets_from_mu,
    sets_from_stirling,
    sets_from_xi,
    stirling_from_sets,
    subdivide_tree,
    tau_1k_poset,
    tile_weight,
    tiling_of_vhh,
    top_of_mu,
    top_of_xi,
    tree_1k,
    tree_k1,
    trivial_rational_tilings,
    up_chains,
    upper_rational_covers,
    upper_tau_1k_covers,
    vhh_of_tiling,
    vhh_poset,
    vhh_window,
    weight_sum_check,
    word_from_x,
    word_from_y,
    wt_ab,
    x_positions,
    xi_from_sets,
    xi_of_top,
    y_positions,
    RationalTiling,
)
from tilings import DyckTile

PEAKS = parse_path("UDUDUD")


def _with_floor_tiles(plain, placements):
    """Every tiling on the region of ``plain`` built from disjoint floor tiles."""

    for size in range(len(placements) + 1):
        for chosen in itertools.combinations(placements, size):
            try:
                yield RationalTiling(plain.a, plain.b, plain.bottom, plain.top, chosen)
            except InvalidInput:
                continue


class RationalPathTest(unittest.TestCase):
    def test_inflations(self):
        self.assertEqual(expand_D(parse_path("UDUUDD"), 2).steps, "UDDUUDDDD")
        self.assertEqual(expand_U(PEAKS, 2).steps, "UUDUUDUUD")
        self.assertEqual(expand_UD(PEAKS, 2, 3).steps, "UUDDDUUDDDUUDDD")

    def test_membership(self):
        self.assertTrue(is_rational_path("UDUDD", 2, 3))
        self.assertFalse(is_ud_type("UDUDD", 2, 3))
        self.assertFalse(is_rational_path("DU", 1, 1))
        self.assertEqual(collapse("UUDDDUUDDD", 2, 3), parse_path("UDUD"))
        with self.assertRaises(InvalidInput):
            collapse("UDUDD", 2, 3)

    def test_counts(self):
        paths, members = enumerate_rational(3, 1, 2)
        self.assertEqual(len(paths), 12)
        self.assertEqual(len(members), 5)
        self.assertEqual(len(enumerate_rational(3, 1, 1)[0]), 5)

    def test_positions(self):
        self.assertEqual(x_positions("UDUUDD"), [0, 1, 1])
        self.assertEqual(y_positions("UDUUDD"), [1, 3, 3])
        self.assertEqual(word_from_x([0, 1, 1], 3), "UDUUDD")
        self.assertEqual(word_from_y([1, 3, 3], 3), "UDUUDD")
        with self.assertRaises(InvalidInput):
            word_from_x([1, 0], 2)


class SetFamilyTest(unittest.TestCase):
    def test_mu_and_sets(self):
        fam = sets_from_mu((1, 1, 0), 3, 2)
        self.assertEqual(fam, family((2, 3), (4, 5), (1, 6)))
        self.assertEqual(mu_from_sets(fam), (1, 1, 0))
        self.assertEqual(fam.render(), "{2,3},{4,5},{1,6}")

    def test_every_mu_round_trips(self):
        for mu in all_mu(3, 2):
            self.assertEqual(mu_from_sets(sets_from_mu(mu, 3, 2)), mu)
        self.assertEqual(len(list(all_mu(2, 2))), 3)

    def test_family_validation(self):
        with self.assertRaises(InvalidInput):
            family((1, 2), (2, 3))
        with self.assertRaises(InvalidInput):
            family((1, 2), (3,))
        with self.assertRaises(InvalidInput):
            mu_from_sets(family((1, 3), (2, 4)))
        with self.assertRaises(InvalidInput):
            sets_from_mu((5, 0, 0), 3, 2)

    def test_xi_and_sets(self):
        fam = sets_from_xi((3, 1, 0), 3, 2)
        self.assertEqual(fam, family((3, 2), (5, 4), (6, 1)))
        self.assertEqual(xi_from_sets(fam), (3, 1, 0))
        self.assertEqual(fam.render(descending=True), "{3,2},{5,4},{6,1}")

    def test_stirling(self):
        fam = family((2, 3), (4, 5), (1, 6))
        perm = stirling_from_sets(fam)
        self.assertEqual(perm.entries, (1, 3, 3, 2, 2, 1))
        self.assertEqual(sets_from_stirling(perm), fam)
        self.assertEqual(mu_from_stirling(perm), (1, 1, 0))
        self.assertEqual(stirling_from_sets(sets_from_mu((0, 0, 0), 3, 2)).entries, (3, 3, 2, 2, 1, 1))
        with self.assertRaises(InvalidInput):
            StirlingPerm((1, 2, 1, 2), 2)


class TreeShapeTest(unittest.TestCase):
    def test_subdivision(self):
        self.assertEqual(str(subdivide_tree(parse_tree("UUDD"), 2)), "UUUUDDDD")
        self.assertEqual(str(subdivide_tree(parse_tree("UDUD"), 3)), "UUUDDDUUUDDD")
        self.assertEqual(tree_k1(PEAKS, 2), tree_1k(PEAKS, 2))

    def test_chains_and_labels(self):
        self.assertEqual(up_chains(PEAKS, 2), [[1, 2], [3, 4], [5, 6]])
        label = label_of_sets_1k(family((2, 3), (4, 5), (1, 6)), PEAKS, 2)
        self.assertEqual(label.labels, (3, 2, 5, 4, 6, 1))

    def test_phi_is_an_involution(self):
        label = label_of_sets_1k(family((2, 3), (4, 5), (1, 6)), PEAKS, 2)
        flipped = phi(label)
        self.assertEqual(flipped.direction, "increasing")
        self.assertEqual(flipped.labels, (2, 3, 4, 5, 1, 6))
        self.assertEqual(phi(flipped), label)


class OneKLatticeTest(unittest.TestCase):
    def test_seed_and_blocks(self):
        seed = fx.one_k_seed()
        self.assertEqual(blocks_of(seed, PEAKS, 2), [(4, 5), (2, 3), (1, 6)])
        self.assertEqual(family_of_tau_1k(seed, PEAKS, 2), family((2, 3), (4, 5), (1, 6)))

    def test_seed_covers(self):
        uppers = upper_tau_1k_covers(fx.one_k_seed(), PEAKS, 2)
        self.assertEqual([t.entries for t in uppers], [(0, 1, 0, 6, 7, 1), (0, 2, 4, 5, 3, 1)])

    def test_lattice(self):
        graph = tau_1k_poset(fx.one_k_seed(), PEAKS, 2)
        self.assertEqual(graph.number_of_nodes(), 8)
        self.assertEqual(graph.number_of_edges(), 10)
        self.assertEqual([t.entries for t in graph if graph.out_degree(t) == 0], [(0, 1, 0, 1, 0, 1)])
        odd = [t.entries for t in graph if not is_trivial_family(family_of_tau_1k(t, PEAKS, 2), PEAKS, 2)]
        self.assertEqual(odd, [(0, 1, 0, 6, 7, 1)])


class KOneLatticeTest(unittest.TestCase):
    def test_seed(self):
        self.assertEqual(fx.k_one_seed(), (0, 0, 1, 4, 5, 9))

    def test_elements(self):
        graph = eta_poset(fx.k_one_seed(), PEAKS, 2)
        self.assertEqual(
            set(graph.nodes),
            {
                (0, 0, 1, 4, 5, 9), (0, 0, 1, 5, 4, 5), (0, 0, 0, 1, 5, 9), (0, 1, 0, 1, 4, 5),
                (0, 0, 1, 0, 1, 9), (0, 1, 0, 0, 1, 5), (0, 0, 1, 5, 0, 1), (0, 1, 0, 1, 0, 1),
            },
        )
        self.assertTrue(nx.is_isomorphic(graph, tau_1k_poset(fx.one_k_seed(), PEAKS, 2)))

    def test_block_rule_covers(self):
        seed = fx.k_one_seed()
        self.assertEqual(block_eta_covers(seed, PEAKS, 2), [(0, 0, 0, 1, 5, 9), (0, 0, 1, 5, 4, 5)])
        self.assertEqual(block_eta_covers((0, 0, 0, 1, 5, 9), PEAKS, 2), [(0, 0, 1, 0, 1, 9)])
        self.assertEqual(set(eta_blocks((0, 0, 0, 1, 5, 9), PEAKS, 2)), {(3, 4), (2, 5), (1, 6)})

    def test_block_move_outside_the_decodable_range_is_dropped(self):
        with self.assertLogs("dyckq", level="WARNING") as logs:
            covers = block_eta_covers((0, 0, 1, 5, 4, 5), PEAKS, 2)
        self.assertEqual(covers, [(0, 1, 0, 1, 4, 5)])
        self.assertTrue(any("decodable range" in line for line in logs.output))

    def test_cover_test_with_given_blocks(self):
        seed = fx.k_one_seed()
        self.assertTrue(eta_covers(seed, (0, 0, 0, 1, 5, 9), PEAKS, 2))
        self.assertTrue(eta_covers(seed, (0, 0, 0, 1, 5, 9), PEAKS, 2, blocks=[(2, 3)]))
        self.assertFalse(eta_covers(seed, (0, 0, 0, 1, 5, 9), PEAKS, 2, blocks=[(1, 6)]))
        with self.assertRaises(InvalidInput):
            block_eta_covers(seed, PEAKS, 2, blocks=[(1, 2, 3)])

    def test_rules_disagree_on_one_drawn_edge(self):
        seed = fx.k_one_seed()
        transported = eta_poset(seed, PEAKS, 2)
        block = eta_poset(seed, PEAKS, 2, rule="block")
        self.assertTrue(transported.has_edge((0, 0, 0, 1, 5, 9), (0, 1, 0, 1, 4, 5)))
        self.assertFalse(block.has_edge((0, 0, 0, 1, 5, 9), (0, 1, 0, 1, 4, 5)))
        found = {m.eta: m for m in eta_cover_mismatches(seed, PEAKS, 2)}
        self.assertNotIn(seed, found)
        self.assertEqual(found[(0, 0, 0, 1, 5, 9)].transported_only, [(0, 1, 0, 1, 4, 5)])
        self.assertEqual(found[(0, 0, 0, 1, 5, 9)].block_only, [])
        with self.assertRaises(InvalidInput):
            eta_poset(seed, PEAKS, 2, rule="drawn")

    def test_decoding(self):
        tree = tree_k1(PEAKS, 2)
        label = label_of_eta((0, 0, 1, 0, 1, 9), tree)
        self.assertEqual(label.labels, (4, 5, 2, 3, 1, 6))
        self.assertEqual(eta_of_label(label), (0, 0, 1, 0, 1, 9))
        with self.assertRaises(InvalidInput):
            label_of_eta((0, 0, 1), tree)

    def test_transpose(self):
        fam = family((2, 3), (4, 5), (1, 6))
        dual = dual_family(fam, PEAKS, 2)
        self.assertEqual(dual, fam)
        self.assertEqual(xi_from_sets(dual), (3, 1, 0))


class TrivialTopTest(unittest.TestCase):
    def test_mu_top(self):
        top = top_of_mu(PEAKS, (1, 1, 0), 2)
        self.assertEqual(top, "UDUUDDDDD")
        self.assertEqual(mu_of_top(PEAKS, top, 2), (1, 1, 0))

    def test_xi_top(self):
        top = top_of_xi(PEAKS, (3, 1, 0), 2)
        self.assertEqual(top, "UUUUUDDUD")
        self.assertEqual(xi_of_top(PEAKS, top, 2), (3, 1, 0))


class RationalTilingTest(unittest.TestCase):
    def test_seed(self):
        seed = fx.two_three_seed()
        self.assertEqual(wt_ab(seed), 6)
        self.assertTrue(seed.is_trivial)
        self.assertEqual(column_counts(seed.bottom, seed.top), (0, 0, 3, 1, 1, 1, 0, 0, 0))
        self.assertEqual(seed.base, PEAKS)

    def test_floor_tile(self):
        tiling = fx.two_three_single_tile()
        self.assertEqual(tiling.tiles, (DyckTile((5, 0), "UUDDD"),))
        self.assertEqual(tile_weight(tiling.tiles[0], 2, 3), 5)
        self.assertEqual(wt_ab(tiling), 5)
        self.assertEqual(upper_rational_covers(tiling), [])

    def test_region_check(self):
        seed = fx.two_three_seed()
        with self.assertRaises(InvalidInput):
            RationalTiling(2, 3, seed.bottom, seed.top, (DyckTile((0, 0), "UUDDD"),))
        with self.assertRaises(InvalidInput):
            RationalTiling(2, 3, seed.top, seed.bottom)

    def test_trivial_tilings(self):
        seed = fx.two_three_seed()
        tilings = trivial_rational_tilings(seed.bottom, seed.top, 2, 3)
        self.assertIn(seed, tilings)
        self.assertIn(RationalTiling(2, 3, seed.bottom, seed.bottom), tilings)
        self.assertTrue(all(t.is_trivial for t in tilings))

    def test_dual_tiling(self):
        tiling = RationalTiling(1, 2, expand_D(PEAKS, 2).steps, top_of_mu(PEAKS, (1, 1, 0), 2))
        dual = dual_tiling(tiling)
        self.assertEqual((dual.a, dual.b), (2, 1))
        self.assertEqual(dual.bottom, expand_U(PEAKS, 2).steps)
        self.assertEqual(dual.top, "UUUUUDDUD")
        self.assertEqual(dual_tiling(dual), tiling)


class VerticalHistoryTest(unittest.TestCase):
    def test_compressed_forms(self):
        seed = fx.two_three_seed()
        window = vhh_window(vhh_of_tiling(seed))
        self.assertEqual(window, (2, 3))
        self.assertEqual(vhh_of_tiling(seed).compressed(*window), "2111/1000")
        self.assertEqual(vhh_of_tiling(fx.two_three_single_tile()).compressed(*window), "2110/1000")

    def test_poset(self):
        seed = fx.two_three_seed()
        graph = vhh_poset(seed)
        left, right = vhh_window(vhh_of_tiling(seed))
        self.assertEqual({vhh_of_tiling(t).compressed(left, right) for t in graph}, fx.VHH_HISTORIES)
        self.assertEqual(sorted({wt_ab(seed) - wt_ab(t) for t in graph}), [0, 1, 2, 3, 4, 5, 6])
        for tiling in graph:
            self.assertEqual(tiling_of_vhh(vhh_of_tiling(tiling), seed.bottom, 2, 3), tiling)

    def test_interleaving(self):
        vhh = VHHTuple(((0, 0), (2, 0)))
        self.assertFalse(vhh.interleaving_ok())
        with self.assertRaises(InvalidInput):
            tiling_of_vhh(vhh, "UUDDD", 2, 3)


class DecompositionTest(unittest.TestCase):
    def test_one_three(self):
        parts = decompose_mu(PEAKS, (2, 1, 0), 3)
        self.assertEqual(parts.counts, [(0, 0, 1), (0, 1, 1), (0, 1, 2)])
        words = [word_string(pre_order_word(label, from_right=True)) for label in parts.labels]
        self.assertEqual(words, ["213", "231", "321"])
        self.assertTrue(parts.admissible())

    def test_one_k_preconditions(self):
        with self.assertRaises(InvalidInput):
            decompose_1k(fx.two_three_seed())
        tiling = RationalTiling(1, 2, "UDDUDDUDD", "UDDUDDUDD")
        self.assertTrue(tiling.is_trivial)
        self.assertEqual(decompose_1k(tiling).counts, [(0, 0, 0), (0, 0, 0)])

    def test_one_k_with_a_floor_tile(self):
        (tile,) = floor_placements("UDDUDDUDD", 1, 2)
        self.assertEqual(tile, DyckTile((3, 0), "UDD"))
        tiling = RationalTiling(1, 2, "UDDUDDUDD", "UUUDDDDDD", (tile,))
        self.assertEqual(wt_ab(tiling), len(tiling.boxes) - 1)
        parts = decompose_1k(tiling)
        plain = decompose_1k(RationalTiling(1, 2, tiling.bottom, tiling.top))
        self.assertEqual(parts.counts, plain.counts)
        self.assertEqual(parts.tilings[:-1], plain.tilings[:-1])
        self.assertEqual(parts.tilings[-1].tiles, (DyckTile((2, 1), "UD"),))
        self.assertEqual(parts.tilings[-1].boxes, plain.tilings[-1].boxes)
        self.assertTrue(parts.admissible())

    def test_one_k_admissible_for_every_small_tiling(self):
        for k in (2, 3):
            for n in range(1, 4):
                for base in enumerate_paths(n):
                    bottom = expand_D(base, k).steps
                    placements = floor_placements(bottom, 1, k)
                    ceiling = "U" * n + "D" * (k * n)
                    for plain in trivial_rational_tilings(bottom, ceiling, 1, k):
                        for tiling in _with_floor_tiles(plain, placements):
                            parts = decompose_1k(tiling)
                            self.assertEqual(len(parts.tilings), k)
                            self.assertTrue(parts.admissible(), str(tiling))

    def test_two_three_grid(self):
        tiling = fx.two_three_single_tile()
        grid = decompose_ab(tiling)
        self.assertEqual(grid.weights(), [[0, 0, 1], [1, 1, 2]])
        self.assertTrue(grid.admissible())
        self.assertTrue(weight_sum_check(tiling))

    def test_admissible_for_small_trivial_tilings(self):
        for a, b in ((2, 2), (2, 3)):
            for n in range(1, 3):
                for base in enumerate_paths(n):
                    bottom = expand_UD(base, a, b).steps
                    ceiling = "U" * (a * n) + "D" * (b * n)
                    for tiling in trivial_rational_tilings(bottom, ceiling, a, b):
                        self.assertTrue(decompose_ab(tiling).admissible(), str(tiling))
                        self.assertTrue(weight_sum_check(tiling), str(tiling))


if __name__ == "__main__":
    unittest.main()
