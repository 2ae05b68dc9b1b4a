import unittest

import networkx as nx

import golden_checks as fx
from dyckq_engine import InvalidInput, PreconditionFailed, is_lattice
from labels import (
    LabeledTree,
    all_labels,
    build_poset,
    collapse_below,
    complement,
    covers,
    from_post_order_word,
    gf_Z,
    gf_Z_recursive,
    inversion,
    is_312_avoiding,
    iter_decreasing,
    parse_word,
    post_order_word,
    pre_order_word,
    seed_label,
    std_inversion,
    upper_covers,
    word_string,
)
from paths_trees import iter_trees, parse_tree
from qpoly import QPoly, q_int


class LabeledTreeTest(unittest.TestCase):
    def test_monotonicity_is_enforced(self):
        tree = parse_tree("UUDD")
        LabeledTree(tree, (2, 1), "decreasing")
        with self.assertRaises(InvalidInput):
            LabeledTree(tree, (1, 2), "decreasing")
        with self.assertRaises(InvalidInput):
            LabeledTree(tree, (1, 1), "increasing")

    def test_counts_match_tree_factorials(self):
        self.assertEqual(len(all_labels(parse_tree("UDUUDUDD"), "decreasing")), 8)
        self.assertEqual(len(all_labels(parse_tree("UDUDUD"), "increasing")), 6)
        self.assertEqual(len(all_labels(parse_tree("UUUDDD"), "increasing")), 1)

    def test_label_counts_are_double_factorials(self):
        for n, expected in zip(range(1, 7), (1, 3, 15, 105, 945, 10395)):
            total = sum(len(all_labels(tree, "increasing")) for tree in iter_trees(n))
            self.assertEqual(total, expected, n)

    def test_seed_labels(self):
        tree = parse_tree("UDUUDUDD")
        self.assertEqual(seed_label(tree, "decreasing").labels, (1, 4, 2, 3))
        self.assertEqual(seed_label(tree, "increasing").labels, (1, 2, 3, 4))

    def test_complement_flips_direction(self):
        label = fx.hasse_seed()
        flipped = complement(label)
        self.assertEqual(flipped.direction, "increasing")
        self.assertEqual(flipped.labels, (4, 1, 3, 2))
        self.assertEqual(complement(flipped), label)


class WordTest(unittest.TestCase):
    def test_words_of_hermite_example(self):
        label = fx.labeled("UDUDUUDDUD", (3, 2, 4, 1, 5))
        self.assertEqual(word_string(pre_order_word(label)), "32415")
        self.assertEqual(word_string(post_order_word(label)), "32145")
        self.assertEqual(word_string(post_order_word(label, from_right=True)), "51423")
        self.assertEqual(word_string(pre_order_word(label, from_right=True)), "54123")

    def test_post_order_construction(self):
        tree = parse_tree("UDUDUUDDUD")
        label = from_post_order_word(tree, (3, 2, 1, 4, 5), "decreasing")
        self.assertEqual(label.labels, (3, 2, 4, 1, 5))

    def test_inversions(self):
        self.assertEqual(inversion((5, 2, 4, 3, 1)), 2)
        self.assertEqual(inversion((1, 2, 3, 4, 5)), 10)
        self.assertEqual(std_inversion((1, 2, 3, 4, 5)), 0)
        self.assertEqual(std_inversion((2, 1)), 1)

    def test_parse_word(self):
        self.assertEqual(parse_word("32415"), (3, 2, 4, 1, 5))
        self.assertEqual(parse_word("10,2,1"), (10, 2, 1))
        self.assertEqual(word_string((10, 2, 1)), "10,2,1")
        with self.assertRaises(InvalidInput):
            parse_word("3a")

    def test_312_avoidance(self):
        self.assertFalse(is_312_avoiding(fx.labeled("UUDDUUDDUD", (5, 2, 4, 1, 3))))
        self.assertTrue(is_312_avoiding(fx.rectangles_label()))
        self.assertTrue(is_312_avoiding(fx.five_edges_label()))

    def test_collapse_below_keeps_312_avoidance(self):
        collapsed = collapse_below(fx.five_edges_label(), 0)
        self.assertEqual(pre_order_word(collapsed), (5, 4, 3, 2, 1))
        self.assertEqual(collapsed.tree, parse_tree("UUUUUDDDDD"))
        for n in range(1, 6):
            for tree in iter_trees(n):
                for label in iter_decreasing(tree):
                    if not is_312_avoiding(label):
                        continue
                    for vertex in tree.branch_points():
                        collapsed = collapse_below(label, vertex)
                        self.assertEqual(collapsed.n, n)
                        self.assertLess(len(collapsed.tree.leaves()), len(tree.leaves()))
                        self.assertTrue(is_312_avoiding(collapsed), f"{label} at {vertex}")

    def test_collapse_below_a_leaf_is_the_identity(self):
        label = fx.rectangles_label()
        leaf = label.tree.leaves()[0]
        self.assertEqual(collapse_below(label, leaf), label)


class LabelPosetTest(unittest.TestCase):
    def test_hasse_diagram_example(self):
        seed = fx.hasse_seed()
        graph = build_poset(seed)
        self.assertEqual(graph.number_of_nodes(), 8)
        self.assertEqual(graph.number_of_edges(), 11)
        self.assertFalse(is_lattice(graph))
        left, right = seed.with_labels((2, 4, 1, 3)), seed.with_labels((1, 4, 3, 2))
        self.assertTrue(covers(seed, left))
        self.assertTrue(covers(seed, right))
        self.assertFalse(nx.has_path(graph, left, right))
        self.assertFalse(nx.has_path(graph, right, left))

    def test_three_single_edges(self):
        seed = fx.labeled("UDUDUD", (1, 2, 3))
        graph = build_poset(seed)
        self.assertEqual(graph.number_of_nodes(), 6)
        self.assertEqual(graph.number_of_edges(), 8)
        by_word = {word_string(v.labels): v for v in graph}
        self.assertTrue(graph.has_edge(by_word["132"], by_word["312"]))

    def test_covers_need_same_tree(self):
        with self.assertRaises(InvalidInput):
            covers(fx.hasse_seed(), fx.rectangles_label())

    def test_seed_is_the_minimum(self):
        for tree in iter_trees(4):
            seed = seed_label(tree, "decreasing")
            graph = build_poset(seed)
            self.assertEqual(graph.number_of_nodes(), len(list(iter_decreasing(tree))))
            self.assertEqual([v for v in graph if graph.in_degree(v) == 0], [seed])

    def test_covers_swap_two_letters_and_add_one_inversion(self):
        for n in range(1, 5):
            for tree in iter_trees(n):
                graph = build_poset(seed_label(tree, "decreasing"))
                for lower, upper in graph.edges:
                    before, after = post_order_word(lower), post_order_word(upper)
                    self.assertEqual(sum(1 for x, y in zip(before, after) if x != y), 2)
                    self.assertEqual(std_inversion(after), std_inversion(before) + 1)

    def test_upper_covers_are_sorted(self):
        uppers = upper_covers(fx.labeled("UDUDUD", (1, 2, 3)))
        self.assertEqual([u.labels for u in uppers], sorted(u.labels for u in uppers))


class GeneratingFunctionTest(unittest.TestCase):
    def test_hasse_example(self):
        self.assertEqual(gf_Z(fx.hasse_seed()), QPoly((1, 2, 2, 2, 1)))

    def test_worked_tilings(self):
        self.assertEqual(gf_Z(fx.rectangles_label()), q_int(3) ** 2)
        self.assertEqual(gf_Z(fx.peaks_then_hill_label()), q_int(2) * QPoly((1, 2, 1, 1)))
        self.assertEqual(gf_Z(fx.five_edges_label()), q_int(4) * q_int(3) ** 2 * q_int(2))

    def test_recursion_agrees_on_small_trees(self):
        for n in range(1, 6):
            for tree in iter_trees(n):
                for label in iter_decreasing(tree):
                    self.assertEqual(gf_Z_recursive(label), gf_Z(label), str(label))

    def test_recursion_needs_decreasing_label(self):
        with self.assertRaises(PreconditionFailed):
            gf_Z_recursive(seed_label(parse_tree("UDUD"), "increasing"))


if __name__ == "__main__":
    unittest.main()
