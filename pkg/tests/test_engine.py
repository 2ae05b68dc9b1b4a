import unittest

import networkx as nx

from dyckq_engine import (
    InvalidInput,
    PreconditionFailed,
    SizeBoundExceeded,
    Timer,
    expand_up_set,
    first_non_lattice_pair,
    is_lattice,
    join_in,
    meet_in,
    rank_function,
)


def _chain(x):
    return [x + 1] if x < 5 else []


def _boolean_square(x):
    return [x | bit for bit in (1, 2) if not x & bit]


class ExpandUpSetTest(unittest.TestCase):
    def test_chain(self):
        graph = expand_up_set(0, _chain)
        self.assertEqual(sorted(graph.nodes), [0, 1, 2, 3, 4, 5])
        self.assertEqual(rank_function(graph)[5], 5)

    def test_limit(self):
        with self.assertRaises(SizeBoundExceeded):
            expand_up_set(0, _chain, limit=3)

    def test_edges_point_upwards(self):
        graph = expand_up_set(0, _boolean_square)
        self.assertEqual(sorted(graph.edges), [(0, 1), (0, 2), (1, 3), (2, 3)])


class LatticeTest(unittest.TestCase):
    def test_square_is_a_lattice(self):
        graph = expand_up_set(0, _boolean_square)
        self.assertEqual(join_in(graph, 1, 2), 3)
        self.assertEqual(meet_in(graph, 1, 2), 0)
        self.assertTrue(is_lattice(graph))

    def test_bowtie_is_not(self):
        graph = nx.DiGraph()
        graph.add_edges_from([("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
                              ("c", "1"), ("d", "1")])
        self.assertIsNone(join_in(graph, "a", "b"))
        self.assertIsNone(meet_in(graph, "c", "d"))
        self.assertEqual(first_non_lattice_pair(graph), ("a", "b", "join"))
        self.assertFalse(is_lattice(graph))

    def test_rank_function_rejects_ungraded(self):
        graph = nx.DiGraph([(0, 1), (1, 2), (0, 2)])
        self.assertIsNone(rank_function(graph))
        self.assertIsNone(rank_function(nx.DiGraph([(0, 2), (1, 2)])))


class ErrorTest(unittest.TestCase):
    def test_invalid_input_carries_position(self):
        exc = InvalidInput("bad step", index=3, offender="X")
        self.assertIsInstance(exc, ValueError)
        self.assertEqual((exc.index, exc.offender), (3, "X"))

    def test_precondition_lists_failures(self):
        exc = PreconditionFailed(["312-avoiding", "decreasing label"])
        self.assertEqual(exc.failed, ["312-avoiding", "decreasing label"])
        self.assertIn("312-avoiding, decreasing label", str(exc))

    def test_timer_logs_perf(self):
        with self.assertLogs("dyckq", level="INFO") as captured:
            with Timer("sample"):
                pass
        self.assertTrue(captured.output[0].startswith("INFO:dyckq:[PERF] sample:"))


if __name__ == "__main__":
    unittest.main()
