import numpy as np

from ptkit import StreamFamily


class TestStreamFamily:
    def test_same_path_same_stream(self):
        fam = StreamFamily(123)
        a = fam.stream("explore", 3).random(8)
        b = fam.stream("explore", 3).random(8)
        np.testing.assert_array_equal(a, b)

    def test_distinct_paths_differ(self):
        fam = StreamFamily(123)
        a = fam.stream("explore", 3).random(8)
        b = fam.stream("explore", 4).random(8)
        c = fam.stream("swap", 3).random(8)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_children_are_independent_and_reproducible(self):
        fam = StreamFamily(9)
        c1 = fam.child("tune", 1).stream("swap", 0).random(4)
        c1_again = fam.child("tune", 1).stream("swap", 0).random(4)
        c2 = fam.child("tune", 2).stream("swap", 0).random(4)
        np.testing.assert_array_equal(c1, c1_again)
        assert not np.array_equal(c1, c2)

    def test_seed_changes_everything(self):
        a = StreamFamily(1).stream("x").random(4)
        b = StreamFamily(2).stream("x").random(4)
        assert not np.array_equal(a, b)
