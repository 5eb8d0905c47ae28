import itertools
import random
import unittest

import pydantic

from toric_euler.class_group import class_group_presentation, class_of, zero_class
from toric_euler.fan import library_fan
from toric_euler.homology import reduced_betti
from toric_euler.ideals import (
    SquarefreeIdeal,
    alexander_dual,
    check_fine_weight,
    chow_presentation,
    class_graded_tor,
    complement,
    ext_dim,
    fine_weights,
    irrelevant_ideal,
    sr_dim,
    stanley_reisner,
    stanley_reisner_complex,
    tor_dim,
)

from . import bundled_fans


def _ideal(d, *gens) -> SquarefreeIdeal:
    return SquarefreeIdeal.from_supports(d, gens)


class TestSquarefreeIdeal(unittest.TestCase):
    def test_from_supports_drops_redundant(self):
        ideal = _ideal(4, (0, 2), (0, 1, 2), (1, 3))
        self.assertEqual(ideal.sorted_gens(), [(0, 2), (1, 3)])

    def test_antichain_required(self):
        with self.assertRaises(pydantic.ValidationError):
            SquarefreeIdeal(d=3, gens=frozenset({frozenset({0}), frozenset({0, 1})}))

    def test_variables_in_range(self):
        with self.assertRaises(ValueError):
            SquarefreeIdeal(d=2, gens=frozenset({frozenset({2})}))

    def test_contains(self):
        ideal = _ideal(4, (0, 2))
        self.assertTrue(ideal.contains([0, 1, 2]))
        self.assertFalse(ideal.contains([0, 1]))
        self.assertTrue(_ideal(2, ()).is_unit)

    def test_fine_weights(self):
        self.assertEqual(list(fine_weights(2)), [(0, 0), (0, 1), (1, 0), (1, 1)])
        self.assertEqual(complement((1, 0, 1)), (0, 1, 0))
        with self.assertRaises(ValueError):
            check_fine_weight((0, 2), 2)
        with self.assertRaises(ValueError):
            check_fine_weight((0, 1), 3)


class TestFanIdeals(unittest.TestCase):
    def test_hirzebruch_stanley_reisner(self):
        fan = library_fan("hirzebruch2")
        self.assertEqual(stanley_reisner(fan).sorted_gens(), [(0, 2), (1, 3)])

    def test_hirzebruch_dual_is_irrelevant(self):
        fan = library_fan("hirzebruch2")
        dual = alexander_dual(stanley_reisner(fan))
        self.assertEqual(dual.sorted_gens(), [(0, 1), (0, 3), (1, 2), (2, 3)])
        self.assertEqual(dual, irrelevant_ideal(fan))

    def test_projective_space(self):
        fan = library_fan("projective_space3")
        self.assertEqual(stanley_reisner(fan).sorted_gens(), [(0, 1, 2, 3)])
        self.assertEqual(irrelevant_ideal(fan).sorted_gens(), [(0,), (1,), (2,), (3,)])

    def test_dual_of_stanley_reisner_is_irrelevant(self):
        for name, fan in bundled_fans():
            with self.subTest(fan=name):
                self.assertEqual(alexander_dual(stanley_reisner(fan)), irrelevant_ideal(fan))

    def test_chow_presentation(self):
        chow = chow_presentation(library_fan("hirzebruch2"))
        self.assertEqual(chow.stanley_reisner_gens, ((0, 2), (1, 3)))
        self.assertEqual(chow.linear_forms, ((1, 0, -1, 0), (0, 1, 2, -1)))


class TestAlexanderDual(unittest.TestCase):
    def test_involution_on_random_antichains(self):
        rng = random.Random(1234)
        for _ in range(200):
            d = rng.randint(1, 8)
            supports = [
                [v for v in range(d) if rng.random() < 0.4] or [rng.randrange(d)] for _ in range(rng.randint(0, 6))
            ]
            ideal = SquarefreeIdeal.from_supports(d, supports)
            with self.subTest(gens=ideal.sorted_gens()):
                self.assertEqual(alexander_dual(alexander_dual(ideal)), ideal)

    def test_transversals(self):
        dual = alexander_dual(_ideal(3, (0, 1), (1, 2)))
        self.assertEqual(dual.sorted_gens(), [(1,), (0, 2)])

    def test_unit_and_zero(self):
        unit = _ideal(3, ())
        zero = SquarefreeIdeal(d=3, gens=frozenset())
        self.assertEqual(alexander_dual(unit), zero)
        self.assertEqual(alexander_dual(zero), unit)

    def test_no_variables(self):
        with self.assertRaises(ValueError):
            alexander_dual(SquarefreeIdeal(d=0, gens=frozenset()))


class TestStanleyReisnerComplex(unittest.TestCase):
    def test_round_trip_through_face_complex(self):
        for name, fan in bundled_fans():
            with self.subTest(fan=name):
                complex_ = stanley_reisner_complex(stanley_reisner(fan))
                self.assertEqual(set(complex_.facets), set(fan.max_cones))

    def test_degenerate_ideals(self):
        self.assertTrue(stanley_reisner_complex(_ideal(2, ())).is_void)
        full = stanley_reisner_complex(SquarefreeIdeal(d=2, gens=frozenset()))
        self.assertEqual(full.facets, frozenset({frozenset({0, 1})}))
        self.assertEqual(reduced_betti(full).nonzero(), {})


class TestMultigradedInvariants(unittest.TestCase):
    def test_sr_dim(self):
        fan = library_fan("hirzebruch2")
        self.assertEqual(sr_dim(fan, (1, 0, 1, 0)), 0)
        self.assertEqual(sr_dim(fan, (1, 1, 0, 0)), 1)
        self.assertEqual(sr_dim(fan, (0, 0, 0, 0)), 1)
        with self.assertRaises(ValueError):
            sr_dim(fan, (1, 0, 2, 0))

    def test_tor_of_maximal_ideal_is_koszul(self):
        maximal = _ideal(3, (0,), (1,), (2,))
        for weight in fine_weights(3):
            for i in range(4):
                expected = 1 if sum(weight) == i else 0
                self.assertEqual(tor_dim(maximal, i, weight), expected, (weight, i))

    def test_tor_edge_cases(self):
        ideal = _ideal(2, (0, 1))
        self.assertEqual(tor_dim(ideal, 0, (0, 0)), 1)
        self.assertEqual(tor_dim(ideal, 1, (1, 1)), 1)
        self.assertEqual(tor_dim(_ideal(2, ()), 0, (0, 0)), 0)
        with self.assertRaises(ValueError):
            tor_dim(ideal, -1, (0, 0))

    def test_tor_ext_bridge(self):
        for name, fan in bundled_fans():
            irrelevant = irrelevant_ideal(fan)
            for weight in fine_weights(fan.d):
                face = sr_dim(fan, complement(weight))
                for i in range(fan.d + 1):
                    expected = face if sum(weight) - i == fan.d - fan.n else 0
                    with self.subTest(fan=name, m=weight, i=i):
                        self.assertEqual(tor_dim(irrelevant, i + 1, weight), expected)

    def test_top_tor_of_face_ring(self):
        for name, fan in bundled_fans():
            with self.subTest(fan=name):
                self.assertEqual(tor_dim(stanley_reisner(fan), fan.d - fan.n, (1,) * fan.d), 1)

    def test_ext_concentrated_in_one_degree(self):
        for name, fan in bundled_fans():
            for weight, j in itertools.product(fine_weights(fan.d), range(fan.d + 1)):
                expected = sr_dim(fan, complement(weight)) if j == fan.d - fan.n else 0
                with self.subTest(fan=name, m=weight, j=j):
                    self.assertEqual(ext_dim(fan, j, weight), expected)

    def test_class_graded_tor(self):
        fan = library_fan("projective_plane")
        presentation = class_group_presentation(fan)
        irrelevant = irrelevant_ideal(fan)
        self.assertEqual(class_graded_tor(fan, irrelevant, 0), {zero_class(presentation): 1})
        self.assertEqual(class_graded_tor(fan, irrelevant, 1), {class_of(presentation, (1, 0, 0)): 3})
        self.assertEqual(class_graded_tor(fan, irrelevant, 3), {class_of(presentation, (1, 1, 1)): 1})

    def test_class_graded_tor_shape_mismatch(self):
        with self.assertRaises(ValueError):
            class_graded_tor(library_fan("projective_plane"), _ideal(4, (0,)), 1)


if __name__ == "__main__":
    unittest.main()
