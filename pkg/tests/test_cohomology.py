import unittest

from toric_euler.cohomology import CohomologyVector, cohomology_dims, enumeration_region, h0
from toric_euler.euler import chi
from toric_euler.fan import library_fan
from toric_euler.polytope import dim_S

from . import H2_DIVISOR, bundled_fans, random_divisors


class TestCohomologyDims(unittest.TestCase):
    def test_hirzebruch_example(self):
        result = cohomology_dims(library_fan("hirzebruch2"), H2_DIVISOR)
        self.assertEqual(result.h, (0, 2, 6))
        self.assertEqual(result.euler_characteristic, 4)
        self.assertIsNone(result.per_degree)

    def test_projective_plane(self):
        fan = library_fan("projective_plane")
        self.assertEqual(cohomology_dims(fan, (1, 0, 0)).h, (3, 0, 0))
        self.assertEqual(cohomology_dims(fan, (-3, 0, 0)).h, (0, 0, 1))
        self.assertEqual(cohomology_dims(fan, (-3, 0, 0)).h[2], dim_S(fan, (2, -1, -1)))
        self.assertEqual(cohomology_dims(fan, (-1, 0, 0)).h, (0, 0, 0))

    def test_projective_space(self):
        fan = library_fan("projective_space3")
        self.assertEqual(cohomology_dims(fan, (-4, 0, 0, 0)).h, (0, 0, 0, 1))
        self.assertEqual(cohomology_dims(fan, (2, 0, 0, 0)).h, (10, 0, 0, 0))

    def test_coefficients_beyond_machine_integers(self):
        fan = library_fan("projective_plane")
        huge = 10**19
        self.assertEqual(cohomology_dims(fan, (huge, 0, -huge)).h, (1, 0, 0))
        self.assertEqual(cohomology_dims(fan, (huge - 3, 0, -huge)).h, (0, 0, 1))

    def test_per_degree(self):
        result = cohomology_dims(library_fan("hirzebruch2"), H2_DIVISOR, per_degree=True)
        self.assertIsNotNone(result.per_degree)
        self.assertEqual(len(result.per_degree), 8)
        h1 = [c for c in result.per_degree if c.betti[0]]
        h2 = [c for c in result.per_degree if c.betti[1]]
        self.assertEqual(sum(c.betti[0] for c in h1), 2)
        self.assertEqual(sum(c.betti[1] for c in h2), 6)
        for contribution in h2:
            self.assertEqual(contribution.negative_rays, (0, 1, 2, 3))

    def test_h0(self):
        self.assertEqual(h0(library_fan("hirzebruch2"), H2_DIVISOR), 0)
        self.assertEqual(h0(library_fan("projective_plane"), (3, 0, 0)), 10)
        for name, fan in bundled_fans():
            with self.subTest(fan=name):
                self.assertEqual(h0(fan, (0,) * fan.d), 1)

    def test_enumeration_region(self):
        region = enumeration_region(library_fan("projective_plane"), (1, 0, 0))
        self.assertEqual(region, ((-2, 1), (-1, 2)))
        self.assertEqual(enumeration_region(library_fan("projective_plane"), (1, 0, 0), margin=0), ((-1, 0), (0, 1)))
        with self.assertRaises(ValueError):
            enumeration_region(library_fan("projective_plane"), (1, 0, 0), margin=-1)

    def test_vector_euler_characteristic(self):
        self.assertEqual(CohomologyVector(h=(1, 4, 2)).euler_characteristic, -1)


class TestOracleProperties(unittest.TestCase):
    def test_agrees_with_chi(self):
        for name, fan in bundled_fans():
            for a in random_divisors(fan, 25, 5, seed=10):
                with self.subTest(fan=name, a=a):
                    result = cohomology_dims(fan, a)
                    self.assertEqual(len(result.h), fan.n + 1)
                    self.assertTrue(all(value >= 0 for value in result.h))
                    self.assertEqual(result.euler_characteristic, chi(fan, a))
                    self.assertEqual(result.h[0], dim_S(fan, a))

    def test_region_stability(self):
        for name, fan in bundled_fans():
            for a in random_divisors(fan, 5, 5, seed=11):
                with self.subTest(fan=name, a=a):
                    self.assertEqual(cohomology_dims(fan, a, margin=1).h, cohomology_dims(fan, a, margin=3).h)


if __name__ == "__main__":
    unittest.main()
