from itertools import islice

from django.test import SimpleTestCase
from sympy.polys.domains import QQ

from exact_arith.polys import polynomial_ring
from puiseux.series import PuiseuxSeries, ps_agree, ps_ord

from .arcs import Arc, poly_along_arc, verify_arc_on_variety
from .exceptions import InvalidArc, NotAHypersurface, PlaneContainedInVariety, PointNotOnVariety
from .slicing import SliceSpec, arcs_through, slice_branches, slice_planes, singular_points_hint, stern_brocot
from .varieties import RationalFn, Variety, evaluate_at, make_point

XYZ = polynomial_ring(['x', 'y', 'z'])
x, y, z = XYZ.gens
OCTIC = polynomial_ring(['x', 'y', 'z1', 'z2'])
ox, oy, oz1, oz2 = OCTIC.gens
PLANE = polynomial_ring(['x', 'y'])
px, py = PLANE.gens

CARTAN = Variety.from_polys(XYZ, [x**3 - z * (x**2 + y**2)])
OCTIC_VARIETY = Variety.from_polys(OCTIC, [ox**8 - (oz1**2 + oz2**2) * oy**8])


def t_power(c, e=1):
	return PuiseuxSeries.monomial(QQ(c), QQ(e))


def arc(*components):
	return Arc(tuple(c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c) for c in components))


class ArcSubstitutionTest(SimpleTestCase):
	def test_sum_of_squares_along_axis(self):
		self.assertEqual(poly_along_arc(px**2 + py**2, arc(t_power(1), 0)), t_power(1, 2))

	def test_cartan_arc_is_on_umbrella(self):
		gamma = arc(t_power(1), t_power(1), t_power(QQ(1, 2)))
		self.assertTrue(poly_along_arc(CARTAN.hypersurface, gamma).is_exact_zero)

	def test_octic_coordinates(self):
		gamma = arc(0, 0, 0, t_power(1))
		self.assertEqual(poly_along_arc(oz1**2 + oz2**2, gamma), t_power(1, 2))

	def test_ring_morphism(self):
		gamma = arc(PuiseuxSeries.build([(QQ(1, 2), 1), (1, 2)], 3), t_power(3, 2), t_power(1))
		p, q = x**2 - y * z, y + 3 * x * z
		self.assertTrue(ps_agree(poly_along_arc(p + q, gamma), poly_along_arc(p, gamma) + poly_along_arc(q, gamma)))
		self.assertTrue(ps_agree(poly_along_arc(p * q, gamma), poly_along_arc(p, gamma) * poly_along_arc(q, gamma)))

	def test_negative_component_rejected(self):
		with self.assertRaises(InvalidArc):
			arc(t_power(1, -1))


class VerificationTest(SimpleTestCase):
	def test_cartan(self):
		result = verify_arc_on_variety(arc(t_power(1), t_power(1), t_power(QQ(1, 2))), CARTAN, order=8)
		self.assertTrue(result.passed)
		self.assertEqual(str(result), 'EXACT-ZERO')
		self.assertTrue(result.arc.verified_to[0].is_infinite)

	def test_octic_axis(self):
		self.assertTrue(verify_arc_on_variety(arc(0, 0, 0, t_power(1)), OCTIC_VARIETY, order=8).passed)

	def test_parabola(self):
		parabola = Variety.from_polys(PLANE, [py - px**2])
		self.assertTrue(verify_arc_on_variety(arc(t_power(1), t_power(1, 2)), parabola, order=8).passed)

	def test_truncated_arc_reports_a_bound(self):
		parabola = Variety.from_polys(PLANE, [py - px**2])
		truncated = arc(t_power(1), PuiseuxSeries.build([(QQ(2), QQ(1))], QQ(3)))
		result = verify_arc_on_variety(truncated, parabola, order=8)
		self.assertFalse(result.passed)
		self.assertEqual(str(result), '>= 3')
		self.assertTrue(verify_arc_on_variety(truncated, parabola, order=8, tails=False).passed)

	def test_off_variety(self):
		parabola = Variety.from_polys(PLANE, [py - px**2])
		result = verify_arc_on_variety(arc(t_power(1), t_power(1)), parabola, order=8)
		self.assertFalse(result.passed)
		self.assertEqual(str(result), '1')


class SlicingTest(SimpleTestCase):
	def test_octic_slice_through_z1_point(self):
		spec = SliceSpec(make_point([0, 0, 1, 0]), (1, 0, 0, 0), (0, 1, 0, 0))
		arcs = slice_branches(OCTIC_VARIETY, spec, order=8)
		self.assertEqual([str(a) for a in arcs], ['(t, -t, 1, 0)', '(t, t, 1, 0)'])
		for a in arcs:
			self.assertEqual(a.origin, make_point([0, 0, 1, 0]))

	def test_octic_slice_through_y_point(self):
		spec = SliceSpec(make_point([0, 1, 0, 0]), (1, 0, 0, 0), (0, 0, 0, 1))
		arcs = slice_branches(OCTIC_VARIETY, spec, order=8)
		self.assertEqual([str(a) for a in arcs], ['(t, 1, 0, -t^4)', '(t, 1, 0, t^4)'])

	def test_parabola_through_origin(self):
		parabola = Variety.from_polys(PLANE, [py - px**2])
		spec = SliceSpec(make_point([0, 0]), (1, 0), (0, 1))
		self.assertEqual([str(a) for a in slice_branches(parabola, spec, order=8)], ['(t, t^2)'])

	def test_plane_inside_variety(self):
		# x = 0 is a component of x*z = 0
		reducible = Variety.from_polys(XYZ, [x * z])
		spec = SliceSpec(make_point([0, 0, 0]), (0, 1, 0), (0, 0, 1))
		with self.assertRaises(PlaneContainedInVariety):
			slice_branches(reducible, spec, order=8)
		self.assertEqual(len(arcs_through(reducible, spec, order=8)), 2)

	def test_point_must_be_on_variety(self):
		spec = SliceSpec(make_point([1, 0, 0]), (0, 1, 0), (0, 0, 1))
		with self.assertRaises(PointNotOnVariety):
			slice_branches(CARTAN, spec)

	def test_no_real_branches(self):
		circle = Variety.from_polys(PLANE, [px**2 + py**2])
		spec = SliceSpec(make_point([0, 0]), (1, 0), (0, 1))
		self.assertEqual(slice_branches(circle, spec, order=8), [])

	def test_full_space_arcs(self):
		spec = SliceSpec(make_point([0, 0]), (1, 0), (0, 1))
		arcs = arcs_through(Variety.full_space(['x', 'y']), spec)
		self.assertEqual([str(a) for a in arcs], ['(t, 0)', '(t, t^2)'])

	def test_dependent_directions(self):
		with self.assertRaises(ValueError):
			SliceSpec(make_point([0, 0]), (1, 1), (2, 2))

	def test_plane_enumeration(self):
		planes = list(islice(slice_planes(2), 6))
		self.assertEqual(len(planes), 4)
		self.assertEqual(planes[0], ((1, 0), (0, 1)))
		self.assertEqual(planes[1], ((-1, 0), (0, 1)))
		self.assertEqual(planes[2], ((0, 1), (1, 0)))
		self.assertEqual(list(islice(slice_planes(1), 3)), [((1,), None), ((-1,), None)])

	def test_tilts_leave_the_plane_of_d2(self):
		planes = list(islice(slice_planes(3), 12 + 48))
		self.assertEqual(planes[12], ((1, 0, 1), (0, 1, 0)))
		for d1, d2 in planes[12:]:
			self.assertEqual(sum(1 for c in d1 if c), 2)
			self.assertFalse(any(a and b for a, b in zip(d1, d2)))
		self.assertEqual(len({(tuple(d1), tuple(d2)) for d1, d2 in planes}), len(planes))

	def test_stern_brocot_heights(self):
		self.assertEqual(stern_brocot(1), [QQ(1)])
		self.assertEqual(stern_brocot(3), [QQ(1, 3), QQ(2, 3), QQ(3, 2), QQ(3)])


class SingularHintTest(SimpleTestCase):
	def test_circle_gradient(self):
		circle = Variety.from_polys(PLANE, [px**2 + py**2 - 1])
		h, dx, dy = singular_points_hint(circle)
		self.assertEqual((dx, dy), (2 * px, 2 * py))

	def test_umbrella_stick_is_singular(self):
		stick_point = make_point([0, 0, 5])
		for g in singular_points_hint(CARTAN):
			self.assertTrue(evaluate_at(g, stick_point).is_zero)

	def test_octic_singular_plane_and_axis(self):
		for point in ([0, 0, 2, 3], [0, 7, 0, 0]):
			for g in singular_points_hint(OCTIC_VARIETY):
				self.assertTrue(evaluate_at(g, make_point(point)).is_zero)

	def test_needs_hypersurface(self):
		with self.assertRaises(NotAHypersurface):
			singular_points_hint(Variety.full_space(['x']))


class RationalFnTest(SimpleTestCase):
	def test_text_and_value(self):
		f = RationalFn(px, px**2 + py**2)
		self.assertEqual(str(f), '(x)/(x^2 + y^2)')
		self.assertFalse(f.is_regular_at(make_point([0, 0])))
		self.assertEqual(f.value_at(make_point([1, 1])), QQ(1, 2))
		self.assertEqual(ps_ord(poly_along_arc(f.denominator, arc(t_power(1), 0))).value, 2)
