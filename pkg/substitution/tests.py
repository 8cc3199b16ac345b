from django.test import SimpleTestCase
from sympy.polys.domains import QQ

from exact_arith.exceptions import ArityMismatch
from exact_arith.polys import polynomial_ring
from geometry.arcs import Arc
from geometry.exceptions import PointNotOnVariety
from geometry.varieties import RationalFn, Variety, make_point
from puiseux.exceptions import IndeterminateOrder
from puiseux.series import PuiseuxSeries, exponent_denominators

from .along import arc_limit, rational_along_arc, with_order_retry
from .evidence import zero_containment_evidence
from .exceptions import DegenerateRelation, DivergentProbe
from .extension import extend_along_pole_arc, reduced_power_relation
from .lifting import lift_arc, point_lift, relation_ring
from .lojasiewicz import lojasiewicz_probe
from .results import Containment, LimitKind, WitnessOutcome
from .witness import discontinuity_witness

XYZ = polynomial_ring(['x', 'y', 'z'])
x, y, z = XYZ.gens
OCTIC = polynomial_ring(['x', 'y', 'z1', 'z2'])
ox, oy, oz1, oz2 = OCTIC.gens
PLANE = polynomial_ring(['x', 'y'])
px, py = PLANE.gens
LINE = polynomial_ring(['x'])

CARTAN = Variety.from_polys(XYZ, [x**3 - z * (x**2 + y**2)])
CARTAN_FN = RationalFn(x**3, x**2 + y**2)
OCTIC_VARIETY = Variety.from_polys(OCTIC, [ox**8 - (oz1**2 + oz2**2) * oy**8])


def t_power(c, e=1):
	return PuiseuxSeries.monomial(QQ(c), QQ(e))


def arc(*components):
	return Arc(tuple(c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c) for c in components))


CARTAN_ARC = arc(t_power(1), t_power(1), t_power(QQ(1, 2)))
STICK = arc(0, 0, t_power(1))
OCTIC_AXIS = arc(0, 0, 0, t_power(1))


class AlongArcTest(SimpleTestCase):
	def test_cartan_function_along_arc(self):
		self.assertEqual(str(rational_along_arc(CARTAN_FN, CARTAN_ARC)), '1/2*t')
		self.assertEqual(str(arc_limit(CARTAN_FN, CARTAN_ARC)), 'FINITE(0)')

	def test_stick_is_a_pole_arc(self):
		self.assertIs(rational_along_arc(CARTAN_FN, STICK), LimitKind.POLE_ARC)
		self.assertEqual(str(arc_limit(CARTAN_FN, STICK)), 'POLE-ARC')

	def test_divergence_sign(self):
		f = RationalFn(px, px**2 + py**2)
		self.assertEqual(str(arc_limit(f, arc(t_power(1), 0))), 'DIVERGES(+)')
		self.assertEqual(str(arc_limit(f, arc(t_power(-1), 0))), 'DIVERGES(-)')

	def test_nonzero_limit(self):
		f = RationalFn(px + 1, py + 2)
		limit = arc_limit(f, arc(t_power(1), t_power(1)))
		self.assertTrue(limit.is_finite)
		self.assertEqual(limit.value, QQ(1, 2))

	def test_order_retry(self):
		attempts = []

		def compute(order):
			attempts.append(order)
			if order < 16:
				raise IndeterminateOrder('too short')
			return order

		self.assertEqual(with_order_retry(compute, order=4, cap=64), 16)
		self.assertEqual(attempts, [4, 8, 16])
		with self.assertRaises(IndeterminateOrder):
			with_order_retry(compute, order=4, cap=8)


class LiftingTest(SimpleTestCase):
	def setUp(self):
		self.ring = relation_ring(['x'])
		self.T, self.x = self.ring.gens

	def test_lift_square(self):
		report = lift_arc(self.T**2 - self.x**2, arc(t_power(1)), order=8)
		self.assertEqual([str(s) for s in report.liftings], ['-t', 't'])
		self.assertEqual(report.non_liftings, ())

	def test_point_lift(self):
		T, x = self.T, self.x
		self.assertEqual(sorted(point_lift(T**2 - (1 + x**2), make_point([0]))), [-1, 1])
		self.assertEqual(point_lift(T**2 - x**2, make_point([0])), [0])

	def test_point_lift_agrees_with_arc_lifting(self):
		relation = self.T**2 - (1 + self.x**2)
		gamma = arc(t_power(1))
		starts = sorted(s.constant_term.value for s in lift_arc(relation, gamma, order=8).liftings)
		self.assertEqual(starts, sorted(point_lift(relation, gamma.origin)))

	def test_cube_root_of_z_squared(self):
		# y^3 = z^2*x^3: y/x cubed is z^2 along the z-axis
		ring = relation_ring(['x', 'y', 'z'])
		T, _, _, z3 = ring.gens
		report = lift_arc(T**3 - z3**2, STICK)
		self.assertEqual([str(s) for s in report.liftings], ['t^(2/3)'])
		self.assertEqual(exponent_denominators(report.liftings[0]), {3})
		self.assertEqual(report.non_liftings, ())

	def test_cube_root_along_stick(self):
		ring = relation_ring(['x', 'y', 'z'])
		T, _, _, z3 = ring.gens
		report = lift_arc(T**3 - (1 + z3**2), STICK, order=8)
		self.assertEqual(report.count, 1)
		self.assertEqual(report.liftings[0].constant_term, 1)

	def test_square_roots_on_octic(self):
		ring = relation_ring(['x', 'y', 'z1', 'z2'])
		T, _, _, z1, z2 = ring.gens
		report = lift_arc(T**4 - (z1**2 + z2**2), OCTIC_AXIS, order=8)
		self.assertEqual([str(s) for s in report.liftings], ['-t^(1/2)', 't^(1/2)'])
		self.assertEqual(exponent_denominators(report.liftings[1]), {2})
		self.assertEqual((report.ramification, report.lifting_index), (1, 2))

	def test_non_lifting(self):
		report = lift_arc(self.x * self.T - 1, arc(t_power(1)), order=8)
		self.assertEqual(report.liftings, ())
		self.assertEqual([str(s) for s in report.non_liftings], ['t^(-1)'])

	def test_degenerate(self):
		with self.assertRaises(DegenerateRelation):
			lift_arc(self.x * self.T - self.x, arc(0), order=8)
		with self.assertRaises(DegenerateRelation):
			point_lift(self.x * self.T, make_point([0]))

	def test_arity(self):
		with self.assertRaises(ArityMismatch):
			lift_arc(self.T - self.x, arc(0, 0))


class WitnessTest(SimpleTestCase):
	def test_two_limits_on_octic(self):
		f = RationalFn(ox, oy)
		report = discontinuity_witness(f, OCTIC_VARIETY, [0, 0, 1, 0], budget=20, order=8)
		self.assertEqual(report.outcome, WitnessOutcome.TWO_LIMITS)
		self.assertEqual(sorted(str(limit) for limit in report.limits), ['FINITE(-1)', 'FINITE(1)'])
		self.assertTrue(report.is_certificate)

	def test_none_found_for_squares(self):
		f = RationalFn(ox**2, oy**2)
		report = discontinuity_witness(f, OCTIC_VARIETY, [0, 0, 1, 0], budget=20, order=8)
		self.assertEqual(report.outcome, WitnessOutcome.NONE_FOUND)
		self.assertEqual(report.observed, (1,))
		self.assertEqual(report.slices, 20)

	def test_divergence_in_the_plane(self):
		f = RationalFn(px, px**2 + py**2)
		report = discontinuity_witness(f, Variety.full_space(['x', 'y']), [0, 0], budget=4, order=8)
		self.assertEqual(report.outcome, WitnessOutcome.DIVERGES)

	def test_continuous_function_on_the_line(self):
		line = Variety.full_space(['x'])
		f = RationalFn(LINE.gens[0] + 1, LINE.one)
		report = discontinuity_witness(f, line, [0], budget=2, order=8)
		self.assertEqual(report.outcome, WitnessOutcome.NONE_FOUND)
		self.assertEqual(report.point_value, 1)

	def test_point_off_variety(self):
		with self.assertRaises(PointNotOnVariety):
			discontinuity_witness(CARTAN_FN, CARTAN, [1, 0, 0], budget=2)

	def test_workers_do_not_change_the_result(self):
		f = RationalFn(ox, oy)
		serial = discontinuity_witness(f, OCTIC_VARIETY, [0, 0, 1, 0], budget=8, order=8)
		parallel = discontinuity_witness(f, OCTIC_VARIETY, [0, 0, 1, 0], budget=8, order=8, workers=4)
		self.assertEqual(serial.outcome, parallel.outcome)
		self.assertEqual([str(a) for a in serial.arcs], [str(a) for a in parallel.arcs])
		self.assertEqual([str(limit) for limit in serial.limits], [str(limit) for limit in parallel.limits])
		self.assertEqual(serial.slices, parallel.slices)

	def test_limits_survive_reparametrization(self):
		f = RationalFn(ox, oy)
		report = discontinuity_witness(f, OCTIC_VARIETY, [0, 0, 1, 0], budget=20, order=8)
		self.assertEqual(report.outcome, WitnessOutcome.TWO_LIMITS)
		for witness, limit in zip(report.arcs, report.limits):
			for m in (2, 3):
				with self.subTest(arc=str(witness), m=m):
					self.assertEqual(str(arc_limit(f, witness.ramify(m), order=8)), str(limit))


class ContainmentTest(SimpleTestCase):
	def test_pass(self):
		report = zero_containment_evidence(x**3, x**2 + y**2, CARTAN, [CARTAN_ARC, STICK], order=8)
		self.assertEqual(report.outcome, Containment.PASS)
		self.assertEqual(report.checked, 2)

	def test_violation(self):
		raised_stick = arc(0, 0, PuiseuxSeries.build([(0, 1), (1, 1)]))
		report = zero_containment_evidence(z, x**2 + y**2, CARTAN, [CARTAN_ARC, raised_stick], order=8)
		self.assertEqual(report.outcome, Containment.VIOLATION)
		self.assertEqual(str(report.arc), '(0, 0, 1 + t)')

	def test_off_variety_arcs_skipped(self):
		report = zero_containment_evidence(z, x**2 + y**2, CARTAN, [arc(t_power(1), 0, 0)], order=8)
		self.assertEqual(report.outcome, Containment.PASS)
		self.assertEqual(report.rejected, 1)


class ExtensionTest(SimpleTestCase):
	def test_cartan_extends_by_z(self):
		relation = reduced_power_relation(CARTAN_FN, CARTAN, 1)
		self.assertEqual(relation, relation.ring.gens[0] - relation.ring.gens[3])
		report = extend_along_pole_arc(CARTAN_FN, CARTAN, STICK, order=8)
		self.assertEqual(report.power, 1)
		self.assertEqual([str(s) for s in report.candidates], ['t'])

	def test_octic_needs_fourth_power(self):
		report = extend_along_pole_arc(RationalFn(ox**2, oy**2), OCTIC_VARIETY, OCTIC_AXIS, order=8)
		self.assertEqual(report.power, 4)
		self.assertEqual([str(s) for s in report.candidates], ['-t^(1/2)', 't^(1/2)'])


class LojasiewiczTest(SimpleTestCase):
	def test_polynomial_on_the_line(self):
		f = RationalFn.polynomial(LINE.gens[0])
		report = lojasiewicz_probe(f, [0], [arc(t_power(1))])
		self.assertEqual(report.exponent, 2)

	def test_cartan_arc(self):
		report = lojasiewicz_probe(CARTAN_FN, [0, 0, 0], [CARTAN_ARC], variety=CARTAN, order=8)
		self.assertEqual(report.center_value, 0)
		self.assertEqual(report.exponent, 2)

	def test_octic_pole_arc(self):
		f = RationalFn(ox**2, oy**2)
		report = lojasiewicz_probe(f, [0, 0, 0, 0], [OCTIC_AXIS], variety=OCTIC_VARIETY, order=8)
		self.assertEqual(report.exponent, 4)
		self.assertEqual(str(report.entries[0]), 'ord(f - f(x0)) = 1/2, ord(rho) = 2, N >= 4')

	def test_pole_arc_without_variety(self):
		with self.assertRaises(DivergentProbe):
			lojasiewicz_probe(CARTAN_FN, [0, 0, 0], [STICK])

	def test_disagreeing_limits(self):
		f = RationalFn(px, py)
		with self.assertRaises(DivergentProbe):
			lojasiewicz_probe(f, [0, 0], [arc(t_power(1), t_power(1)), arc(t_power(-1), t_power(1))])
