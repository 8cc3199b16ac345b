from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from sympy.polys.domains import QQ

from exact_arith.algebraic import real_roots
from exact_arith.exceptions import ZeroPolynomialError
from exact_arith.fields import FieldElement
from exact_arith.polys import UNIVARIATE

from .exceptions import EvaluationPointError, IndeterminateOrder, SeriesZeroDivision
from .newton import BIVARIATE, coefficient_series, newton_puiseux
from .numeric import ps_eval_numeric
from .series import (
	PuiseuxSeries,
	exponent_denominators,
	ps_agree,
	ps_arith,
	ps_conjugate,
	ps_evaluate,
	ps_has_integral_exponents,
	ps_invert,
	ps_ord,
	ps_ramify,
	ps_substitute_power,
)

t, Y = BIVARIATE.gens


def series(*terms, precision=None):
	return PuiseuxSeries.build(((QQ(e), QQ(c)) for e, c in terms), precision)


def half(n):
	return QQ(n, 2)


series_terms = st.lists(
	st.tuples(st.integers(0, 12).map(lambda k: QQ(k, 6)), st.integers(-4, 4)),
	min_size=1,
	max_size=4,
)
random_series = st.tuples(series_terms, st.one_of(st.none(), st.integers(3, 8))).map(
	lambda pair: PuiseuxSeries.build(
		((e, QQ(c)) for e, c in pair[0]),
		None if pair[1] is None else QQ(pair[1]),
	)
)


class SeriesArithmeticTest(SimpleTestCase):
	def test_half_powers_multiply(self):
		root = series((half(1), 1))
		self.assertEqual(ps_arith(root, root, 'mul'), series((1, 1)))

	def test_difference_of_squares(self):
		self.assertEqual(
			ps_arith(series((0, 1), (1, 1)), series((0, 1), (1, -1)), 'mul'),
			series((0, 1), (2, -1)),
		)

	def test_truncated_square(self):
		approx = series((0, 1), (2, half(1)), (4, QQ(-1, 8)), precision=6)
		self.assertEqual(ps_arith(approx, approx, 'mul'), series((0, 1), (2, 1), precision=6))

	def test_exact_only_when_both_exact(self):
		exact = series((0, 1))
		truncated = series((1, 1), precision=3)
		self.assertTrue(ps_arith(exact, exact, 'add').is_exact)
		self.assertEqual(ps_arith(exact, truncated, 'add').precision, 3)
		self.assertEqual(ps_arith(series((2, 1)), truncated, 'mul').precision, 5)

	def test_orders(self):
		self.assertEqual(ps_ord(series((half(1), 1), (1, 1))).value, half(1))
		self.assertTrue(ps_ord(PuiseuxSeries.zero()).is_infinite)
		self.assertEqual(ps_ord(series((0, 3), (1, -1))).value, 0)
		unknown = ps_ord(PuiseuxSeries.zero(precision=4))
		self.assertFalse(unknown.exact)
		self.assertEqual(str(unknown), '>= 4')

	def test_geometric_inverse(self):
		inverse = ps_invert(series((0, 1), (1, -1)), order=5)
		self.assertEqual(inverse, series((0, 1), (1, 1), (2, 1), (3, 1), (4, 1), precision=5))

	def test_monomial_inverse(self):
		self.assertEqual(ps_invert(series((1, 1))), series((-1, 1)))

	def test_inverse_multiplies_back(self):
		a = series((half(1), 1), (half(3), 1))
		inverse = ps_invert(a, order=4)
		self.assertEqual(ps_ord(inverse).value, half(-1))
		product = ps_arith(a, inverse, 'mul')
		self.assertTrue(ps_agree(product, series((0, 1))))
		self.assertGreater(product.precision, 0)

	def test_inverse_errors(self):
		with self.assertRaises(SeriesZeroDivision):
			ps_invert(PuiseuxSeries.zero())
		with self.assertRaises(IndeterminateOrder):
			ps_invert(PuiseuxSeries.zero(precision=2))

	def test_ramify(self):
		self.assertEqual(ps_ramify(series((QQ(1, 4), 1)), 4), series((1, 1)))
		self.assertEqual(ps_ramify(series((0, 1), (1, 1)), 2), series((0, 1), (2, 1)))
		self.assertEqual(ps_ramify(PuiseuxSeries.zero(), 3), PuiseuxSeries.zero())

	def test_exponent_denominators(self):
		self.assertEqual(exponent_denominators(series((half(1), 1))), {2})
		self.assertEqual(exponent_denominators(series((QQ(2, 3), 1))), {3})
		self.assertEqual(exponent_denominators(series((0, 1), (1, 1))), {1})
		self.assertTrue(ps_has_integral_exponents(series((0, 1), (QQ(7, 2), 1)), 3))

	def test_conjugate(self):
		self.assertEqual(ps_conjugate(series((half(1), 1), (1, 1))), series((half(1), -1), (1, 1)))

	def test_canonical_text(self):
		self.assertEqual(str(series((half(1), 1))), 't^(1/2)')
		self.assertEqual(str(series((half(1), -1))), '-t^(1/2)')
		self.assertEqual(
			str(series((0, 1), (2, half(1)), (4, QQ(-1, 8)), precision=6)),
			'1 + 1/2*t^2 - 1/8*t^4 + O(t^6)',
		)
		self.assertEqual(str(PuiseuxSeries.zero()), '0')

	@given(random_series, random_series, random_series)
	@settings(derandomize=True, deadline=None, max_examples=1000)
	def test_truncated_ring_axioms(self, a, b, c):
		self.assertTrue(ps_agree((a + b) + c, a + (b + c)))
		self.assertTrue(ps_agree(a * b, b * a))
		self.assertTrue(ps_agree(a * (b + c), a * b + a * c))
		if a.terms and b.terms:
			self.assertEqual(ps_ord(a * b).value, ps_ord(a).value + ps_ord(b).value)

	@given(random_series, st.integers(1, 6))
	@settings(derandomize=True, deadline=None, max_examples=100)
	def test_ramify_then_root_recovers(self, a, m):
		self.assertEqual(ps_substitute_power(ps_ramify(a, m), QQ(1, m)), a)


class NumericEvaluationTest(SimpleTestCase):
	def test_square_root(self):
		lo, hi = ps_eval_numeric(series((half(1), 1)), QQ(1, 4), QQ(1, 1000))
		self.assertLessEqual(hi - lo, QQ(1, 1000))
		self.assertTrue(lo <= QQ(1, 2) <= hi)

	def test_rational_sum_is_exact(self):
		a = series((0, 1), (2, half(1)), (4, QQ(-1, 8)))
		u = QQ(1, 100)
		expected = 1 + u**2 / 2 - u**4 / 8
		self.assertEqual(ps_eval_numeric(a, u, QQ(1, 10**12)), (expected, expected))

	def test_zero(self):
		self.assertEqual(ps_eval_numeric(PuiseuxSeries.zero(), QQ(1, 3), QQ(1, 10)), (0, 0))

	def test_non_positive_point(self):
		with self.assertRaises(EvaluationPointError):
			ps_eval_numeric(series((0, 1)), 0, QQ(1, 10))


class NewtonPuiseuxTest(SimpleTestCase):
	def test_quartic_gives_square_roots(self):
		branches = newton_puiseux(Y**4 - t**2, order=8)
		self.assertEqual([str(b) for b in branches], ['-t^(1/2)', 't^(1/2)'])
		for branch in branches:
			self.assertTrue(branch.residual.is_infinite)

	def test_cusp(self):
		branches = newton_puiseux(Y**3 - t**2, order=8)
		self.assertEqual([str(b) for b in branches], ['t^(2/3)'])

	def test_square_root_of_one_plus_t2(self):
		branches = newton_puiseux(Y**2 - (1 + t**2), order=6)
		self.assertEqual(
			[str(b) for b in branches],
			['-1 - 1/2*t^2 + 1/8*t^4 + O(t^6)', '1 + 1/2*t^2 - 1/8*t^4 + O(t^6)'],
		)
		for branch in branches:
			self.assertGreaterEqual(branch.residual.value, 6)

	def test_no_real_branches(self):
		self.assertEqual(len(newton_puiseux(Y**2 + 1 + t**2, order=8)), 0)

	def test_pole_branch_after_dividing_out_y(self):
		F = 3 * Y**3 + 2 * t**2 * Y**3 - t**4 * Y**4 + 3 * t**4 * Y
		branches = newton_puiseux(F, order=12)
		self.assertEqual([b.order.value for b in branches if b.is_negative], [-4])
		coefficients = coefficient_series(F)
		for branch in branches:
			self.assertTrue(branch.residual.at_least(12))
			exact = PuiseuxSeries(branch.series.terms)
			self.assertTrue(ps_ord(ps_evaluate(coefficients, exact)).at_least(12))

	def test_negative_order_branch(self):
		(branch,) = newton_puiseux(t * Y - 1, order=4)
		self.assertTrue(branch.is_negative)
		self.assertEqual(str(branch), 't^(-1)')

	def test_squarefree_reduction(self):
		branches = newton_puiseux((Y - t) ** 2, order=4)
		self.assertTrue(branches.squarefree_reduced)
		self.assertEqual([str(b) for b in branches], ['t'])

	def test_zero_relation(self):
		with self.assertRaises(ZeroPolynomialError):
			newton_puiseux(BIVARIATE.zero)

	def test_irrational_coefficients(self):
		(branch,) = newton_puiseux(Y**3 - 2 * t, order=4)
		((exponent, coeff),) = branch.series.terms
		self.assertEqual(exponent, QQ(1, 3))
		self.assertEqual(coeff**3, FieldElement.rational(2))

	def test_numeric_consistency(self):
		F = Y**2 - (1 + t**2)
		u = QQ(1, 100)
		specialized = UNIVARIATE.from_dict(_specialize(F, u))
		roots = [value for value, _ in real_roots(specialized)]
		for branch in newton_puiseux(F, order=6):
			lo, hi = ps_eval_numeric(branch.series, u, QQ(1, 10**12))
			tolerance = QQ(1, 10**9)
			self.assertTrue(
				any(
					root.refined(QQ(1, 10**12)).bounds()[0] > lo - tolerance
					and root.refined(QQ(1, 10**12)).bounds()[1] < hi + tolerance
					for root in roots
				)
			)

	@given(
		st.dictionaries(
			st.tuples(st.integers(0, 4), st.integers(0, 4)),
			st.integers(-3, 3).filter(bool),
			min_size=2,
			max_size=6,
		)
	)
	@settings(derandomize=True, deadline=None, max_examples=200)
	def test_branches_substitute_back(self, terms):
		F = BIVARIATE.from_dict({k: QQ(v) for k, v in terms.items()})
		assume(F.degree(1) >= 1)
		assume(F.gcd(F.diff(Y)).degree(1) == 0)
		branches = newton_puiseux(F, order=12, tower_depth=8)
		self.assertLessEqual(len(branches), branches.degree)
		coefficients = coefficient_series(F)
		for branch in branches:
			self.assertTrue(branch.residual.at_least(12))
			exact = PuiseuxSeries(branch.series.terms)
			self.assertTrue(ps_ord(ps_evaluate(coefficients, exact)).at_least(12))


def _specialize(F, u):
	values = {}
	for (a, j), c in F.items():
		values[(j,)] = values.get((j,), QQ.zero) + c * u**a
	return values
