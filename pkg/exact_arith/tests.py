from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from .algebraic import RealAlgebraic, alg_op, alg_sign, real_roots, sqrt
from .exceptions import ArityMismatch, ExactZeroDivision, ZeroPolynomialError
from .fields import FieldElement, field_real_roots, join_fields
from .polys import (
	T,
	UNIVARIATE,
	count_roots,
	format_polynomial,
	isolate_real_roots,
	poly_arith,
	polynomial_ring,
	value_at,
)

XYZ = polynomial_ring(['x', 'y', 'z'])
x, y, z = XYZ.gens

small_polys = st.dictionaries(
	st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
	st.integers(-6, 6),
	max_size=5,
).map(lambda terms: XYZ.from_dict({k: QQ(v) for k, v in terms.items() if v}))

univariate_polys = st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(
	lambda cs: UNIVARIATE.from_dict({(i,): QQ(c) for i, c in enumerate(cs) if c})
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(
	lambda f: QQ(f.numerator, f.denominator)
)


class PolyArithTest(SimpleTestCase):
	def test_sum_and_product(self):
		self.assertEqual(poly_arith(x + y, x - y, 'mul'), x**2 - y**2)
		self.assertEqual(poly_arith(x + y, x - y, 'add'), 2 * x)
		self.assertEqual(poly_arith(x, x, 'sub'), XYZ.zero)

	def test_arity_mismatch(self):
		other = polynomial_ring(['a', 'b'])
		with self.assertRaises(ArityMismatch):
			poly_arith(x, other.gens[0], 'add')

	def test_same_arity_other_names(self):
		other = polynomial_ring(['a', 'b', 'c'])
		self.assertEqual(poly_arith(x, other.gens[0], 'add'), 2 * x)

	def test_unknown_operation(self):
		with self.assertRaises(ValueError):
			poly_arith(x, y, 'div')

	def test_canonical_text(self):
		self.assertEqual(format_polynomial(x**3 - z * x**2), 'x^3 - x^2*z')
		self.assertEqual(format_polynomial(-x / 2 + 1), '-1/2*x + 1')
		self.assertEqual(format_polynomial(XYZ.zero), '0')

	@given(small_polys, small_polys, small_polys)
	@settings(derandomize=True, deadline=None, max_examples=200)
	def test_ring_axioms(self, a, b, c):
		self.assertEqual(poly_arith(poly_arith(a, b, 'add'), c, 'add'), poly_arith(a, poly_arith(b, c, 'add'), 'add'))
		self.assertEqual(poly_arith(a, b, 'mul'), poly_arith(b, a, 'mul'))
		self.assertEqual(
			poly_arith(a, poly_arith(b, c, 'add'), 'mul'),
			poly_arith(poly_arith(a, b, 'mul'), poly_arith(a, c, 'mul'), 'add'),
		)


class RootIsolationTest(SimpleTestCase):
	def test_two_roots_of_t2_minus_2(self):
		intervals = isolate_real_roots(T**2 - 2)
		self.assertEqual(len(intervals), 2)
		(a, b), (c, d) = intervals
		self.assertTrue(a < b <= c < d)
		self.assertLess(a, -1)
		self.assertGreater(d, 1)

	def test_no_real_roots(self):
		self.assertEqual(isolate_real_roots(T**2 + 1), [])

	def test_single_real_root_of_cubic(self):
		intervals = isolate_real_roots(T**3 - 1)
		self.assertEqual(len(intervals), 1)
		lo, hi = intervals[0]
		self.assertTrue(lo < 1 < hi)

	def test_zero_polynomial(self):
		with self.assertRaises(ZeroPolynomialError):
			isolate_real_roots(UNIVARIATE.zero)

	def test_endpoints_are_not_roots(self):
		for lo, hi in isolate_real_roots(T * (T - 1) * (T - 2) * (2 * T - 1)):
			self.assertNotEqual(value_at(T * (T - 1) * (T - 2) * (2 * T - 1), lo), 0)
			self.assertNotEqual(value_at(T * (T - 1) * (T - 2) * (2 * T - 1), hi), 0)

	@given(univariate_polys)
	@settings(derandomize=True, deadline=None, max_examples=100)
	def test_intervals_count_every_root(self, p):
		if p.degree() < 1:
			return
		f = p.sqf_part()
		intervals = isolate_real_roots(p)
		for lo, hi in intervals:
			self.assertEqual(count_roots(f, lo, hi), 1)
		for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
			self.assertLessEqual(hi, lo)
		self.assertEqual(len(intervals), len(real_roots(p)))


class RealAlgebraicTest(SimpleTestCase):
	def test_sqrt2_squared(self):
		r = sqrt(2)
		self.assertEqual(alg_op(r, r, 'mul'), RealAlgebraic.from_rational(2))
		self.assertTrue(alg_op(r, r, 'mul').is_rational)

	def test_adding_zero(self):
		r = sqrt(2)
		self.assertEqual(alg_op(r, RealAlgebraic.from_rational(0), 'add'), r)

	def test_sqrt2_doubled(self):
		total = alg_op(sqrt(2), sqrt(2), 'add')
		self.assertEqual(total, sqrt(8))
		self.assertEqual(format_polynomial(total.minimal_poly), 'T^2 - 8')

	def test_signs(self):
		self.assertEqual(alg_sign(sqrt(2) - sqrt(3)), -1)
		self.assertEqual(alg_sign(sqrt(3) - sqrt(2)), 1)
		self.assertEqual(alg_sign(sqrt(2) * sqrt(3) - sqrt(6)), 0)

	def test_ordering(self):
		roots = [value for value, _ in real_roots((T**2 - 2) * (T - 1))]
		self.assertEqual(roots[1], RealAlgebraic.from_rational(1))
		self.assertTrue(roots[0] < roots[1] < roots[2])

	def test_inverse(self):
		r = sqrt(2)
		self.assertEqual(r * r.inverse(), RealAlgebraic.from_rational(1))
		with self.assertRaises(ExactZeroDivision):
			RealAlgebraic.from_rational(0).inverse()

	def test_rational_roots_are_canonical(self):
		(value, multiplicity), = real_roots((2 * T - 1) ** 2)
		self.assertTrue(value.is_rational)
		self.assertEqual(value.rational, QQ(1, 2))
		self.assertEqual(multiplicity, 2)

	def test_text(self):
		self.assertEqual(str(RealAlgebraic.from_rational(QQ(-3, 4))), '-3/4')
		self.assertTrue(str(sqrt(2)).startswith('root(T^2 - 2, ['))

	@given(rationals, rationals, rationals)
	@settings(derandomize=True, deadline=None, max_examples=60)
	def test_equality_is_transitive(self, a, b, c):
		# values of the form r + sqrt(2)
		va, vb, vc = (sqrt(2) + r for r in (a, b, c))
		if va == vb and vb == vc:
			self.assertEqual(va, vc)
		self.assertEqual(va == vb, alg_sign(va - vb) == 0)


class NumberFieldTest(SimpleTestCase):
	def test_zero_test_in_extension(self):
		r2 = FieldElement.from_algebraic(sqrt(2))
		self.assertTrue((r2 * r2 - 2).is_zero)
		self.assertFalse((r2 - 1).is_zero)

	def test_inverse(self):
		r2 = FieldElement.from_algebraic(sqrt(2))
		element = r2 + 1
		self.assertEqual(element * element.inverse(), FieldElement.rational(1))

	def test_join_of_two_square_roots(self):
		r2 = FieldElement.from_algebraic(sqrt(2))
		r3 = FieldElement.from_algebraic(sqrt(3))
		product = r2 * r3
		self.assertEqual(product.value, sqrt(6))
		self.assertEqual(product.field.depth, 2)
		join = join_fields(r2.field, r3.field)
		self.assertEqual(join.left.value, sqrt(2))
		self.assertEqual(join.right.value, sqrt(3))

	def test_roots_over_rationals(self):
		roots = field_real_roots([FieldElement.rational(c) for c in (-2, 0, 1)])
		self.assertEqual([r.value.value for r in roots], [-sqrt(2), sqrt(2)])

	def test_roots_over_extension(self):
		# Y^2 - sqrt(2) has roots +- 2^(1/4)
		r2 = FieldElement.from_algebraic(sqrt(2))
		roots = field_real_roots([-r2, FieldElement.rational(0), FieldElement.rational(1)], base=r2.field)
		self.assertEqual(len(roots), 2)
		for root in roots:
			self.assertEqual(root.value**4, FieldElement.rational(2))
			self.assertEqual(root.multiplicity, 1)

	def test_linear_root(self):
		(root,) = field_real_roots([FieldElement.rational(-1), FieldElement.rational(2)])
		self.assertEqual(root.value, FieldElement.rational(QQ(1, 2)))
