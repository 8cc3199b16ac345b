import json
import os
import subprocess
import sys
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from regulous.conf import option

from .exceptions import SessionError
from .forms import RunOptionsForm
from .parser import parse_session, tokenize
from .printer import SCHEMA
from .runner import run_session

CARTAN = 'vars x y z; variety x^3 - z*(x^2+y^2); arc A = (t, t, 1/2*t); limit (x^3)/(x^2+y^2) along A;'
OCTIC = 'vars x y z1 z2; variety x^8 - (z1^2 + z2^2)*y^8; set order 8;'


def write_session(directory, name, text):
	path = Path(directory) / name
	path.write_text(text, encoding='ascii')
	return str(path)


class TokenizeTest(SimpleTestCase):
	def test_positions(self):
		tokens = tokenize('vars x;\n  arc A')
		self.assertEqual([(t.text, t.line, t.column) for t in tokens[3:5]], [('arc', 2, 3), ('A', 2, 7)])
		self.assertEqual(tokens[-1].kind, 'end')

	def test_comments_and_line_endings(self):
		tokens = tokenize('vars x; # declare\r\nvars y;')
		self.assertEqual([t.text for t in tokens if t.kind != 'end'], ['vars', 'x', ';', 'vars', 'y', ';'])
		self.assertEqual(tokens[3].line, 2)

	def test_non_ascii(self):
		with self.assertRaises(SessionError) as caught:
			tokenize('vars ξ;')
		self.assertEqual(caught.exception.code, 'syntax')
		self.assertEqual(caught.exception.column, 6)


class ParseSessionTest(SimpleTestCase):
	def test_cartan_session(self):
		session = parse_session(CARTAN)
		self.assertEqual(len(session.arcs), 1)
		self.assertEqual(len(session.queries), 1)
		self.assertEqual(str(session.arcs['A']), '(t, t, 1/2*t)')
		self.assertEqual(str(session.queries[0]), 'limit (x^3)/(x^2 + y^2) along A')

	def test_relation_session(self):
		session = parse_session('vars x; relation P = T^2 - (1+x^2); pointlift P at (0);')
		self.assertEqual(str(session.queries[0]), 'pointlift P at (0)')
		self.assertEqual(session.to_text().splitlines()[1], 'relation P = T^2 - x^2 - 1;')

	def test_malformed_exponent(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('arc A = (t^(1/0))')
		self.assertEqual(caught.exception.code, 'exponent')
		self.assertIn('line 1, column 12', str(caught.exception))

	def test_fractional_polynomial_exponent(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x; variety x^(1/2);')
		self.assertEqual(caught.exception.code, 'exponent')

	def test_undeclared_name(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x y;\nvariety x + w;')
		error = caught.exception
		self.assertEqual(error.code, 'undeclared')
		self.assertEqual((error.line, error.column), (2, 13))
		self.assertEqual(error.params, {'line': 2, 'column': 13})

	def test_undeclared_arc(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x; verify B;')
		self.assertEqual(caught.exception.code, 'undeclared')

	def test_arity(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x y; arc A = (t);')
		self.assertEqual(caught.exception.code, 'arity')
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x y; witness (x)/(y) at (0, 0, 1);')
		self.assertEqual(caught.exception.code, 'arity')

	def test_duplicates(self):
		for text in (
			'vars x; vars y;',
			'vars x x;',
			'vars x; arc A = (t); arc A = (2*t);',
			'vars x; variety x; variety x^2;',
		):
			with self.subTest(text=text), self.assertRaises(SessionError) as caught:
				parse_session(text)
			self.assertEqual(caught.exception.code, 'duplicate')

	def test_syntax(self):
		for text in ('vars x', 'vars x; frobnicate;', 'vars T;', 'vars x; limit (x)/(0) along (t);'):
			with self.subTest(text=text), self.assertRaises(SessionError) as caught:
				parse_session(text)
			self.assertEqual(caught.exception.code, 'syntax')

	def test_negative_arc_component(self):
		with self.assertRaises(SessionError) as caught:
			parse_session('vars x; arc A = (t^(-1));')
		self.assertEqual(caught.exception.code, 'exponent')

	def test_root_interval_must_isolate(self):
		with self.assertRaises(SessionError):
			parse_session('vars x; arc A = (root(T^2 - 2, [-2, 2])*t);')

	def test_empty(self):
		session = parse_session('# nothing here\n')
		self.assertEqual(session.queries, [])
		self.assertEqual(session.to_text(), '')

	def test_round_trip(self):
		text = (
			'vars x y;\n'
			'variety y^2 - x^3, x*y;\n'
			'function F = (1/2*x + y)/(x^2);\n'
			'arc A = (1 + 1/2*t^2 + O(t^4), root(T^2 - 2, [1, 2])*t^(3/2));\n'
			'relation P = T^2 - (1 + x^2);\n'
			'set order 12;\n'
			'limit F along A;\n'
			'lift P along (t, -t);\n'
			'witness (x)/(y) at (0, 0) budget 5;\n'
			'branches Y^2 - t^3 order 6;\n'
			'lojprobe F at (1, 0) arcs A;\n'
			'zeroset F arcs A;\n'
			'singular;\n'
			'slice at (0, 0) along (1, 1/2) (0, 1);\n'
			'extend F along A;\n'
		)
		session = parse_session(text)
		printed = session.to_text()
		self.assertEqual(parse_session(printed), session)
		self.assertEqual(parse_session(printed).to_text(), printed)
		self.assertIn('function F = (1/2*x + y)/(x^2);', printed)


	def test_function_text_keeps_its_denominator(self):
		session = parse_session('vars x y; function F = x/2 + y/2; function G = x/y + 1/y; function H = x/y + y/x;')
		self.assertEqual(
			session.to_text().splitlines()[1:],
			['function F = (1/2*x + 1/2*y)/(1);', 'function G = (x + 1)/(y);', 'function H = (x^2 + y^2)/(x*y);'],
		)


class RunSessionTest(SimpleTestCase):
	def test_empty_session(self):
		report = run_session(parse_session(''))
		self.assertEqual(report.text(), '')
		self.assertEqual(report.machine(), '')

	def test_octic_lifting(self):
		session = parse_session(OCTIC + 'lift T^4 - (z1^2+z2^2) along (0,0,0,t);')
		block = run_session(session).blocks[0]
		self.assertEqual(block.record['liftings'], ['-t^(1/2)', 't^(1/2)'])
		self.assertIn('    t^(1/2)', block.text().splitlines())
		self.assertEqual(block.record['ramification'], 2)
		self.assertEqual(block.lines[0], 'ramification: 2')

	def test_octic_witness(self):
		session = parse_session(OCTIC + 'witness (x)/(y) at (0,0,1,0) budget 20;')
		block = run_session(session).blocks[0]
		self.assertEqual(block.record['outcome'], 'TWO-LIMITS')
		self.assertEqual(
			sorted(block.record['witnesses']),
			['(t, -t, 1, 0): FINITE(-1)', '(t, t, 1, 0): FINITE(1)'],
		)

	def test_lojasiewicz_on_octic_pole_arc(self):
		session = parse_session(OCTIC + 'arc A = (0, 0, 0, t); lojprobe (x^2)/(y^2) at (0, 0, 0, 0) arcs A;')
		report = run_session(session)
		self.assertEqual(report.failed, [])
		self.assertEqual(report.blocks[0].record['outcome'], 'N = 4')

	def test_failures_do_not_stop_the_run(self):
		session = parse_session('vars x; arc A = (t); lojprobe 1/x at (0) arcs A; verify A;')
		report = run_session(session)
		self.assertEqual(len(report.blocks), 2)
		self.assertEqual(report.blocks[0].lines, ('error: DivergentProbe: f diverges along A',))
		self.assertEqual(report.blocks[1].record['outcome'], 'ON-VARIETY')
		self.assertEqual(len(report.failed), 1)

	def test_set_applies_to_later_queries(self):
		session = parse_session('branches Y^2 - 1 - t; set order 3; branches Y^2 - 1 - t;')
		first, second = run_session(session, order=5).blocks
		self.assertEqual(first.record['order'], 5)
		self.assertEqual(second.record['order'], 3)

	def test_machine_records(self):
		report = run_session(parse_session(CARTAN))
		record = json.loads(report.machine())
		self.assertEqual(record['schema'], SCHEMA)
		self.assertEqual(record['query'], 'limit (x^3)/(x^2 + y^2) along A')
		self.assertEqual(record['limit'], 'FINITE(0)')
		self.assertEqual(record['series'], '1/2*t')

	def test_deterministic(self):
		session = parse_session(OCTIC + 'witness (x^2)/(y^2) at (0,0,1,0) budget 12;')
		self.assertEqual(run_session(session).text(), run_session(session, workers=4).text())


class RunOptionsFormTest(SimpleTestCase):
	def test_defaults(self):
		form = RunOptionsForm(data={})
		self.assertTrue(form.is_valid())
		self.assertEqual(form.cleaned_data['order'], None)

	def test_order_cap(self):
		form = RunOptionsForm(data={'order': option('ORDER_CAP') + 1})
		self.assertFalse(form.is_valid())
		self.assertIn('order', form.errors)

	def test_positive_values(self):
		form = RunOptionsForm(data={'budget': 0, 'workers': 0})
		self.assertFalse(form.is_valid())
		self.assertEqual(set(form.errors), {'budget', 'workers'})


class RunCommandTest(SimpleTestCase):
	def setUp(self):
		self.directory = tempfile.TemporaryDirectory()
		self.addCleanup(self.directory.cleanup)

	def test_prints_report(self):
		path = write_session(self.directory.name, 'line.session', 'vars x; relation P = T^2 - x^2; pointlift P at (0);')
		out = StringIO()
		call_command('run', path, stdout=out)
		self.assertEqual(out.getvalue(), '[1] pointlift P at (0)\n  values: 1\n    0\n')

	def test_machine_flag(self):
		path = write_session(self.directory.name, 'line.session', 'vars x; relation P = T^2 - x^2; pointlift P at (0);')
		out = StringIO()
		call_command('run', path, machine=True, stdout=out)
		record = json.loads(out.getvalue().splitlines()[-1])
		self.assertEqual(record['values'], ['0'])

	def test_parse_failure_exit_code(self):
		path = write_session(self.directory.name, 'bad.session', 'vars x; arc A = (t^(1/0));')
		with self.assertRaises(CommandError) as caught:
			call_command('run', path, stdout=StringIO())
		self.assertEqual(caught.exception.returncode, 2)

	def test_invalid_option_exit_code(self):
		path = write_session(self.directory.name, 'line.session', 'vars x;')
		with self.assertRaises(CommandError) as caught:
			call_command('run', path, order=0, stdout=StringIO())
		self.assertEqual(caught.exception.returncode, 2)

	def test_query_failure_exit_code(self):
		path = write_session(self.directory.name, 'pole.session', 'vars x; arc A = (t); lojprobe 1/x at (0) arcs A;')
		out = StringIO()
		with self.assertRaises(CommandError) as caught:
			call_command('run', path, stdout=out)
		self.assertEqual(caught.exception.returncode, 1)
		self.assertIn('error: DivergentProbe', out.getvalue())


class CheckCorpusTest(SimpleTestCase):
	def test_bundled_corpus_matches(self):
		out = StringIO()
		call_command('check_corpus', workers=4, stdout=out, stderr=StringIO())
		self.assertIn('corpus sessions match', out.getvalue())

	def test_manage_py_entry_point(self):
		result = subprocess.run(
			[sys.executable, 'manage.py', 'check_corpus'],
			cwd=settings.BASE_DIR,
			capture_output=True,
			text=True,
		)
		self.assertEqual(result.returncode, 0, result.stderr)
		self.assertIn('corpus sessions match', result.stdout)

	def test_corpus_sessions_round_trip(self):
		corpus = Path(option('CORPUS_DIR'))
		for path in sorted(corpus.glob('*.session')):
			with self.subTest(session=path.name):
				session = parse_session(path.read_text(encoding='ascii'))
				self.assertEqual(parse_session(session.to_text()), session)

	def test_mismatch_and_update(self):
		with tempfile.TemporaryDirectory() as directory:
			write_session(directory, 'one.session', 'vars x; relation P = T^2 - x^2; pointlift P at (0);')
			write_session(directory, 'one.golden', 'stale\n')
			with self.assertRaises(CommandError) as caught:
				call_command('check_corpus', directory, stdout=StringIO(), stderr=StringIO())
			self.assertEqual(caught.exception.returncode, 1)

			call_command('check_corpus', directory, update=True, stdout=StringIO())
			golden = Path(directory, 'one.golden').read_text(encoding='ascii')
			self.assertEqual(golden, '[1] pointlift P at (0)\n  values: 1\n    0\n')
			call_command('check_corpus', directory, stdout=StringIO())

	def test_empty_directory(self):
		with tempfile.TemporaryDirectory() as directory:
			os.makedirs(Path(directory, 'nested'))
			with self.assertRaises(CommandError) as caught:
				call_command('check_corpus', directory, stdout=StringIO())
			self.assertEqual(caught.exception.returncode, 2)
