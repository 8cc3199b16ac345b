import difflib
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from cli.exceptions import SessionError
from cli.parser import parse_session, read_session
from cli.runner import run_session
from regulous.conf import option


class Command(BaseCommand):
    help = "Run every corpus session and compare its report with the golden file"

    def add_arguments(self, parser):
        parser.add_argument("directory", nargs="?", help="Corpus directory (default: the bundled corpus)")
        parser.add_argument("--update", action="store_true", help="Rewrite the golden reports")
        parser.add_argument("--workers", type=int, help="Also run with this many workers and compare")

    def handle(self, *args, **options):
        directory = Path(options["directory"] or option("CORPUS_DIR"))
        sessions = sorted(directory.glob("*.session"))
        if not sessions:
            raise CommandError(f"no sessions in {directory}", returncode=2)
        if options["workers"] is not None and options["workers"] < 1:
            raise CommandError("--workers must be at least 1", returncode=2)

        failures = []
        for path in sessions:
            problem = self.check_session(path, options)
            if problem:
                failures.append(problem)
                self.stderr.write(problem)

        if failures:
            raise CommandError(f"{len(failures)} of {len(sessions)} corpus sessions failed", returncode=1)
        self.stdout.write(self.style.SUCCESS(f"{len(sessions)} corpus sessions match"))

    def check_session(self, path, options):
        golden = path.with_suffix(".golden")
        try:
            session = parse_session(read_session(path))
        except SessionError as error:
            return f"{path.name}: {error}"

        report = run_session(session, workers=1).text()
        if run_session(session, workers=1).text() != report:
            return f"{path.name}: report differs between two runs"
        if options["workers"] and run_session(session, workers=options["workers"]).text() != report:
            return f"{path.name}: report differs with {options['workers']} workers"

        if options["update"]:
            golden.write_text(report, encoding="ascii")
            self.stdout.write(self.style.WARNING(f"updated {golden.name}"))
            return None
        if not golden.exists():
            return f"{path.name}: missing {golden.name}"
        expected = read_session(golden)
        if expected != report:
            diff = difflib.unified_diff(
                expected.splitlines(keepends=True),
                report.splitlines(keepends=True),
                fromfile=golden.name,
                tofile="report",
            )
            return f"{path.name}: report does not match {golden.name}\n" + "".join(diff)
        self.stdout.write(self.style.SUCCESS(f"ok {path.name}"))
        return None
