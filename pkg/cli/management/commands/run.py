from django.core.management.base import BaseCommand, CommandError

from cli.exceptions import SessionError
from cli.forms import RunOptionsForm
from cli.parser import parse_session, read_session
from cli.runner import run_session


class Command(BaseCommand):
    help = "Run a session file and print its report"

    def add_arguments(self, parser):
        parser.add_argument("file", help="Session file")
        parser.add_argument("--order", type=int, help="Target truncation order")
        parser.add_argument("--budget", type=int, help="Slice budget of witness searches")
        parser.add_argument("--tower-depth", type=int, dest="tower_depth", help="Cap on field extensions")
        parser.add_argument("--workers", type=int, help="Concurrent slices in witness searches")
        parser.add_argument("--machine", action="store_true", help="Append one JSON record per block")

    def handle(self, *args, **options):
        form = RunOptionsForm(data={name: options[name] for name in RunOptionsForm.base_fields})
        if not form.is_valid():
            raise CommandError(form.error_text(), returncode=2)

        try:
            session = parse_session(read_session(options["file"]))
        except (OSError, UnicodeDecodeError) as error:
            raise CommandError(f"cannot read {options['file']}: {error}", returncode=2)
        except SessionError as error:
            raise CommandError(f"{options['file']}: {error}", returncode=2)

        report = run_session(session, **form.cleaned_data)
        self.stdout.write(report.text(), ending="")
        if options["machine"]:
            self.stdout.write(report.machine(), ending="")

        failed = report.failed
        if failed:
            raise CommandError(f"{len(failed)} of {len(report.blocks)} queries failed", returncode=1)
