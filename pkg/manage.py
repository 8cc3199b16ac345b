#!/usr/bin/env python
"""
Command line of regulous: `manage.py run <session>` executes a session file,
`manage.py check_corpus` replays the bundled sessions against their goldens.
"""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "regulous.settings.dev")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError("regulous runs on Django; install the project's requirements first") from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
