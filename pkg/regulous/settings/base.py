"""
Django settings for the regulous project.

The project has no web surface: Django provides settings, logging
configuration, management commands and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
import os

PROJECT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
BASE_DIR = os.path.dirname(PROJECT_DIR)


# Application definition

INSTALLED_APPS = [
    "exact_arith",
    "puiseux",
    "geometry",
    "substitution",
    "cli",
]

# No models anywhere; an empty mapping keeps the test runner off the database.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Engine settings

REGULOUS = {
    # Target order N of every expansion, in t-exponent units.
    "ORDER": int(os.getenv("REGULOUS_ORDER", "16")),
    # Number of slice planes a witness search may consume.
    "BUDGET": int(os.getenv("REGULOUS_BUDGET", "20")),
    # Irrational generators a coefficient field may accumulate.
    "TOWER_DEPTH": int(os.getenv("REGULOUS_TOWER_DEPTH", "3")),
    "WORKERS": int(os.getenv("REGULOUS_WORKERS", "1")),
    # Ceiling for adaptive order doubling.
    "ORDER_CAP": int(os.getenv("REGULOUS_ORDER_CAP", "64")),
    "CORPUS_DIR": os.path.join(BASE_DIR, "cli", "corpus"),
}

LOG_LEVEL = os.getenv("REGULOUS_LOG_LEVEL", "WARNING")


# Logging
# Reports go to stdout, so every handler writes to stderr.

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in INSTALLED_APPS
    },
}
