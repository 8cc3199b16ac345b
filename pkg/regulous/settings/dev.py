from .base import *

DEBUG = True

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = "django-insecure-regulous-dev-key"

ALLOWED_HOSTS = []


try:
    from .local import *
except ImportError:
    pass
