from django.apps import AppConfig


class ExactArithConfig(AppConfig):
    name = "exact_arith"
    verbose_name = "Exact arithmetic"
