from django.apps import AppConfig


class PuiseuxConfig(AppConfig):
    name = "puiseux"
    verbose_name = "Puiseux series"
