from django.apps import AppConfig


class SubstitutionConfig(AppConfig):
    name = "substitution"
    verbose_name = "Substitution along arcs"
