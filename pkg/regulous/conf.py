from django.conf import settings

DEFAULTS = {
    "ORDER": 16,
    "BUDGET": 20,
    "TOWER_DEPTH": 3,
    "WORKERS": 1,
    "ORDER_CAP": 64,
}


def option(name):
    """Read one engine tunable from the REGULOUS setting"""
    configured = getattr(settings, "REGULOUS", {})
    if name in configured:
        return configured[name]
    return DEFAULTS[name]


def resolve(name, value):
    """Return value, or the configured default when it is None"""
    return option(name) if value is None else value
