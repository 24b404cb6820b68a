"""Shared test configuration.

Exact rational arithmetic makes single examples slow, so the hypothesis
profile trades example count for depth and disables the wall-clock deadline.
"""
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")
