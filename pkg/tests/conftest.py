"""Deterministic hypothesis configuration.

The gcd-backed strategies have heavy-tailed runtimes, so randomized
example selection makes the suite flaky in wall-clock terms.  Derandomize
everything: each run explores the same examples, and a budget that passed
once keeps passing.
"""
from hypothesis import HealthCheck, settings

settings.register_profile(
    "p2lab",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.filter_too_much,
                           HealthCheck.too_slow],
)
settings.load_profile("p2lab")
