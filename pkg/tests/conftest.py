import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "logint",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "logint"))

#: Sample count for the randomized property suites.
N_PROPERTY = 10_000
