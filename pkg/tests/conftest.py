import os

from hypothesis import HealthCheck, settings

# Derandomized so CI runs are reproducible; TLCENTER_SEED picks another stream.
settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    derandomize=os.environ.get("TLCENTER_SEED") is None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
