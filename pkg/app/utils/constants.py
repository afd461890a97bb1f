"""Default values for bounds, sampling and reporting."""

DEFAULT_BOUND = 4
DEFAULT_SAMPLE_SIZE = 1000
DEFAULT_SEED = 20240601
DEFAULT_EXHAUSTIVE_LIMIT = 20000
DEFAULT_MAX_WITNESSES = 25
