import os
from dotenv import load_dotenv

# -------------------------------------------------
# Load environment variables
# -------------------------------------------------
load_dotenv()

SCHEMA_VERSION = 1

# -------------------------------------------------
# Logging / output
# -------------------------------------------------
LOG_LEVEL = os.getenv("ARRANGEMENT_LOG_LEVEL", "info").strip().lower()
REPORT_FORMAT = os.getenv("ARRANGEMENT_REPORT_FORMAT", "json").strip().lower()

# -------------------------------------------------
# Computation defaults
# -------------------------------------------------
DEFAULT_MAX_FLAG_LEN = os.getenv("ARRANGEMENT_MAX_FLAG_LEN", "").strip()
DEFAULT_ROOT_BOUND = os.getenv("ARRANGEMENT_ROOT_BOUND", "2").strip()
DEFAULT_METRIC_TOLERANCE = os.getenv("ARRANGEMENT_METRIC_TOLERANCE", "1e-9").strip()


def _env_warning(name, value, fallback):
    # imported lazily: events reads LOG_LEVEL from this module
    from events import log_event
    log_event("CONFIG_FALLBACK", setting=name, value=value, default=fallback)


def get_log_level():
    if LOG_LEVEL not in ("quiet", "info", "debug"):
        return "info"
    return LOG_LEVEL


def get_report_format():
    if REPORT_FORMAT not in ("json", "table"):
        _env_warning("ARRANGEMENT_REPORT_FORMAT", REPORT_FORMAT, "json")
        return "json"
    return REPORT_FORMAT


def get_max_flag_len():
    """None means "poset height"."""
    if not DEFAULT_MAX_FLAG_LEN:
        return None
    try:
        value = int(DEFAULT_MAX_FLAG_LEN)
        if value <= 0:
            raise ValueError(value)
        return value
    except ValueError:
        _env_warning("ARRANGEMENT_MAX_FLAG_LEN", DEFAULT_MAX_FLAG_LEN, "poset height")
        return None


def get_root_bound():
    try:
        value = int(DEFAULT_ROOT_BOUND)
        if value < 0:
            raise ValueError(value)
        return value
    except ValueError:
        _env_warning("ARRANGEMENT_ROOT_BOUND", DEFAULT_ROOT_BOUND, 2)
        return 2


def get_metric_tolerance():
    try:
        value = float(DEFAULT_METRIC_TOLERANCE)
        if value <= 0:
            raise ValueError(value)
        return value
    except ValueError:
        _env_warning("ARRANGEMENT_METRIC_TOLERANCE", DEFAULT_METRIC_TOLERANCE, 1e-9)
        return 1e-9
