import json
import sys

from config import get_log_level


def log_event(tag, **kwargs):
    """
    One line per event on stderr: [TAG] | key=value | ...
    Never raises; reports go to stdout and must stay clean.
    """
    if get_log_level() == "quiet":
        return
    try:
        parts = [f"[{tag}]"]
        for k, v in kwargs.items():
            if isinstance(v, (dict, list, tuple)):
                try:
                    v = json.dumps(v, ensure_ascii=False, default=str)
                except Exception:
                    v = str(v)
            else:
                v = str(v)

            if len(v) > 300:
                v = v[:300] + "..."

            parts.append(f"{k}={v}")
        print(" | ".join(parts), file=sys.stderr)
    except Exception as e:
        print(f"[LOG_EVENT_FAILED] tag={tag} error={repr(e)}", file=sys.stderr)


def log_debug(tag, **kwargs):
    if get_log_level() == "debug":
        log_event(tag, **kwargs)
