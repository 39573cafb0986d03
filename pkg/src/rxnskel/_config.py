"""Size caps. ``RXNSKEL_MAX_N`` overrides the background-size caps."""
import os

MAX_UNIVERSE = 1 << 12
DEFAULT_TABLE_CAP = 12
DEFAULT_TRANSITION_CAP = 10
DEFAULT_ORACLE_CAP = 8


def _env_cap():
    raw = os.environ.get("RXNSKEL_MAX_N")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"RXNSKEL_MAX_N must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("RXNSKEL_MAX_N must be non-negative")
    return value


def table_cap():
    """Largest background size for which 2^n-entry tables are built."""
    env = _env_cap()
    return DEFAULT_TABLE_CAP if env is None else env


def transition_cap():
    """Largest background size for materialized transition graphs (up to 4^n edges)."""
    env = _env_cap()
    return DEFAULT_TRANSITION_CAP if env is None else env
