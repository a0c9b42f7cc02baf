import functools
import math
import time
from enum import Enum
from typing import Any

import numpy as np

from src.core.logger_setup import get_logger

__all__ = ["serialize_for_json", "timing_decorator"]


def serialize_for_json(obj: Any) -> Any:
    """
    Prepare a report for json.dumps: numpy scalars and arrays become Python
    values, NaN becomes None, complex numbers become {"re", "im"} and enum
    members their value.

    Args:
        obj: The object to serialize

    Returns:
        A JSON-serializable version of the object
    """
    if isinstance(obj, dict):
        return {str(k): serialize_for_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [serialize_for_json(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return serialize_for_json(obj.tolist())
    if isinstance(obj, Enum):
        return serialize_for_json(obj.value)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if math.isnan(value) else value
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": serialize_for_json(obj.real), "im": serialize_for_json(obj.imag)}
    return obj


def timing_decorator(func):
    """Log the wall time of each call at DEBUG level on the current run logger."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger()
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        end_time = time.perf_counter()
        logger.debug(
            f"{func.__name__} execution time: {end_time - start_time:.4f} seconds")
        return result
    return wrapper
