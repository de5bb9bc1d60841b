import json
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional, Union

from config import settings
from systems.errors import BottbordError

LOG_FORMAT = '%(asctime)s | %(levelname)s | %(name)s | %(message)s'


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None, to_file: Optional[bool] = None):
    """Setup logging configuration.

    Console output goes to stderr: stdout is reserved for JSON reports.
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    log_level = getattr(logging, level_name, logging.INFO)
    to_file = settings.LOG_TO_FILE if to_file is None else to_file

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handlers = [console_handler]
    file_error = None

    if to_file:
        directory = log_dir or settings.LOG_DIR
        try:
            os.makedirs(directory, exist_ok=True)
            file_handler = RotatingFileHandler(
                filename=os.path.join(directory, "bottbord.log"),
                maxBytes=5 * 1024 * 1024,  # 5 MB
                backupCount=3,
                encoding="utf-8"
            )
            file_handler.setLevel(log_level)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            handlers.append(file_handler)
        except OSError as e:
            file_error = e

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers = handlers
    if file_error is not None:
        logging.getLogger(__name__).warning(f"File logging disabled: {file_error}")

    # asyncio is chatty at DEBUG
    logging.getLogger('asyncio').setLevel(logging.WARNING)


def load_json_data(path: Union[str, Path]) -> Dict[str, Any]:
    """Load a JSON object from file, raising on anything but a JSON object."""
    filepath = Path(path)
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise BottbordError(f"Input file not found: {filepath}")
    except json.JSONDecodeError as e:
        raise BottbordError(f"Invalid JSON in {filepath}: {e}")
    if not isinstance(data, dict):
        raise BottbordError(f"{filepath}: expected a JSON object")
    return data


def dump_json(payload: Any) -> str:
    """Canonical JSON text: identical payloads give byte-identical output."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human readable string"""
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    elif seconds < 60:
        return f"{seconds:.2f}s"
    elif seconds < 3600:
        minutes = int(seconds // 60)
        return f"{minutes}m {int(seconds % 60)}s"
    else:
        hours = int(seconds // 3600)
        minutes = int((seconds % 3600) // 60)
        return f"{hours}h {minutes}m"


def worker_count(requested: Optional[int] = None) -> int:
    """Number of batch workers, capped by BOTTBORD_THREADS."""
    cap = max(1, settings.BOTTBORD_THREADS)
    if requested is None:
        return cap
    return max(1, min(cap, requested))
