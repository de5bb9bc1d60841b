import json
import logging
import os
from pathlib import Path
from typing import Iterable, List, Union

from pydantic import ValidationError

from systems.errors import IoFailure
from systems.models import ResultRecord

logger = logging.getLogger(__name__)


class ResultStore:
    """Append-only JSONL store of batch results."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    async def initialize(self):
        """Make sure the output directory exists"""
        try:
            os.makedirs(self.path.parent, exist_ok=True)
        except OSError as e:
            raise IoFailure(f"Cannot create {self.path.parent}: {e}")

    async def append_records(self, records: Iterable[ResultRecord]) -> int:
        """Append records as JSON lines; returns the number written"""
        await self.initialize()
        lines = [json.dumps(r.model_dump(), sort_keys=True, ensure_ascii=False) for r in records]
        try:
            with open(self.path, 'a', encoding='utf-8') as f:
                for line in lines:
                    f.write(line + "\n")
        except OSError as e:
            logger.error(f"Error writing {self.path}: {e}")
            raise IoFailure(f"Cannot write {self.path}: {e}")
        return len(lines)

    async def load_records(self) -> List[ResultRecord]:
        """Load every record; a missing file is an empty store"""
        if not self.path.exists():
            return []
        records = []
        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                for number, line in enumerate(f, start=1):
                    if not line.strip():
                        continue
                    try:
                        records.append(ResultRecord.model_validate_json(line))
                    except ValidationError as e:
                        raise IoFailure(f"{self.path}:{number}: malformed record ({e.error_count()} errors)")
        except OSError as e:
            raise IoFailure(f"Cannot read {self.path}: {e}")
        return records

    async def clear(self):
        """Truncate the store"""
        await self.initialize()
        try:
            with open(self.path, 'w', encoding='utf-8'):
                pass
        except OSError as e:
            raise IoFailure(f"Cannot truncate {self.path}: {e}")
