import argparse
import importlib
import json
import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

from pydantic import ValidationError

from config import settings
from systems.charmatrix import ReducedVectorMatrix
from systems.errors import BottbordError, UsageError
from systems.models import InputDocument
from utils.helpers import dump_json, load_json_data, setup_logging

logger = logging.getLogger(__name__)

COMMAND_MODULES = [
    "commands.analysis",
    "commands.verification",
    "commands.batch",
]


class BottbordApp:
    """Wires the command modules to one argument parser and one output stream."""

    def __init__(self, out: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.parser = argparse.ArgumentParser(
            prog="bottbord",
            description="Cohomology rings and cobordism checks for manifolds over products of simplices",
        )
        self.parser.add_argument("--threads", type=int, help="Worker cap for batch runs (BOTTBORD_THREADS)")
        self.parser.add_argument("--seed", type=int, default=None, help=f"Sampling seed (default {settings.SEED})")
        self.parser.add_argument("--log-level", default=None, help=f"Log level (default {settings.LOG_LEVEL})")
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="<command>")
        self.commands: List[Any] = []
        for name in COMMAND_MODULES:
            importlib.import_module(name).setup(self)

    def add_commands(self, group):
        group.register(self.subparsers)
        self.commands.append(group)
        logger.debug(f"Loaded command group {type(group).__name__}")

    def emit(self, payload: Any):
        self.out.write(dump_json(payload) + "\n")

    def load_json(self, path: str) -> Dict[str, Any]:
        return load_json_data(path)

    def load_matrix(self, path: str) -> ReducedVectorMatrix:
        return InputDocument.model_validate(self.load_json(path)).to_matrix()

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse already printed usage to stderr
            return 0 if e.code in (0, None) else 2

        setup_logging(level=args.log_level)
        try:
            if args.command is None:
                raise UsageError("No command given; see --help")
            return args.handler(args)
        except BottbordError as e:
            logger.error(f"{type(e).__name__}: {e}")
            return 2
        except ValidationError as e:
            logger.error(f"Invalid document: {e.error_count()} errors: {e.errors()[0]['msg']}")
            return 2
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"I/O error: {e}")
            return 2


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    return BottbordApp(out).run(argv)


if __name__ == "__main__":
    sys.exit(run())
