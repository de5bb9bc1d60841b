"""The enumerate command: evaluate a whole matrix family into a JSONL file."""
import argparse
import logging

from systems.enumeration import TASKS, run_batch
from systems.errors import UsageError
from systems.models import FamilySpec

logger = logging.getLogger(__name__)


class BatchCommands:
    def __init__(self, app):
        self.app = app

    def register(self, subparsers):
        p = subparsers.add_parser("enumerate", help="Evaluate every member of a family spec")
        p.add_argument("--spec", required=True, help="FamilySpec JSON file")
        p.add_argument("--out", required=True, help="JSONL file the records are appended to")
        p.add_argument("--tasks", default="sw,pontryagin", help="Comma list out of: sw, pontryagin")
        p.add_argument("--fresh", action="store_true", help="Truncate --out before writing")
        p.set_defaults(handler=self.enumerate)

    def enumerate(self, args: argparse.Namespace) -> int:
        tasks = {t.strip() for t in args.tasks.split(",") if t.strip()}
        if not tasks or not tasks <= TASKS:
            raise UsageError(f"--tasks must name some of {sorted(TASKS)}, got {args.tasks!r}")
        spec = FamilySpec.model_validate(self.app.load_json(args.spec))
        summary = run_batch(spec, args.out, tasks, args.threads, args.fresh)
        self.app.emit(summary)
        return 0


def setup(app):
    app.add_commands(BatchCommands(app))
