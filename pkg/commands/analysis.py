"""Single-manifold commands: validate, classify, numbers, cobordism, ring."""
import argparse
import logging

from systems.charmatrix import classify, validate_characteristic
from systems.cobordism import pontryagin_report, sw_report, verdict
from systems.errors import UsageError
from systems.ring import Engine, build_ring

logger = logging.getLogger(__name__)


class AnalysisCommands:
    def __init__(self, app):
        self.app = app

    def register(self, subparsers):
        p = subparsers.add_parser("validate", help="Check the vertex determinant condition")
        p.add_argument("file")
        p.set_defaults(handler=self.validate)

        p = subparsers.add_parser("classify", help="Orientability, triangular order, generalized Bott test")
        p.add_argument("file")
        p.set_defaults(handler=self.classify)

        p = subparsers.add_parser("numbers", help="Stiefel-Whitney and/or Pontryagin numbers")
        p.add_argument("file")
        which = p.add_mutually_exclusive_group()
        which.add_argument("--sw", action="store_true", help="Only Stiefel-Whitney numbers")
        which.add_argument("--pontryagin", action="store_true", help="Only Pontryagin numbers")
        p.set_defaults(handler=self.numbers)

        p = subparsers.add_parser("cobordism", help="Boundary verdict from the characteristic numbers")
        p.add_argument("file")
        p.set_defaults(handler=self.cobordism)

        p = subparsers.add_parser("ring", help="Presentation of the cohomology ring")
        p.add_argument("file")
        p.add_argument("--poincare", action="store_true", help="Include the rank in every degree")
        p.add_argument("--engine", choices=[e.value for e in Engine], help="Force a normal form engine")
        p.set_defaults(handler=self.ring)

    def validate(self, args: argparse.Namespace) -> int:
        A = self.app.load_matrix(args.file)
        report = validate_characteristic(A.product, A)
        if not report.valid:
            logger.warning(f"{args.file}: {len(report.failures)} of {report.checked} vertices fail")
        self.app.emit(report.to_dict())
        return 0

    def classify(self, args: argparse.Namespace) -> int:
        A = self.app.load_matrix(args.file)
        self.app.emit(classify(A.product, A))
        return 0

    def numbers(self, args: argparse.Namespace) -> int:
        A = self.app.load_matrix(args.file)
        payload = {}
        if not args.pontryagin:
            payload["sw"] = sw_report(A.product, A).to_dict()
        if not args.sw:
            report = pontryagin_report(A.product, A)
            if report is None:
                if args.pontryagin:
                    raise UsageError("Pontryagin numbers need an integer (Z) matrix")
            else:
                payload["pontryagin"] = report.to_dict()
        self.app.emit(payload)
        return 0

    def cobordism(self, args: argparse.Namespace) -> int:
        A = self.app.load_matrix(args.file)
        self.app.emit(verdict(A.product, A).to_dict())
        return 0

    def ring(self, args: argparse.Namespace) -> int:
        A = self.app.load_matrix(args.file)
        engine = Engine(args.engine) if args.engine else None
        R = build_ring(A.product, A, 1 if A.mode.is_mod_two else 2, engine)
        payload = R.describe()
        if args.poincare:
            payload["poincare"] = R.poincare_ranks()
            payload["expected"] = A.product.h_vector()
        self.app.emit(payload)
        return 0


def setup(app):
    app.add_commands(AnalysisCommands(app))
