"""The verify command: run one built-in verifier and report counterexamples."""
import argparse
import json
import logging
from typing import Any, Dict, List, Union

from systems.errors import UsageError
from systems.verification import VerificationSystem

logger = logging.getLogger(__name__)


def parse_int_list(text: str) -> List[int]:
    """"2,1" or "[2, 1]" -> [2, 1]."""
    try:
        if text.strip().startswith("["):
            value = json.loads(text)
        else:
            value = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise UsageError(f"Expected a list of integers, got {text!r}: {e}")
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise UsageError(f"Expected a list of integers, got {text!r}")
    return value


def parse_dims(text: str) -> Union[List[int], List[List[int]]]:
    """One dims list ("2,1") or several ("[[1,1],[2,1]]")."""
    if text.strip().startswith("[["):
        try:
            value = json.loads(text)
        except ValueError as e:
            raise UsageError(f"Bad --dims {text!r}: {e}")
        if not isinstance(value, list) or not all(isinstance(d, list) for d in value):
            raise UsageError(f"Bad --dims {text!r}")
        return value
    return parse_int_list(text)


class VerificationCommands:
    def __init__(self, app):
        self.app = app

    def register(self, subparsers):
        p = subparsers.add_parser("verify", help="Run a built-in verifier over a matrix family")
        p.add_argument("theorem", help="Verifier id or alias, e.g. thm_2_5 (run 'verify list' to see them)")
        p.add_argument("--dims", help="Polytope dims, e.g. 2,1 or [[1,1],[2,1]]")
        p.add_argument("--n", help="Cube dimension(s) or block order, e.g. 4 or 2,3")
        p.add_argument("--bound", type=int, help="Entry bound for integer families")
        p.add_argument("--samples", type=int, help="Random instances per dims")
        p.add_argument("--k", help="Half dimension(s) for even cyclic cubes")
        p.add_argument("--b", help="Explicit cyclic vector, e.g. 2,1")
        p.add_argument("--l", type=int, help="Last simplex dimension for the sigma condition")
        p.add_argument("--engines", action="store_true", default=None,
                       help="Also compare the triangular and generic engines")
        p.add_argument("--interval-last", action="store_true", default=None,
                       help="Only matrices with a triangular order ending in an interval factor")
        p.set_defaults(handler=self.verify)

    def _params(self, args: argparse.Namespace) -> Dict[str, Any]:
        params: Dict[str, Any] = {
            "bound": args.bound,
            "samples": args.samples,
            "l": args.l,
            "engines": args.engines,
            "interval_last": args.interval_last,
        }
        if args.dims is not None:
            params["dims"] = parse_dims(args.dims)
        for name in ("n", "k", "b"):
            text = getattr(args, name)
            if text is not None:
                values = parse_int_list(text)
                params[name] = values[0] if name == "n" and len(values) == 1 else values
        return {k: v for k, v in params.items() if v is not None}

    def verify(self, args: argparse.Namespace) -> int:
        system = VerificationSystem(seed=args.seed)
        if args.theorem == "list":
            self.app.emit({"verifiers": system.available(), "aliases": system.ALIASES})
            return 0
        result = system.verify(args.theorem, self._params(args))
        self.app.emit(result.to_dict())
        return 0 if result.passed else 1


def setup(app):
    app.add_commands(VerificationCommands(app))
