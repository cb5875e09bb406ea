"""JSON-in / JSON-out command-line front end.

Four subcommands expose the pipeline: ``pick`` assembles and reports the
Pick system, ``solve`` produces the resolvent or the unique degenerate
solution, ``apply`` transforms a parameter and classifies it, ``verify``
checks a candidate function against the data.  Problems, parameters and
outputs travel as JSON documents; paths may be omitted in favor of
stdin/stdout.  Exit codes: 0 success, 2 input error, 3 validation error.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ._sections import DEFAULT_GRID, GridConfig
from .algebra import GaussianRational, RationalFunction, scalar_to_json
from .boundary import LimitEstimate
from .errors import (
    BnpickError,
    DegenerateTransformError,
    InconsistentClassificationError,
    InputError,
    InvalidDataError,
    NoSolutionRepresentationError,
    NotNevanlinnaError,
    PoleError,
    SingularMatrixError,
    SingularPickError,
    SplitNotAdmissibleError,
    UnclassifiableParameterError,
)
from .problem import InterpolationData, build_system, check_lyapunov, is_infinite
from .solver import classify_and_verify, solve, verify_candidate
from .transform import Parameter

_INPUT_ERRORS = (InputError, InvalidDataError)
_VALIDATION_ERRORS = (
    NotNevanlinnaError,
    DegenerateTransformError,
    SingularPickError,
    SplitNotAdmissibleError,
    UnclassifiableParameterError,
    InconsistentClassificationError,
    NoSolutionRepresentationError,
    SingularMatrixError,
    PoleError,
)


@dataclass(frozen=True)
class RunConfig:
    """Backend choice, tolerances and sampling grid for one CLI run.

    The defaults reproduce the golden corpus bit-for-bit on the exact
    backend.
    """

    backend: str = "exact"
    rank_tol: float = 1e-9
    limit_tol: float = 1e-9
    eig_tol: float = 1e-9
    verify_tol: float = 1e-6
    grid: GridConfig = field(default_factory=lambda: DEFAULT_GRID)
    out: str | None = None

    @staticmethod
    def from_json(obj) -> "RunConfig":
        if not isinstance(obj, dict):
            raise InputError("config document must be a JSON object")
        backend = obj.get("backend", "exact")
        if backend not in ("exact", "float"):
            raise InputError(f"unknown backend {backend!r}")
        grid_doc = obj.get("grid", {})
        grid = replace(
            DEFAULT_GRID,
            **{
                k: tuple(v) if isinstance(v, list) else v
                for k, v in grid_doc.items()
                if k in GridConfig.__dataclass_fields__
            },
        )
        if "eig_tol" in obj:
            grid = replace(grid, eig_tol=float(obj["eig_tol"]))
        return RunConfig(
            backend=backend,
            rank_tol=float(obj.get("rank_tol", 1e-9)),
            limit_tol=float(obj.get("limit_tol", 1e-9)),
            eig_tol=float(obj.get("eig_tol", 1e-9)),
            verify_tol=float(obj.get("verify_tol", 1e-6)),
            grid=grid,
            out=obj.get("out"),
        )


def _read_json(path: str | None, *, stdin_ok: bool = False, inline_ok: bool = False):
    if path is None:
        if not stdin_ok:
            raise InputError("missing required input document")
        text = _sys.stdin.read()
    elif inline_ok and path.lstrip().startswith("{"):
        text = path
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _load_config(args) -> RunConfig:
    if getattr(args, "config", None):
        return RunConfig.from_json(_read_json(args.config))
    return RunConfig()


def _load_problem(args, config: RunConfig) -> InterpolationData:
    doc = _read_json(getattr(args, "problem", None), stdin_ok=True)
    if not isinstance(doc, dict):
        raise InvalidDataError("problem document must be a JSON object")
    data = InterpolationData.from_json(doc)
    if config.backend == "float" and data.exact:
        data = InterpolationData(
            nodes=tuple(float(x) for x in data.nodes),
            values=tuple(float(x) for x in data.values),
            derivative_bounds=tuple(float(x) for x in data.derivative_bounds),
            residues=tuple(float(x) for x in data.residues),
        )
    return data


def _load_parameter(args) -> Parameter:
    doc = _read_json(getattr(args, "param", None), stdin_ok=False, inline_ok=True)
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputError("parameter document must carry a 'type' field")
    try:
        return Parameter.from_json(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed parameter: {exc}") from exc


def _load_candidate(args) -> RationalFunction:
    doc = _read_json(getattr(args, "param", None), stdin_ok=False, inline_ok=True)
    if isinstance(doc, dict) and "type" in doc:
        phi = Parameter.from_json(doc)
        if phi.is_infinite:
            raise InvalidDataError("the infinite parameter is not a candidate function")
        return phi.as_rational()
    if isinstance(doc, dict) and "num" in doc and "den" in doc:
        return RationalFunction.from_json(doc)
    raise InputError("candidate must be {'num': [...], 'den': [...]} or a parameter")


def _jsonify(value):
    if isinstance(value, LimitEstimate):
        return value.to_json()
    if isinstance(value, (Fraction, GaussianRational)):
        return scalar_to_json(value)
    if is_infinite(value):
        return "inf"
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return value


def _emit(doc, args, config: RunConfig) -> None:
    path = getattr(args, "out", None) or config.out
    text = json.dumps(_jsonify(doc), indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_pick(args) -> int:
    config = _load_config(args)
    data = _load_problem(args, config)
    system = build_system(data, config.rank_tol)
    lyapunov = check_lyapunov(system)
    doc = {
        "backend": "exact" if system.exact else "float",
        "n": system.n,
        "ell": system.ell,
        "kappa": system.kappa,
        "singular": not system.invertible,
        "inertia": {
            "negatives": system.inertia.negatives,
            "zeros": system.inertia.zeros,
            "positives": system.inertia.positives,
        },
        "P": [[scalar_to_json(system.P.entry(i, j)) for j in range(system.n)]
              for i in range(system.n)],
        "X": [scalar_to_json(x) for x in system.X],
        "E": [scalar_to_json(e) for e in system.E],
        "C": [scalar_to_json(c) for c in system.C],
        "lyapunov_residual": lyapunov.to_json(),
        "derived": None,
    }
    if system.invertible:
        doc["derived"] = {
            "p_inv": [[scalar_to_json(v) for v in row] for row in system.p_inv],
            "tilde_e": [scalar_to_json(v) for v in system.tilde_e],
            "tilde_c": [scalar_to_json(v) for v in system.tilde_c],
            "eta": [_jsonify(v) for v in system.eta],
            "tilde_p_diag": [scalar_to_json(v) for v in system.tilde_p_diag],
        }
    _emit(doc, args, config)
    return 0


def cmd_solve(args) -> int:
    config = _load_config(args)
    data = _load_problem(args, config)
    bundle = solve(data, rank_tol=config.rank_tol, config=config.grid)
    _emit(bundle.to_json(), args, config)
    return 0


def cmd_apply(args) -> int:
    config = _load_config(args)
    data = _load_problem(args, config)
    phi = _load_parameter(args)
    system = build_system(data, config.rank_tol)
    if not system.invertible:
        raise SingularPickError(
            "apply needs an invertible Pick matrix; run solve for the degenerate case"
        )
    report, w, sampled = classify_and_verify(
        system, phi, config=config.grid, tol=config.verify_tol
    )
    doc = {
        "w": w.to_json(),
        "classification": [n.to_json() for n in report.nodes],
        "k": report.k,
        "class_index": report.class_index,
        "kernel_negative_squares": sampled,
    }
    _emit(doc, args, config)
    return 0


def cmd_verify(args) -> int:
    config = _load_config(args)
    data = _load_problem(args, config)
    w = _load_candidate(args)
    system = build_system(data, config.rank_tol)
    report = verify_candidate(system, w, tol=1e-8, config=config.grid)
    _emit(report, args, config)
    return 0


_COMMANDS = {
    "pick": cmd_pick,
    "solve": cmd_solve,
    "apply": cmd_apply,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnpick",
        description="Boundary Nevanlinna-Pick interpolation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("pick", "assemble the Pick system and its derived quantities"),
        ("solve", "solve: resolvent when P is invertible, unique w when singular"),
        ("apply", "apply a parameter through the resolvent and classify it"),
        ("verify", "verify a candidate function against the data"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--problem", help="problem JSON file (stdin when omitted)")
        cmd.add_argument("--param", help="parameter/candidate JSON file or inline JSON")
        cmd.add_argument("--config", help="run-config JSON file")
        cmd.add_argument("--out", help="output path (stdout when omitted)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        return handler(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=_sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(
                f"witness: eigenvalue {witness.eigenvalue:.3e} at points "
                f"{[str(p) for p in witness.points]}",
                file=_sys.stderr,
            )
        return 3
    except BnpickError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
