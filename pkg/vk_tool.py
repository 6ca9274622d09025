#!/usr/bin/env python3
"""
VK Tool - Command Line Interface
Codimension, determinacy, transversals and pullbacks of germs on minimal cross caps
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

# Add src to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from src.algebra import GermMap, VariableSpace, parse_germ_text
from src.classify import (
    VerificationReport,
    classify_codim2,
    default_suite,
    family_necessity_counterexample,
    verify_vector_fields,
)
from src.config import configure_logging, settings
from src.crosscap import CrossCapContext, FieldContext, load_field_context, minimal_crosscap, sharp_pullback
from src.equivalence import (
    DETERMINACY_MODES,
    VIA_KE,
    codimension,
    complete_transversal,
    determinacy_bound,
)

logger = logging.getLogger(__name__)

COMMANDS = ("vfields", "codim", "determinacy", "transversal", "pullback", "classify", "counterexample")
GERM_COMMANDS = ("codim", "determinacy", "transversal", "pullback")
OUTPUTS = ("text", "json")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


@dataclass
class Request:
    command: str
    k: Optional[int] = None
    germ: Optional[str] = None
    degree: Optional[int] = None
    max_degree: Optional[int] = None
    output: str = "text"
    vars: Optional[str] = None
    fields_file: Optional[str] = None
    seed: Optional[int] = None
    workers: Optional[int] = None
    mode: str = VIA_KE

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}' (use {', '.join(COMMANDS)})")
        if self.output not in OUTPUTS:
            raise ValueError(f"Unknown output format '{self.output}'")
        if self.k is not None and self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.vars and not self.fields_file:
            raise ValueError("--vars needs a --fields file with the Θ_V generators")
        if self.fields_file and not self.vars:
            raise ValueError("--fields needs --vars naming the target coordinates")
        if self.command in GERM_COMMANDS and not self.germ:
            raise ValueError(f"'{self.command}' needs a germ (-h/--germ)")
        if self.command in GERM_COMMANDS + ("vfields",) and self.k is None and not self.vars:
            raise ValueError(f"'{self.command}' needs -k or --vars")
        if self.command == "pullback" and self.vars:
            raise ValueError("pullback is only defined over a minimal cross cap")
        if self.command == "transversal" and self.degree is None:
            raise ValueError("'transversal' needs the degree -d")


def parse_germ(text: str, k: Optional[int], names: Optional[Sequence[str]] = None) -> GermMap:
    """Parse comma-separated components over the cross cap target for k, or over the given names."""
    space = VariableSpace(list(names)) if names else minimal_crosscap(k).target_vars
    return parse_germ_text(text, space)


def _split_names(text: str) -> List[str]:
    return [name.strip() for name in text.split(",") if name.strip()]


def _context(request: Request) -> FieldContext:
    if request.vars:
        return load_field_context(request.fields_file, VariableSpace(_split_names(request.vars)))
    return minimal_crosscap(request.k)


def _empty_report(request: Request) -> dict:
    return {
        'command': request.command,
        'k': request.k,
        'germ': None,
        'codimension': None,
        'normal_basis': [],
        'determinacy': None,
        'stabilization_degree': None,
        'transversal': [],
        'status': "pass",
        'details': {},
    }


def _suite_status(report: dict, verifications: List[VerificationReport]) -> int:
    report['details']['reports'] = [v.as_dict() for v in verifications]
    report['status'] = "pass" if all(v.passed for v in verifications) else "fail"
    return EXIT_OK if report['status'] == "pass" else EXIT_FAILED


def _dispatch(request: Request, report: dict) -> int:
    command = request.command

    if command == "counterexample":
        verification = family_necessity_counterexample()
        report['codimension'] = verification.computed['euler_free_codimension']
        report['normal_basis'] = verification.computed['euler_free_normal_basis']
        return _suite_status(report, [verification])

    if command == "classify":
        if request.k is not None:
            verifications = classify_codim2(request.k, request.max_degree, seed=request.seed)
        else:
            verifications = default_suite(workers=request.workers, seed=request.seed)
        return _suite_status(report, verifications)

    ctx = _context(request)

    if command == "vfields":
        report['details']['fields'] = [
            {'label': field.label, 'components': "; ".join(str(c) for c in field.components)}
            for field in ctx.theta_V
        ]
        if isinstance(ctx, CrossCapContext):
            return _suite_status(report, [verify_vector_fields(ctx.k)])
        return EXIT_OK

    names = _split_names(request.vars) if request.vars else None
    h = parse_germ(request.germ, request.k, names)
    report['germ'] = str(h)

    if command == "codim":
        result = codimension(ctx, h, request.max_degree)
        report.update({key: value for key, value in result.as_dict().items()})
    elif command == "determinacy":
        report['determinacy'] = determinacy_bound(ctx, h, request.mode, request.max_degree)
        report['details']['mode'] = request.mode
    elif command == "transversal":
        report['transversal'] = [v.to_text() for v in complete_transversal(ctx, h, request.degree)]
        report['details']['degree'] = request.degree
    elif command == "pullback":
        pulled = sharp_pullback(ctx, h)
        report['details'].update({
            'map': str(pulled),
            'source': list(pulled.source.names),
            'target': list(pulled.target_names),
        })
    return EXIT_OK


def run(request: Request) -> Tuple[int, dict]:
    """Execute a request; input problems become exit code 2 with the error in details."""
    report = _empty_report(request)
    if request.max_degree is None:
        request.max_degree = settings.max_degree
    try:
        request.validate()
        code = _dispatch(request, report)
    except (ValueError, FileNotFoundError) as e:
        logger.info("Request %s rejected: %s", request.command, e)
        report['status'] = "error"
        report['details'] = {'error': str(e)}
        return EXIT_INPUT, report
    return code, report


def render_text(report: dict) -> str:
    lines = [f"📐 {report['command']}" + (f" (k={report['k']})" if report['k'] is not None else "")]
    if report['status'] == "error":
        lines.append(f"❌ {report['details']['error']}")
        return "\n".join(lines)

    if report['germ'] is not None:
        lines.append(f"   Germ: {report['germ']}")
    if report['codimension'] is not None:
        lines.append(f"   Codimension: {report['codimension']}")
    if report['normal_basis']:
        lines.append(f"   Normal basis: {', '.join(report['normal_basis'])}")
    if report['stabilization_degree'] is not None:
        lines.append(f"   Stabilises at degree: {report['stabilization_degree']}")
    if report['determinacy'] is not None:
        lines.append(f"   Determinacy: {report['determinacy']}")
    if report['command'] == "transversal":
        lines.append(f"   Transversal: {', '.join(report['transversal']) or '(empty)'}")

    details = report['details']
    for field in details.get('fields', []):
        lines.append(f"   {field['label']}: {field['components']}")
    if 'map' in details:
        lines.append(f"   h#: ({details['map']})")
        lines.append(f"   Source: {', '.join(details['source'])}")
        lines.append(f"   Target: {', '.join(details['target'])}")
    for verification in details.get('reports', []):
        icon = "✅" if verification['status'] == "pass" else "❌"
        lines.append(f"{icon} {verification['claim_id']}")
        if verification['status'] != "pass":
            lines.append(f"   computed: {verification['computed']}")
            lines.append(f"   expected: {verification['expected']}")
        if verification['note']:
            lines.append(f"   💡 {verification['note']}")

    if report['status'] == "fail":
        lines.append("⚠️ Verification failed")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # -h belongs to the germ, so help is --help only
    common.add_argument("--help", action="help", help="show this help message and exit")
    common.add_argument("-k", type=int, help="cross cap multiplicity (k >= 2)")
    common.add_argument("-h", "--germ", help="germ components, comma-separated, e.g. 'V2 + W1, U1'")
    common.add_argument("-d", "--degree", type=int, help="transversal degree")
    common.add_argument("--max-degree", type=int, help=f"stabilisation search bound (default {settings.max_degree})")
    common.add_argument("--output", choices=OUTPUTS, default="text")
    common.add_argument("--vars", help="generic target coordinates x1,x2,..")
    common.add_argument("--fields", dest="fields_file", help="Θ_V generator file, one field per line")
    common.add_argument("--seed", type=int, help=f"random seed (default {settings.random_seed})")
    common.add_argument("--workers", type=int, help=f"worker processes for classify (default {settings.workers})")
    common.add_argument("--mode", choices=DETERMINACY_MODES, default=VIA_KE, help="determinacy criterion")

    parser = argparse.ArgumentParser(description="VK-equivalence on minimal cross caps")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], add_help=False)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI function"""
    configure_logging()
    args = build_parser().parse_args(argv)
    request = Request(**vars(args))

    code, report = run(request)
    if request.output == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
