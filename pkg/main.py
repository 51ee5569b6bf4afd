"""
Main CLI entry point for revolve.
Provides command-line access to kernels, optimizers, equilibrium solvers, theorem checks and plots.
"""

import argparse
import json
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src import __version__
from src.core.config import Config
from src.core.exceptions import RevolveError, SingularEvaluationError, ValidationError
from src.core.models import (
    ConfigurationMode, EquilibriumOptions, KernelSpec, KernelVariant, RunManifest,
    SolverOptions, SpacePoint,
)
from src.checks import TheoremChecker
from src.energy import optimize_config
from src.equilibrium import solve_on_curve, support_estimate
from src.kernels import evaluate_kernel, reduced_k_quadrature
from src.utils import (
    FileManager, get_logger, parse_instance, parse_int_list, parse_point, render_svg, setup_logging,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2
EXIT_CHECK_FAILED = 3

CHECK_NAMES = TheoremChecker.CHECKS + ("all",)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def setup_cli_parser():
    """Setup command line argument parser."""
    parser = CliParser(
        description="Minimum-energy points and equilibrium measures on surfaces of revolution",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py kernel-eval --kernel K --z 2,0 --w 1,0 --oracle
  python main.py optimize --kernel log3d --curve torus.json --N 100 --seed 42 --out run1/
  python main.py equilibrium --kernel Kinf --instance segment:2,0,1 --nodes 201 --out eq/
  python main.py verify --check all --instance circle:3,0,1
  python main.py plot --input eq/measure.csv --out eq/measure.svg --projection
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Kernel evaluation
    kernel_parser = subparsers.add_parser('kernel-eval', help='Evaluate a kernel at point pairs')
    kernel_parser.add_argument('--kernel', required=True,
                               help='riesz:<s>, log3d, K, KR:<R>, Kinf or Kinf-sym[:<y>]')
    kernel_parser.add_argument('--z', required=True, help='First point: x,y (x,y,zeta for 3D kernels)')
    kernel_parser.add_argument('--w', required=True, nargs='+', help='Second point(s), one row each')
    kernel_parser.add_argument('--oracle', action='store_true',
                               help='Also print the quadrature value of K')
    kernel_parser.add_argument('--n', type=int, default=Config.QUADRATURE_NODES,
                               help='Quadrature nodes for --oracle')

    # Shared curve and output options
    def add_curve_options(sub):
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument('--curve', help='Curve spec JSON file')
        source.add_argument('--instance', help='circle:cx,cy,r | segment:R,c,d | ellipse:cx,cy,ae,be | '
                                               'arc:cx,cy,r,tmin,tmax')
        sub.add_argument('--out', '-o', default=str(Config.OUTPUT_DIR), help='Output directory')

    # Configuration optimization
    optimize_parser = subparsers.add_parser('optimize', help='Find a minimum-energy N-point configuration')
    optimize_parser.add_argument('--kernel', required=True, help='Kernel string')
    add_curve_options(optimize_parser)
    optimize_parser.add_argument('--N', type=int, required=True, help='Number of points (N >= 2)')
    optimize_parser.add_argument('--seed', type=int, default=42, help='Random seed')
    optimize_parser.add_argument('--restarts', type=int, default=Config.OPT_RESTARTS, help='Multi-start count')
    optimize_parser.add_argument('--max-iter', type=int, default=Config.OPT_MAX_ITER,
                                 help='Iteration cap per restart')

    # Equilibrium measure
    equilibrium_parser = subparsers.add_parser('equilibrium', help='Solve a discrete equilibrium measure')
    equilibrium_parser.add_argument('--kernel', required=True, help='Planar kernel string')
    add_curve_options(equilibrium_parser)
    equilibrium_parser.add_argument('--nodes', type=int, default=Config.EQ_NODES, help='Nodes per curve')
    equilibrium_parser.add_argument('--refine', type=int, default=1,
                                    help='Also solve on refine x nodes and report the J drift')
    equilibrium_parser.add_argument('--tol', type=float, default=Config.EQ_TOL, help='Wolfe gap tolerance')
    equilibrium_parser.add_argument('--max-iter', type=int, default=Config.EQ_MAX_ITER,
                                    help='Frank-Wolfe iteration cap')

    # Theorem checks
    verify_parser = subparsers.add_parser('verify', help='Run executable theorem checks')
    verify_parser.add_argument('--check', default='all', help=f"One or more of {', '.join(CHECK_NAMES)}, "
                                                              "comma-separated")
    verify_parser.add_argument('--instance', default='circle:3,0,1', help='Instance string')
    verify_parser.add_argument('--kernel', default='K', help='Kernel for kernel-dependent checks')
    verify_parser.add_argument('--N', default='100', help='N, or a comma-separated list for the sandwich')
    verify_parser.add_argument('--seed', type=int, default=42, help='Random seed')
    verify_parser.add_argument('--grid', type=int, default=Config.GRID_SIZE, help='(s,t) grid size')
    verify_parser.add_argument('--nodes', type=int, default=Config.EQ_NODES, help='Equilibrium nodes per curve')
    verify_parser.add_argument('--out', '-o', help='Directory for the JSON reports (stdout only if omitted)')

    # Plotting
    plot_parser = subparsers.add_parser('plot', help='Render a configuration or measure as SVG')
    plot_parser.add_argument('--input', '-i', required=True, help='configuration JSON or measure CSV')
    plot_parser.add_argument('--out', '-o', required=True, help='SVG output path')
    plot_parser.add_argument('--projection', action='store_true', help='Add a 3D orthographic view')

    # Global options
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        default='INFO', help='Logging level')
    parser.add_argument('--log-file', help='Log file path (auto-generated if not specified)')

    return parser


def _timestamp() -> str:
    return datetime.now().isoformat(timespec='seconds')


def _load_curves(args):
    if args.curve:
        curve = FileManager(args.out).load_curve(args.curve)
        return [curve], args.curve
    return parse_instance(args.instance)


def _single_curve(curves):
    if len(curves) != 1:
        raise ValidationError("This command needs a single generator curve")
    return curves[0]


def _parse_point(text: str, spatial: bool):
    if not spatial:
        return parse_point(text)
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise ValidationError(f"Malformed point {text!r}")
    if len(values) == 3:
        return SpacePoint(*values)
    if len(values) == 2:
        return SpacePoint(values[0], values[1], 0.0)
    raise ValidationError(f"Point {text!r} has the wrong number of coordinates")


def kernel_eval_command(args, out=None) -> int:
    """Execute kernel evaluation command; one output row per --w point."""
    out = out or sys.stdout
    logger = get_logger(__name__)
    spec = KernelSpec.from_string(args.kernel)
    z = _parse_point(args.z, spec.is_spatial)
    header = ["kernel", "z", "w", "value"]
    use_oracle = args.oracle and spec.variant is KernelVariant.REDUCED_K
    if args.oracle and not use_oracle:
        logger.warning(f"⚠️ --oracle applies to K only, ignored for {spec.label}")
    if use_oracle:
        header += ["oracle", "delta"]
    print("\t".join(header), file=out)

    for text in args.w:
        w = _parse_point(text, spec.is_spatial)
        row = [spec.label, args.z, text]
        try:
            value = evaluate_kernel(spec, z, w)
            row.append(repr(value))
            if use_oracle:
                oracle = reduced_k_quadrature(z, w, args.n)
                row += [repr(oracle), repr(abs(value - oracle))]
        except SingularEvaluationError as e:
            row.append(f"singular ({e})")
        print("\t".join(row), file=out)
    return EXIT_OK


def optimize_command(args) -> int:
    """Execute configuration optimization command."""
    logger = get_logger(__name__)
    started = _timestamp()
    spec = KernelSpec.from_string(args.kernel)
    curves, source = _load_curves(args)
    curve = _single_curve(curves)
    if args.N < 2:
        raise ValidationError(f"N must be at least 2, got {args.N}")
    options = SolverOptions(restarts=args.restarts, max_iter=args.max_iter)

    config, report = optimize_config(curve, spec, args.N, args.seed, options)

    file_manager = FileManager(args.out)
    outputs = file_manager.save_configuration(config)
    outputs["report"] = file_manager.save_report(report, "energy_report.json")
    manifest = RunManifest(
        command=args.argv,
        curve_spec=curve.to_spec(),
        kernel=spec.label,
        size=args.N,
        seed=args.seed,
        version=__version__,
        started_at=started,
        finished_at=_timestamp(),
        options={"restarts": args.restarts, "max_iter": args.max_iter, "source": source,
                 "mode": config.mode.value},
        outputs={k: Path(v).name for k, v in outputs.items()},
    )
    file_manager.save_manifest(manifest)

    logger.info(f"📊 E = {report.energy!r} for N = {args.N} ({config.mode.value})")
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def equilibrium_command(args) -> int:
    """Execute equilibrium measure command."""
    logger = get_logger(__name__)
    started = _timestamp()
    spec = KernelSpec.from_string(args.kernel)
    curves, source = _load_curves(args)
    options = EquilibriumOptions(tol=args.tol, max_iter=args.max_iter)

    measure, report = solve_on_curve(curves, spec, args.nodes, refine=args.refine, options=options)
    support = support_estimate(measure)

    file_manager = FileManager(args.out)
    outputs = {"measure": file_manager.save_measure(measure)}
    outputs["report"] = file_manager.save_report({
        **report.to_dict(),
        "support": support.to_dict(),
    }, "equilibrium_report.json")
    manifest = RunManifest(
        command=args.argv,
        curve_spec={"curves": [curve.to_spec() for curve in curves]},
        kernel=spec.label,
        size=args.nodes,
        seed=None,
        version=__version__,
        started_at=started,
        finished_at=_timestamp(),
        options={"refine": args.refine, "tol": args.tol, "max_iter": args.max_iter, "source": source},
        outputs={k: Path(v).name for k, v in outputs.items()},
    )
    file_manager.save_manifest(manifest)

    lo, hi = support.interval
    logger.info(f"📊 J = {report.J!r}; support [{lo!r}, {hi!r}] on {len(support.active_indices)} nodes")
    if support.two_point_degenerate:
        logger.info("📊 Support is two-point degenerate")
    if report.refinement_drift is not None:
        logger.info(f"📊 J drift under refinement x{args.refine}: {report.refinement_drift:.3e}")
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def verify_command(args, out=None) -> int:
    """Execute theorem checks; one JSON report per check on stdout (and in --out)."""
    out = out or sys.stdout
    logger = get_logger(__name__)
    names = [name.strip() for name in args.check.split(',') if name.strip()]
    unknown = [name for name in names if name not in CHECK_NAMES]
    if unknown or not names:
        raise ValidationError(f"Unknown check {', '.join(unknown) or '(none)'}; choose from {', '.join(CHECK_NAMES)}")
    curves, label = parse_instance(args.instance)
    checker = TheoremChecker(
        curves,
        spec=KernelSpec.from_string(args.kernel),
        instance=label,
        N=parse_int_list(args.N),
        seed=args.seed,
        grid_size=args.grid,
        n_nodes=args.nodes,
    )
    reports = checker.run(names)

    file_manager = FileManager(args.out) if args.out else None
    for k, report in enumerate(reports):
        print(json.dumps(report.to_dict()), file=out)
        if file_manager is not None:
            file_manager.save_report(report, f"{k:02d}_{report.name}.json")

    failures = TheoremChecker.failed_guaranteed(reports)
    for report in failures:
        logger.error(f"❌ {report.name} failed on {report.instance} (margin {report.margin:.3e})")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def plot_command(args) -> int:
    """Execute plotting command."""
    file_manager = FileManager(Path(args.out).parent)
    source = Path(args.input)
    if source.suffix.lower() == '.json':
        config = file_manager.load_configuration(source)
        space = config.space_points() if config.mode is ConfigurationMode.SURFACE_3D else None
        render_svg(config.plane_points(), None, args.out, space_points=space, projection=args.projection,
                   title=f"{config.N} points on {config.curve.kind}")
    else:
        measure = file_manager.load_measure(source)
        render_svg(measure.nodes, measure.weights, args.out, projection=args.projection,
                   title=f"measure on {measure.n} nodes")
    return EXIT_OK


COMMANDS = {
    'kernel-eval': kernel_eval_command,
    'optimize': optimize_command,
    'equilibrium': equilibrium_command,
    'verify': verify_command,
    'plot': plot_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit status."""
    parser = setup_cli_parser()
    argv = list(argv) if argv is not None else sys.argv[1:]
    args = parser.parse_args(argv)
    args.argv = argv

    setup_logging(args.log_level, args.log_file)
    logger = get_logger(__name__)
    Config.ensure_directories()

    if args.command not in COMMANDS:
        parser.print_help()
        return EXIT_ERROR

    try:
        status = COMMANDS[args.command](args)
    except KeyboardInterrupt:
        logger.info("⏹️ Operation cancelled by user")
        return EXIT_ERROR
    except RevolveError as e:
        logger.error(f"❌ {e.__class__.__name__}: {e}")
        return EXIT_ERROR

    if status == EXIT_OK:
        logger.info("✅ Operation completed successfully!")
    elif status == EXIT_NOT_CONVERGED:
        logger.warning("⚠️ Finished without convergence")
    return status


if __name__ == "__main__":
    sys.exit(main())
