"""
Command-line front end

    jetvar <command> <model-file> [--gen NAME] [--format text|latex|json]
           [--max-order N] [--probe-points N] [--seed N]

Exit codes: 0 when every required check passes, 1 for usage and parse
errors, 2 when a verification fails.
"""
import argparse
import sys

from jetvar.config_manager import config
from jetvar.lib.exceptions import DerivationException, JetvarException, SuperpotentialPreconditionFailed
from jetvar.lib.logger import get_logger, reconfigure
from jetvar.lib.model_file import parse_model
from jetvar.lib.processor import all_processors
from jetvar.lib.report import Report, FORMATS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2

log = get_logger("jetvar.cli")


def run(command, source, generator=None, max_order=None, probe_points=None, seed=None):
    """
    Run a derivation command on a model file

    :param str command:  One of the discovered commands (el, momenta, ...)
    :param source:  Model file path or document text
    :param str generator:  Catalog generator name
    :param int max_order:  Jet order cap override
    :param int probe_points:  Overrides ``jetvar.probe_points`` for this run
    :param int seed:  Overrides ``jetvar.seed`` for this run
    :return Report:
    :raises JetvarException:  For unknown commands, model errors and
    missing or unknown generators
    :raises DerivationException:  Wrapping module errors
    """
    processors = all_processors()
    if command not in processors:
        raise JetvarException(f"Unknown command '{command}'; available: {', '.join(sorted(processors))}")
    processor = processors[command]

    overrides = {"jetvar.probe_points": probe_points, "jetvar.seed": seed}
    previous = {key: config.get(key) for key in overrides}
    try:
        for key, value in overrides.items():
            if value is not None:
                config.set(key, value)

        bundle = parse_model(source, max_order=max_order)
        options = {
            "max_order": bundle.context.max_order,
            "probe_points": config.get("jetvar.probe_points"),
            "seed": config.get("jetvar.seed"),
        }
        report = Report(command, bundle, source=source if "\n" not in str(source) else "<text>",
                        generator=generator or processor.default_generator, options=options)
        return processor(bundle, report, generator).run()
    finally:
        # overrides hold for this run only
        for key, value in previous.items():
            config.set(key, value)


def exit_code_for(exception):
    """
    Map an exception to an exit code; derivation errors are judged by cause
    """
    cause = exception.__cause__ if isinstance(exception, DerivationException) and exception.__cause__ else exception
    if isinstance(cause, SuperpotentialPreconditionFailed):
        return EXIT_VERIFICATION
    return EXIT_USAGE


def build_parser():
    commands = all_processors()
    parser = argparse.ArgumentParser(prog="jetvar", description="Variational calculus on jet bundles")
    parser.add_argument("command", choices=sorted(commands),
                        help="; ".join(f"{name}: {commands[name].title}" for name in sorted(commands)))
    parser.add_argument("model", help="Model definition file")
    parser.add_argument("--gen", default=None, help="Generator from the model's catalog")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help=f"Report format (default: {config.get('jetvar.default_format')})")
    parser.add_argument("--max-order", type=int, default=None, help="Jet order cap")
    parser.add_argument("--probe-points", type=int, default=None, help="Random probe points for equality checks")
    parser.add_argument("--seed", type=int, default=None, help="Seed for probe points")
    parser.add_argument("--output", default=None, help="Write the report to this file instead of stdout")
    parser.add_argument("--no-timing", action="store_true", help="Leave the run time out of the report")
    return parser


def main(argv=None):
    """
    Entry point

    :param list argv:  Arguments; defaults to sys.argv[1:]
    :return int:  Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if args.max_order is not None and args.max_order < 0:
        print("jetvar: --max-order must be non-negative", file=sys.stderr)
        return EXIT_USAGE

    reconfigure()
    try:
        report = run(args.command, args.model, generator=args.gen, max_order=args.max_order,
                     probe_points=args.probe_points, seed=args.seed)
    except (JetvarException, ValueError, OSError) as e:
        log.error(str(e), extra={"location": args.command})
        print(f"jetvar {args.command}: {e}", file=sys.stderr)
        return exit_code_for(e) if isinstance(e, JetvarException) else EXIT_USAGE

    document = report.render(args.format or config.get("jetvar.default_format"), timing=not args.no_timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as outfile:
            outfile.write(document)
    else:
        sys.stdout.write(document)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
