"""
Command Line Interface for latentstart.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..config import Command, load_config, parse_config
from ..errors import ConfigError, DiagnosticReporter, ErrorCode
from ..utils import resolve_threads
from ..utils.rng import SEED_LIMIT
from .commands import EXIT_CONFIG, run_command

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class LatentStartCLI:
    def __init__(self):
        self.parser = self._create_parser()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create the argument parser with all commands and options."""
        parser = argparse.ArgumentParser(
            prog="latentstart",
            description="latentstart - DDIM startpoint enhancement experiments on analytic models",
        )

        parser.add_argument(
            '-v', '--version',
            action='store_true',
            help='show version information and exit'
        )
        parser.add_argument(
            'command',
            nargs='?',
            choices=[c.value for c in Command],
            help='command to execute (overrides the config document)'
        )
        parser.add_argument(
            '--config',
            type=str,
            help='JSON run-config document'
        )
        parser.add_argument(
            '--seed',
            type=int,
            help='run seed, an unsigned 64-bit integer'
        )
        parser.add_argument(
            '--out',
            type=str,
            help='output directory'
        )
        parser.add_argument(
            '--threads',
            type=int,
            help='worker threads for sweeps and ablations (default: $SSP_THREADS or 1)'
        )
        parser.add_argument(
            '--log-level',
            choices=LOG_LEVELS,
            default='WARNING',
            help='logging level for stderr (default: WARNING)'
        )

        return parser

    def parse_args(self, args: Optional[List[str]] = None) -> Dict[str, Any]:
        """Parse command line arguments."""
        return vars(self.parser.parse_args(args))

    def run(self, args: Optional[List[str]] = None) -> int:
        """Run the CLI with the given arguments."""
        parsed_args = self.parse_args(args)

        if parsed_args.get('version'):
            from .. import __version__
            print(f"latentstart v{__version__}")
            return 0

        configure_logging(parsed_args['log_level'])

        try:
            cfg, base_dir = self._load(parsed_args)
        except ConfigError as exc:
            reporter = DiagnosticReporter()
            reporter.add_exception(exc, stage="config")
            for message in reporter.format_all():
                print(message, file=sys.stderr)
            return EXIT_CONFIG

        threads = resolve_threads(parsed_args.get('threads'), cfg.threads)
        return run_command(cfg, base_dir=base_dir, threads=threads)

    def _load(self, args: Dict[str, Any]):
        command = args.get('command')
        config_path = args.get('config')
        if config_path:
            cfg = load_config(config_path, command)
            base_dir = Path(config_path).resolve().parent
        else:
            cfg = parse_config("{}", command)
            base_dir = Path.cwd()

        updates: Dict[str, Any] = {}
        if args.get('seed') is not None:
            seed = args['seed']
            if not (0 <= seed < SEED_LIMIT):
                raise ConfigError(f"--seed must be an unsigned 64-bit integer, got {seed}",
                                  code=ErrorCode.CONFIG_TYPE)
            updates['seed'] = seed
        if args.get('out'):
            updates['output_dir'] = str(Path(args['out']).resolve())
        if args.get('threads') is not None and args['threads'] < 1:
            raise ConfigError("--threads must be at least 1", code=ErrorCode.CONFIG_TYPE)
        if updates:
            cfg = cfg.model_copy(update=updates)
        return cfg, base_dir


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main() -> int:
    """Main entry point for the latentstart CLI."""
    cli = LatentStartCLI()
    return cli.run()


if __name__ == "__main__":
    sys.exit(main())
