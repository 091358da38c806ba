import argparse
import json
import logging
import sys

from pydantic import ValidationError

from .commands import classify, evolve, experiment, graph
from .errors import EXIT_CONFIG, QswError
from .services import metrics
from .services.event_bus import event_bus
from .services.events import PROGRESS_TOPIC, GraphAccepted, GridPointDone
from .settings import get_settings

logger = logging.getLogger("qswlab")


def _log_progress(event) -> None:
    if isinstance(event, GridPointDone):
        where = f" omega={event.omega}" if event.omega is not None else ""
        logger.debug(f"[PROGRESS] {event.experiment} {event.index + 1}/{event.total}{where}")
    elif isinstance(event, GraphAccepted):
        logger.debug(f"[PROGRESS] task {event.task} accepted seed={event.seed} after {event.attempts} samples")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qswlab", description="Quantum stochastic walks on directed graphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    # one module per subcommand
    graph.register(subparsers)
    classify.register(subparsers)
    evolve.register(subparsers)
    experiment.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        with event_bus.listening(PROGRESS_TOPIC, _log_progress):
            return args.handler(args)
    except QswError as ex:
        logger.error(f"[CLI] {type(ex).__name__}: {ex}")
        return ex.exit_code
    except ValidationError as ex:
        logger.error(f"[CLI] invalid configuration: {ex}")
        return EXIT_CONFIG
    except (OSError, json.JSONDecodeError, ValueError) as ex:
        logger.error(f"[CLI] {ex}")
        return EXIT_CONFIG
    finally:
        logger.info(f"[CLI] metrics {metrics.snapshot()}")


if __name__ == "__main__":
    sys.exit(main())
