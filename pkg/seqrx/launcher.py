import logging
import sys

from seqrx import cli, settings

# refs script logger object
logger = logging.getLogger(__name__)


def launch():
    """Main runner for program."""

    # set up logging
    logging.basicConfig(
        level=logging.DEBUG if settings.debug else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    logger.debug("Starting %s %s.", settings.name, settings.version)

    sys.exit(cli.run(sys.argv[1:]))
