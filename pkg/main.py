# Importing necessary libraries
import sys

# Import from our modular structure (conf.config sets up .env loading and logging)
import conf.config  # noqa: F401
from utils.cli import run


# Main block
# Every subcommand writes machine output to stdout and logs to stderr,
# so the process exit code is the handler's return value
if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
