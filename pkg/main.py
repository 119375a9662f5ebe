"""
Main entry point for the seifert-interior toolkit.

    python main.py interior fixtures/k23.graph
"""

import sys

from cli.commands import run


def main():
    """Run the command line and exit with its status."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
