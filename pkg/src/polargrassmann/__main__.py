import sys

from polargrassmann.cli import main

sys.exit(main())
