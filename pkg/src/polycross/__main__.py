import sys

from polycross.cli import main

sys.exit(main())
