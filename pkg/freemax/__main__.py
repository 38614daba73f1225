import sys

from freemax.cli import main

sys.exit(main())
