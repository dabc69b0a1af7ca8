import sys

from pytanner.cli import main

sys.exit(main())
