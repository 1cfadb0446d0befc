import sys

from jetvar.cli import main

sys.exit(main())
