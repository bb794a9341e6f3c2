import sys

from orbitmult.cli import main

sys.exit(main())
