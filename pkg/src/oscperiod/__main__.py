import sys

from oscperiod.cli import main

sys.exit(main())
