import sys

from blowdown.scenario.cli import main


sys.exit(main())
