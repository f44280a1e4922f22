import sys

from crareapy.cli.main import main

sys.exit(main())
