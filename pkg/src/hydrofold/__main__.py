import sys

from hydrofold.cli import main

sys.exit(main())
