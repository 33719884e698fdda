import sys

from exparabola_geom.cli import main

sys.exit(main())
