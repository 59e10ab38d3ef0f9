# polarcoulomb/__main__.py
import sys

from polarcoulomb.cli import main

sys.exit(main())
