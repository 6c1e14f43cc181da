"""Allow `python -m hesslab`."""

import sys
from hesslab.cli import main

sys.exit(main())
