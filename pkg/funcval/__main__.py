"""python -m funcval"""

import sys

from funcval.main import main

sys.exit(main())
