import sys

from hkcover.cli import main

sys.exit(main())
