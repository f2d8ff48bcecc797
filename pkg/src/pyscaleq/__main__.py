import sys

from pyscaleq.cli import main

sys.exit(main())
