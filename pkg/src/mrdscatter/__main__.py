import sys

from mrdscatter.cli import main

sys.exit(main())
