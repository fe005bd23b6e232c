import sys

from ks8.cli import main

sys.exit(main())
