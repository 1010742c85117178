import sys

from prunetest.cli import main

sys.exit(main())
