import sys

from listwise.cli import main

sys.exit(main())
