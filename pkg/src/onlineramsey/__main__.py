import sys

from onlineramsey.cli import main

sys.exit(main())
