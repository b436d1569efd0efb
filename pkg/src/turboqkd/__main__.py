import sys

from turboqkd.cli import main

sys.exit(main())
