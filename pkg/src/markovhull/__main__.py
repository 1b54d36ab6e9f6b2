import sys

from markovhull.cli import main

sys.exit(main())
