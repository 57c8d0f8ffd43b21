import sys

from .exprio.cli import main

sys.exit(main())
