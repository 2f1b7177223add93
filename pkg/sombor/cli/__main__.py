import sys

from sombor.cli.cli import main

sys.exit(main())
