import sys

from wavediv.cli import main

sys.exit(main())
