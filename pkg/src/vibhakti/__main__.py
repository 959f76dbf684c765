import sys

from vibhakti.cli import main

sys.exit(main())
