import sys

from thompson.cli import main

sys.exit(main())
