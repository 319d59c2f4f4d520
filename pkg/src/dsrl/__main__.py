import sys

from dsrl.cli import main

sys.exit(main())
