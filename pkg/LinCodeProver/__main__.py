import sys

from LinCodeProver.cli import main

sys.exit(main())
