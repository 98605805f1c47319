import sys

from icbound.main import main

sys.exit(main())
