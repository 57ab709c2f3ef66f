import sys

from dedekind_pcoef.cli import main

sys.exit(main())
