from lmrm.cli import main
import sys

sys.exit(main())
