import sys

from fhseq.cli import main

sys.exit(main())
