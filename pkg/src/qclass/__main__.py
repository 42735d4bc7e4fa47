import sys

from qclass.cli import main

sys.exit(main())
