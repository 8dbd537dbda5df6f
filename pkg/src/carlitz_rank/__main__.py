"""`python -m carlitz_rank` — same as the `carlitz-rank` script."""

from .cli import main

raise SystemExit(main())
