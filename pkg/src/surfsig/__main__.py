from surfsig.cli import main

raise SystemExit(main())
