from wheelwatch.main import main

raise SystemExit(main())
