from semicut.main import main

raise SystemExit(main())
