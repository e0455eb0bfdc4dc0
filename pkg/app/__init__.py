# KR-Torus: sl(N) homology of T(2,m) and SU(N) representation spaces
