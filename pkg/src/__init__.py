# zyclone - zycle hypergraph constructions, searches and checks
