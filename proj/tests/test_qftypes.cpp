#include <doctest.h>

#include "structlab/classes.hpp"
#include "structlab/qftype.hpp"

using namespace structlab;

TEST_CASE("qftype_of reads the atomic diagram") {
    FinStructure edge = ordered_graph(2, {{0, 1}});
    int lt = edge.signature().relation_index("<");
    int r = edge.signature().relation_index("R");

    SUBCASE("increasing edge tuple") {
        QfType t = qftype_of({0, 1}, edge);
        CHECK_FALSE(t.eq_atom(0, 1));
        CHECK(t.rel_atom(lt, {0, 1}));
        CHECK_FALSE(t.rel_atom(lt, {1, 0}));
        CHECK(t.rel_atom(r, {0, 1}));
        CHECK(t.rel_atom(r, {1, 0}));  // stored symmetrically
        CHECK(t.order_consistent());
    }
    SUBCASE("reversed tuple permutes the atoms") {
        QfType t = qftype_of({1, 0}, edge);
        CHECK(t.rel_atom(lt, {1, 0}));
        CHECK_FALSE(t.rel_atom(lt, {0, 1}));
        CHECK(t.rel_atom(r, {0, 1}));
        CHECK(t != qftype_of({0, 1}, edge));
    }
    SUBCASE("repeated element sets the equality atom") {
        QfType t = qftype_of({0, 0}, edge);
        CHECK(t.eq_atom(0, 1));
        CHECK_FALSE(t.rel_atom(lt, {0, 1}));
    }
    SUBCASE("out-of-range element is rejected") {
        CHECK_THROWS_AS(qftype_of({0, 2}, edge), StructureError);
    }
    SUBCASE("isomorphism invariance") {
        // same abstract edge living at positions {1, 3} of a larger graph
        FinStructure big = ordered_graph(4, {{1, 3}});
        CHECK(qftype_of({1, 3}, big) == qftype_of({0, 1}, edge));
    }
}

TEST_CASE("type catalogs over increasing tuples") {
    SUBCASE("single vertex, arity 1") {
        CHECK(type_catalog(ordered_graph(1, {}), 1).entries.size() == 1);
    }
    SUBCASE("graph with an edge and a non-edge: exactly 2 pair types") {
        CHECK(type_catalog(ordered_graph(3, {{0, 1}}), 2).entries.size() == 2);
    }
    SUBCASE("ordered empty graph: all pairs agree") {
        CHECK(type_catalog(ordered_graph(5, {}), 2).entries.size() == 1);
    }
    SUBCASE("at most 2 pair types on any ordered graph (exhaustive, n <= 5)") {
        for (int n = 2; n <= 5; ++n)
            for (const FinStructure& g : all_ordered_graphs(n))
                CHECK(type_catalog(g, 2).entries.size() <= 2);
    }
    SUBCASE("round-trip: realized types appear in the catalog") {
        FinStructure g = ordered_graph(4, {{0, 2}, {1, 3}});
        TypeCatalog cat = type_catalog(g, 3);
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                for (int c = b + 1; c < 4; ++c)
                    CHECK(cat.entries.count(qftype_of({a, b, c}, g)) == 1);
    }
    SUBCASE("isomorphic structures share catalogs") {
        // identical edge pattern built twice
        FinStructure g = ordered_graph(4, {{0, 1}, {2, 3}});
        FinStructure h = ordered_graph(4, {{2, 3}, {0, 1}});
        CHECK(type_catalog(g, 2).entries == type_catalog(h, 2).entries);
    }
}

TEST_CASE("diagram types") {
    SUBCASE("single vertex: the unique 1-type") {
        CHECK(diagram_type(ordered_graph(1, {})) == qftype_of({0}, ordered_graph(1, {})));
    }
    SUBCASE("ordered K3: every R-pair holds") {
        QfType t = diagram_type(ordered_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
        int r = t.signature().relation_index("R");
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(t.rel_atom(r, {i, j}));
    }
    SUBCASE("realize_type recovers the identity tuple") {
        FinStructure g = ordered_graph(3, {{0, 2}});
        auto tuple = realize_type(diagram_type(g), g);
        REQUIRE(tuple.has_value());
        CHECK(*tuple == Tuple{0, 1, 2});
    }
    SUBCASE("unordered input is rejected") {
        Signature sig({{"R", 2, {}}}, std::nullopt);
        CHECK_THROWS_AS(diagram_type(FinStructure(sig, 2, {{}})), StructureError);
    }
}

TEST_CASE("realize_type") {
    FinStructure edge = ordered_graph(2, {{0, 1}});
    FinStructure empty5 = ordered_graph(5, {});

    SUBCASE("edge type in an edge-bearing host") {
        FinStructure host = ordered_graph(4, {{1, 3}});
        auto tuple = realize_type(diagram_type(edge), host);
        REQUIRE(tuple.has_value());
        CHECK(*tuple == Tuple{1, 3});
    }
    SUBCASE("edge type in an empty graph: none") {
        CHECK_FALSE(realize_type(diagram_type(edge), empty5).has_value());
    }
    SUBCASE("every catalog entry is realizable; absent entries are not") {
        FinStructure g = ordered_graph(4, {{0, 1}, {1, 2}});
        for (int m = 1; m <= 3; ++m) {
            TypeCatalog cat = type_catalog(g, m);
            for (const QfType& t : cat.entries) CHECK(realize_type(t, g).has_value());
            // cross-check against a different structure's catalog
            for (const QfType& t : type_catalog(ordered_graph(4, {{0, 3}}), m).entries)
                CHECK(realize_type(t, g).has_value() == (cat.entries.count(t) == 1));
        }
    }
}

TEST_CASE("age containment iff type containment (ordered corpora)") {
    std::vector<FinStructure> corpus = {
        ordered_graph(3, {}),
        ordered_graph(3, {{0, 1}}),
        ordered_graph(4, {{0, 1}, {2, 3}}),
        ordered_graph(5, {{0, 1}, {1, 2}, {3, 4}}),
    };
    for (const FinStructure& i : corpus)
        for (const FinStructure& j : corpus) {
            int bound = std::min(i.size(), j.size());
            for (int m = 1; m <= bound; ++m) {
                auto ti = type_catalog(i, m).entries;
                auto tj = type_catalog(j, m).entries;
                bool type_contained = true;
                for (const QfType& t : tj) type_contained = type_contained && ti.count(t) == 1;
                bool age_contained = true;
                for (const FinStructure& a : age_up_to(j, m)) {
                    if (a.size() != m) continue;
                    bool found = false;
                    for (const FinStructure& b : age_up_to(i, m))
                        found = found || isomorphic(a, b).has_value();
                    age_contained = age_contained && found;
                }
                CHECK(type_contained == age_contained);
            }
        }
}
