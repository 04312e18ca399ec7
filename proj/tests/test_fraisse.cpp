#include <doctest.h>

#include "structlab/fraisse.hpp"

using namespace structlab;

TEST_CASE("weak saturation certificates at small levels") {
    SUBCASE("level 1: single vertex") {
        SaturationCertificate cert = weakly_saturated_ordered_graph(1);
        CHECK(cert.structure.size() == 1);
        CHECK(cert.verify());
    }
    SUBCASE("level 2: edge and non-edge both realized; 3 vertices are minimal") {
        SaturationCertificate cert = weakly_saturated_ordered_graph(2);
        CHECK(cert.verify());
        CHECK(cert.structure.size() == 4);  // ordered sum of the two 2-vertex graphs
        // no 2-vertex ordered graph can contain both pair types
        for (const FinStructure& g : all_ordered_graphs(2))
            CHECK(age_up_to(g, 2).size() < 3);
    }
    SUBCASE("level 3: all 8 ordered 3-vertex graphs embed") {
        SaturationCertificate cert = weakly_saturated_ordered_graph(3);
        CHECK(cert.verify());
        for (const FinStructure& g : all_ordered_graphs(3))
            CHECK_FALSE(enumerate_embeddings(g, cert.structure).empty());
    }
    SUBCASE("witness map is total over all types up to the level") {
        SaturationCertificate cert = weakly_saturated_ordered_graph(3);
        CHECK(cert.witness_map.size() == 1 + 2 + 8);
        for (const auto& [type, emb] : cert.witness_map) CHECK(emb.valid());
    }
    SUBCASE("determinism") {
        CHECK(weakly_saturated_ordered_graph(3).structure.same_tables(
            weakly_saturated_ordered_graph(3).structure));
    }
    SUBCASE("level 5 needs the explicit override; 6 is always out") {
        CHECK_THROWS_AS(weakly_saturated_ordered_graph(5), StructureError);
        CHECK_THROWS_AS(weakly_saturated_ordered_graph(6, true), StructureError);
    }
}

TEST_CASE("independent age recomputation confirms saturation") {
    for (int level = 1; level <= 3; ++level) {
        SaturationCertificate cert = weakly_saturated_ordered_graph(level);
        auto age = age_up_to(cert.structure, level);
        for (int m = 1; m <= level; ++m)
            for (const FinStructure& g : all_ordered_graphs(m)) {
                bool found = false;
                for (const FinStructure& a : age) found = found || isomorphic(a, g).has_value();
                CHECK(found);
            }
    }
}

TEST_CASE("extension property check") {
    SUBCASE("single vertex at m=1: vacuous") {
        CHECK(extension_property_check(ordered_graph(1, {}), 1).holds());
    }
    SUBCASE("ordered empty graph at m=2: fails for lack of neighbors") {
        auto v = extension_property_check(ordered_graph(4, {}), 2);
        REQUIRE(v.status == Status::fails);
        CHECK(v.certificate->subset.size() == 1);
        CHECK(v.certificate->adjacency.size() == 1);
    }
    SUBCASE("saturation does not imply the extension property") {
        SaturationCertificate cert = weakly_saturated_ordered_graph(2);
        CHECK(cert.verify());
        CHECK(extension_property_check(cert.structure, 2).status == Status::fails);
    }
}

TEST_CASE("embedding service against a certificate") {
    SaturationCertificate cert = weakly_saturated_ordered_graph(2);

    SUBCASE("single vertex") {
        Embedding e = embed_into(ordered_graph(1, {}), cert);
        CHECK(e.valid());
        CHECK(e.map == Tuple{0});
    }
    SUBCASE("ordered non-edge") {
        Embedding e = embed_into(ordered_graph(2, {}), cert);
        CHECK(e.valid());
    }
    SUBCASE("above the level: error") {
        CHECK_THROWS_AS(embed_into(ordered_graph(3, {}), cert), StructureError);
    }
}
