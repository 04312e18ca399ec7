#include <doctest.h>

#include "structlab/classes.hpp"

using namespace structlab;

TEST_CASE("age_up_to") {
    SUBCASE("contains the structure itself at full size") {
        FinStructure g = ordered_graph(3, {{0, 2}});
        bool found = false;
        for (const FinStructure& a : age_up_to(g, 3)) found = found || isomorphic(a, g).has_value();
        CHECK(found);
    }
    SUBCASE("ordered K3 up to size 2: vertex and edge") {
        auto age = age_up_to(ordered_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 2);
        REQUIRE(age.size() == 2);
        CHECK(age[0].size() == 1);
        CHECK(isomorphic(age[1], ordered_graph(2, {{0, 1}})).has_value());
    }
    SUBCASE("ordered empty graph up to size 2: vertex and non-edge") {
        auto age = age_up_to(ordered_graph(4, {}), 2);
        REQUIRE(age.size() == 2);
        CHECK(isomorphic(age[1], ordered_graph(2, {})).has_value());
    }
    SUBCASE("age is hereditary as a set") {
        auto age = age_up_to(ordered_graph(4, {{0, 1}, {1, 2}}), 3);
        for (const FinStructure& a : age)
            for (const FinStructure& sub : age_up_to(a, a.size())) {
                bool found = false;
                for (const FinStructure& b : age) found = found || isomorphic(sub, b).has_value();
                CHECK(found);
            }
    }
}

TEST_CASE("hereditary checks") {
    SUBCASE("all ordered graphs: holds") {
        CHECK(hereditary_check(class_ordered_graphs(), 3).holds());
    }
    SUBCASE("girth > 4 ordered graphs: holds") {
        CHECK(hereditary_check(class_girth_gt4_ordered_graphs(), 4).holds());
    }
    SUBCASE("ordered graphs with at least one edge: fails by deleting the edge") {
        FiniteClass base = class_ordered_graphs();
        FiniteClass at_least_one_edge{
            "ordered graphs with an edge",
            base.signature,
            [base](const FinStructure& g) {
                return base.membership(g) && !g.table(g.signature().relation_index("R")).empty();
            },
            [base](int n) {
                std::vector<FinStructure> out;
                for (FinStructure& g : base.generator(n))
                    if (!g.table(g.signature().relation_index("R")).empty())
                        out.push_back(std::move(g));
                return out;
            },
            base.size_cap,
            false};
        auto v = hereditary_check(at_least_one_edge, 2);
        REQUIRE(v.status == Status::fails);
        FinStructure sub =
            induced_substructure(v.certificate->member, v.certificate->subset);
        CHECK_FALSE(at_least_one_edge.membership(sub));
    }
}

TEST_CASE("joint embedding checks") {
    SUBCASE("ordered graphs at bound 3") {
        CHECK(jep_check(class_ordered_graphs(), 3).holds());
    }
    SUBCASE("girth > 4 ordered graphs: ordered sum preserves girth") {
        CHECK(jep_check(class_girth_gt4_ordered_graphs(), 3).holds());
    }
    SUBCASE("linear orders") {
        CHECK(jep_check(class_linear_orders(), 4).holds());
    }
}

TEST_CASE("amalgamation of ordered graphs") {
    SUBCASE("AP and strong AP hold at bound 3") {
        CHECK(ap_check(class_ordered_graphs(6), 3).holds());
        CHECK(strong_ap_check(class_ordered_graphs(6), 3).holds());
    }
    SUBCASE("trivial base B1 = B2 = A amalgamates to A") {
        FinStructure a = ordered_graph(2, {{0, 1}});
        Embedding id{a, a, {0, 1}};
        auto w = find_amalgam(class_ordered_graphs(), {a, a, a, id, id}, true);
        REQUIRE(w.has_value());
        CHECK(w->g1.valid());
        CHECK(w->g2.valid());
    }
}

TEST_CASE("girth > 4 ordered graphs fail AP with the two-pendant base") {
    auto v = ap_check(class_girth_gt4_ordered_graphs(), 3);
    REQUIRE(v.status == Status::fails);
    const AmalgamationBase& base = *v.certificate;
    // shape: 2-vertex base, one added vertex per side, adjacent to both
    CHECK(base.a.size() == 2);
    CHECK(base.b1.size() == 3);
    CHECK(base.b2.size() == 3);
    CHECK(base.b1.table(base.b1.signature().relation_index("R")).size() == 4);  // 2 edges
    CHECK(base.b2.table(base.b2.signature().relation_index("R")).size() == 4);
    // re-verification: no amalgam exists for the certificate
    CHECK_FALSE(find_amalgam(class_girth_gt4_ordered_graphs(), base, false).has_value());
}

TEST_CASE("hypergraph closure checks") {
    SUBCASE("symmetric loop-free R passes") {
        CHECK(hypergraph_check(ordered_graph(3, {{0, 1}})).holds());
    }
    SUBCASE("loop fails antireflexivity") {
        Signature sig({{"R", 2, {}}}, std::nullopt);
        auto v = hypergraph_check(FinStructure(sig, 2, {Table{{0, 0}, {0, 1}, {1, 0}}}));
        REQUIRE(v.status == Status::fails);
        CHECK(v.certificate->tuple == Tuple{0, 0});
    }
    SUBCASE("one-way edge fails symmetry") {
        Signature sig({{"R", 2, {}}}, std::nullopt);
        auto v = hypergraph_check(FinStructure(sig, 2, {Table{{0, 1}}}));
        REQUIRE(v.status == Status::fails);
        CHECK(v.certificate->reason.find("symmetr") != std::string::npos);
    }
}

TEST_CASE("all_ordered_graphs and girth helper") {
    CHECK(all_ordered_graphs(1).size() == 1);
    CHECK(all_ordered_graphs(2).size() == 2);
    CHECK(all_ordered_graphs(3).size() == 8);
    CHECK(all_ordered_graphs(4).size() == 64);
    CHECK(girth_greater_than_4(ordered_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})));
    CHECK_FALSE(girth_greater_than_4(ordered_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
    CHECK_FALSE(girth_greater_than_4(ordered_graph(3, {{0, 1}, {1, 2}, {0, 2}})));
}

TEST_CASE("generator output is duplicate-free and member-only") {
    for (const FiniteClass& k :
         {class_ordered_graphs(), class_girth_gt4_ordered_graphs(), class_linear_orders()})
        for (int n = 1; n <= 3; ++n) {
            auto members = k.generator(n);
            for (size_t i = 0; i < members.size(); ++i) {
                CHECK(k.membership(members[i]));
                for (size_t j = i + 1; j < members.size(); ++j)
                    CHECK_FALSE(isomorphic(members[i], members[j]).has_value());
            }
        }
}
