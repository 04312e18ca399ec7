#include <doctest.h>

#include <sstream>

#include "structlab/formula.hpp"
#include "structlab/io.hpp"
#include "structlab/report.hpp"

using namespace structlab;

TEST_CASE("formula parsing and evaluation") {
    const Signature& sig = Signature::ordered_graph();
    FinStructure path = ordered_graph(3, {{0, 1}, {1, 2}});

    SUBCASE("atoms") {
        FormulaPtr edge = parse_formula("rel(R, x1, x2)", sig);
        CHECK(evaluate(*edge, path, {0, 1}));
        CHECK_FALSE(evaluate(*edge, path, {0, 2}));
        FormulaPtr lt = parse_formula("lt(x1, x2)", sig);
        CHECK(evaluate(*lt, path, {0, 2}));
        CHECK_FALSE(evaluate(*lt, path, {2, 0}));
        FormulaPtr eq = parse_formula("eq(x1, x2)", sig);
        CHECK(evaluate(*eq, path, {1, 1}));
        CHECK_FALSE(evaluate(*eq, path, {1, 2}));
    }
    SUBCASE("connectives") {
        FormulaPtr f = parse_formula("and(rel(R, x1, x2), not(lt(x2, x1)))", sig);
        CHECK(evaluate(*f, path, {0, 1}));
        CHECK_FALSE(evaluate(*f, path, {1, 0}));
        FormulaPtr g = parse_formula("implies(rel(R, x1, x2), rel(R, x2, x1))", sig);
        CHECK(evaluate(*g, path, {0, 2}));  // vacuous
        CHECK(evaluate(*g, path, {0, 1}));  // symmetry of R
    }
    SUBCASE("quantifiers range over the whole domain") {
        FormulaPtr has_nb = parse_formula("exists(x2, rel(R, x1, x2))", sig);
        CHECK(evaluate(*has_nb, path, {0}));
        CHECK(evaluate(*has_nb, path, {1}));
        FormulaPtr universal = parse_formula("forall(x2, or(eq(x1, x2), rel(R, x1, x2)))", sig);
        CHECK(evaluate(*universal, path, {1}));   // middle vertex sees everyone
        CHECK_FALSE(evaluate(*universal, path, {0}));
    }
    SUBCASE("round trip through to_string") {
        FormulaPtr f = parse_formula("or(not(rel(R, x1, x2)), exists(x3, lt(x1, x3)))", sig);
        FormulaPtr again = parse_formula(to_string(*f), sig);
        for (Tuple t : {Tuple{0, 1}, Tuple{1, 2}, Tuple{2, 0}})
            CHECK(evaluate(*f, path, t) == evaluate(*again, path, t));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_formula("rel(Q, x1, x2)", sig), StructureError);
        CHECK_THROWS_AS(parse_formula("and(rel(R, x1, x2)", sig), StructureError);
        CHECK_THROWS_AS(parse_formula("rel(R, x1)", sig), StructureError);
    }
}

TEST_CASE("formula sets") {
    auto sig = std::make_shared<Signature>(Signature::ordered_graph());
    SUBCASE("per-line parsing with comments and declared arity") {
        FormulaSet fs = parse_formula_set("# pair formulas\n"
                                          "rel(R, x1, x2)\n"
                                          "arity 3: lt(x1, x2)\n",
                                          sig);
        REQUIRE(fs.formulas.size() == 2);
        CHECK(fs.formulas[0].arity == 2);
        CHECK(fs.formulas[1].arity == 3);
        CHECK(fs.max_arity() == 3);
    }
    SUBCASE("declared arity below the span is rejected") {
        CHECK_THROWS_AS(parse_formula_set("arity 1: rel(R, x1, x2)\n", sig), StructureError);
    }
}

TEST_CASE("structure files") {
    SUBCASE("minimal single-vertex file") {
        FinStructure s = parse_structure(
            "signature: <:2 order, R:2 symmetric antireflexive; domain: 1");
        CHECK(s.size() == 1);
        CHECK(s.ordered());
    }
    SUBCASE("symmetric flag stores the edge both ways") {
        FinStructure s = parse_structure("signature: <:2 order, R:2 symmetric antireflexive\n"
                                         "domain: 2\n"
                                         "<: 0 1\n"
                                         "R: 0 1\n");
        int r = s.signature().relation_index("R");
        CHECK(s.table(r) == Table{{0, 1}, {1, 0}});
    }
    SUBCASE("non-order order table is an error") {
        CHECK_THROWS_AS(parse_structure("signature: <:2 order, R:2\n"
                                        "domain: 2\n"
                                        "<: 0 1, 1 0\n"),
                        StructureError);
    }
    SUBCASE("print/parse round trip is the identity") {
        FinStructure g = ordered_graph(4, {{0, 2}, {1, 3}});
        FinStructure back = parse_structure(print_structure(g));
        CHECK(back.same_tables(g));
        CHECK(print_structure(back) == print_structure(g));
    }
    SUBCASE("unordered structures round trip too") {
        Signature sig({{"E", 2, {}}}, std::nullopt);
        FinStructure s(sig, 3, {Table{{0, 1}, {2, 0}}});
        CHECK(parse_structure(print_structure(s)).same_tables(s));
    }
    SUBCASE("semantic errors are rejected") {
        CHECK_THROWS_AS(parse_structure("signature: <:2 order\ndomain: 2\n<: 0 5\n"),
                        StructureError);
    }
    SUBCASE("syntax errors carry line numbers") {
        try {
            parse_structure("signature: <:2 order\ndomain: x\n");
            CHECK(false);
        } catch (const StructureError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
}

TEST_CASE("family files") {
    std::string text = "index {\n"
                       "signature: <:2 order, R:2 symmetric antireflexive\n"
                       "domain: 2\n"
                       "<: 0 1\n"
                       "R: 0 1\n"
                       "}\n"
                       "target {\n"
                       "signature: <:2 order\n"
                       "domain: 4\n"
                       "<: 0 1, 0 2, 0 3, 1 2, 1 3, 2 3\n"
                       "}\n"
                       "map: 0 -> 0 1\n"
                       "map: 1 -> 2 3\n";
    SUBCASE("inline sections parse and validate") {
        IndexedFamily fam = parse_family(text, ".");
        CHECK(fam.index.size() == 2);
        CHECK(fam.target.size() == 4);
        CHECK(fam.tuple_length() == 2);
        CHECK(fam.map[1] == Tuple{2, 3});
    }
    SUBCASE("print/parse round trip") {
        IndexedFamily fam = parse_family(text, ".");
        IndexedFamily back = parse_family(print_family(fam), ".");
        CHECK(back.map == fam.map);
        CHECK(back.index.same_tables(fam.index));
        CHECK(back.target.same_tables(fam.target));
    }
    SUBCASE("incomplete map is rejected") {
        std::string broken = text.substr(0, text.rfind("map:"));
        CHECK_THROWS_AS(parse_family(broken, "."), StructureError);
    }
    SUBCASE("duplicate image tuples violate injectivity") {
        std::string dup = text;
        dup.replace(dup.rfind("2 3"), 3, "0 1");
        CHECK_THROWS_AS(parse_family(dup, "."), StructureError);
    }
}

TEST_CASE("run reports") {
    RunReport r;
    r.command = "structlab arrow --C order6 --B order3 --A order2 -k 2";
    r.inputs.emplace_back("C:order6", content_hash("order6"));
    r.verdict = "holds";
    r.certificate_lines.push_back("homogeneous {0,1,2}");
    r.elapsed_ms = 1.5;

    std::ostringstream out;
    r.print(out);
    std::string text = out.str();
    CHECK(text.find("@verdict holds") != std::string::npos);
    CHECK(text.find("@certificate homogeneous {0,1,2}") != std::string::npos);
    CHECK(text.find("@timing ms=") != std::string::npos);
    CHECK(r.exit_code() == 0);

    r.verdict = "fails";
    CHECK(r.exit_code() == 1);
    r.verdict = "inconclusive";
    CHECK(r.exit_code() == 2);

    SUBCASE("content hashes are stable and input-sensitive") {
        CHECK(content_hash("abc") == content_hash("abc"));
        CHECK(content_hash("abc") != content_hash("abd"));
        CHECK(content_hash("").size() == 16);
    }
}
