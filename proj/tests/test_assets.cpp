// Validation of the packaged data files: the z(m,n;s) bound tables and the
// two witness colorings.  These pin the published values the rest of the
// project computes against.

#include <doctest.h>

#include <string>

#include "zb/bounds.hpp"
#include "zb/canon.hpp"
#include "zb/extend.hpp"
#include "zb/groups.hpp"
#include "zb/ramsey.hpp"

using namespace zb;

namespace {

std::string data_dir() {
    if (const char* env = std::getenv("ZB_DATA_DIR")) return env;
    return ZB_DATA_DIR_DEFAULT;
}

std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

}  // namespace

TEST_CASE("z2 table: small values, the open case, and exactness flags") {
    BoundTable z2 = load_table(data_file("z2.csv"));
    CHECK(z2.s() == 2);
    long long small[] = {1, 3, 6, 9, 12, 16};
    for (int n = 1; n <= 6; ++n) {
        auto e = z2.get(n, n);
        REQUIRE(e.has_value());
        CHECK(e->exact);
        CHECK(e->upper == small[n - 1]);
    }
    CHECK(z2.get(17, 17)->upper == 74);
    CHECK(z2.get(17, 17)->exact);
    CHECK(z2.get(16, 16)->upper == 67);
    CHECK(z2.get(18, 18)->upper == 81);
    auto open = z2.get(32, 32);
    REQUIRE(open.has_value());
    CHECK(open->lower == 189);
    CHECK(open->upper == 190);
    CHECK_FALSE(open->exact);
}

TEST_CASE("z3..z6 tables: structure, anchors, and exactly one refuted entry") {
    struct Anchor {
        int s, m, n;
        long long upper;
        bool exact;
    };
    // values quoted in the prose: z(6;3)=26, z(17;3)<=141, z(18;3)<=156,
    // z(7;5)=44, z(16;5)=192, z(17;5)<=213, z(18;5)<=238
    Anchor anchors[] = {
        {3, 6, 6, 26, true},  {3, 17, 17, 141, false}, {3, 18, 18, 156, false}, {5, 7, 7, 44, true},
        {5, 16, 16, 192, true}, {5, 17, 17, 213, false}, {5, 18, 18, 238, false},
    };
    for (const Anchor& a : anchors) {
        BoundTable t = load_table(data_file("z" + std::to_string(a.s) + ".csv"));
        auto e = t.get(a.m, a.n);
        REQUIRE(e.has_value());
        CHECK(e->upper == a.upper);
        CHECK(e->exact == a.exact);
    }

    int refuted = 0;
    for (int s = 3; s <= 6; ++s) {
        BoundTable t = load_table(data_file("z" + std::to_string(s) + ".csv"));
        CHECK(t.entries().size() == 91);  // 6..18 upper triangle
        t.validate();
        for (const auto& [mn, e] : t.entries())
            if (e.lower > star_bound_max_edges(mn.first, mn.second, s)) {
                ++refuted;
                // the one table entry the paper's own star lemma contradicts
                CHECK(s == 6);
                CHECK(mn.first == 10);
                CHECK(mn.second == 10);
                CHECK(e.upper == 95);
            }
    }
    CHECK(refuted == 1);
}

TEST_CASE("the refuted z(10,10;6) entry: true value is 91") {
    // upper bound: the star inequality caps (10,10;6) at 91
    CHECK(star_bound_max_edges(10, 10, 6) == 91);
    // lower bound: complete minus a 9-edge matching is K_{6,6}-free
    BiGraph g = BiGraph::complete(10, 10);
    for (int i = 0; i < 9; ++i) g.set_edge(i, i, false);
    CHECK(g.edge_count() == 91);
    CHECK_FALSE(contains_biclique(g, 6, 6));
}

TEST_CASE("propagation from computational seeds reproduces every published plain entry") {
    for (int s = 3; s <= 6; ++s) {
        BoundTable full = load_table(data_file("z" + std::to_string(s) + ".csv"));
        BoundTable seed(s);
        for (const auto& [mn, e] : full.entries()) {
            if (!e.exact && e.note.find("exhaustive") == std::string::npos) continue;
            if (e.lower > star_bound_max_edges(mn.first, mn.second, s)) continue;
            seed.set(mn.first, mn.second, e);
        }
        ZBoundResult res = z_bound(seed, 18, 18);
        for (const auto& [mn, e] : full.entries()) {
            long long prop = res.table.get(mn.first, mn.second)->upper;
            CAPTURE(s);
            CAPTURE(mn.first);
            CAPTURE(mn.second);
            if (e.exact && e.lower <= star_bound_max_edges(mn.first, mn.second, s))
                CHECK(prop == e.upper);  // soundness: never below an exact value
            if (!e.exact && e.note.find("exhaustive") == std::string::npos)
                CHECK(prop == e.upper);  // lemma-derived entries are recovered exactly
        }
    }
}

TEST_CASE("witness colorings pass and have the documented class sizes") {
    Coloring b25 = load_coloring(data_file("witness_b25.col"));
    CHECK(b25.n == 16);
    CHECK(b25.k == 2);
    std::vector<int> avoid25 = {2, 5};
    WitnessReport r25 = verify_witness(b25, avoid25);
    CHECK(r25.pass);
    CHECK(r25.colors[0].edges == 64);
    CHECK(r25.colors[1].edges == 192);

    Coloring b223 = load_coloring(data_file("witness_b223.col"));
    CHECK(b223.k == 3);
    std::vector<int> avoid223 = {2, 2, 3};
    WitnessReport r223 = verify_witness(b223, avoid223);
    CHECK(r223.pass);
    CHECK(r223.colors[0].edges == 64);
    CHECK(r223.colors[1].edges == 64);
    CHECK(r223.colors[2].edges == 128);

    // the packaged single-class file equals color 1 of the b25 witness
    BiGraph color1 = load_bigraph(data_file("witness_b25_color1.txt"));
    CHECK(color1 == color_class(b25, 1));
    CHECK(color1.degrees(Side::Left) == std::vector<int>(16, 4));
    CHECK(color1.degrees(Side::Right) == std::vector<int>(16, 4));
}

TEST_CASE("the b25 witness graph is a Dic4 bipartite Cayley graph") {
    // the Sidon pipeline recovers a witness set; its Cayley graph must be
    // isomorphic to the packaged matrix
    Group dic4 = builtin_group("dic4");
    BiGraph table1 = load_bigraph(data_file("witness_b25_color1.txt"));
    auto sets = enumerate_sidon(dic4, 4, true);
    bool found = false;
    for (const auto& set : sets) {
        BiGraph cay = cayley_bigraph(dic4, set);
        if (contains_biclique(cay.complement(), 5, 5)) continue;
        found = true;
        CHECK(is_isomorphic(cay, table1));
        break;  // the acceptance suite checks every witness set
    }
    CHECK(found);
}
