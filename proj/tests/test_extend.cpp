#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include "oracles.hpp"
#include "zb/canon.hpp"
#include "zb/extend.hpp"

using namespace zb;

namespace {

std::set<CanonicalKey> key_set(const std::vector<BiGraph>& graphs) {
    std::set<CanonicalKey> keys;
    for (const BiGraph& g : graphs) keys.insert(canonical_form(g));
    return keys;
}

// Brute-force class enumeration: all matrices, filter, orbit-dedup.
std::set<uint64_t> brute_class_reps(const ClassSpec& spec) {
    auto rp = oracle::all_perms(spec.m);
    auto cp = oracle::all_perms(spec.n);
    std::set<uint64_t> reps;
    for (uint64_t mask = 0; mask < (1ull << (spec.m * spec.n)); ++mask) {
        BiGraph g = oracle::graph_from_mask(spec.m, spec.n, mask);
        if (!member_check(g, spec)) continue;
        reps.insert(oracle::orbit_min(spec.m, spec.n, mask, rp, cp));
    }
    return reps;
}

}  // namespace

TEST_CASE("parse_spec grammar") {
    ClassSpec a = parse_spec("(7,7,42+)_{5,2}");
    CHECK(a.m == 7);
    CHECK(a.n == 7);
    CHECK(a.e_min == 42);
    CHECK(a.s == 5);
    CHECK(a.t == 2);

    ClassSpec b = parse_spec("(4,5,12+)_{2}");
    CHECK(b.s == 2);
    CHECK_FALSE(b.t.has_value());

    ClassSpec c = parse_spec("(3,3,0+)");
    CHECK_FALSE(c.s.has_value());
    CHECK(spec_to_string(c) == "(3,3,0+)");
    CHECK(parse_spec(spec_to_string(a)) == a);

    CHECK_THROWS_WITH_AS(parse_spec("(3,3,4)"), doctest::Contains("position"), ParseError);
    CHECK_THROWS_AS(parse_spec("(3,3,4+)_{2,3,4}"), ParseError);
    CHECK_THROWS_AS(parse_spec("3,3,4+"), ParseError);
    CHECK_THROWS_AS(parse_spec("(3,3,4+) junk"), ParseError);
}

TEST_CASE("member_check worked examples") {
    CHECK_FALSE(member_check(BiGraph::complete(2, 2), parse_spec("(2,2,4+)_{2}")));
    CHECK(member_check(BiGraph::complete(2, 2), parse_spec("(2,2,4+)")));
    // empty square graph: complement is K_{2,2}
    CHECK_FALSE(member_check(BiGraph(2, 2), parse_spec("(2,2,0+)_{2,2}")));
    CHECK(member_check(BiGraph(2, 2), parse_spec("(2,2,0+)_{2}")));
    CHECK_FALSE(member_check(BiGraph(2, 3), parse_spec("(2,2,0+)")));  // size mismatch
}

TEST_CASE("extend_step matches brute-force enumeration on small targets") {
    // one-edge (1,1) graph extended to (1,2,1+)_{2}: adjacent-or-not = 2 classes
    std::vector<BiGraph> seeds = {BiGraph::complete(1, 1)};
    std::vector<BiGraph> grown = extend_step(seeds, parse_spec("(1,2,1+)_{2}"));
    CHECK(grown.size() == 2);
    CHECK(grown.size() == brute_class_reps(parse_spec("(1,2,1+)_{2}")).size());

    // all (2,2)_{2} classes grown to (2,3,4+)_{2} against the mask oracle
    std::vector<BiGraph> parents;
    for (uint64_t mask = 0; mask < 16; ++mask) {
        BiGraph g = oracle::graph_from_mask(2, 2, mask);
        if (member_check(g, parse_spec("(2,2,0+)_{2}"))) parents.push_back(g);
    }
    parents = dedup(parents);
    std::vector<BiGraph> result = extend_step(parents, parse_spec("(2,3,4+)_{2}"));
    CHECK(result.size() == brute_class_reps(parse_spec("(2,3,4+)_{2}")).size());
    for (const BiGraph& g : result) CHECK(member_check(g, parse_spec("(2,3,4+)_{2}")));

    // deterministic across thread counts
    ExtendOptions two;
    two.threads = 2;
    CHECK(extend_step(parents, parse_spec("(2,3,4+)_{2}"), two) == result);
}

TEST_CASE("extend_step rejects malformed inputs") {
    CHECK_THROWS_AS(extend_step({BiGraph(2, 2)}, parse_spec("(4,2,0+)")), std::invalid_argument);
    CHECK_THROWS_AS(extend_step({BiGraph(2, 2)}, parse_spec("(3,3,0+)")), std::invalid_argument);
    CHECK_THROWS_AS(extend_step({BiGraph(2, 2)}, parse_spec("(2,3,9+)")), std::invalid_argument);
    CHECK_THROWS_AS(extend_step({BiGraph(2, 2), BiGraph(2, 3)}, parse_spec("(2,3,0+)")), std::invalid_argument);
    CHECK(extend_step({}, parse_spec("(2,3,0+)")).empty());
}

TEST_CASE("enumerate_class: unconstrained (2,2) has 7 classes") {
    std::vector<BiGraph> classes = enumerate_class(parse_spec("(2,2,0+)"));
    CHECK(classes.size() == 7);
    CHECK(classes.size() == oracle::brute_class_count(2, 2));
}

TEST_CASE("enumerate_class matches the mask oracle on assorted small specs") {
    for (const char* text : {"(3,3,0+)_{2}", "(2,4,3+)_{2}", "(3,3,4+)_{2,2}", "(4,2,5+)", "(3,4,6+)_{2}",
                             "(4,4,9+)_{2}", "(3,3,3+)_{3,2}"}) {
        ClassSpec spec = parse_spec(text);
        std::vector<BiGraph> classes = enumerate_class(spec);
        CAPTURE(text);
        CHECK(classes.size() == brute_class_reps(spec).size());
        for (const BiGraph& g : classes) CHECK(member_check(g, spec));
        CHECK(key_set(classes).size() == classes.size());
    }
}

TEST_CASE("enumerate_max_edges computes z(n;2) for n = 1..4") {
    long long expected[] = {1, 3, 6, 9};
    for (int n = 1; n <= 4; ++n) {
        ClassSpec spec;
        spec.m = spec.n = n;
        spec.s = 2;
        MaxEdgesResult res = enumerate_max_edges(spec);
        CHECK(res.max_edges == expected[n - 1]);
        for (const BiGraph& g : res.extremal) {
            CHECK(g.edge_count() == res.max_edges);
            CHECK_FALSE(contains_biclique(g, 2, 2));
        }
    }
}

TEST_CASE("enumerate guards oversized requests") {
    CHECK_THROWS_WITH_AS(enumerate_class(parse_spec("(8,8,60+)_{2}")), doctest::Contains("guard"),
                         std::invalid_argument);
    EnumerateOptions big;
    big.allow_large = true;
    CHECK_THROWS_WITH_AS(enumerate_class(parse_spec("(9,9,70+)_{2}"), big), doctest::Contains("smaller part"),
                         std::invalid_argument);
    CHECK(enumerate_class(parse_spec("(2,2,5+)")).empty());  // e_min > m*n
}

TEST_CASE("enumerate_class handles wide single-row classes past the word boundary") {
    EnumerateOptions big;
    big.allow_large = true;
    // one row: a class per edge count 35..70
    std::vector<BiGraph> classes = enumerate_class(parse_spec("(1,70,35+)"), big);
    CHECK(classes.size() == 36);
    for (const BiGraph& g : classes) CHECK(g.edge_count() >= 35);
}

TEST_CASE("run_path equals direct enumeration (completeness cross-check)") {
    BackwardsPath path;
    path.steps = {parse_spec("(2,2,1+)_{2}"), parse_spec("(3,2,2+)_{2}"), parse_spec("(3,3,4+)_{2}")};
    std::vector<BiGraph> seeds = enumerate_class(path.seed());
    std::vector<BiGraph> via_path = run_path(path, seeds);
    std::vector<BiGraph> direct = enumerate_class(path.target());
    CHECK(key_set(via_path) == key_set(direct));

    // same check for a complement-constrained family
    BackwardsPath path2;
    path2.steps = {parse_spec("(2,3,2+)_{2,2}"), parse_spec("(3,3,3+)_{2,2}"), parse_spec("(3,4,5+)_{2,2}"),
                   parse_spec("(4,4,7+)_{2,2}")};
    std::vector<BiGraph> seeds2 = enumerate_class(path2.seed());
    CHECK(key_set(run_path(path2, seeds2)) == key_set(enumerate_class(path2.target())));
}

TEST_CASE("reflection folding applies to the final set only") {
    // Intermediate folding would be unsound: a kept representative's
    // reflection does not generate the reflections of its extensions.
    BackwardsPath path;
    path.steps = {parse_spec("(2,2,1+)_{2}"), parse_spec("(3,2,2+)_{2}"), parse_spec("(3,3,4+)_{2}")};
    std::vector<BiGraph> seeds = enumerate_class(path.seed());
    RunPathOptions fold;
    fold.fold_reflection = true;
    std::vector<BiGraph> folded = run_path(path, seeds, fold);
    std::vector<BiGraph> unfolded = enumerate_class(path.target());
    CHECK(folded == dedup(unfolded, true));

    // a non-square target ignores the flag entirely
    BackwardsPath path2 = path;
    path2.steps.push_back(parse_spec("(3,4,6+)_{2}"));
    CHECK(key_set(run_path(path2, seeds, fold)) == key_set(enumerate_class(path2.target())));
}

TEST_CASE("run_path validates seeds and path shape") {
    BackwardsPath path;
    path.steps = {parse_spec("(2,2,4+)"), parse_spec("(3,3,4+)")};
    CHECK_THROWS_WITH_AS(run_path(path, {BiGraph::complete(2, 2)}), doctest::Contains("grow"),
                         std::invalid_argument);
    path.steps = {parse_spec("(2,2,4+)"), parse_spec("(3,2,4+)")};
    CHECK_THROWS_WITH_AS(run_path(path, {BiGraph(2, 2)}), doctest::Contains("seed"), std::invalid_argument);
    path.steps = {parse_spec("(2,2,0+)"), parse_spec("(3,2,0+)_{2}")};
    CHECK_THROWS_WITH_AS(run_path(path, {BiGraph(2, 2)}), doctest::Contains("constraint"), std::invalid_argument);

    // empty seed set stays empty through any path
    path.steps = {parse_spec("(2,2,4+)_{2}"), parse_spec("(3,2,5+)_{2}")};
    CHECK(run_path(path, {}).empty());
}

TEST_CASE("every generated class member satisfies the density step (Lemma 3 soundness)") {
    ClassSpec spec = parse_spec("(4,4,7+)_{2,2}");
    for (const BiGraph& g : enumerate_class(spec)) {
        long long e = g.edge_count();
        auto degs = g.degrees(Side::Left);
        int argmin = static_cast<int>(std::min_element(degs.begin(), degs.end()) - degs.begin());
        BiGraph h = g.delete_vertex(Side::Left, argmin);
        ClassSpec smaller = spec;
        smaller.m -= 1;
        smaller.e_min = e - e / spec.m;
        CHECK(member_check(h, smaller));
    }
}

TEST_CASE("run_path checkpointing is resumable and deterministic") {
    namespace fs = std::filesystem;
    std::string dir = (fs::temp_directory_path() / "zb_ckpt_test").string();
    fs::remove_all(dir);

    BackwardsPath path;
    path.steps = {parse_spec("(2,2,1+)_{2}"), parse_spec("(3,2,2+)_{2}"), parse_spec("(3,3,4+)_{2}")};
    std::vector<BiGraph> seeds = enumerate_class(path.seed());

    RunPathOptions opt;
    opt.checkpoint_dir = dir;
    std::vector<BiGraph> first = run_path(path, seeds, opt);
    CHECK(fs::exists(dir + "/step2_3x3_e4.gs.ok"));
    std::vector<BiGraph> resumed = run_path(path, seeds, opt);  // resumes from the final checkpoint
    CHECK(graph_set_to_text(first) == graph_set_to_text(resumed));

    RunPathOptions tight = opt;
    tight.max_set_size = 1;
    fs::remove_all(dir);
    CHECK_THROWS_AS(run_path(path, seeds, tight), BudgetExceeded);
    fs::remove_all(dir);
}

TEST_CASE("plan_path: degenerate and straight-path thresholds") {
    BackwardsPath trivial = plan_path({4, 4}, {4, 4}, 9, 2, std::nullopt);
    CHECK(trivial.steps.size() == 1);
    CHECK(trivial.seed().e_min == 9);

    // The planned threshold from (16,16,189+) down to (7,7) must be at least
    // the straight-path value 39, and every step shrinks by one vertex.
    BackwardsPath planned = plan_path({7, 7}, {16, 16}, 189, 5, 2);
    CHECK(planned.steps.size() == 19);
    CHECK(planned.seed().m == 7);
    CHECK(planned.seed().n == 7);
    CHECK(planned.target().e_min == 189);
    CHECK(planned.seed().e_min >= 39);
    for (size_t i = 0; i + 1 < planned.steps.size(); ++i) {
        int dm = planned.steps[i + 1].m - planned.steps[i].m;
        int dn = planned.steps[i + 1].n - planned.steps[i].n;
        CHECK(dm + dn == 1);
        CHECK(dm * dn == 0);
        // Lemma 3 consistency: the lower threshold is implied by the upper.
        long long e = planned.steps[i + 1].e_min;
        int k = dm == 1 ? planned.steps[i + 1].m : planned.steps[i + 1].n;
        CHECK(planned.steps[i].e_min <= e - e / k);
    }
}

TEST_CASE("path files round-trip") {
    BackwardsPath path = plan_path({2, 2}, {4, 4}, 9, 2, std::nullopt);
    BackwardsPath back = parse_path_file(path_to_text(path));
    CHECK(back.steps == path.steps);
    CHECK_THROWS_AS(parse_path_file("# only comments\n"), ParseError);
    CHECK_THROWS_WITH_AS(parse_path_file("(2,2,1+)\nnonsense\n"), doctest::Contains("line 2"), ParseError);
}
