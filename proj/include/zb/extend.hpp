// extend.hpp -- exhaustive generation of (m,n,e+)_P graph classes.
//
// A class is all bipartite graphs on fixed part sizes with at least e edges,
// optionally K_{s,s}-free and with K_{t,t}-free bipartite complement, one
// representative per isomorphism class.  Two generation routes are provided:
// growing a whole class from a smaller one by adding a vertex in all possible
// ways (extend_step / run_path, seeded through a backwards path of density
// steps), and from-scratch orderly enumeration by canonical column
// augmentation (enumerate_class).  The two must agree; the tests check that.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zb/bigraph.hpp"
#include "zb/bounds.hpp"

namespace zb {

struct ClassSpec {
    int m = 0;
    int n = 0;
    long long e_min = 0;
    std::optional<int> s;  // forbid K_{s,s} in G
    std::optional<int> t;  // forbid K_{t,t} in complement(G); requires s

    bool operator==(const ClassSpec&) const = default;
};

// Grammar: "(m,n,e+)", "(m,n,e+)_{s}", or "(m,n,e+)_{s,t}".
// Whitespace is allowed around tokens.  Throws ParseError with the
// offending position.
ClassSpec parse_spec(std::string_view text);
std::string spec_to_string(const ClassSpec& spec);

bool member_check(const BiGraph& g, const ClassSpec& spec);

struct ExtendOptions {
    std::optional<long long> z_cap;  // new-vertex degree capped at z_cap - e(parent)
    int threads = 1;
    bool fold_reflection = false;  // dedup convention for square classes
};

// Grows every parent by one vertex on the side where `target` is larger,
// keeping the children that belong to the target class, deduplicated and
// sorted by canonical key.  Parents must all share part sizes one vertex
// short of the target on exactly one side.
std::vector<BiGraph> extend_step(const std::vector<BiGraph>& parents, const ClassSpec& target,
                                 const ExtendOptions& opt = {});

struct BackwardsPath {
    std::vector<ClassSpec> steps;  // seed class first, target class last

    const ClassSpec& seed() const { return steps.front(); }
    const ClassSpec& target() const { return steps.back(); }
};

BackwardsPath parse_path_file(std::string_view text);
std::string path_to_text(const BackwardsPath& path);

struct RunPathOptions {
    const BoundTable* table = nullptr;  // provides z caps per step when s matches
    int threads = 1;
    bool fold_reflection = false;
    std::string checkpoint_dir;            // when set, step outputs are spilled and resumable
    size_t max_set_size = 0;               // 0 = unlimited; exceeded -> BudgetExceeded
    std::function<void(int step, const ClassSpec&, size_t count)> on_step;
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Runs the extend algorithm along the path.  `seeds` must be exactly the
// seed-class representatives; every seed is member_check-verified.
std::vector<BiGraph> run_path(const BackwardsPath& path, const std::vector<BiGraph>& seeds,
                              const RunPathOptions& opt = {});

// Threshold bookkeeping for one lattice cell of the planner.
struct PlanCell {
    long long threshold = -1;
    bool via_left = false;  // predecessor is (m+1, n) rather than (m, n+1)
};

// Finds a backwards path from (to.m, to.n, target_e) down to part sizes
// (from.m, from.n) maximizing the seed threshold; thresholds come from
// repeated density steps, evaluated over all monotone lattice paths by
// dynamic programming.  Constraints (s, t) are copied onto every step.
// When a table is given and some step's threshold exceeds the table's upper
// bound, the class on that step is provably empty; the path is still
// returned (running it proves the target class empty).
BackwardsPath plan_path(std::pair<int, int> from, std::pair<int, int> to, long long target_e,
                        std::optional<int> s, std::optional<int> t, const BoundTable* table = nullptr);

struct EnumerateOptions {
    bool allow_large = false;  // override the m*n <= 56 guard
    int threads = 1;
    std::optional<long long> max_total_edges;  // extra cap, e.g. a known z bound
};

// From-scratch enumeration of the whole class by orderly column
// augmentation: columns are added in non-decreasing value order and a child
// survives only if its column sequence is the lexicographic minimum over all
// row permutations.  Output is one representative per class, sorted by
// canonical key.  Guard: m*n <= 56 unless allow_large; the smaller part must
// not exceed 8 either way.
std::vector<BiGraph> enumerate_class(const ClassSpec& spec, const EnumerateOptions& opt = {});

struct MaxEdgesResult {
    long long max_edges = -1;          // -1 when the class is empty
    std::vector<BiGraph> extremal;     // all classes attaining max_edges
};

// Branch-and-bound over the same orderly tree: the largest edge count of any
// K_{s,s}-free (and optionally complement-K_{t,t}-free) graph on (m,n),
// with every extremal class.  This computes z(m,n;s) exactly at small sizes.
MaxEdgesResult enumerate_max_edges(const ClassSpec& spec, const EnumerateOptions& opt = {});

}  // namespace zb
