// bounds.hpp -- upper-bound machinery for Zarankiewicz numbers z(m,n;s).
//
// Three ingredients: balanced compositions minimize sums of binomials over
// a fixed total; the star-counting inequality sum C(a_i, s) <= (s-1) C(n, s)
// for K_{s,s}-free graphs; and the density step "a graph with e edges on m
// left vertices loses at most floor(e/m) edges when a minimum-degree left
// vertex is removed".  z_bound sweeps a bound table with all three until no
// entry improves.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zb/bigraph.hpp"

namespace zb {

// C(a, k), exact in 64-bit; throws std::overflow_error if it would not fit.
long long binom(long long a, long long k);

struct Composition {
    std::vector<long long> parts;  // non-increasing
    long long total() const;
};

// p into k parts, as equal as possible: k - (p mod k) parts of floor(p/k)
// and (p mod k) parts of floor(p/k)+1, non-increasing.
Composition balanced_composition(long long p, int k);

// sum of C(a_i, s) over the parts.
long long star_sum(const Composition& c, int s);

// Largest e that the star inequality allows on (m, n) against K_{s,s},
// taking the minimum of the left- and right-hand applications.  For
// m < s or n < s returns m*n (no K_{s,s} fits at all).
long long star_bound_max_edges(int m, int n, int s);

// Largest w with w - floor(w/m) <= u_prev: an upper bound on z(m,n;s) given
// the upper bound u_prev on z(m-1,n;s).
long long density_step_bound(long long u_prev, int m);

struct BoundEntry {
    long long lower = 0;
    long long upper = 0;
    bool exact = false;
    std::string note;  // "*", "†", "exhaustive", free text
};

// Bounds on z(m,n;s) for one fixed s; symmetric in (m,n), stored with m <= n.
class BoundTable {
public:
    BoundTable() = default;
    explicit BoundTable(int s) : s_(s) {}

    int s() const { return s_; }
    void set_s(int s) { s_ = s; }

    std::optional<BoundEntry> get(int m, int n) const;
    void set(int m, int n, BoundEntry entry);
    bool has(int m, int n) const { return get(m, n).has_value(); }

    const std::map<std::pair<int, int>, BoundEntry>& entries() const { return entries_; }

    // lower <= upper everywhere, exact => lower == upper.
    void validate() const;

private:
    int s_ = 0;
    std::map<std::pair<int, int>, BoundEntry> entries_;
};

struct ZBoundError : std::runtime_error {
    explicit ZBoundError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZBoundResult {
    BoundTable table;
    // Per-cell derivation, e.g. "density from (16,17)" -- used for the
    // inconsistency report and the improvements log.
    std::map<std::pair<int, int>, std::string> derivation;
};

// Propagates upper bounds over all 1 <= m,n <= max_m/max_n: each cell takes
// the min of its seeded upper, the trivial m*n, the star bound, and density
// steps from both neighbors (both orientations), iterated to a fixpoint.
// Cells with m < s or n < s are exact m*n.  Throws ZBoundError (with the
// derivation chain) if a propagated upper drops below a seeded lower bound.
ZBoundResult z_bound(const BoundTable& seed, int max_m, int max_n);

// CSV format: header "m,n,s,lower,upper,exact[,note]".
BoundTable load_table(const std::string& path);
BoundTable parse_table_csv(std::string_view text);
std::string table_to_csv(const BoundTable& table);
void save_table(const BoundTable& table, const std::string& path);

}  // namespace zb
