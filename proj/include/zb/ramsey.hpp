// ramsey.hpp -- bipartite Ramsey bounds from Zarankiewicz tables, and
// verification of lower-bound witness colorings.
//
// A k-coloring of K_{n,n} witnesses n < b(s_1,...,s_k) when color class i is
// K_{s_i,s_i}-free for every i.  The matching upper-bound route is pure
// arithmetic: if sum_i z(n; s_i) < n^2, some class must exceed its
// Zarankiewicz bound, so b(s_1,...,s_k) <= n.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zb/bigraph.hpp"
#include "zb/bounds.hpp"

namespace zb {

struct Coloring {
    int n = 0;
    int k = 0;
    std::vector<uint8_t> cells;  // row-major, values 1..k

    uint8_t at(int i, int j) const { return cells[static_cast<size_t>(i) * n + j]; }
};

// File format: first line "n k", then n lines of n digits in 1..k (k <= 9).
Coloring parse_coloring(std::string_view text);
Coloring load_coloring(const std::string& path);
std::string coloring_to_text(const Coloring& c);
Coloring reflect(const Coloring& c);

// The bipartite graph formed by the cells of color i (1-based).
BiGraph color_class(const Coloring& c, int color);

struct ColorVerdict {
    int color = 0;
    long long edges = 0;
    int forbidden = 0;
    bool pass = false;
    std::optional<Biclique> certificate;  // an embedded K_{s,s} on failure
};

struct WitnessReport {
    int n = 0;
    bool pass = false;
    std::vector<ColorVerdict> colors;

    // One machine-readable line per color plus an overall verdict:
    //   color i: edges=E, forbidden=s, verdict=PASS|FAIL[, certificate=rows;cols]
    std::string to_text() const;
};

// Checks that class i avoids K_{s_i,s_i} for each color; a pass certifies
// n < b(s_1,...,s_k).
WitnessReport verify_witness(const Coloring& c, std::span<const int> avoid);

// sum of the per-color upper bounds < n^2 ?
bool upper_bound_check(int n, std::span<const long long> z_uppers);

struct RamseyDerivation {
    std::optional<int> n;            // least n that passes, if any
    std::vector<std::string> lines;  // per-candidate audit trail
};

// Least n <= n_max with sum_i upper(n,n) < n^2, using one bound table per
// color.  Candidates with missing entries are skipped with a warning line,
// never guessed.
RamseyDerivation derive_ramsey_upper(std::span<const BoundTable* const> tables, std::span<const int> avoid,
                                     int n_max);

}  // namespace zb
