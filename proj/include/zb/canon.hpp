// canon.hpp -- canonical forms for bipartite graphs with fixed parts.
//
// Isomorphism here means independent row and column permutations; the parts
// are never exchanged (a reflection-folding variant is offered separately for
// square graphs).  The canonical form is computed nauty-style: iterated
// degree-profile refinement to an ordered partition, then backtracking over
// the permutations compatible with it, keeping the lexicographically least
// matrix encoding.  Automorphisms discovered along the way prune the search.

#pragma once

#include <string>
#include <vector>

#include "zb/bigraph.hpp"

namespace zb {

// Uniquely identifies an isomorphism class.  bytes = big-endian u32 m, u32 n,
// then the canonical matrix rows packed MSB-first; byte order equals
// bit-lexicographic matrix order.
struct CanonicalKey {
    std::string bytes;

    auto operator<=>(const CanonicalKey&) const = default;
    std::string hex() const;
};

struct CanonicalResult {
    CanonicalKey key;
    std::vector<int> row_perm;  // position -> original row
    std::vector<int> col_perm;  // position -> original column
    size_t aut_generators = 0;  // automorphism generators found during search
};

CanonicalResult canonical_form_full(const BiGraph& g);
CanonicalKey canonical_form(const BiGraph& g);

// Relabels g into its canonical order.
BiGraph canonical_graph(const BiGraph& g);

// For m == n additionally folds reflect(g) into the class; otherwise
// identical to canonical_form.
CanonicalKey canonical_form_folded(const BiGraph& g);
BiGraph canonical_graph_folded(const BiGraph& g);

// Side-preserving by convention: K_{2,3} and K_{3,2} are not isomorphic.
bool is_isomorphic(const BiGraph& a, const BiGraph& b);

// One representative per class (the canonical relabeling), sorted by key.
// Throws std::invalid_argument on mixed part sizes.
std::vector<BiGraph> dedup(const std::vector<BiGraph>& graphs, bool with_reflection = false);

}  // namespace zb
