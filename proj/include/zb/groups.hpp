// groups.hpp -- finite groups as multiplication tables, Sidon sets, and
// bipartite Cayley graphs.
//
// X(G, S) has both parts indexed by the group: element g on the left is
// joined to g*s on the right for every edge generator s in S.  S is Sidon
// exactly when X(G, S) is K_{2,2}-free, which is how the witness colorings
// in the ramsey module are built.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zb/bigraph.hpp"

namespace zb {

class Group {
public:
    // Builds from a row-major multiplication table; verifies closure,
    // identity, inverses and associativity (O(k^3), meant for k <= 32).
    // Throws std::invalid_argument with a witness triple on violation.
    static Group from_table(std::vector<int> mul, int order);

    int order() const { return order_; }
    int identity() const { return identity_; }
    int op(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inv_[static_cast<size_t>(a)]; }

private:
    Group() = default;
    int order_ = 0;
    int identity_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
};

// Builtin families and their direct products.  Accepted atoms:
//   cyclic(n) | z<n> | c<n>          order n
//   dihedral(n) | d<n>               order 2n
//   dicyclic(n) | dic<n> | q<4n>     order 4n (dic2 = quaternion group)
// Atoms joined with 'x' form direct products, e.g. "z2xz4", "z2xz2xz2".
// Throws std::invalid_argument for unknown names.
Group builtin_group(std::string_view name);

// Group files: first line k, then k lines of k 1-based element indices;
// element 1 is required to be the identity.
Group load_group(const std::string& path);
Group parse_group(std::string_view text);
std::string group_to_text(const Group& g);
void save_group(const Group& g, const std::string& path);

// No solutions to s1 s2^-1 s3 s4^-1 = 1 in S except with a cyclically
// adjacent pair equal; equivalently all quotients a b^-1 (a != b in S)
// are pairwise distinct.
bool is_sidon(const Group& g, std::span<const int> set);

// All Sidon sets of the given size, each sorted ascending, output in
// lexicographic order.  require_identity restricts to sets containing the
// identity (the usual normalization).  Subsets of Sidon sets are Sidon, so
// the search extends only Sidon prefixes.
std::vector<std::vector<int>> enumerate_sidon(const Group& g, int size, bool require_identity);

// |G| x |G| bipartite Cayley graph: row g has columns {g*s : s in S}.
BiGraph cayley_bigraph(const Group& g, std::span<const int> set);

}  // namespace zb
