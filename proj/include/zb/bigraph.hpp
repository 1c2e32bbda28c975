// bigraph.hpp -- bipartite graphs with a fixed bipartition.
//
// A graph on parts of sizes m (left) and n (right) is stored as its m x n
// 0-1 matrix, one bitset row per left vertex.  Rows are packed into 64-bit
// words, so all the hot operations (complement, intersection counting,
// biclique search) are word-parallel.  Everything here is a pure value
// operation; BiGraph values can be freely copied and shared across threads.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zb {

enum class Side { Left, Right };

// Thrown on malformed input files; message carries the line number.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class BiGraph {
public:
    BiGraph() = default;
    BiGraph(int m, int n);  // empty graph

    static BiGraph complete(int m, int n);

    int left_size() const { return m_; }
    int right_size() const { return n_; }
    int row_words() const { return words_; }

    const uint64_t* row(int i) const { return bits_.data() + static_cast<size_t>(i) * words_; }
    uint64_t* row(int i) { return bits_.data() + static_cast<size_t>(i) * words_; }

    bool edge(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void set_edge(int i, int j, bool present = true);

    long long edge_count() const;
    int row_degree(int i) const;
    int col_degree(int j) const;
    std::vector<int> degrees(Side side) const;

    BiGraph complement() const;
    BiGraph reflect() const;

    // Removes the vertex at `index` on `side`; remaining vertices keep their
    // relative order.  Throws std::out_of_range on a bad index.
    BiGraph delete_vertex(Side side, int index) const;

    // Appends a vertex on `side` whose neighborhood is the given bitset over
    // the opposite side (words_ sized for that side's current width).
    // Throws std::out_of_range if a neighbor bit is outside the range.
    BiGraph add_vertex(Side side, const std::vector<uint64_t>& neighbors) const;

    bool operator==(const BiGraph& other) const = default;

private:
    int m_ = 0;
    int n_ = 0;
    int words_ = 0;  // 64-bit words per row
    std::vector<uint64_t> bits_;
};

// Number of 64-bit words needed for `n` bits.
inline int words_for(int n) { return n <= 0 ? 1 : (n + 63) >> 6; }

struct Biclique {
    std::vector<int> rows;
    std::vector<int> cols;
};

// Exact test for a K_{s,t} subgraph (s left vertices, t right vertices,
// all s*t edges present).  Enumerates s-subsets of the rows in lexicographic
// order over a descending-degree presort, keeping a running intersection and
// pruning any prefix whose intersection has fewer than t columns.
// s > m or t > n yields false.
bool contains_biclique(const BiGraph& g, int s, int t);

// Same search, but reports one embedded biclique (original indices) if found.
std::optional<Biclique> find_biclique(const BiGraph& g, int s, int t);

// Restricted tests used by incremental extension: is there a K_{s,t} whose
// row set (resp. column set) contains the given vertex?  When a graph grew
// by one vertex from a biclique-free parent, these decide freeness of the
// whole child.
bool contains_biclique_with_row(const BiGraph& g, int s, int t, int row);
bool contains_biclique_with_col(const BiGraph& g, int s, int t, int col);

// Text format: first line "m n", then m lines of exactly n characters
// from {0,1}.  Errors are reported with a 1-based line number.
BiGraph bigraph_from_text(std::string_view text);
std::string bigraph_to_text(const BiGraph& g);

// Graph-set files: records in the text format above separated by one blank
// line; lines starting with '#' are comments and may appear anywhere.
std::vector<BiGraph> read_graph_set(const std::string& path);
std::vector<BiGraph> parse_graph_set(std::string_view text);
std::string graph_set_to_text(const std::vector<BiGraph>& graphs);
void write_graph_set(const std::vector<BiGraph>& graphs, const std::string& path);

BiGraph load_bigraph(const std::string& path);
void save_bigraph(const BiGraph& g, const std::string& path);

// Writes `data` to `path` via a temp file + rename, so readers never observe
// a partial file.
void write_file_atomic(const std::string& path, std::string_view data);
std::string read_file(const std::string& path);

}  // namespace zb
