#include "zb/canon.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <stdexcept>

namespace zb {

namespace {

// Vertices are numbered 0..m-1 (rows) and m..m+n-1 (columns).  An ordered
// partition is a list of cells; refinement and individualization preserve
// the invariant that every cell is single-sided.
struct Cell {
    bool is_row;
    std::vector<int> members;  // row indices or column indices
};

struct Searcher {
    const BiGraph& g;
    int m, n;

    std::vector<std::vector<int>> row_adj;  // row -> sorted columns
    std::vector<std::vector<int>> col_adj;  // col -> sorted rows

    // Best (lex-least) leaf seen so far.
    bool have_best = false;
    std::vector<uint64_t> best_matrix;  // m rows, MSB-first packed
    std::vector<int> best_row_of, best_col_of;

    // Discovered automorphism generators over rows and columns.
    std::vector<std::vector<int>> aut_row, aut_col;

    std::vector<int> prefix;  // individualized vertices, root downward

    explicit Searcher(const BiGraph& graph)
        : g(graph), m(graph.left_size()), n(graph.right_size()) {
        row_adj.resize(m);
        col_adj.resize(n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (g.edge(i, j)) {
                    row_adj[i].push_back(j);
                    col_adj[j].push_back(i);
                }
    }

    // Counts of neighbors of v in each opposite-side cell, in cell order.
    std::vector<int> profile(const std::vector<Cell>& cells, bool v_is_row, int v) const {
        std::vector<int> cell_of(v_is_row ? n : m, -1);
        int idx = 0;
        for (const Cell& c : cells) {
            if (c.is_row != v_is_row)
                for (int u : c.members) cell_of[u] = idx;
            ++idx;
        }
        std::vector<int> prof(cells.size(), 0);
        const std::vector<int>& nbrs = v_is_row ? row_adj[v] : col_adj[v];
        for (int u : nbrs)
            if (cell_of[u] >= 0) ++prof[cell_of[u]];
        return prof;
    }

    // Splits cells by neighbor-count profiles until stable.  Fragments of a
    // split cell are ordered by profile, lexicographically ascending.
    void refine(std::vector<Cell>& cells) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t ci = 0; ci < cells.size(); ++ci) {
                if (cells[ci].members.size() <= 1) continue;
                std::map<std::vector<int>, std::vector<int>> groups;
                for (int v : cells[ci].members) groups[profile(cells, cells[ci].is_row, v)].push_back(v);
                if (groups.size() <= 1) continue;
                std::vector<Cell> frags;
                for (auto& [prof, members] : groups)
                    frags.push_back(Cell{cells[ci].is_row, std::move(members)});
                cells.erase(cells.begin() + static_cast<long>(ci));
                cells.insert(cells.begin() + static_cast<long>(ci), frags.begin(), frags.end());
                changed = true;
                break;  // rescan from the start with the new cell order
            }
        }
    }

    // Encodes the matrix under a full labeling, rows then packed columns,
    // MSB-first so word comparison equals bit-lexicographic comparison.
    std::vector<uint64_t> encode(const std::vector<int>& row_of, const std::vector<int>& col_of) const {
        int words = words_for(n);
        std::vector<uint64_t> out(static_cast<size_t>(m) * words, 0);
        for (int p = 0; p < m; ++p) {
            int i = row_of[p];
            for (int q = 0; q < n; ++q)
                if (g.edge(i, col_of[q]))
                    out[static_cast<size_t>(p) * words + (q >> 6)] |= 1ull << (63 - (q & 63));
        }
        return out;
    }

    void record_leaf(const std::vector<Cell>& cells) {
        std::vector<int> row_of, col_of;
        row_of.reserve(m);
        col_of.reserve(n);
        for (const Cell& c : cells)
            (c.is_row ? row_of : col_of).push_back(c.members[0]);
        std::vector<uint64_t> mat = encode(row_of, col_of);
        if (!have_best || mat < best_matrix) {
            have_best = true;
            best_matrix = std::move(mat);
            best_row_of = row_of;
            best_col_of = col_of;
            return;
        }
        if (mat == best_matrix && (row_of != best_row_of || col_of != best_col_of)) {
            // Two labelings with the same image give an automorphism
            // v -> leaf(position(best, v)).
            std::vector<int> ar(m), ac(n);
            for (int p = 0; p < m; ++p) ar[best_row_of[p]] = row_of[p];
            for (int q = 0; q < n; ++q) ac[best_col_of[q]] = col_of[q];
            aut_row.push_back(std::move(ar));
            aut_col.push_back(std::move(ac));
        }
    }

    // Does generator k fix every individualized vertex of the current prefix?
    bool generator_fixes_prefix(size_t k) const {
        for (int v : prefix) {
            if (v < m) {
                if (aut_row[k][v] != v) return false;
            } else if (aut_col[k][v - m] != v - m) {
                return false;
            }
        }
        return true;
    }

    void search(std::vector<Cell> cells) {
        refine(cells);
        size_t target = cells.size();
        for (size_t ci = 0; ci < cells.size(); ++ci)
            if (cells[ci].members.size() > 1) {
                target = ci;
                break;
            }
        if (target == cells.size()) {
            record_leaf(cells);
            return;
        }

        // Orbit pruning: members already covered by an automorphism fixing
        // the current prefix need not be branched on.  The orbit structure
        // is rebuilt lazily as generators accumulate during the loop.
        const Cell& tc = cells[target];
        std::vector<int> tried;
        std::vector<int> uf(m + n);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
        size_t applied = 0;
        auto absorb_new_generators = [&]() {
            for (; applied < aut_row.size(); ++applied) {
                if (!generator_fixes_prefix(applied)) continue;
                for (int v = 0; v < m; ++v) unite(v, aut_row[applied][v]);
                for (int v = 0; v < n; ++v) unite(m + v, m + aut_col[applied][v]);
            }
        };

        for (int v : tc.members) {
            absorb_new_generators();
            int vid = tc.is_row ? v : m + v;
            bool seen = false;
            for (int u : tried)
                if (find(u) == find(vid)) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            tried.push_back(vid);

            std::vector<Cell> child = cells;
            Cell rest{tc.is_row, {}};
            for (int u : tc.members)
                if (u != v) rest.members.push_back(u);
            child[target].members = {v};
            child.insert(child.begin() + static_cast<long>(target) + 1, std::move(rest));
            prefix.push_back(vid);
            search(std::move(child));
            prefix.pop_back();
        }
    }

    CanonicalResult run() {
        std::vector<Cell> cells;
        if (m > 0) {
            Cell rows{true, std::vector<int>(m)};
            std::iota(rows.members.begin(), rows.members.end(), 0);
            cells.push_back(std::move(rows));
        }
        if (n > 0) {
            Cell cols{false, std::vector<int>(n)};
            std::iota(cols.members.begin(), cols.members.end(), 0);
            cells.push_back(std::move(cols));
        }
        if (cells.empty()) {
            have_best = true;
        }
        search(std::move(cells));

        CanonicalResult res;
        res.row_perm = best_row_of;
        res.col_perm = best_col_of;
        res.aut_generators = aut_row.size();

        std::string bytes;
        auto push_u32 = [&](uint32_t x) {
            for (int b = 3; b >= 0; --b) bytes.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
        };
        push_u32(static_cast<uint32_t>(m));
        push_u32(static_cast<uint32_t>(n));
        int row_bytes = (n + 7) / 8;
        int words = words_for(n);
        for (int p = 0; p < m; ++p)
            for (int b = 0; b < row_bytes; ++b) {
                uint64_t word = best_matrix[static_cast<size_t>(p) * words + (b >> 3)];
                bytes.push_back(static_cast<char>((word >> (8 * (7 - (b & 7)))) & 0xff));
            }
        res.key.bytes = std::move(bytes);
        return res;
    }
};

}  // namespace

std::string CanonicalKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

CanonicalResult canonical_form_full(const BiGraph& g) { return Searcher(g).run(); }

CanonicalKey canonical_form(const BiGraph& g) { return canonical_form_full(g).key; }

BiGraph canonical_graph(const BiGraph& g) {
    CanonicalResult res = canonical_form_full(g);
    BiGraph out(g.left_size(), g.right_size());
    for (int p = 0; p < g.left_size(); ++p)
        for (int q = 0; q < g.right_size(); ++q)
            if (g.edge(res.row_perm[p], res.col_perm[q])) out.set_edge(p, q);
    return out;
}

CanonicalKey canonical_form_folded(const BiGraph& g) {
    CanonicalKey key = canonical_form(g);
    if (g.left_size() != g.right_size()) return key;
    CanonicalKey mirrored = canonical_form(g.reflect());
    return std::min(key, mirrored);
}

BiGraph canonical_graph_folded(const BiGraph& g) {
    if (g.left_size() != g.right_size()) return canonical_graph(g);
    CanonicalKey key = canonical_form(g);
    CanonicalKey mirrored = canonical_form(g.reflect());
    return mirrored < key ? canonical_graph(g.reflect()) : canonical_graph(g);
}

bool is_isomorphic(const BiGraph& a, const BiGraph& b) {
    if (a.left_size() != b.left_size() || a.right_size() != b.right_size()) return false;
    return canonical_form(a) == canonical_form(b);
}

std::vector<BiGraph> dedup(const std::vector<BiGraph>& graphs, bool with_reflection) {
    if (graphs.empty()) return {};
    int m = graphs.front().left_size(), n = graphs.front().right_size();
    std::map<CanonicalKey, BiGraph> classes;
    for (const BiGraph& g : graphs) {
        if (g.left_size() != m || g.right_size() != n)
            throw std::invalid_argument("dedup: mixed part sizes");
        if (with_reflection && m == n)
            classes.emplace(canonical_form_folded(g), canonical_graph_folded(g));
        else
            classes.emplace(canonical_form(g), canonical_graph(g));
    }
    std::vector<BiGraph> out;
    out.reserve(classes.size());
    for (auto& [key, g] : classes) out.push_back(std::move(g));
    return out;
}

}  // namespace zb
