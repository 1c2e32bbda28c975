#include "zb/bigraph.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zb {

BiGraph::BiGraph(int m, int n) : m_(m), n_(n), words_(words_for(n)) {
    if (m < 0 || n < 0) throw std::invalid_argument("negative part size");
    bits_.assign(static_cast<size_t>(m_) * words_, 0);
}

BiGraph BiGraph::complete(int m, int n) {
    BiGraph g(m, n);
    for (int i = 0; i < m; ++i)
        for (int w = 0; w < g.words_; ++w) {
            int lo = w * 64;
            int cnt = std::min(64, n - lo);
            if (cnt > 0) g.row(i)[w] = (cnt == 64) ? ~0ull : ((1ull << cnt) - 1);
        }
    return g;
}

void BiGraph::set_edge(int i, int j, bool present) {
    if (i < 0 || i >= m_ || j < 0 || j >= n_) throw std::out_of_range("edge index");
    uint64_t mask = 1ull << (j & 63);
    if (present)
        row(i)[j >> 6] |= mask;
    else
        row(i)[j >> 6] &= ~mask;
}

long long BiGraph::edge_count() const {
    long long e = 0;
    for (uint64_t w : bits_) e += std::popcount(w);
    return e;
}

int BiGraph::row_degree(int i) const {
    int d = 0;
    for (int w = 0; w < words_; ++w) d += std::popcount(row(i)[w]);
    return d;
}

int BiGraph::col_degree(int j) const {
    int d = 0;
    for (int i = 0; i < m_; ++i) d += edge(i, j) ? 1 : 0;
    return d;
}

std::vector<int> BiGraph::degrees(Side side) const {
    std::vector<int> out;
    if (side == Side::Left) {
        out.reserve(m_);
        for (int i = 0; i < m_; ++i) out.push_back(row_degree(i));
    } else {
        out.assign(n_, 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j)
                if (edge(i, j)) ++out[j];
    }
    return out;
}

BiGraph BiGraph::complement() const {
    BiGraph g(m_, n_);
    int tail_bits = n_ & 63;
    uint64_t tail_mask = (n_ == 0) ? 0 : (tail_bits ? ((1ull << tail_bits) - 1) : ~0ull);
    for (int i = 0; i < m_; ++i) {
        for (int w = 0; w < words_; ++w) g.row(i)[w] = ~row(i)[w];
        if (words_ > 0) g.row(i)[words_ - 1] &= tail_mask;
    }
    return g;
}

BiGraph BiGraph::reflect() const {
    BiGraph g(n_, m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j)
            if (edge(i, j)) g.set_edge(j, i);
    return g;
}

BiGraph BiGraph::delete_vertex(Side side, int index) const {
    if (side == Side::Left) {
        if (index < 0 || index >= m_) throw std::out_of_range("left index");
        BiGraph g(m_ - 1, n_);
        for (int i = 0, o = 0; i < m_; ++i) {
            if (i == index) continue;
            std::copy(row(i), row(i) + words_, g.row(o++));
        }
        return g;
    }
    if (index < 0 || index >= n_) throw std::out_of_range("right index");
    BiGraph g(m_, n_ - 1);
    for (int i = 0; i < m_; ++i)
        for (int j = 0, o = 0; j < n_; ++j) {
            if (j == index) continue;
            if (edge(i, j)) g.set_edge(i, o);
            ++o;
        }
    return g;
}

BiGraph BiGraph::add_vertex(Side side, const std::vector<uint64_t>& neighbors) const {
    int opposite = (side == Side::Left) ? n_ : m_;
    // Reject set bits at or beyond the opposite side's size.
    for (size_t w = 0; w < neighbors.size(); ++w) {
        uint64_t word = neighbors[w];
        while (word) {
            int b = std::countr_zero(word);
            word &= word - 1;
            long long j = static_cast<long long>(w) * 64 + b;
            if (j >= opposite) throw std::out_of_range("neighbor bit out of range");
        }
    }
    auto nbr_bit = [&](int j) {
        size_t w = static_cast<size_t>(j) >> 6;
        return w < neighbors.size() && ((neighbors[w] >> (j & 63)) & 1u);
    };
    if (side == Side::Left) {
        BiGraph g(m_ + 1, n_);
        for (int i = 0; i < m_; ++i) std::copy(row(i), row(i) + words_, g.row(i));
        for (int j = 0; j < n_; ++j)
            if (nbr_bit(j)) g.set_edge(m_, j);
        return g;
    }
    BiGraph g(m_, n_ + 1);
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < n_; ++j)
            if (edge(i, j)) g.set_edge(i, j);
        if (nbr_bit(i)) g.set_edge(i, n_);
    }
    return g;
}

namespace {

// Shared core of contains_biclique / find_biclique.  Rows are presorted by
// descending degree (ties by index); the subset search then runs in
// lexicographic order over sorted positions with a running intersection.
struct BicliqueSearch {
    const BiGraph& g;
    int s, t, words;
    std::vector<int> order;          // sorted row positions -> original row
    std::vector<uint64_t> stack;     // running intersections, (s+1) * words
    std::vector<int> chosen;
    std::optional<Biclique> result;

    BicliqueSearch(const BiGraph& graph, int s_, int t_) : g(graph), s(s_), t(t_), words(graph.row_words()) {
        order.resize(g.left_size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> deg(g.left_size());
        for (int i = 0; i < g.left_size(); ++i) deg[i] = g.row_degree(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
        stack.assign(static_cast<size_t>(s + 1) * words, ~0ull);
        // Top-level intersection is "all columns"; mask the tail.
        int tail = g.right_size() & 63;
        if (tail && words > 0) stack[words - 1] = (1ull << tail) - 1;
        if (g.right_size() == 0) std::fill(stack.begin(), stack.begin() + words, 0ull);
    }

    int popcount_at(int depth) const {
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(stack[static_cast<size_t>(depth) * words + w]);
        return c;
    }

    bool dfs(int depth, int start) {
        if (depth == s) {
            Biclique b;
            for (int p : chosen) b.rows.push_back(order[p]);
            const uint64_t* inter = &stack[static_cast<size_t>(depth) * words];
            for (int w = 0; w < words && static_cast<int>(b.cols.size()) < t; ++w) {
                uint64_t word = inter[w];
                while (word && static_cast<int>(b.cols.size()) < t) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    b.cols.push_back(w * 64 + bit);
                }
            }
            std::sort(b.rows.begin(), b.rows.end());
            result = std::move(b);
            return true;
        }
        for (int p = start; p <= g.left_size() - (s - depth); ++p) {
            const uint64_t* cur = &stack[static_cast<size_t>(depth) * words];
            uint64_t* next = &stack[static_cast<size_t>(depth + 1) * words];
            const uint64_t* r = g.row(order[p]);
            int cnt = 0;
            for (int w = 0; w < words; ++w) {
                next[w] = cur[w] & r[w];
                cnt += std::popcount(next[w]);
            }
            if (cnt < t) continue;
            chosen.push_back(p);
            if (dfs(depth + 1, p + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

bool contains_biclique(const BiGraph& g, int s, int t) {
    return find_biclique(g, s, t).has_value();
}

std::optional<Biclique> find_biclique(const BiGraph& g, int s, int t) {
    if (s < 1 || t < 1) throw std::invalid_argument("biclique orders must be >= 1");
    if (s > g.left_size() || t > g.right_size()) return std::nullopt;
    BicliqueSearch search(g, s, t);
    search.dfs(0, 0);
    return search.result;
}

namespace {

// Choose `need` rows from candidates[from..] whose intersection with `inter`
// keeps at least t columns.
bool rows_with_common(const BiGraph& g, const std::vector<int>& candidates, size_t from, int need,
                      std::vector<uint64_t> inter, int t) {
    if (need == 0) return true;
    int words = g.row_words();
    for (size_t p = from; p + need <= candidates.size(); ++p) {
        std::vector<uint64_t> next(words);
        int cnt = 0;
        const uint64_t* r = g.row(candidates[p]);
        for (int w = 0; w < words; ++w) {
            next[w] = inter[w] & r[w];
            cnt += std::popcount(next[w]);
        }
        if (cnt < t) continue;
        if (rows_with_common(g, candidates, p + 1, need - 1, std::move(next), t)) return true;
    }
    return false;
}

}  // namespace

bool contains_biclique_with_row(const BiGraph& g, int s, int t, int row) {
    if (s < 1 || t < 1) throw std::invalid_argument("biclique orders must be >= 1");
    if (s > g.left_size() || t > g.right_size()) return false;
    int words = g.row_words();
    std::vector<uint64_t> inter(g.row(row), g.row(row) + words);
    int cnt = 0;
    for (uint64_t w : inter) cnt += std::popcount(w);
    if (cnt < t) return false;
    std::vector<int> candidates;
    for (int i = 0; i < g.left_size(); ++i)
        if (i != row) candidates.push_back(i);
    return rows_with_common(g, candidates, 0, s - 1, std::move(inter), t);
}

bool contains_biclique_with_col(const BiGraph& g, int s, int t, int col) {
    if (s < 1 || t < 1) throw std::invalid_argument("biclique orders must be >= 1");
    if (s > g.left_size() || t > g.right_size()) return false;
    // Any s rows all adjacent to `col` sharing >= t columns give a K_{s,t}
    // through it.
    std::vector<int> candidates;
    for (int i = 0; i < g.left_size(); ++i)
        if (g.edge(i, col)) candidates.push_back(i);
    if (static_cast<int>(candidates.size()) < s) return false;
    int words = g.row_words();
    std::vector<uint64_t> inter(words, ~0ull);
    int tail = g.right_size() & 63;
    if (tail) inter[words - 1] = (1ull << tail) - 1;
    return rows_with_common(g, candidates, 0, s, std::move(inter), t);
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

BiGraph parse_graph_lines(const std::vector<std::string_view>& lines, size_t first, int base_line_no) {
    if (first >= lines.size()) parse_fail(base_line_no, "missing graph header");
    std::string header(lines[first]);
    std::istringstream hs(header);
    long long m = -1, n = -1;
    char extra;
    if (!(hs >> m >> n) || (hs >> extra) || m < 1 || n < 1)
        parse_fail(base_line_no + static_cast<int>(first), "expected header \"m n\" with m,n >= 1, got \"" + header + "\"");
    if (m > 100000 || n > 100000) parse_fail(base_line_no + static_cast<int>(first), "part size too large");
    if (lines.size() - first - 1 < static_cast<size_t>(m))
        parse_fail(base_line_no + static_cast<int>(lines.size()), "expected " + std::to_string(m) + " rows, got " +
                                                                      std::to_string(lines.size() - first - 1));
    BiGraph g(static_cast<int>(m), static_cast<int>(n));
    for (int i = 0; i < m; ++i) {
        std::string_view line = lines[first + 1 + i];
        int line_no = base_line_no + static_cast<int>(first) + 1 + i;
        if (static_cast<long long>(line.size()) != n)
            parse_fail(line_no, "expected row of length " + std::to_string(n) + ", got " + std::to_string(line.size()));
        for (int j = 0; j < n; ++j) {
            char c = line[j];
            if (c == '1')
                g.set_edge(i, j);
            else if (c != '0')
                parse_fail(line_no, std::string("illegal character '") + c + "' (want 0/1)");
        }
    }
    return g;
}

}  // namespace

BiGraph bigraph_from_text(std::string_view text) {
    auto lines = split_lines(text);
    // Skip leading comments/blank lines.
    size_t first = 0;
    while (first < lines.size() && (lines[first].empty() || lines[first].front() == '#')) ++first;
    BiGraph g = parse_graph_lines(lines, first, 1);
    size_t used = first + 1 + g.left_size();
    for (size_t k = used; k < lines.size(); ++k)
        if (!lines[k].empty() && lines[k].front() != '#')
            parse_fail(static_cast<int>(k + 1), "trailing content after graph");
    return g;
}

std::string bigraph_to_text(const BiGraph& g) {
    std::string out = std::to_string(g.left_size()) + " " + std::to_string(g.right_size()) + "\n";
    for (int i = 0; i < g.left_size(); ++i) {
        for (int j = 0; j < g.right_size(); ++j) out += g.edge(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::vector<BiGraph> parse_graph_set(std::string_view text) {
    auto lines = split_lines(text);
    std::vector<BiGraph> graphs;
    size_t pos = 0;
    while (pos < lines.size()) {
        if (lines[pos].empty() || lines[pos].front() == '#') {
            ++pos;
            continue;
        }
        BiGraph g = parse_graph_lines(lines, pos, 1);
        pos += 1 + g.left_size();
        graphs.push_back(std::move(g));
        if (pos < lines.size() && !lines[pos].empty() && lines[pos].front() != '#')
            parse_fail(static_cast<int>(pos + 1), "expected blank line between graph records");
    }
    return graphs;
}

std::string graph_set_to_text(const std::vector<BiGraph>& graphs) {
    std::string out;
    for (size_t i = 0; i < graphs.size(); ++i) {
        if (i) out += "\n";
        out += bigraph_to_text(graphs[i]);
    }
    return out;
}

std::vector<BiGraph> read_graph_set(const std::string& path) { return parse_graph_set(read_file(path)); }

void write_graph_set(const std::vector<BiGraph>& graphs, const std::string& path) {
    write_file_atomic(path, graph_set_to_text(graphs));
}

BiGraph load_bigraph(const std::string& path) { return bigraph_from_text(read_file(path)); }

void save_bigraph(const BiGraph& g, const std::string& path) { write_file_atomic(path, bigraph_to_text(g)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view data) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace zb
