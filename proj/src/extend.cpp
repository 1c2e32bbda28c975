#include "zb/extend.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "zb/canon.hpp"

namespace zb {

// ---------------------------------------------------------------- spec text

namespace {

struct SpecParser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("spec position " + std::to_string(pos + 1) + ": " + what);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    long long number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        try {
            return std::stoll(std::string(text.substr(start, pos - start)));
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
    }
};

}  // namespace

ClassSpec parse_spec(std::string_view text) {
    SpecParser p{text};
    ClassSpec spec;
    p.expect('(');
    spec.m = static_cast<int>(p.number());
    p.expect(',');
    spec.n = static_cast<int>(p.number());
    p.expect(',');
    spec.e_min = p.number();
    p.expect('+');
    p.expect(')');
    if (p.peek('_')) {
        p.expect('_');
        p.expect('{');
        spec.s = static_cast<int>(p.number());
        if (p.peek(',')) {
            p.expect(',');
            spec.t = static_cast<int>(p.number());
        }
        p.expect('}');
    }
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    if (spec.m < 1 || spec.n < 1) p.fail("part sizes must be >= 1");
    if (spec.e_min < 0) p.fail("edge threshold must be >= 0");
    if (spec.s && *spec.s < 1) p.fail("s must be >= 1");
    if (spec.t && *spec.t < 1) p.fail("t must be >= 1");
    return spec;
}

std::string spec_to_string(const ClassSpec& spec) {
    std::string out = "(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + "," +
                      std::to_string(spec.e_min) + "+)";
    if (spec.s) {
        out += "_{" + std::to_string(*spec.s);
        if (spec.t) out += "," + std::to_string(*spec.t);
        out += "}";
    }
    return out;
}

BackwardsPath parse_path_file(std::string_view text) {
    BackwardsPath path;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            path.steps.push_back(parse_spec(line));
        } catch (const ParseError& ex) {
            throw ParseError("path line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
    if (path.steps.empty()) throw ParseError("path file contains no steps");
    return path;
}

std::string path_to_text(const BackwardsPath& path) {
    std::string out;
    for (const ClassSpec& s : path.steps) out += spec_to_string(s) + "\n";
    return out;
}

// -------------------------------------------------------------- membership

bool member_check(const BiGraph& g, const ClassSpec& spec) {
    if (spec.t && !spec.s) throw std::invalid_argument("spec with t but no s");
    if (g.left_size() != spec.m || g.right_size() != spec.n) return false;
    if (g.edge_count() < spec.e_min) return false;
    if (spec.s && contains_biclique(g, *spec.s, *spec.s)) return false;
    if (spec.t && contains_biclique(g.complement(), *spec.t, *spec.t)) return false;
    return true;
}

namespace {

// member_check for a child that grew from a member of the same constraint
// family: only bicliques through the new vertex can have appeared.
bool member_check_incremental(const BiGraph& child, const ClassSpec& spec, Side grown) {
    if (child.edge_count() < spec.e_min) return false;
    if (spec.s) {
        bool hit = grown == Side::Left
                       ? contains_biclique_with_row(child, *spec.s, *spec.s, child.left_size() - 1)
                       : contains_biclique_with_col(child, *spec.s, *spec.s, child.right_size() - 1);
        if (hit) return false;
    }
    if (spec.t) {
        BiGraph comp = child.complement();
        bool hit = grown == Side::Left
                       ? contains_biclique_with_row(comp, *spec.t, *spec.t, comp.left_size() - 1)
                       : contains_biclique_with_col(comp, *spec.t, *spec.t, comp.right_size() - 1);
        if (hit) return false;
    }
    return true;
}

}  // namespace

// ------------------------------------------------------------- extend_step

std::vector<BiGraph> extend_step(const std::vector<BiGraph>& parents, const ClassSpec& target,
                                 const ExtendOptions& opt) {
    if (target.e_min > static_cast<long long>(target.m) * target.n)
        throw std::invalid_argument("extend_step: e_min exceeds m*n");
    if (parents.empty()) return {};

    int pm = parents.front().left_size(), pn = parents.front().right_size();
    Side grown;
    if (pm + 1 == target.m && pn == target.n)
        grown = Side::Left;
    else if (pm == target.m && pn + 1 == target.n)
        grown = Side::Right;
    else
        throw std::invalid_argument("extend_step: parents are not one vertex short of the target");
    for (const BiGraph& g : parents)
        if (g.left_size() != pm || g.right_size() != pn)
            throw std::invalid_argument("extend_step: mixed parent part sizes");

    int opposite = grown == Side::Left ? target.n : target.m;
    if (opposite > 24) throw std::invalid_argument("extend_step: opposite side too large to enumerate");
    uint32_t subsets = 1u << opposite;

    bool fold = opt.fold_reflection && target.m == target.n;
    int threads = std::max(1, opt.threads);
    std::vector<std::map<CanonicalKey, BiGraph>> partial(threads);
    std::atomic<size_t> next_parent{0};

    auto worker = [&](int tid) {
        std::map<CanonicalKey, BiGraph>& local = partial[tid];
        for (;;) {
            size_t pi = next_parent.fetch_add(1);
            if (pi >= parents.size()) break;
            const BiGraph& parent = parents[pi];
            long long e_parent = parent.edge_count();
            long long d_low = std::max<long long>(0, target.e_min - e_parent);
            long long d_high = opposite;
            if (opt.z_cap) d_high = std::min<long long>(d_high, *opt.z_cap - e_parent);
            if (d_high < d_low) continue;
            for (uint32_t sub = 0; sub < subsets; ++sub) {
                int d = std::popcount(sub);
                if (d < d_low || d > d_high) continue;
                BiGraph child = parent.add_vertex(grown, {static_cast<uint64_t>(sub)});
                if (!member_check_incremental(child, target, grown)) continue;
                if (fold)
                    local.emplace(canonical_form_folded(child), canonical_graph_folded(child));
                else
                    local.emplace(canonical_form(child), canonical_graph(child));
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int tPart = 0; tPart < threads; ++tPart) pool.emplace_back(worker, tPart);
        for (auto& th : pool) th.join();
    }

    std::map<CanonicalKey, BiGraph> merged;
    for (auto& local : partial) merged.merge(local);
    std::vector<BiGraph> out;
    out.reserve(merged.size());
    for (auto& [key, g] : merged) out.push_back(std::move(g));
    return out;
}

// ---------------------------------------------------------------- run_path

namespace {

std::string checkpoint_file(const std::string& dir, int step, const ClassSpec& spec) {
    return dir + "/step" + std::to_string(step) + "_" + std::to_string(spec.m) + "x" + std::to_string(spec.n) +
           "_e" + std::to_string(spec.e_min) + ".gs";
}

}  // namespace

std::vector<BiGraph> run_path(const BackwardsPath& path, const std::vector<BiGraph>& seeds,
                              const RunPathOptions& opt) {
    if (path.steps.empty()) throw std::invalid_argument("run_path: empty path");
    for (size_t i = 0; i + 1 < path.steps.size(); ++i) {
        const ClassSpec& a = path.steps[i];
        const ClassSpec& b = path.steps[i + 1];
        bool left_step = a.m + 1 == b.m && a.n == b.n;
        bool right_step = a.m == b.m && a.n + 1 == b.n;
        if (!left_step && !right_step)
            throw std::invalid_argument("run_path: step " + std::to_string(i + 1) +
                                        " does not grow by exactly one vertex");
        if (a.s != b.s || a.t != b.t)
            throw std::invalid_argument("run_path: constraint family changes mid-path");
    }
    for (size_t i = 0; i < seeds.size(); ++i)
        if (!member_check(seeds[i], path.seed()))
            throw std::invalid_argument("run_path: seed " + std::to_string(i) + " is not a " +
                                        spec_to_string(path.seed()) + " graph");

    // Reflection folding is only sound once nothing more will be grown: a
    // kept representative's reflection does not generate the reflections of
    // its extensions.  Intermediate steps therefore always use fixed parts;
    // the fold happens on the final set.
    bool fold_final = opt.fold_reflection && path.target().m == path.target().n;
    size_t start_step = 0;
    std::vector<BiGraph> current = dedup(seeds);

    if (!opt.checkpoint_dir.empty()) {
        std::filesystem::create_directories(opt.checkpoint_dir);
        // Resume from the last completed step, if any.
        for (size_t i = path.steps.size(); i-- > 1;) {
            std::string file = checkpoint_file(opt.checkpoint_dir, static_cast<int>(i), path.steps[i]);
            if (std::filesystem::exists(file + ".ok")) {
                current = read_graph_set(file);
                start_step = i;
                break;
            }
        }
    }

    for (size_t i = start_step + 1; i < path.steps.size(); ++i) {
        const ClassSpec& target = path.steps[i];
        ExtendOptions step_opt;
        step_opt.threads = opt.threads;
        step_opt.fold_reflection = fold_final && i + 1 == path.steps.size();
        if (opt.table && target.s && opt.table->s() == *target.s)
            if (auto e = opt.table->get(target.m, target.n)) step_opt.z_cap = e->upper;
        current = extend_step(current, target, step_opt);
        if (opt.on_step) opt.on_step(static_cast<int>(i), target, current.size());
        if (!opt.checkpoint_dir.empty()) {
            std::string file = checkpoint_file(opt.checkpoint_dir, static_cast<int>(i), target);
            write_graph_set(current, file);
            write_file_atomic(file + ".ok", "complete count=" + std::to_string(current.size()) + "\n");
        }
        if (opt.max_set_size && current.size() > opt.max_set_size)
            throw BudgetExceeded("run_path: step " + std::to_string(i) + " produced " +
                                 std::to_string(current.size()) + " graphs (budget " +
                                 std::to_string(opt.max_set_size) + ")" +
                                 (opt.checkpoint_dir.empty() ? "" : "; checkpoint saved"));
    }
    if (fold_final && path.steps.size() == 1) current = dedup(current, true);
    return current;
}

// --------------------------------------------------------------- plan_path

BackwardsPath plan_path(std::pair<int, int> from, std::pair<int, int> to, long long target_e,
                        std::optional<int> s, std::optional<int> t, const BoundTable* table) {
    auto [a, b] = from;
    auto [m, n] = to;
    if (a > m || b > n) throw std::invalid_argument("plan_path: seed sizes exceed target sizes");
    if (a < 1 || b < 1) throw std::invalid_argument("plan_path: part sizes must be >= 1");

    int H = m - a + 1, W = n - b + 1;
    std::vector<PlanCell> grid(static_cast<size_t>(H) * W);
    auto at = [&](int i, int j) -> PlanCell& { return grid[static_cast<size_t>(i - a) * W + (j - b)]; };
    auto step_down = [](long long e, int k) { return std::max<long long>(0, e - e / k); };
    // Slack between a step's threshold and the known z upper bound: paths
    // through tighter (smaller) classes are cheaper to extend, so ties
    // between equal thresholds break toward the smaller slack.
    auto slack = [&](int i, int j) -> long long {
        if (!table) return 0;
        auto e = table->get(i, j);
        return e ? e->upper - at(i, j).threshold : std::numeric_limits<long long>::max() / 2;
    };

    at(m, n).threshold = target_e;
    // Cells in decreasing i+j order; each takes the best of its two sources.
    for (int total = m + n - 1; total >= a + b; --total)
        for (int i = std::max(a, total - n); i <= std::min(m, total - b); ++i) {
            int j = total - i;
            PlanCell& cell = at(i, j);
            if (i + 1 <= m) {
                long long f = step_down(at(i + 1, j).threshold, i + 1);
                if (f > cell.threshold) {
                    cell.threshold = f;
                    cell.via_left = true;
                }
            }
            if (j + 1 <= n) {
                long long f = step_down(at(i, j + 1).threshold, j + 1);
                if (f > cell.threshold ||
                    (f == cell.threshold && cell.via_left && slack(i, j + 1) < slack(i + 1, j))) {
                    cell.threshold = f;
                    cell.via_left = false;
                }
            }
        }

    BackwardsPath path;
    int i = a, j = b;
    for (;;) {
        ClassSpec spec;
        spec.m = i;
        spec.n = j;
        spec.e_min = std::max<long long>(0, at(i, j).threshold);
        spec.s = s;
        spec.t = t;
        path.steps.push_back(spec);
        if (i == m && j == n) break;
        if (at(i, j).via_left)
            ++i;
        else
            ++j;
    }
    return path;
}

// ------------------------------------------------- orderly column augmenter

namespace {

// Bit-permutation tables for all row permutations of an m-row matrix,
// m <= 8: table[perm][column value] = permuted column value.
struct PermTable {
    int m = 0;
    std::vector<std::vector<uint8_t>> perms;  // perms[0] is the identity
};

const PermTable& perm_table_for(int m) {
    static std::mutex mu;
    static std::map<int, PermTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    PermTable table;
    table.m = m;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    int values = 1 << m;
    do {
        std::vector<uint8_t> row(static_cast<size_t>(values));
        for (int v = 0; v < values; ++v) {
            uint8_t image = 0;
            for (int bit = 0; bit < m; ++bit)
                if (v & (1 << bit)) image |= static_cast<uint8_t>(1 << perm[bit]);
            row[static_cast<size_t>(v)] = image;
        }
        table.perms.push_back(std::move(row));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cache.emplace(m, std::move(table)).first->second;
}

struct Orderly {
    int m = 0;  // fixed row side, <= 8
    int n = 0;  // number of columns to reach
    int s = 0;  // 0 = unconstrained
    int t = 0;
    long long e_min = 0;
    long long e_cap = -1;  // -1 = none
    bool max_mode = false;

    const PermTable* table = nullptr;
    uint8_t full_col = 0;
    long long budget_s = 0;  // (s-1) * C(m, s)
    long long budget_t = 0;

    std::vector<uint8_t> cols;
    long long edges = 0;
    long long comp_edges = 0;
    long long col_star_s = 0;
    long long col_star_t = 0;

    long long best = -1;
    std::vector<std::pair<std::vector<uint8_t>, long long>> leaves;  // columns, edges
    mutable std::vector<uint8_t> scratch;  // per-permutation mapped columns

    void init(const ClassSpec& spec, const EnumerateOptions& opt) {
        m = spec.m;
        n = spec.n;
        s = spec.s.value_or(0);
        t = spec.t.value_or(0);
        e_min = spec.e_min;
        if (opt.max_total_edges) e_cap = *opt.max_total_edges;
        table = &perm_table_for(m);
        full_col = static_cast<uint8_t>((1 << m) - 1);
        if (s) budget_s = static_cast<long long>(s - 1) * binom(m, s);
        if (t) budget_t = static_cast<long long>(t - 1) * binom(m, t);
        cols.reserve(static_cast<size_t>(n));
        scratch.resize(static_cast<size_t>(n));
    }

    long long goal() const { return max_mode ? std::max(best, e_min) : e_min; }

    // Largest total degree the remaining r columns can contribute without
    // breaking the column star budget (balanced minimizes the star sum).
    long long max_future(int r) const {
        if (r == 0) return 0;
        long long cap = static_cast<long long>(r) * m;
        if (!s) return cap;
        long long rem = budget_s - col_star_s;
        if (rem < 0) return -1;
        long long lo = 0, hi = cap;
        while (lo < hi) {
            long long mid = (lo + hi + 1) / 2;
            if (star_sum(balanced_composition(mid, r), s) <= rem)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    // Does adding column x create a K_{s,s} among the existing columns + x?
    // cols values are row sets; s columns sharing >= s rows suffice.
    bool creates_kss(uint8_t x, int order) const {
        if (std::popcount(x) < order) return false;
        return cols_with_common(x, order - 1, 0, order);
    }
    bool cols_with_common(uint8_t inter, int need, size_t from, int order) const {
        if (need == 0) return true;
        for (size_t p = from; p + need <= cols.size(); ++p) {
            uint8_t next = inter & cols[p];
            if (std::popcount(next) < order) continue;
            if (cols_with_common(next, need - 1, p + 1, order)) return true;
        }
        return false;
    }
    bool creates_comp_ktt(uint8_t x) const {
        uint8_t cx = full_col & ~x;
        if (std::popcount(cx) < t) return false;
        // DFS over complement columns of the existing ones.
        return comp_cols_with_common(cx, t - 1, 0);
    }
    bool comp_cols_with_common(uint8_t inter, int need, size_t from) const {
        if (need == 0) return true;
        for (size_t p = from; p + need <= cols.size(); ++p) {
            uint8_t next = inter & (full_col & ~cols[p]);
            if (std::popcount(next) < t) continue;
            if (comp_cols_with_common(next, need - 1, p + 1)) return true;
        }
        return false;
    }

    // Minimum over all row permutations of the ascending-sorted column
    // tuple: the current (sorted) sequence is canonical iff nothing smaller
    // exists.
    bool is_canonical() const {
        size_t k = cols.size();
        if (k <= 1) {
            if (k == 0) return true;
            // single column: minimum representative has its bits packed low
            return cols[0] == static_cast<uint8_t>((1 << std::popcount(cols[0])) - 1);
        }
        uint8_t* mapped = scratch.data();
        for (size_t pi = 1; pi < table->perms.size(); ++pi) {
            const std::vector<uint8_t>& pt = table->perms[pi];
            uint8_t mn = 0xff;
            for (size_t i = 0; i < k; ++i) {
                mapped[i] = pt[cols[i]];
                mn = std::min(mn, mapped[i]);
            }
            if (mn > cols[0]) continue;
            if (mn < cols[0]) return false;
            std::sort(mapped, mapped + k);
            for (size_t i = 0; i < k; ++i) {
                if (mapped[i] < cols[i]) return false;
                if (mapped[i] > cols[i]) break;
            }
        }
        return true;
    }

    void record_leaf() {
        if (max_mode) {
            if (edges < e_min || edges < best) return;
            if (edges > best) {
                best = edges;
                leaves.clear();
            }
            leaves.emplace_back(cols, edges);
        } else if (edges >= e_min) {
            leaves.emplace_back(cols, edges);
        }
    }

    void search() {
        int k = static_cast<int>(cols.size());
        if (k == n) {
            record_leaf();
            return;
        }
        int r_after = n - k - 1;
        uint8_t from = cols.empty() ? 0 : cols.back();
        for (int x = from; x <= full_col; ++x) {
            uint8_t xc = static_cast<uint8_t>(x);
            int d = std::popcount(xc);
            long long new_edges = edges + d;
            if (e_cap >= 0 && new_edges > e_cap) continue;
            long long new_comp = comp_edges + (m - d);
            long long target_goal = goal();
            if (target_goal > 0 && new_comp > static_cast<long long>(m) * n - target_goal) continue;
            long long new_star_s = 0, new_star_t = 0;
            if (s) {
                new_star_s = col_star_s + binom(d, s);
                if (new_star_s > budget_s) continue;  // star pigeonhole: K_{s,s} certain
                if (creates_kss(xc, s)) continue;
            }
            if (t) {
                new_star_t = col_star_t + binom(m - d, t);
                if (new_star_t > budget_t) continue;
                if (creates_comp_ktt(xc)) continue;
            }
            cols.push_back(xc);
            // completion feasibility under the star budget
            long long save_star = col_star_s;
            col_star_s = new_star_s;
            long long reach = max_future(r_after);
            bool feasible = reach >= 0 && new_edges + reach >= goal();
            if (feasible && is_canonical()) {
                long long save_edges = edges, save_comp = comp_edges, save_star_t = col_star_t;
                edges = new_edges;
                comp_edges = new_comp;
                col_star_t = new_star_t;
                search();
                edges = save_edges;
                comp_edges = save_comp;
                col_star_t = save_star_t;
            }
            col_star_s = save_star;
            cols.pop_back();
        }
    }
};

BiGraph graph_from_columns(int m, const std::vector<uint8_t>& cols) {
    BiGraph g(m, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < m; ++i)
            if (cols[static_cast<size_t>(j)] & (1 << i)) g.set_edge(i, j);
    return g;
}

void check_enumeration_guard(const ClassSpec& spec, const EnumerateOptions& opt) {
    if (spec.t && !spec.s) throw std::invalid_argument("spec with t but no s");
    long long area = static_cast<long long>(spec.m) * spec.n;
    if (area > 56 && !opt.allow_large)
        throw std::invalid_argument("enumerate: m*n = " + std::to_string(area) +
                                    " exceeds the guard (56); pass allow_large to override");
    if (std::min(spec.m, spec.n) > 8)
        throw std::invalid_argument("enumerate: the smaller part must be <= 8; use run_path for larger classes");
}

std::vector<BiGraph> leaves_to_graphs(const Orderly& engine, bool reflected, long long min_edges) {
    std::vector<BiGraph> graphs;
    graphs.reserve(engine.leaves.size());
    for (const auto& [cols, edges] : engine.leaves) {
        if (edges < min_edges) continue;
        BiGraph g = graph_from_columns(engine.m, cols);
        graphs.push_back(reflected ? g.reflect() : g);
    }
    return graphs;
}

}  // namespace

std::vector<BiGraph> enumerate_class(const ClassSpec& spec, const EnumerateOptions& opt) {
    check_enumeration_guard(spec, opt);
    if (spec.e_min > static_cast<long long>(spec.m) * spec.n) return {};
    bool reflected = spec.m > spec.n;
    ClassSpec work = spec;
    if (reflected) std::swap(work.m, work.n);

    Orderly engine;
    engine.init(work, opt);
    engine.search();
    return dedup(leaves_to_graphs(engine, reflected, spec.e_min));
}

MaxEdgesResult enumerate_max_edges(const ClassSpec& spec, const EnumerateOptions& opt) {
    check_enumeration_guard(spec, opt);
    bool reflected = spec.m > spec.n;
    ClassSpec work = spec;
    if (reflected) std::swap(work.m, work.n);

    Orderly engine;
    engine.init(work, opt);
    engine.max_mode = true;
    engine.search();

    MaxEdgesResult res;
    res.max_edges = engine.best;
    if (engine.best >= 0 && engine.best >= spec.e_min)
        res.extremal = dedup(leaves_to_graphs(engine, reflected, engine.best));
    else
        res.max_edges = -1;
    return res;
}

}  // namespace zb
