#include "zb/bounds.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace zb {

long long binom(long long a, long long k) {
    if (k < 0 || a < 0 || k > a) return 0;
    k = std::min(k, a - k);
    long long result = 1;
    for (long long i = 1; i <= k; ++i) {
        // result * (a - k + i) must stay in range before the exact division.
        long long factor = a - k + i;
        if (result > std::numeric_limits<long long>::max() / factor)
            throw std::overflow_error("binom overflow");
        result = result * factor / i;
    }
    return result;
}

long long Composition::total() const {
    long long t = 0;
    for (long long p : parts) t += p;
    return t;
}

Composition balanced_composition(long long p, int k) {
    if (k <= 0) throw std::invalid_argument("balanced_composition: k must be >= 1");
    if (p < 0) throw std::invalid_argument("balanced_composition: p must be >= 0");
    long long q = p / k, r = p % k;
    Composition c;
    c.parts.assign(static_cast<size_t>(r), q + 1);
    c.parts.resize(static_cast<size_t>(k), q);
    return c;
}

long long star_sum(const Composition& c, int s) {
    if (s < 1) throw std::invalid_argument("star_sum: s must be >= 1");
    long long sum = 0;
    for (long long a : c.parts) sum += binom(a, s);
    return sum;
}

namespace {

// Largest e in [0, cap] with star_sum(balanced(e, parts), s) <= budget.
// Monotone in e, so binary search.
long long star_scan(int parts, int s, long long budget, long long cap) {
    long long lo = 0, hi = cap;
    while (lo < hi) {
        long long mid = (lo + hi + 1) / 2;
        if (star_sum(balanced_composition(mid, parts), s) <= budget)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace

long long star_bound_max_edges(int m, int n, int s) {
    if (m < 1 || n < 1 || s < 1) throw std::invalid_argument("star_bound_max_edges: bad arguments");
    long long cap = static_cast<long long>(m) * n;
    if (m < s || n < s) return cap;
    long long left = star_scan(m, s, (s - 1) * binom(n, s), cap);
    long long right = star_scan(n, s, (s - 1) * binom(m, s), cap);
    return std::min(left, right);
}

long long density_step_bound(long long u_prev, int m) {
    if (u_prev < 0) throw std::invalid_argument("density_step_bound: negative bound");
    if (m < 2) throw std::invalid_argument("density_step_bound: m must be >= 2");
    // w - floor(w/m) is non-decreasing in w; binary search the threshold.
    long long lo = u_prev, hi = u_prev + u_prev / (m - 1) + 2;
    while (lo < hi) {
        long long mid = (lo + hi + 1) / 2;
        if (mid - mid / m <= u_prev)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::optional<BoundEntry> BoundTable::get(int m, int n) const {
    auto it = entries_.find({std::min(m, n), std::max(m, n)});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void BoundTable::set(int m, int n, BoundEntry entry) {
    if (entry.lower > entry.upper)
        throw std::invalid_argument("bound entry with lower > upper at (" + std::to_string(m) + "," +
                                    std::to_string(n) + ")");
    if (entry.exact && entry.lower != entry.upper)
        throw std::invalid_argument("exact entry with lower != upper at (" + std::to_string(m) + "," +
                                    std::to_string(n) + ")");
    entries_[{std::min(m, n), std::max(m, n)}] = std::move(entry);
}

void BoundTable::validate() const {
    for (const auto& [mn, e] : entries_) {
        if (e.lower > e.upper)
            throw std::runtime_error("table s=" + std::to_string(s_) + ": lower > upper at (" +
                                     std::to_string(mn.first) + "," + std::to_string(mn.second) + ")");
        if (e.exact && e.lower != e.upper)
            throw std::runtime_error("table s=" + std::to_string(s_) + ": exact but lower != upper at (" +
                                     std::to_string(mn.first) + "," + std::to_string(mn.second) + ")");
    }
}

ZBoundResult z_bound(const BoundTable& seed, int max_m, int max_n) {
    int s = seed.s();
    if (s < 1) throw std::invalid_argument("z_bound: table has no s");
    ZBoundResult res;
    res.table = BoundTable(s);

    struct Cell {
        long long lower = 0;
        long long upper;
        bool exact = false;
        std::string note;
        std::string deriv;
    };
    auto idx = [&](int m, int n) { return static_cast<size_t>(m - 1) * max_n + (n - 1); };
    std::vector<Cell> cells(static_cast<size_t>(max_m) * max_n);

    for (int m = 1; m <= max_m; ++m)
        for (int n = 1; n <= max_n; ++n) {
            Cell& c = cells[idx(m, n)];
            long long trivial = static_cast<long long>(m) * n;
            c.upper = trivial;
            c.deriv = "trivial m*n";
            if (m < s || n < s) {
                c.lower = trivial;
                c.exact = true;
                c.deriv = "exact: no K_{s,s} fits";
            }
            if (auto e = seed.get(m, n)) {
                c.lower = std::max(c.lower, e->lower);
                if (e->upper < c.upper) {
                    c.upper = e->upper;
                    c.deriv = "seed";
                }
                c.exact = c.exact || e->exact;
                c.note = e->note;
            }
            long long star = star_bound_max_edges(m, n, s);
            if (star < c.upper) {
                c.upper = star;
                c.deriv = "star bound";
            }
            if (c.upper < c.lower)
                throw ZBoundError("z_bound: inconsistent seed data at (" + std::to_string(m) + "," +
                                  std::to_string(n) + "): seeded lower " + std::to_string(c.lower) +
                                  " exceeds the star bound " + std::to_string(star));
        }

    auto chain = [&](int m, int n) {
        std::string out;
        int cm = m, cn = n;
        for (int hops = 0; hops < max_m + max_n + 2; ++hops) {
            const Cell& c = cells[idx(cm, cn)];
            out += "(" + std::to_string(cm) + "," + std::to_string(cn) + ") upper=" + std::to_string(c.upper) +
                   " via " + c.deriv + "; ";
            size_t at = c.deriv.find("from (");
            if (at == std::string::npos) break;
            if (sscanf(c.deriv.c_str() + at, "from (%d,%d)", &cm, &cn) != 2) break;
        }
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int m = 1; m <= max_m; ++m)
            for (int n = 1; n <= max_n; ++n) {
                Cell& c = cells[idx(m, n)];
                auto consider = [&](long long cand, const std::string& why) {
                    if (cand < c.upper) {
                        c.upper = cand;
                        c.deriv = why;
                        changed = true;
                        if (c.upper < c.lower)
                            throw ZBoundError("z_bound: inconsistent seed data at (" + std::to_string(m) + "," +
                                              std::to_string(n) + "): propagated upper " + std::to_string(c.upper) +
                                              " < lower " + std::to_string(c.lower) + "; derivation: " + chain(m, n));
                    }
                };
                if (m >= 2)
                    consider(density_step_bound(cells[idx(m - 1, n)].upper, m),
                             "density from (" + std::to_string(m - 1) + "," + std::to_string(n) + ")");
                if (n >= 2)
                    consider(density_step_bound(cells[idx(m, n - 1)].upper, n),
                             "density from (" + std::to_string(m) + "," + std::to_string(n - 1) + ")");
                // z is monotone in both part sizes, so a bound at a larger
                // size also bounds the smaller one.
                if (m < max_m)
                    consider(cells[idx(m + 1, n)].upper,
                             "monotone from (" + std::to_string(m + 1) + "," + std::to_string(n) + ")");
                if (n < max_n)
                    consider(cells[idx(m, n + 1)].upper,
                             "monotone from (" + std::to_string(m) + "," + std::to_string(n + 1) + ")");
            }
    }

    for (int m = 1; m <= max_m; ++m)
        for (int n = 1; n <= max_n; ++n) {
            if (n < m) continue;  // table is symmetric; keep m <= n
            const Cell& c = cells[idx(m, n)];
            BoundEntry e;
            e.lower = c.lower;
            e.upper = c.upper;
            e.exact = c.exact || c.lower == c.upper;
            e.note = c.note;
            res.table.set(m, n, e);
            res.derivation[{m, n}] = c.deriv;
        }
    return res;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

BoundTable parse_table_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    BoundTable table;
    bool have_s = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_row(line);
        if (!fields.empty() && fields[0] == "m") continue;  // header
        if (fields.size() < 6)
            throw ParseError("csv line " + std::to_string(line_no) + ": expected at least 6 fields");
        try {
            int m = std::stoi(fields[0]);
            int n = std::stoi(fields[1]);
            int s = std::stoi(fields[2]);
            BoundEntry e;
            e.lower = std::stoll(fields[3]);
            e.upper = std::stoll(fields[4]);
            if (fields[5] != "true" && fields[5] != "false")
                throw ParseError("csv line " + std::to_string(line_no) + ": exact must be true/false");
            e.exact = fields[5] == "true";
            if (fields.size() >= 7) e.note = fields[6];
            if (!have_s) {
                table.set_s(s);
                have_s = true;
            } else if (s != table.s()) {
                throw ParseError("csv line " + std::to_string(line_no) + ": mixed s values in one table");
            }
            table.set(m, n, std::move(e));
        } catch (const std::invalid_argument& ex) {
            throw ParseError("csv line " + std::to_string(line_no) + ": " + ex.what());
        } catch (const std::out_of_range&) {
            throw ParseError("csv line " + std::to_string(line_no) + ": number out of range");
        }
    }
    return table;
}

BoundTable load_table(const std::string& path) {
    try {
        return parse_table_csv(read_file(path));
    } catch (const ParseError& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

std::string table_to_csv(const BoundTable& table) {
    std::string out = "m,n,s,lower,upper,exact,note\n";
    for (const auto& [mn, e] : table.entries()) {
        out += std::to_string(mn.first) + "," + std::to_string(mn.second) + "," + std::to_string(table.s()) + "," +
               std::to_string(e.lower) + "," + std::to_string(e.upper) + "," + (e.exact ? "true" : "false") + "," +
               e.note + "\n";
    }
    return out;
}

void save_table(const BoundTable& table, const std::string& path) { write_file_atomic(path, table_to_csv(table)); }

}  // namespace zb
