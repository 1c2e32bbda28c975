#include "zb/groups.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace zb {

Group Group::from_table(std::vector<int> mul, int order) {
    if (order < 1) throw std::invalid_argument("group order must be >= 1");
    if (mul.size() != static_cast<size_t>(order) * order)
        throw std::invalid_argument("multiplication table has wrong size");
    for (int v : mul)
        if (v < 0 || v >= order) throw std::invalid_argument("table entry out of range");

    Group g;
    g.order_ = order;
    g.mul_ = std::move(mul);

    // Identity: a two-sided neutral element.
    int id = -1;
    for (int e = 0; e < order && id < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < order && ok; ++a) ok = g.op(e, a) == a && g.op(a, e) == a;
        if (ok) id = e;
    }
    if (id < 0) throw std::invalid_argument("table has no identity element");
    g.identity_ = id;

    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
                    throw std::invalid_argument("not associative at triple (" + std::to_string(a + 1) + "," +
                                                std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");

    g.inv_.assign(static_cast<size_t>(order), -1);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b)
            if (g.op(a, b) == id && g.op(b, a) == id) {
                g.inv_[static_cast<size_t>(a)] = b;
                break;
            }
        if (g.inv_[static_cast<size_t>(a)] < 0)
            throw std::invalid_argument("element " + std::to_string(a + 1) + " has no two-sided inverse");
    }
    return g;
}

namespace {

Group cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic(n) needs n >= 1");
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
    return Group::from_table(std::move(mul), n);
}

// Order 2n: elements r^i (i < n) then r^i s; s r = r^-1 s.
Group dihedral_group(int n) {
    if (n < 1) throw std::invalid_argument("dihedral(n) needs n >= 1");
    int k = 2 * n;
    auto enc = [&](int i, bool flip) { return (flip ? n : 0) + ((i % n + n) % n); };
    std::vector<int> mul(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int ai = a % n;
            bool af = a >= n;
            int bi = b % n;
            bool bf = b >= n;
            // (r^ai s^af)(r^bi s^bf): moving s past r^bi inverts the exponent.
            int i = af ? ai - bi : ai + bi;
            mul[static_cast<size_t>(a) * k + b] = enc(i, af != bf);
        }
    return Group::from_table(std::move(mul), k);
}

// Order 4n: <a, b | a^{2n} = 1, b^2 = a^n, b a = a^-1 b>.
// Elements a^i (i < 2n) then a^i b.
Group dicyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("dicyclic(n) needs n >= 1");
    int half = 2 * n;
    int k = 4 * n;
    auto enc = [&](int i, bool bpart) { return (bpart ? half : 0) + ((i % half + half) % half); };
    std::vector<int> mul(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int ai = a % half;
            bool ab = a >= half;
            int bi = b % half;
            bool bb = b >= half;
            int i;
            bool bpart;
            if (!ab && !bb) {  // a^ai * a^bi
                i = ai + bi;
                bpart = false;
            } else if (!ab) {  // a^ai * a^bi b
                i = ai + bi;
                bpart = true;
            } else if (!bb) {  // a^ai b * a^bi = a^{ai-bi} b
                i = ai - bi;
                bpart = true;
            } else {  // a^ai b * a^bi b = a^{ai-bi} b^2 = a^{ai-bi+n}
                i = ai - bi + n;
                bpart = false;
            }
            mul[static_cast<size_t>(a) * k + b] = enc(i, bpart);
        }
    return Group::from_table(std::move(mul), k);
}

Group direct_product(const Group& a, const Group& b) {
    int k = a.order() * b.order();
    std::vector<int> mul(static_cast<size_t>(k) * k);
    auto enc = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    mul[static_cast<size_t>(enc(x1, y1)) * k + enc(x2, y2)] = enc(a.op(x1, x2), b.op(y1, y2));
    return Group::from_table(std::move(mul), k);
}

Group builtin_atom(std::string_view name) {
    std::string lower;
    for (char c : name)
        if (!std::isspace(static_cast<unsigned char>(c))) lower.push_back(static_cast<char>(std::tolower(c)));
    auto tail_number = [&](size_t prefix_len) {
        std::string digits = lower.substr(prefix_len);
        if (digits.empty() || digits.back() == ')') digits.pop_back();
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw std::invalid_argument("unknown group name: " + std::string(name));
        return std::stoi(digits);
    };
    if (lower.starts_with("cyclic(")) return cyclic_group(tail_number(7));
    if (lower.starts_with("dihedral(")) return dihedral_group(tail_number(9));
    if (lower.starts_with("dicyclic(")) return dicyclic_group(tail_number(9));
    if (lower.starts_with("dic")) return dicyclic_group(tail_number(3));
    if (lower.starts_with("q")) {
        int ord = tail_number(1);
        if (ord % 4 != 0) throw std::invalid_argument("q<n> needs n divisible by 4: " + std::string(name));
        return dicyclic_group(ord / 4);
    }
    if (lower.starts_with("z") || lower.starts_with("c")) return cyclic_group(tail_number(1));
    if (lower.starts_with("d")) return dihedral_group(tail_number(1));
    throw std::invalid_argument("unknown group name: " + std::string(name));
}

}  // namespace

Group builtin_group(std::string_view name) {
    size_t pos = 0;
    std::vector<std::string_view> atoms;
    while (pos <= name.size()) {
        size_t x = name.find('x', pos);
        if (x == std::string_view::npos) {
            atoms.push_back(name.substr(pos));
            break;
        }
        atoms.push_back(name.substr(pos, x - pos));
        pos = x + 1;
    }
    Group g = builtin_atom(atoms.at(0));
    for (size_t i = 1; i < atoms.size(); ++i) g = direct_product(g, builtin_atom(atoms[i]));
    return g;
}

Group parse_group(std::string_view text) {
    std::istringstream in{std::string(text)};
    int k;
    if (!(in >> k) || k < 1) throw ParseError("group file: bad order on line 1");
    std::vector<int> mul(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int v;
            if (!(in >> v) || v < 1 || v > k)
                throw ParseError("group file: bad entry at row " + std::to_string(i + 1) + ", column " +
                                 std::to_string(j + 1));
            mul[static_cast<size_t>(i) * k + j] = v - 1;  // 1-based on disk
        }
    Group g = Group::from_table(std::move(mul), k);
    if (g.identity() != 0) throw ParseError("group file: element 1 must be the identity");
    return g;
}

Group load_group(const std::string& path) {
    try {
        return parse_group(read_file(path));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(path + ": " + ex.what());
    } catch (const ParseError& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

std::string group_to_text(const Group& g) {
    std::string out = std::to_string(g.order()) + "\n";
    for (int a = 0; a < g.order(); ++a) {
        for (int b = 0; b < g.order(); ++b) {
            if (b) out += ' ';
            out += std::to_string(g.op(a, b) + 1);
        }
        out += '\n';
    }
    return out;
}

void save_group(const Group& g, const std::string& path) { write_file_atomic(path, group_to_text(g)); }

bool is_sidon(const Group& g, std::span<const int> set) {
    // Sidon <=> the quotients a b^-1 over ordered pairs a != b are pairwise
    // distinct: two distinct pairs with equal quotient automatically differ
    // in both coordinates, which is exactly a forbidden quadruple.
    std::vector<char> seen(static_cast<size_t>(g.order()), 0);
    for (int a : set)
        for (int b : set) {
            if (a == b) continue;
            int q = g.op(a, g.inverse(b));
            if (seen[static_cast<size_t>(q)]) return false;
            seen[static_cast<size_t>(q)] = 1;
        }
    return true;
}

namespace {

// Extends only Sidon prefixes (subsets of Sidon sets are Sidon): checks the
// new element's quotients against the accumulated quotient set.
void sidon_dfs(const Group& g, std::vector<int>& cur, std::vector<char>& used_quot, int next, int size,
               int avoid, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int x = next; x < g.order(); ++x) {
        if (x == avoid) continue;
        std::vector<int> added;
        bool ok = true;
        for (int a : cur) {
            int q1 = g.op(a, g.inverse(x));
            int q2 = g.op(x, g.inverse(a));
            if (used_quot[static_cast<size_t>(q1)]) {
                ok = false;
                break;
            }
            used_quot[static_cast<size_t>(q1)] = 1;
            added.push_back(q1);
            if (used_quot[static_cast<size_t>(q2)]) {
                ok = false;
                break;
            }
            used_quot[static_cast<size_t>(q2)] = 1;
            added.push_back(q2);
        }
        if (ok) {
            cur.push_back(x);
            sidon_dfs(g, cur, used_quot, x + 1, size, avoid, out);
            cur.pop_back();
        }
        for (int q : added) used_quot[static_cast<size_t>(q)] = 0;
    }
}

}  // namespace

std::vector<std::vector<int>> enumerate_sidon(const Group& g, int size, bool require_identity) {
    if (size < 0 || size > g.order()) throw std::invalid_argument("enumerate_sidon: bad size");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> used_quot(static_cast<size_t>(g.order()), 0);
    if (size == 0) {
        out.push_back({});
        return out;
    }
    if (require_identity) {
        // Identity first, remaining elements chosen in ascending order.
        cur.push_back(g.identity());
        sidon_dfs(g, cur, used_quot, 0, size, g.identity(), out);
        for (auto& set : out) std::sort(set.begin(), set.end());
        std::sort(out.begin(), out.end());
    } else {
        sidon_dfs(g, cur, used_quot, 0, size, -1, out);
    }
    return out;
}

BiGraph cayley_bigraph(const Group& g, std::span<const int> set) {
    BiGraph graph(g.order(), g.order());
    for (int x = 0; x < g.order(); ++x)
        for (int s : set) {
            if (s < 0 || s >= g.order()) throw std::invalid_argument("edge generator out of range");
            graph.set_edge(x, g.op(x, s));
        }
    return graph;
}

}  // namespace zb
