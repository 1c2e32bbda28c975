#include "zb/ramsey.hpp"

#include <sstream>

namespace zb {

Coloring parse_coloring(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    Coloring c;
    bool have_header = false;
    int rows_read = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            std::istringstream hs(line);
            char extra;
            if (!(hs >> c.n >> c.k) || (hs >> extra) || c.n < 1 || c.k < 1 || c.k > 9)
                throw ParseError("line " + std::to_string(line_no) + ": expected header \"n k\" with 1 <= k <= 9");
            c.cells.assign(static_cast<size_t>(c.n) * c.n, 0);
            have_header = true;
            continue;
        }
        if (rows_read >= c.n) throw ParseError("line " + std::to_string(line_no) + ": trailing content");
        if (static_cast<int>(line.size()) != c.n)
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(c.n) + " digits");
        for (int j = 0; j < c.n; ++j) {
            char ch = line[static_cast<size_t>(j)];
            if (ch < '1' || ch > '0' + c.k)
                throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                                 ": color digit must be in 1.." + std::to_string(c.k));
            c.cells[static_cast<size_t>(rows_read) * c.n + j] = static_cast<uint8_t>(ch - '0');
        }
        ++rows_read;
    }
    if (!have_header) throw ParseError("empty coloring file");
    if (rows_read != c.n)
        throw ParseError("expected " + std::to_string(c.n) + " rows, got " + std::to_string(rows_read));
    return c;
}

Coloring load_coloring(const std::string& path) {
    try {
        return parse_coloring(read_file(path));
    } catch (const ParseError& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

std::string coloring_to_text(const Coloring& c) {
    std::string out = std::to_string(c.n) + " " + std::to_string(c.k) + "\n";
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) out += static_cast<char>('0' + c.at(i, j));
        out += '\n';
    }
    return out;
}

Coloring reflect(const Coloring& c) {
    Coloring r = c;
    for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j) r.cells[static_cast<size_t>(j) * c.n + i] = c.at(i, j);
    return r;
}

BiGraph color_class(const Coloring& c, int color) {
    if (color < 1 || color > c.k) throw std::out_of_range("color index");
    BiGraph g(c.n, c.n);
    for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
            if (c.at(i, j) == color) g.set_edge(i, j);
    return g;
}

std::string WitnessReport::to_text() const {
    std::string out;
    for (const ColorVerdict& v : colors) {
        out += "color " + std::to_string(v.color) + ": edges=" + std::to_string(v.edges) +
               ", forbidden=" + std::to_string(v.forbidden) + ", verdict=" + (v.pass ? "PASS" : "FAIL");
        if (v.certificate) {
            out += ", certificate=";
            for (size_t i = 0; i < v.certificate->rows.size(); ++i)
                out += (i ? "," : "") + std::to_string(v.certificate->rows[i]);
            out += ";";
            for (size_t i = 0; i < v.certificate->cols.size(); ++i)
                out += (i ? "," : "") + std::to_string(v.certificate->cols[i]);
        }
        out += "\n";
    }
    out += std::string("overall: ") + (pass ? "PASS" : "FAIL") + "\n";
    return out;
}

WitnessReport verify_witness(const Coloring& c, std::span<const int> avoid) {
    if (static_cast<int>(avoid.size()) != c.k)
        throw std::invalid_argument("verify_witness: coloring has " + std::to_string(c.k) + " colors but " +
                                    std::to_string(avoid.size()) + " avoidance orders were given");
    WitnessReport report;
    report.n = c.n;
    report.pass = true;
    for (int i = 1; i <= c.k; ++i) {
        ColorVerdict v;
        v.color = i;
        v.forbidden = avoid[static_cast<size_t>(i - 1)];
        if (v.forbidden < 1) throw std::invalid_argument("avoidance orders must be >= 1");
        BiGraph cls = color_class(c, i);
        v.edges = cls.edge_count();
        v.certificate = find_biclique(cls, v.forbidden, v.forbidden);
        v.pass = !v.certificate.has_value();
        report.pass = report.pass && v.pass;
        report.colors.push_back(std::move(v));
    }
    return report;
}

bool upper_bound_check(int n, std::span<const long long> z_uppers) {
    long long total = 0;
    for (long long z : z_uppers) total += z;
    return total < static_cast<long long>(n) * n;
}

RamseyDerivation derive_ramsey_upper(std::span<const BoundTable* const> tables, std::span<const int> avoid,
                                     int n_max) {
    if (tables.size() != avoid.size()) throw std::invalid_argument("derive_ramsey_upper: one table per color");
    RamseyDerivation out;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<long long> uppers;
        bool missing = false;
        std::string detail;
        for (size_t i = 0; i < tables.size(); ++i) {
            auto e = tables[i]->get(n, n);
            if (!e) {
                missing = true;
                out.lines.push_back("n=" + std::to_string(n) + ": skipped, no z(" + std::to_string(n) + ";" +
                                    std::to_string(avoid[i]) + ") entry");
                break;
            }
            uppers.push_back(e->upper);
            detail += (i ? " + " : "") + std::string("z(") + std::to_string(n) + ";" + std::to_string(avoid[i]) +
                      ")" + (e->exact ? "=" : "<=") + std::to_string(e->upper);
        }
        if (missing) continue;
        long long total = 0;
        for (long long z : uppers) total += z;
        long long square = static_cast<long long>(n) * n;
        bool ok = upper_bound_check(n, uppers);
        out.lines.push_back("n=" + std::to_string(n) + ": " + detail + " = " + std::to_string(total) +
                            (ok ? " < " : " >= ") + std::to_string(square) + (ok ? " -> bound holds" : ""));
        if (ok) {
            out.n = n;
            return out;
        }
    }
    return out;
}

}  // namespace zb
