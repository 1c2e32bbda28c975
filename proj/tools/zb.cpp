// zb -- command-line workbench for Zarankiewicz numbers and bipartite
// Ramsey bounds.
//
// Subcommands: bound, extend, enumerate, canon, check-kss, sidon, cayley,
// verify-witness, ramsey-upper, tables verify.  Results go to stdout or
// --out files (written atomically); progress and logs go to stderr.
// Exit codes: 0 success, 1 domain failure (witness FAIL, biclique found,
// no bound derivable, inconsistent tables, budget exceeded), 2 usage or
// parse error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "zb/bigraph.hpp"
#include "zb/bounds.hpp"
#include "zb/canon.hpp"
#include "zb/extend.hpp"
#include "zb/groups.hpp"
#include "zb/ramsey.hpp"

namespace {

constexpr const char* kGraphGrammar =
    "graph file: first line 'm n' (m,n >= 1), then m lines of exactly n characters from {0,1}; "
    "'#' lines are comments";
constexpr const char* kGraphSetGrammar =
    "graph-set file: graph records separated by one blank line; '#' lines are comments";
constexpr const char* kCsvGrammar = "bound table csv: header 'm,n,s,lower,upper,exact,note', one cell per row";
constexpr const char* kColoringGrammar =
    "coloring file: first line 'n k' (k <= 9), then n lines of n digits in 1..k";
constexpr const char* kSpecGrammar = "class spec: (m,n,e+) or (m,n,e+)_{s} or (m,n,e+)_{s,t}";

std::string data_dir() {
    if (const char* env = std::getenv("ZB_DATA_DIR")) return env;
    return ZB_DATA_DIR_DEFAULT;
}

zb::Group group_by_name_or_file(const std::string& name) {
    if (name.find('/') != std::string::npos || name.ends_with(".grp") || name.ends_with(".txt"))
        return zb::load_group(name);
    try {
        return zb::builtin_group(name);
    } catch (const std::invalid_argument&) {
        return zb::load_group(name);  // last resort: treat as a path
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t at = text.find(sep, pos);
        if (at == std::string::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, at - pos));
        pos = at + 1;
    }
}

// Seeds a propagation run from a loaded table: computationally established
// entries only (exact values and exhaustively computed uppers), skipping any
// entry the star bound refutes outright.
zb::BoundTable propagation_seed(const zb::BoundTable& full, bool include_plain, std::ostream& log) {
    zb::BoundTable seed(full.s());
    for (const auto& [mn, e] : full.entries()) {
        if (!include_plain && !e.exact && e.note.find("exhaustive") == std::string::npos) continue;
        long long star = zb::star_bound_max_edges(mn.first, mn.second, full.s());
        if (e.lower > star) {
            log << "warning: seed (" << mn.first << "," << mn.second << ";" << full.s() << ") lower "
                << e.lower << " exceeds the star bound " << star << "; entry excluded\n";
            continue;
        }
        seed.set(mn.first, mn.second, e);
    }
    return seed;
}

int cmd_bound(const std::string& seed_path, int s, int max_m, int max_n, const std::string& out_path,
              bool seed_all) {
    zb::BoundTable seed(s);
    if (!seed_path.empty()) {
        zb::BoundTable loaded = zb::load_table(seed_path);
        if (loaded.s() != s) {
            std::cerr << "error: seed table has s=" << loaded.s() << ", expected " << s << "\n";
            return 1;
        }
        seed = propagation_seed(loaded, seed_all, std::cerr);
    }
    zb::ZBoundResult res = zb::z_bound(seed, max_m, max_n);
    zb::save_table(res.table, out_path);
    std::cout << "wrote s=" << s << " bounds for 1 <= m,n <= " << max_m << "," << max_n << " to " << out_path
              << "\n";
    return 0;
}

int cmd_enumerate(const std::string& spec_text, const std::string& out_path, bool max_edges, bool allow_large,
                  bool count_only) {
    zb::ClassSpec spec = zb::parse_spec(spec_text);
    zb::EnumerateOptions opt;
    opt.allow_large = allow_large;
    if (max_edges) {
        zb::MaxEdgesResult res = zb::enumerate_max_edges(spec, opt);
        if (res.max_edges < 0) {
            std::cout << "class is empty\n";
            return 1;
        }
        std::cout << "max_edges: " << res.max_edges << "\n";
        std::cout << "classes: " << res.extremal.size() << "\n";
        if (!out_path.empty()) zb::write_graph_set(res.extremal, out_path);
        return 0;
    }
    std::vector<zb::BiGraph> classes = zb::enumerate_class(spec, opt);
    std::cout << "classes: " << classes.size() << "\n";
    if (!count_only && !out_path.empty()) zb::write_graph_set(classes, out_path);
    return 0;
}

int cmd_extend(const std::string& target_text, const std::string& path_file, bool plan,
               const std::string& seeds_path, const std::string& table_path, const std::string& out_path,
               int threads, const std::string& checkpoint, size_t max_set, bool with_reflection,
               bool print_plan) {
    zb::ClassSpec target = zb::parse_spec(target_text);
    std::vector<zb::BiGraph> seeds = zb::read_graph_set(seeds_path);
    if (seeds.empty()) {
        std::cerr << "error: empty seed set\n";
        return 1;
    }

    zb::BackwardsPath path;
    if (plan) {
        path = zb::plan_path({seeds.front().left_size(), seeds.front().right_size()}, {target.m, target.n},
                             target.e_min, target.s, target.t);
        // Weaker seeds than the planned threshold are fine (a superset of the
        // needed classes); lower the first step so they validate.
        long long weakest = path.steps.front().e_min;
        for (const zb::BiGraph& g : seeds) weakest = std::min(weakest, g.edge_count());
        if (weakest < path.steps.front().e_min) {
            std::cerr << "note: lowering the seed threshold from " << path.steps.front().e_min << " to "
                      << weakest << " to cover the provided seeds\n";
            path.steps.front().e_min = weakest;
        }
    } else if (!path_file.empty()) {
        path = zb::parse_path_file(zb::read_file(path_file));
    } else {
        std::cerr << "error: provide --path or --plan\n";
        return 2;
    }
    if (print_plan) std::cerr << zb::path_to_text(path);

    zb::BoundTable table;
    zb::RunPathOptions opt;
    if (!table_path.empty()) {
        table = zb::load_table(table_path);
        opt.table = &table;
    }
    opt.threads = threads;
    opt.fold_reflection = with_reflection;
    opt.checkpoint_dir = checkpoint;
    opt.max_set_size = max_set;
    opt.on_step = [](int step, const zb::ClassSpec& spec, size_t count) {
        std::cerr << "step " << step << ": " << zb::spec_to_string(spec) << " -> " << count << " classes\n";
    };
    std::vector<zb::BiGraph> result = zb::run_path(path, seeds, opt);
    std::cout << "classes: " << result.size() << "\n";
    if (!out_path.empty()) zb::write_graph_set(result, out_path);
    return 0;
}

int cmd_canon(const std::string& graph_path, bool with_reflection) {
    zb::BiGraph g = zb::load_bigraph(graph_path);
    zb::CanonicalKey key = with_reflection ? zb::canonical_form_folded(g) : zb::canonical_form(g);
    zb::BiGraph canon = with_reflection ? zb::canonical_graph_folded(g) : zb::canonical_graph(g);
    std::cout << "key: " << key.hex() << "\n" << zb::bigraph_to_text(canon);
    return 0;
}

int cmd_check_kss(const std::string& graph_path, int s) {
    zb::BiGraph g = zb::load_bigraph(graph_path);
    auto cert = zb::find_biclique(g, s, s);
    std::cout << "K_{" << s << "," << s << "}-free: " << (cert ? "false" : "true") << "\n";
    if (cert) {
        std::cout << "biclique rows:";
        for (int r : cert->rows) std::cout << " " << r;
        std::cout << " cols:";
        for (int c : cert->cols) std::cout << " " << c;
        std::cout << "\n";
    }
    return cert ? 1 : 0;
}

int cmd_sidon(const std::string& group_name, int size, bool no_identity, int complement_free,
              const std::string& out_path) {
    zb::Group g = group_by_name_or_file(group_name);
    auto sets = zb::enumerate_sidon(g, size, !no_identity);
    std::vector<zb::BiGraph> witnesses;
    size_t kept = 0;
    for (const auto& set : sets) {
        zb::BiGraph cay = zb::cayley_bigraph(g, set);
        if (complement_free > 0 && zb::contains_biclique(cay.complement(), complement_free, complement_free))
            continue;
        ++kept;
        std::cout << "sidon:";
        for (int x : set) std::cout << " " << x;
        std::cout << "\n";
        witnesses.push_back(std::move(cay));
    }
    std::cout << "sets: " << kept << "\n";
    if (!out_path.empty()) zb::write_graph_set(zb::dedup(witnesses), out_path);
    return 0;
}

int cmd_cayley(const std::string& group_name, const std::string& set_text, const std::string& out_path) {
    zb::Group g = group_by_name_or_file(group_name);
    std::vector<int> set = parse_int_list(set_text);
    zb::BiGraph cay = zb::cayley_bigraph(g, set);
    if (out_path.empty())
        std::cout << zb::bigraph_to_text(cay);
    else
        zb::save_bigraph(cay, out_path);
    return 0;
}

int cmd_verify_witness(const std::string& coloring_path, const std::string& avoid_text) {
    zb::Coloring c = zb::load_coloring(coloring_path);
    std::vector<int> avoid = parse_int_list(avoid_text);
    zb::WitnessReport report = zb::verify_witness(c, avoid);
    std::cout << report.to_text();
    return report.pass ? 0 : 1;
}

int cmd_ramsey_upper(const std::string& avoid_text, const std::string& tables_text, int n_max) {
    std::vector<int> avoid = parse_int_list(avoid_text);
    std::vector<zb::BoundTable> tables;
    for (const std::string& path : split_on(tables_text, ',')) tables.push_back(zb::load_table(path));
    if (tables.size() != avoid.size()) {
        std::cerr << "error: " << avoid.size() << " colors but " << tables.size() << " tables\n";
        return 2;
    }
    for (size_t i = 0; i < tables.size(); ++i)
        if (tables[i].s() != avoid[i]) {
            std::cerr << "error: table " << i + 1 << " has s=" << tables[i].s() << " but color " << i + 1
                      << " avoids K_{" << avoid[i] << "," << avoid[i] << "}\n";
            return 2;
        }
    std::vector<const zb::BoundTable*> ptrs;
    for (const auto& t : tables) ptrs.push_back(&t);
    zb::RamseyDerivation d = zb::derive_ramsey_upper(ptrs, avoid, n_max);
    std::string spec_str;
    for (size_t i = 0; i < avoid.size(); ++i) spec_str += (i ? "," : "") + std::to_string(avoid[i]);
    if (d.n) {
        std::cout << "b(" << spec_str << ") <= " << *d.n << "\n";
        for (const std::string& line : d.lines) std::cout << "  " << line << "\n";
        return 0;
    }
    std::cout << "no n <= " << n_max << " establishes an upper bound for b(" << spec_str << ")\n";
    for (const std::string& line : d.lines) std::cout << "  " << line << "\n";
    return 1;
}

int cmd_tables_verify() {
    std::string dir = data_dir();
    bool hard_fail = false;
    for (int s = 2; s <= 6; ++s) {
        std::string path = dir + "/z" + std::to_string(s) + ".csv";
        zb::BoundTable t = zb::load_table(path);
        t.validate();
        // published bounds should be monotone and star-consistent; deviations
        // are reported but only structural violations are fatal
        for (const auto& [mn, e] : t.entries()) {
            auto right = t.get(mn.first, mn.second + 1);
            auto down = t.get(mn.first + 1, mn.second);
            if (right && e.upper > right->upper)
                std::cout << "warning: " << path << " upper(" << mn.first << "," << mn.second
                          << ") > upper(m,n+1)\n";
            if (down && mn.first + 1 <= mn.second && e.upper > down->upper)
                std::cout << "warning: " << path << " upper(" << mn.first << "," << mn.second
                          << ") > upper(m+1,n)\n";
            long long star = zb::star_bound_max_edges(mn.first, mn.second, s);
            if (e.lower > star)
                std::cout << "warning: " << path << " (" << mn.first << "," << mn.second << ") lower "
                          << e.lower << " exceeds the star bound " << star
                          << " (entry refuted; excluded from propagation seeds)\n";
        }
        std::cout << path << ": " << t.entries().size() << " cells OK\n";
    }
    {
        zb::Coloring c = zb::load_coloring(dir + "/witness_b25.col");
        std::vector<int> avoid = {2, 5};
        zb::WitnessReport r = zb::verify_witness(c, avoid);
        std::cout << dir + "/witness_b25.col: " << (r.pass ? "PASS" : "FAIL") << " (edges";
        for (auto& v : r.colors) std::cout << " " << v.edges;
        std::cout << ")\n";
        hard_fail = hard_fail || !r.pass;
    }
    {
        zb::Coloring c = zb::load_coloring(dir + "/witness_b223.col");
        std::vector<int> avoid = {2, 2, 3};
        zb::WitnessReport r = zb::verify_witness(c, avoid);
        std::cout << dir + "/witness_b223.col: " << (r.pass ? "PASS" : "FAIL") << " (edges";
        for (auto& v : r.colors) std::cout << " " << v.edges;
        std::cout << ")\n";
        hard_fail = hard_fail || !r.pass;
    }
    {
        zb::BiGraph g = zb::load_bigraph(dir + "/witness_b25_color1.txt");
        bool free22 = !zb::contains_biclique(g, 2, 2);
        std::cout << dir + "/witness_b25_color1.txt: edges=" << g.edge_count()
                  << " K_{2,2}-free=" << (free22 ? "true" : "false") << "\n";
        hard_fail = hard_fail || !free22;
    }
    return hard_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zb: Zarankiewicz numbers and bipartite Ramsey bounds workbench"};
    app.require_subcommand(1);

    auto* bound = app.add_subcommand("bound", std::string("propagate z(m,n;s) upper bounds; ") + kCsvGrammar);
    int b_s = 2, b_max_m = 18, b_max_n = 18;
    std::string b_seed, b_out;
    bool b_seed_all = false;
    bound->add_option("--s", b_s, "forbidden biclique order s")->required();
    bound->add_option("--max-m", b_max_m, "largest left part");
    bound->add_option("--max-n", b_max_n, "largest right part");
    bound->add_option("--seed", b_seed, "seed table csv (exact + exhaustive entries are used)");
    bound->add_flag("--seed-all", b_seed_all, "also seed lemma-derived (plain) entries");
    bound->add_option("--out", b_out, "output csv path")->required();

    auto* enumerate =
        app.add_subcommand("enumerate", std::string("from-scratch class enumeration; ") + kSpecGrammar);
    std::string e_spec, e_out;
    bool e_max = false, e_large = false, e_count = false;
    enumerate->add_option("--spec", e_spec, kSpecGrammar)->required();
    enumerate->add_option("--out", e_out, std::string("output; ") + kGraphSetGrammar);
    enumerate->add_flag("--max-edges", e_max, "report the maximum edge count and extremal classes (z search)");
    enumerate->add_flag("--allow-large", e_large, "override the m*n <= 56 guard");
    enumerate->add_flag("--count-only", e_count, "print the class count without writing graphs");

    auto* extend =
        app.add_subcommand("extend", std::string("grow classes along a backwards path; ") + kGraphSetGrammar);
    std::string x_target, x_path, x_seeds, x_table, x_out, x_checkpoint;
    int x_threads = 1;
    size_t x_max_set = 0;
    bool x_plan = false, x_reflect = false, x_print_plan = false;
    extend->add_option("--target", x_target, kSpecGrammar)->required();
    extend->add_option("--path", x_path, "path file: one class spec per line, seed first");
    extend->add_flag("--plan", x_plan, "plan the path by dynamic programming instead of reading one");
    extend->add_flag("--print-plan", x_print_plan, "log the path being run to stderr");
    extend->add_option("--seeds", x_seeds, "seed graph-set file")->required();
    extend->add_option("--table", x_table, "bound table csv used for degree caps");
    extend->add_option("--out", x_out, "output graph-set file");
    extend->add_option("--threads", x_threads, "worker threads");
    extend->add_option("--checkpoint", x_checkpoint, "directory for resumable step outputs");
    extend->add_option("--max-set-size", x_max_set, "abort (gracefully) past this many classes per step");
    extend->add_flag("--with-reflection", x_reflect, "fold reflections into square classes");

    auto* canon = app.add_subcommand("canon", std::string("canonical form; ") + kGraphGrammar);
    std::string c_file;
    bool c_reflect = false;
    canon->add_option("graph", c_file, "graph file")->required();
    canon->add_flag("--with-reflection", c_reflect, "fold the reflection for square graphs");

    auto* check = app.add_subcommand("check-kss", std::string("test K_{s,s}-freeness; ") + kGraphGrammar);
    std::string k_file;
    int k_s = 2;
    check->add_option("graph", k_file, "graph file")->required();
    check->add_option("--s", k_s, "biclique order")->required();

    auto* sidon = app.add_subcommand("sidon", "enumerate Sidon sets and their bipartite Cayley graphs");
    std::string s_group, s_out;
    int s_size = 0, s_comp = 0;
    bool s_no_id = false;
    sidon
        ->add_option("--group", s_group,
                     "builtin name (cyclic(n), dihedral(n), dicyclic(n), products joined with x) or group file: "
                     "first line k, then k rows of k 1-based indices, element 1 = identity")
        ->required();
    sidon->add_option("--size", s_size, "Sidon set size")->required();
    sidon->add_flag("--no-identity", s_no_id, "do not force the identity into the sets");
    sidon->add_option("--complement-free", s_comp,
                      "keep only sets whose Cayley complement is K_{t,t}-free for this t");
    sidon->add_option("--out", s_out, "graph-set of the surviving Cayley graphs, one per class");

    auto* cayley = app.add_subcommand("cayley", "build a bipartite Cayley graph");
    std::string y_group, y_set, y_out;
    cayley->add_option("--group", y_group, "builtin name or group file")->required();
    cayley->add_option("--set", y_set, "comma-separated edge generators, 0-based element indices")->required();
    cayley->add_option("--out", y_out, "output graph file (stdout when omitted)");

    auto* verify = app.add_subcommand("verify-witness", std::string("check a coloring; ") + kColoringGrammar);
    std::string v_file, v_avoid;
    verify->add_option("coloring", v_file, "coloring file")->required();
    verify->add_option("--avoid", v_avoid, "comma-separated biclique orders, one per color")->required();

    auto* ramsey =
        app.add_subcommand("ramsey-upper", std::string("derive b(s1,...,sk) upper bounds; ") + kCsvGrammar);
    std::string r_avoid, r_tables;
    int r_max = 32;
    ramsey->add_option("--avoid", r_avoid, "comma-separated biclique orders")->required();
    ramsey->add_option("--tables", r_tables, "comma-separated bound table csvs, one per color")->required();
    ramsey->add_option("--n-max", r_max, "largest candidate n");

    auto* tables = app.add_subcommand("tables", "packaged data operations");
    auto* tverify = tables->add_subcommand(
        "verify", "cross-check packaged csv and witness assets (ZB_DATA_DIR overrides the location)");
    tables->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bound->parsed()) return cmd_bound(b_seed, b_s, b_max_m, b_max_n, b_out, b_seed_all);
        if (enumerate->parsed()) return cmd_enumerate(e_spec, e_out, e_max, e_large, e_count);
        if (extend->parsed())
            return cmd_extend(x_target, x_path, x_plan, x_seeds, x_table, x_out, x_threads, x_checkpoint,
                              x_max_set, x_reflect, x_print_plan);
        if (canon->parsed()) return cmd_canon(c_file, c_reflect);
        if (check->parsed()) return cmd_check_kss(k_file, k_s);
        if (sidon->parsed()) return cmd_sidon(s_group, s_size, s_no_id, s_comp, s_out);
        if (cayley->parsed()) return cmd_cayley(y_group, y_set, y_out);
        if (verify->parsed()) return cmd_verify_witness(v_file, v_avoid);
        if (ramsey->parsed()) return cmd_ramsey_upper(r_avoid, r_tables, r_max);
        if (tverify->parsed()) return cmd_tables_verify();
    } catch (const zb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const zb::ZBoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const zb::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
