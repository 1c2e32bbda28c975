// End-to-end tests of the zb executable: pinned output formats, exit codes,
// atomic file writes, and determinism across thread counts.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zb/bigraph.hpp"
#include "zb/bounds.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "zb_cli_tests";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args, bool capture_stderr = false) {
    fs::path out_file = work_dir() / "stdout.txt";
    std::string cmd = std::string(ZB_CLI_PATH) + " " + args + " >" + out_file.string() +
                      (capture_stderr ? " 2>&1" : " 2>/dev/null");
    int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_file);
    return res;
}

std::string data_file(const std::string& name) {
    if (const char* env = std::getenv("ZB_DATA_DIR")) return std::string(env) + "/" + name;
    return std::string(ZB_DATA_DIR_DEFAULT) + "/" + name;
}

}  // namespace

TEST_CASE("check-kss matches the pinned format and exit codes") {
    RunResult free_run = run_cli("check-kss " + data_file("witness_b25_color1.txt") + " --s 2");
    CHECK(free_run.exit_code == 0);
    CHECK(free_run.out == "K_{2,2}-free: true\n");

    fs::path k22 = work_dir() / "k22.graph";
    std::ofstream(k22) << "2 2\n11\n11\n";
    RunResult hit = run_cli("check-kss " + k22.string() + " --s 2");
    CHECK(hit.exit_code == 1);
    CHECK(hit.out == "K_{2,2}-free: false\nbiclique rows: 0 1 cols: 0 1\n");
}

TEST_CASE("ramsey-upper reproduces the two headline bounds") {
    RunResult b25 = run_cli("ramsey-upper --avoid 2,5 --tables " + data_file("z2.csv") + "," +
                            data_file("z5.csv") + " --n-max 20");
    CHECK(b25.exit_code == 0);
    CHECK(b25.out.substr(0, b25.out.find('\n')) == "b(2,5) <= 17");
    CHECK(b25.out.find("n=17: z(17;2)=74 + z(17;5)<=213 = 287 < 289 -> bound holds") != std::string::npos);

    RunResult b223 = run_cli("ramsey-upper --avoid 2,2,3 --tables " + data_file("z2.csv") + "," +
                             data_file("z2.csv") + "," + data_file("z3.csv") + " --n-max 20");
    CHECK(b223.exit_code == 0);
    CHECK(b223.out.substr(0, b223.out.find('\n')) == "b(2,2,3) <= 18");
    // 17 stays inconclusive: 289 is not < 289
    CHECK(b223.out.find("n=17: z(17;2)=74 + z(17;2)=74 + z(17;3)<=141 = 289 >= 289") != std::string::npos);

    RunResult none = run_cli("ramsey-upper --avoid 2,5 --tables " + data_file("z2.csv") + "," +
                             data_file("z5.csv") + " --n-max 16");
    CHECK(none.exit_code == 1);
}

TEST_CASE("verify-witness prints the pinned report format") {
    RunResult pass = run_cli("verify-witness " + data_file("witness_b25.col") + " --avoid 2,5");
    CHECK(pass.exit_code == 0);
    CHECK(pass.out ==
          "color 1: edges=64, forbidden=2, verdict=PASS\n"
          "color 2: edges=192, forbidden=5, verdict=PASS\n"
          "overall: PASS\n");

    fs::path bad = work_dir() / "bad.col";
    std::ofstream(bad) << "2 1\n11\n11\n";
    RunResult fail = run_cli("verify-witness " + bad.string() + " --avoid 2");
    CHECK(fail.exit_code == 1);
    CHECK(fail.out ==
          "color 1: edges=4, forbidden=2, verdict=FAIL, certificate=0,1;0,1\n"
          "overall: FAIL\n");
}

TEST_CASE("tables verify passes on the packaged assets") {
    RunResult res = run_cli("tables verify");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("witness_b25.col: PASS (edges 64 192)") != std::string::npos);
    CHECK(res.out.find("witness_b223.col: PASS (edges 64 64 128)") != std::string::npos);
    // the one star-refuted table cell is reported, not hidden
    CHECK(res.out.find("(10,10) lower 95 exceeds the star bound 91") != std::string::npos);
}

TEST_CASE("enumerate reports counts and max-edge searches") {
    RunResult seven = run_cli("enumerate --spec \"(2,2,0+)\" --count-only");
    CHECK(seven.exit_code == 0);
    CHECK(seven.out == "classes: 7\n");

    RunResult z4 = run_cli("enumerate --spec \"(4,4,0+)_{2}\" --max-edges");
    CHECK(z4.exit_code == 0);
    CHECK(z4.out.find("max_edges: 9\n") != std::string::npos);

    RunResult empty = run_cli("enumerate --spec \"(2,2,5+)\" --count-only");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out == "classes: 0\n");
}

TEST_CASE("canon prints a key and the canonical matrix") {
    fs::path g = work_dir() / "g.graph";
    std::ofstream(g) << "2 2\n01\n10\n";
    RunResult res = run_cli("canon " + g.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.substr(0, 5) == "key: ");
    CHECK(res.out.find("\n2 2\n") != std::string::npos);

    // permuting the input does not change the output
    fs::path h = work_dir() / "h.graph";
    std::ofstream(h) << "2 2\n10\n01\n";
    CHECK(run_cli("canon " + h.string()).out == res.out);
}

TEST_CASE("cayley emits the graph to stdout or a file") {
    RunResult matching = run_cli("cayley --group z2 --set 0");
    CHECK(matching.exit_code == 0);
    CHECK(matching.out == "2 2\n10\n01\n");

    fs::path out = work_dir() / "cayley15.graph";
    RunResult to_file = run_cli("cayley --group \"cyclic(15)\" --set 5,6,8,9,10,11,14 --out " + out.string());
    CHECK(to_file.exit_code == 0);
    zb::BiGraph g = zb::load_bigraph(out.string());
    CHECK(g.edge_count() == 15 * 7);
    RunResult kss = run_cli("check-kss " + out.string() + " --s 3");
    CHECK(kss.out == "K_{3,3}-free: true\n");
}

TEST_CASE("sidon finds the dicyclic witness sets") {
    fs::path out = work_dir() / "witnesses.gs";
    RunResult res = run_cli("sidon --group dic4 --size 4 --complement-free 5 --out " + out.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("sets: 64") != std::string::npos);
    CHECK(zb::read_graph_set(out.string()).size() == 1);  // a single class up to isomorphism
}

TEST_CASE("extend runs a planned path deterministically across thread counts") {
    fs::path seeds = work_dir() / "seeds.gs";
    RunResult en = run_cli("enumerate --spec \"(2,2,1+)_{2}\" --out " + seeds.string());
    CHECK(en.exit_code == 0);

    fs::path out1 = work_dir() / "out1.gs";
    fs::path out2 = work_dir() / "out2.gs";
    RunResult one = run_cli("extend --target \"(3,3,4+)_{2}\" --plan --seeds " + seeds.string() + " --out " +
                            out1.string() + " --threads 1");
    RunResult two = run_cli("extend --target \"(3,3,4+)_{2}\" --plan --seeds " + seeds.string() + " --out " +
                            out2.string() + " --threads 2");
    CHECK(one.exit_code == 0);
    CHECK(one.out == two.out);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(!slurp(out1).empty());
}

TEST_CASE("bound writes a propagated table") {
    fs::path out = work_dir() / "z3_prop.csv";
    RunResult res =
        run_cli("bound --s 3 --max-m 18 --max-n 18 --seed " + data_file("z3.csv") + " --out " + out.string());
    CHECK(res.exit_code == 0);
    zb::BoundTable t = zb::load_table(out.string());
    CHECK(t.get(17, 17)->upper == 141);
    CHECK(t.get(18, 18)->upper == 156);
}

TEST_CASE("every subcommand documents its file grammar under --help") {
    struct HelpCheck {
        const char* sub;
        const char* needle;
    };
    HelpCheck checks[] = {
        {"bound", "m,n,s,lower,upper,exact"}, {"enumerate", "(m,n,e+)"},
        {"extend", "one class spec per line"}, {"canon", "characters from {0,1}"},
        {"check-kss", "characters from {0,1}"}, {"sidon", "1-based indices"},
        {"cayley", "0-based element indices"},  {"verify-witness", "n digits in 1..k"},
        {"ramsey-upper", "m,n,s,lower,upper,exact"},
    };
    for (const HelpCheck& h : checks) {
        RunResult res = run_cli(std::string(h.sub) + " --help");
        CAPTURE(h.sub);
        CHECK(res.exit_code == 0);
        CHECK(res.out.find(h.needle) != std::string::npos);
    }
    CHECK(run_cli("tables --help").exit_code == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("enumerate").exit_code == 2);                       // missing --spec
    CHECK(run_cli("enumerate --spec \"(bogus\"").exit_code == 2);     // spec grammar
    CHECK(run_cli("check-kss /nonexistent.graph --s 2").exit_code == 1);
}

TEST_CASE("ZB_DATA_DIR overrides the packaged asset location") {
    fs::path out_file = work_dir() / "envout.txt";
    std::string cmd = std::string("ZB_DATA_DIR=/nonexistent-zb-data ") + ZB_CLI_PATH + " tables verify >" +
                      out_file.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);  // assets are unreadable there
}
