#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the command-line tool: spawns the built binary and
// exercises the documented exit-code contract.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ctrlk/functors.hpp"
#include "ctrlk/json_io.hpp"
#include "ctrlk/reps.hpp"

using namespace ctrlk;
namespace fs = std::filesystem;

namespace {

const std::string cli = CTRLK_CLI_PATH;

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "ctrlk_cli_out.txt";
    std::string command = cli + " " + args + " > " + tmp.string() + " 2>&1";
    int status = std::system(command.c_str());
    std::ifstream in(tmp);
    std::ostringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

} // namespace

TEST_CASE("usage errors exit with 3") {
    CHECK(run("frobnicate").code == 3);
    CHECK(run("rep xi").code == 3);       // missing --n
    CHECK(run("rep widget --n 2").code == 3);
    CHECK(run("render missing.json").code == 3); // --window required
}

TEST_CASE("size command") {
    Matrix<LaurentPoly> t1(1, 1);
    t1.at(0, 0) = LaurentPoly::t(1);
    fs::path p = write_temp("ctrlk_t.json", emit_document(make_laurent_matrix_document(t1)));

    auto r = run("size " + p.string() + " --n 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("size = 1") != std::string::npos);
    CHECK(r.out.find("grid cross-check: ok") != std::string::npos);

    CHECK(run("size " + p.string() + " --n 3").code == 3); // dimension mismatch

    fs::path bad = write_temp("ctrlk_bad.json", "{broken");
    CHECK(run("size " + bad.string()).code == 2);

    // the 5-point grid rotation has size 1/5
    fs::path u5 = write_temp("ctrlk_u5.json",
                             emit_document(make_laurent_matrix_document(
                                 to_laurent_matrix(xi_rep(5).fwd))));
    auto r5 = run("size " + u5.string() + " --n 5");
    CHECK(r5.code == 0);
    CHECK(r5.out.find("size = 1/5") != std::string::npos);
}

TEST_CASE("rep command emits bundles") {
    fs::path out = fs::temp_directory_path() / "ctrlk_xi3.json";
    auto r = run("rep xi --n 3 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("size: 1/3") != std::string::npos);
    CHECK(r.out.find("class certificate: ok") != std::string::npos);

    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    Document doc = parse_document(ss.str());
    CHECK(doc.kind == "report");
    CHECK(doc.payload["family"] == "xi");

    CHECK(run("rep s").code == 0);
    CHECK(run("rep class --k 1 --eps 1/12").code == 0);
}

TEST_CASE("vanish command exit codes") {
    fs::path xi2 = fs::temp_directory_path() / "ctrlk_xi2.json";
    REQUIRE(run("rep xi --n 2 --out " + xi2.string()).code == 0);
    // hsize 1/2 is far above the 1/30 precondition
    CHECK(run("vanish " + xi2.string() + " --preshift").code == 4);

    fs::path xi31 = fs::temp_directory_path() / "ctrlk_xi31.json";
    REQUIRE(run("rep xi --n 31 --out " + xi31.string()).code == 0);
    // unshifted support sits on the integers
    CHECK(run("vanish " + xi31.string()).code == 4);
    // shifted input passes all flags at a modest window
    auto ok = run("vanish " + xi31.string() +
                  " --preshift --layers 12 --window -2,2,1,6 --format json");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"all_ok\": true") != std::string::npos);
}

TEST_CASE("squeeze and render") {
    GeoModule m(Group::InfiniteCyclic);
    m.add_orbit({0, Rational(1, 2), Rational(1)}, 1);
    fs::path mod = write_temp("ctrlk_mod.json", emit_document(make_module_document(m)));

    fs::path stack = fs::temp_directory_path() / "ctrlk_stack.json";
    CHECK(run("squeeze " + mod.string() + " --layers 5 --out " + stack.string()).code == 0);

    auto svg = run("render " + stack.string() + " --window -1,2,1,6");
    CHECK(svg.code == 0);
    CHECK(svg.out.find("<svg") == 0);
    CHECK(svg.out.find("<rect") != std::string::npos);
    // deterministic output
    CHECK(svg.out == run("render " + stack.string() + " --window -1,2,1,6").out);

    // a shift morphism does not restrict to the interval
    RepBundle xi1 = xi_rep(1);
    fs::path gamma =
        write_temp("ctrlk_gamma.json", emit_document(make_morphism_document(xi1.fwd)));
    CHECK(run("squeeze " + gamma.string()).code == 4);
}
