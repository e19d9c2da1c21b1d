#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "checks.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "unisum_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = work_dir() / name;
    std::ofstream(p) << text;
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string(UNISUM_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      (work_dir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    std::ostringstream buf;
    buf << std::ifstream(out).rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

const char* kLogistic =
    R"({"kind":"representable","generator":"logistic","policy":"conjunctive"})";
const char* kExample14 = R"({
    "kind":"ordinal-sum","e":0.5,"summands":[
      {"a":0.25,"b":0.5,"c":0.5,"d":0.75,
       "op":{"kind":"representable","generator":"logistic","policy":"conjunctive"}},
      {"a":0,"b":0.25,"c":0.75,"d":0.75,"op":{"kind":"tnorm","family":"product"}},
      {"a":0,"b":0,"c":0.75,"d":1,"op":{"kind":"tconorm","family":"lukasiewicz"}}]})";

}  // namespace

TEST_CASE("cli eval prints twelve significant digits") {
    auto spec = write_file("logistic.json", kLogistic);
    RunResult r = run_cli("eval " + spec.string() + " 0.8 0.8");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.941176470588\n");

    auto ex14 = write_file("ex14.json", kExample14);
    RunResult r2 = run_cli("eval " + ex14.string() + " 0.1 0.6");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "0.1\n");
    RunResult r3 = run_cli("eval " + ex14.string() + " 0.1 0.9");
    CHECK(r3.out == "0.9\n");
}

TEST_CASE("cli exit codes for malformed and invalid input") {
    auto bad = write_file("bad.json", R"({"kind":"frobnicate"})");
    CHECK(run_cli("eval " + bad.string() + " 0.5 0.5").exit_code == 2);

    auto nojson = write_file("nojson.json", "{this is not json");
    CHECK(run_cli("eval " + nojson.string() + " 0.5 0.5").exit_code == 2);

    auto overlap = write_file("overlap.json", R"({
        "kind":"ordinal-sum-tnorm","summands":[
          {"lo":0,"hi":0.6,"op":{"kind":"tnorm","family":"product"}},
          {"lo":0.5,"hi":1,"op":{"kind":"tnorm","family":"product"}}]})");
    CHECK(run_cli("eval " + overlap.string() + " 0.5 0.5").exit_code == 3);

    // Boundary rule without a tolerance band: the reassembled sum cannot
    // match the operator and the residual check fails.
    auto drift = write_file("drift.json",
                            R"({"kind":"s-internal","curve":[[0,1],[1,0]]})");
    CHECK(run_cli("decompose " + drift.string()).exit_code == 4);
}

TEST_CASE("cli axioms report") {
    auto spec = write_file("logistic.json", kLogistic);
    RunResult r = run_cli("axioms " + spec.string());
    CHECK(r.exit_code == 0);
    for (const char* name : {"axiom=commutativity", "axiom=associativity",
                             "axiom=monotonicity", "axiom=neutrality"})
        CHECK(r.out.find(name) != std::string::npos);
    CHECK(r.out.find("max_violation=") != std::string::npos);
    CHECK(r.out.find("witness=") != std::string::npos);

    // Zero tolerance surfaces the round-off of the numeric inverse.
    auto numeric = write_file("hamnum.json",
                              R"({"kind":"tnorm","family":"hamacher-numeric"})");
    CHECK(run_cli("axioms --tol 0 " + numeric.string()).exit_code == 1);
}

TEST_CASE("cli verify") {
    auto a = write_file("logistic.json", kLogistic);
    auto b = write_file("logistic2.json", kLogistic);
    auto c = write_file("ex14.json", kExample14);
    CHECK(run_cli("verify " + a.string() + " " + b.string()).exit_code == 0);
    RunResult r = run_cli("verify " + a.string() + " " + c.string() + " --tol 1e-6");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("max_diff=") != std::string::npos);
}

TEST_CASE("cli decompose report") {
    auto spec = write_file("ex14.json", kExample14);
    RunResult r = run_cli("decompose " + spec.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("e=0.5\n") != std::string::npos);
    CHECK(r.out.find("breakpoints=0,0.25,0.5,0.75,1\n") != std::string::npos);
    CHECK(r.out.find("kind=representable") != std::string::npos);
    CHECK(r.out.find("kind=archimedean-tnorm") != std::string::npos);
    CHECK(r.out.find("kind=archimedean-tconorm") != std::string::npos);
    CHECK(r.out.find("g(0)=[0,0.75]") != std::string::npos);
    CHECK(r.out.find("residual=") != std::string::npos);
}

TEST_CASE("cli render writes csv and jump overlay") {
    auto spec = write_file("min.json", R"({"kind":"tnorm","family":"min"})");
    std::string prefix = (work_dir() / "minrender").string();
    RunResult r = run_cli("render " + spec.string() + " --grid 51 --out " + prefix);
    CHECK(r.exit_code == 0);

    std::ifstream csv(prefix + ".csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,y,value");
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 51 * 51);

    // min is continuous: the overlay stays empty.
    std::ifstream pgm(prefix + ".pgm", std::ios::binary);
    std::string magic, dims, maxval;
    std::getline(pgm, magic);
    std::getline(pgm, dims);
    std::getline(pgm, maxval);
    CHECK(magic == "P5");
    CHECK(dims == "51 51");
    int nonzero = 0;
    for (int i = 0; i < 51 * 51; ++i)
        if (pgm.get() != 0) ++nonzero;
    CHECK(nonzero == 0);

    // The e = 0.5 ordinal sum has jump rows: the overlay is non-empty.
    auto ex14 = write_file("ex14.json", kExample14);
    std::string p2 = (work_dir() / "ex14render").string();
    CHECK(run_cli("render " + ex14.string() + " --grid 101 --out " + p2).exit_code == 0);
    std::ifstream pgm2(p2 + ".pgm", std::ios::binary);
    std::getline(pgm2, magic);
    std::getline(pgm2, dims);
    std::getline(pgm2, maxval);
    nonzero = 0;
    for (int i = 0; i < 101 * 101; ++i)
        if (pgm2.get() != 0) ++nonzero;
    CHECK(nonzero > 0);
}
