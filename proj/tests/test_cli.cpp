#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kCli = SPECPROJ_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_file =
        (fs::temp_directory_path() / "specproj_cli_out.txt").string();
    const std::string cmd =
        std::string("\"") + kCli + "\" " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string fresh_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("specproj_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("list enumerates the pipelines") {
    const RunResult r = run_cli("list");
    CHECK(r.exit_code == 0);
    int lines = 0;
    std::stringstream ss(r.output);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 11);
    for (const char* name : {"roundtrip", "plancherel", "eigencheck", "project",
                             "spherical-mean", "ingham-construct", "pw-transfer",
                             "carleman", "audit-thm11", "audit-thm13",
                             "sharpness-witness"})
        CHECK(r.output.find(name) != std::string::npos);
}

TEST_CASE("unknown pipeline exits with the config code") {
    const RunResult r = run_cli("frobnicate");
    CHECK(r.exit_code == 2);
}

TEST_CASE("help text names the shared flags") {
    const RunResult r = run_cli("roundtrip --help");
    CHECK(r.output.find("--outdir") != std::string::npos);
    CHECK(r.output.find("--pair") != std::string::npos);
    CHECK(r.output.find("--alpha") != std::string::npos);
    CHECK(r.output.find("--lambda-max") != std::string::npos);
}

TEST_CASE("malformed theta table reports the offending line") {
    const std::string dir = fresh_dir("badtable");
    const std::string table = dir + "/theta.csv";
    {
        std::ofstream out(table);
        out << "1.0, 0.9\n2.0, oops\n";
    }
    const RunResult r =
        run_cli("ingham-construct --theta-table " + table + " --outdir " + dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find(":2") != std::string::npos);
}

TEST_CASE("roundtrip pipeline produces its artifacts") {
    const std::string dir = fresh_dir("roundtrip");
    const RunResult r = run_cli(
        "roundtrip --pair jacobi --alpha 0.5 --beta -0.5 --lambda-max 40 "
        "--lambda-panels 100 --panels 100 --r-max 4 --outdir " + dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir + "/roundtrip/forward.csv"));
    CHECK(fs::exists(dir + "/roundtrip/report.txt"));
    const std::string rep = slurp(dir + "/roundtrip/report.txt");
    const auto pos = rep.find("roundtrip_rel_l2_error = ");
    REQUIRE(pos != std::string::npos);
    const double err = std::stod(rep.substr(pos + 25));
    CHECK(err <= 1e-4);
}

TEST_CASE("audit pipeline produces its artifacts") {
    const std::string dir = fresh_dir("audit");
    const RunResult r = run_cli(
        "audit-thm11 --m-gamma 2 --m-2gamma 0 --theta inv-log --vanish-radius 1 "
        "--outdir " + dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir + "/audit-thm11/per_lambda.csv"));
    CHECK(fs::exists(dir + "/audit-thm11/per_m.csv"));
    CHECK(fs::exists(dir + "/audit-thm11/report.txt"));
    const std::string rep = slurp(dir + "/audit-thm11/report.txt");
    CHECK(rep.find("theta_classification = divergent") != std::string::npos);
    CHECK(rep.find("carleman_verdict = diverging") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical CSV output") {
    const std::string d1 = fresh_dir("det1");
    const std::string d2 = fresh_dir("det2");
    const std::string args =
        "roundtrip --pair hankel --alpha 0.5 --lambda-max 8 --outdir ";
    CHECK(run_cli(args + d1).exit_code == 0);
    CHECK(run_cli(args + d2).exit_code == 0);
    CHECK(slurp(d1 + "/roundtrip/forward.csv") == slurp(d2 + "/roundtrip/forward.csv"));
    CHECK(slurp(d1 + "/roundtrip/input.csv") == slurp(d2 + "/roundtrip/input.csv"));
}

TEST_CASE("carleman demo pipeline") {
    const std::string dir = fresh_dir("carleman");
    const RunResult r = run_cli("carleman --demo factorial --outdir " + dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("diverging") != std::string::npos);
}

} // TEST_SUITE
