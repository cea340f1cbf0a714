#include <catch2/catch_amalgamated.hpp>

#include "weightlab/io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

// Drives the installed binary end to end; WEIGHTLAB_BIN is injected by the
// build so the tests always exercise the freshly built tool.

namespace fs = std::filesystem;
using namespace weightlab;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("weightlab_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int status = -1;
    std::string out;  // stdout and stderr merged
};

RunResult run_cli(const std::string& args) {
    static int seq = 0;
    const fs::path cap = work_dir() / ("capture_" + std::to_string(seq++) + ".txt");
    const std::string cmd =
        std::string(WEIGHTLAB_BIN) + " " + args + " > " + cap.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_text_file(cap.string());
    return r;
}

std::string put(const std::string& name, const json& j) {
    const fs::path p = work_dir() / name;
    write_text_file(p.string(), payload_string(j));
    return p.string();
}

std::string put_text(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    write_text_file(p.string(), text);
    return p.string();
}

std::string tmp_path(const std::string& name) { return (work_dir() / name).string(); }

}  // namespace

TEST_CASE("version flag and missing subcommand") {
    RunResult v = run_cli("--version");
    CHECK(v.status == 0);
    CHECK(v.out.find("weightlab") != std::string::npos);

    CHECK(run_cli("").status != 0);
    CHECK(run_cli("frobnicate").status != 0);
}

TEST_CASE("exponents solve completes the showcase tuple") {
    RunResult r = run_cli("exponents solve --q0 2 --p0 2/3 --s0 1 --r0 inf --q inf");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j.at("q0") == "2");
    CHECK(j.at("p0") == "2/3");
    CHECK(j.at("q") == "inf");
    CHECK(j.at("p") == "1");
    CHECK(j.at("s") == "2");
    CHECK(j.at("r") == "2");
    CHECK(j.at("shift_reciprocal").get<double>() == Catch::Approx(-0.5));
    CHECK(j.at("complete") == true);
    CHECK(j.at("admissible") == true);
}

TEST_CASE("exponents solve surfaces bad input") {
    RunResult under = run_cli("exponents solve --q0 2");
    CHECK(under.status == 1);
    CHECK(under.out.find("error:") != std::string::npos);

    RunResult bogus = run_cli("exponents solve --q0 nope --p0 2 --s0 1 --r0 2 --q 2");
    CHECK(bogus.status == 1);
    CHECK(bogus.out.find("error:") != std::string::npos);
}

TEST_CASE("space make and validate round-trip") {
    const std::string sf = tmp_path("dyadic2.json");
    REQUIRE(run_cli("space make --kind dyadic --levels 2 --out " + sf).status == 0);

    RunResult val = run_cli("space validate " + sf);
    REQUIRE(val.status == 0);
    json j = json::parse(val.out);
    CHECK(j.at("ok") == true);
    CHECK(j.at("points") == 4);
    CHECK(j.at("sets") == 7);
    CHECK(j.at("cover_ok") == true);
    CHECK(j.at("pair_ok") == true);

    const std::string cf = tmp_path("cyclic6.json");
    REQUIRE(run_cli("space make --kind cyclic --n 6 --out " + cf).status == 0);
    RunResult cval = run_cli("space validate " + cf);
    REQUIRE(cval.status == 0);
    json cj = json::parse(cval.out);
    CHECK(cj.at("ok") == true);
    CHECK(cj.at("points") == 6);
    CHECK(cj.at("sets") == 13);
}

TEST_CASE("space validate flags a broken basis") {
    json bad{{"masses", json::array({1.0, 1.0})}, {"basis", json::array({json::array({0})})}};
    const std::string bf = put("bad_space.json", bad);
    RunResult r = run_cli("space validate " + bf);
    CHECK(r.status == 2);
    json j = json::parse(r.out);
    CHECK(j.at("ok") == false);
    CHECK(j.at("cover_ok") == false);
}

TEST_CASE("char and maxop satisfy the flat-weight identities") {
    const std::string sf = tmp_path("dyadic1.json");
    REQUIRE(run_cli("space make --kind dyadic --levels 1 --out " + sf).status == 0);
    const std::string wf = put("ones2.json", json::array({1.0, 1.0}));

    RunResult ch = run_cli("char --space " + sf + " --w " + wf + " --s 2 --r 2");
    REQUIRE(ch.status == 0);
    json cj = json::parse(ch.out);
    CHECK(cj.at("value").get<double>() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(cj.at("argmax_set").get<int>() >= 0);

    RunResult mx = run_cli("maxop --space " + sf + " --w " + wf + " --p inf");
    REQUIRE(mx.status == 0);
    json mj = json::parse(mx.out);
    CHECK(mj.at("value").get<double>() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(mj.at("kind") == "exact");
    CHECK(mj.at("witness").size() == 2);

    RunResult quasi = run_cli("maxop --space " + sf + " --w " + wf + " --p 0.5");
    CHECK(quasi.status == 1);
    CHECK(quasi.out.find("error:") != std::string::npos);
}

TEST_CASE("rdf zero-shift leaves the pair untouched") {
    const std::string sf = tmp_path("dyadic2b.json");
    REQUIRE(run_cli("space make --kind dyadic --levels 2 --out " + sf).status == 0);

    json params{{"u0", "2"}, {"p0", "4"}, {"s0", "2"}, {"r0", "3"},
                {"u1", "2"}, {"p1", "4"}, {"s1", "2"}, {"r1", "3"}};
    const std::string pf = put("zero_shift.json", params);
    const std::string wf = put("rdf_w.json", json::array({1.0, 2.0, 1.0, 0.5}));
    const std::string vf = put("rdf_v.json", json::array({1.0, 1.0, 2.0, 1.0}));
    const std::string ff = put("rdf_f.json", json::array({1.0, 0.0, 2.0, 1.0}));
    const std::string hf = put("rdf_h.json", json::array({1.0, 1.0, 1.0, 1.0}));

    RunResult r = run_cli("rdf --space " + sf + " --params " + pf + " --w " + wf + " --v " + vf +
                          " --f " + ff + " --h " + hf + " --kappa 2");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j.at("w0") == json::array({1.0, 2.0, 1.0, 0.5}));
    CHECK(j.at("v0") == json::array({1.0, 1.0, 2.0, 1.0}));
    CHECK(j.at("char_lhs").get<double>() == j.at("char_rhs").get<double>());
    CHECK(j.at("normprod_lhs").get<double>() == j.at("normprod_rhs").get<double>());
}

TEST_CASE("extrapolate consumes TOML and reproduces byte-identical reports") {
    const std::string cfg = put_text("run.toml",
                                     "[extrapolate]\n"
                                     "mode = \"linear\"\n"
                                     "space = \"dyadic\"\n"
                                     "levels = 2\n"
                                     "op = \"identity\"\n"
                                     "q0 = \"4\"\n"
                                     "q1 = \"2\"\n"
                                     "factor = [\"4,4,4/3,2,2,2\"]\n"
                                     "one-weight = true\n"
                                     "trials = 4\n"
                                     "seed = 7\n"
                                     "dual-samples = 6\n"
                                     "restarts = 4\n"
                                     "iters = 100\n");

    const std::string p1 = tmp_path("run1");
    RunResult r1 = run_cli("extrapolate --config " + cfg + " --out " + p1);
    REQUIRE(r1.status == 0);
    CHECK(r1.out.find("pass") != std::string::npos);

    json rep = json::parse(read_text_file(p1 + ".json"));
    CHECK(rep.at("verdict") == "pass");
    REQUIRE(rep.at("trials").size() == 4);
    for (const auto& t : rep.at("trials")) CHECK(t.at("pass") == true);

    const std::string csv = read_text_file(p1 + ".csv");
    CHECK(csv.rfind("trial,base_ratio,base_char,target_ratio,target_char,", 0) == 0);

    json meta = json::parse(read_text_file(p1 + ".meta.json"));
    CHECK(meta.contains("version"));
    CHECK(meta.at("config").at("seed") == 7);

    const std::string p2 = tmp_path("run2");
    REQUIRE(run_cli("extrapolate --config " + cfg + " --out " + p2).status == 0);
    CHECK(read_text_file(p1 + ".json") == read_text_file(p2 + ".json"));
    CHECK(read_text_file(p1 + ".csv") == read_text_file(p2 + ".csv"));
}

TEST_CASE("extrapolate rejects unknown config keys and missing exponents") {
    const std::string cfg = put_text("bad.toml",
                                     "[extrapolate]\n"
                                     "mode = \"linear\"\n"
                                     "whatnot = 3\n");
    RunResult r = run_cli("extrapolate --config " + cfg);
    CHECK(r.status == 1);
    CHECK(r.out.find("whatnot") != std::string::npos);

    RunResult missing = run_cli("extrapolate --mode linear --op identity");
    CHECK(missing.status == 1);
    CHECK(missing.out.find("q0") != std::string::npos);
}

TEST_CASE("suite payload is deterministic across runs") {
    const std::string p1 = tmp_path("payload1.json");
    const std::string p2 = tmp_path("payload2.json");
    REQUIRE(run_cli("suite --seed 42 --payload-only --out " + p1).status == 0);
    REQUIRE(run_cli("suite --seed 42 --payload-only --out " + p2).status == 0);

    const std::string b1 = read_text_file(p1);
    CHECK(!b1.empty());
    CHECK(b1 == read_text_file(p2));

    json j = json::parse(b1);
    CHECK(j.at("consistency").at("p") == "1");
    CHECK(j.at("linear").at("verdict") == "pass");
    CHECK(j.at("bilinear").at("verdict") == "pass");
    CHECK(j.at("transfer").at("verdict") == "consistent");
    CHECK(j.contains("constants"));
}

TEST_CASE("transfer evaluates an embedding exactly at order two") {
    const std::string wf = put("tr_w.json", json::array({1.0, 2.0, 1.0, 0.5}));
    const std::string mf =
        put("tr_m.json", json::array({1.0, 0.75, 0.5, 0.25, 0.0, 0.25, 0.5, 0.75}));

    RunResult r = run_cli("transfer --H 4 --G 8 --phi 2 --p 2 --w " + wf + " --m " + mf);
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j.at("verdict") == "consistent");
    CHECK(j.at("exact") == true);
    CHECK(j.at("surjective_dual") == true);
    CHECK(j.at("c").get<double>() == 1.0);
    CHECK(j.at("lhs").get<double>() <= j.at("rhs").get<double>() * (1 + 1e-9));
}

TEST_CASE("trace prints the statement matrix") {
    RunResult t = run_cli("trace --json");
    REQUIRE(t.status == 0);
    json arr = json::parse(t.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() >= 30);
    for (const auto& e : arr) {
        CHECK(!e.at("statement").get<std::string>().empty());
        CHECK(!e.at("verified_by").get<std::string>().empty());
        CHECK(e.at("last_verdict").is_null());
    }

    RunResult plain = run_cli("trace");
    CHECK(plain.status == 0);
    CHECK(plain.out.find("criterion 1") != std::string::npos);
}
