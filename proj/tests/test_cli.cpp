#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string binary() {
    const char* b = std::getenv("FRAGMENTA_BIN");
    REQUIRE(b != nullptr);
    return b;
}

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path tmpdir() {
    auto d = fs::temp_directory_path() / ("fragmenta_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("sectors command emits the catalog") {
    auto r = run("sectors --model asymmetric --L 6");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["model"] == "asymmetric");
    REQUIRE(j["L"] == 6);
    REQUIRE(j["q"] == 2);
    std::map<int, int> hist;
    for (const auto& row : j["histogram"]) hist[row[0]] = row[1];
    REQUIRE(hist == std::map<int, int>{{1, 26}, {5, 6}, {8, 1}});
    REQUIRE(j["sectors"].size() == 33);
    REQUIRE(j["sectors"][0]["rep"] == "000000");
    REQUIRE(j["sectors"][0]["size"] == 8);
    REQUIRE(j["sectors"][0]["frozen"] == false);
}

TEST_CASE("counts command emits CSV with a header") {
    auto r = run("counts --which frozen-q2 --min 4 --max 9");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "L,count\n4,10\n5,16\n6,26\n7,42\n8,68\n9,110\n");
}

TEST_CASE("entropy command reproduces the exact middle-cut value") {
    auto r = run("entropy --L 9 --cut 4 --sector e");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("cut,entropy\n4,", 0) == 0);
    double s = std::stod(r.out.substr(r.out.find('\n') + 3));
    REQUIRE(s == Catch::Approx(2.563).margin(1e-3));
}

TEST_CASE("decompose output is deterministic in the config") {
    auto d = tmpdir();
    auto f1 = d / "a.json", f2 = d / "b.json";
    REQUIRE(run("decompose --model ghz --L 6 --seed 5 --out " + f1.string()).exit_code == 0);
    REQUIRE(run("decompose --model ghz --L 6 --seed 5 --out " + f2.string()).exit_code == 0);
    REQUIRE(slurp(f1) == slurp(f2));
    auto j = json::parse(slurp(f1));
    bool found = false;
    for (const auto& s : j["sectors"]) {
        if (s["sector"] != "000000") continue;
        found = true;
        REQUIRE(s["D_cl"] == 8);
        REQUIRE(s["efs_dim"] == 1);
        REQUIRE(s["pattern"] == "1+3+4");
        REQUIRE(s["charges"].size() == 2);
    }
    REQUIRE(found);
}

TEST_CASE("hamiltonian command writes dim-prefixed binary plus metadata") {
    auto d = tmpdir();
    auto f = d / "h.bin";
    REQUIRE(run("hamiltonian --model asymmetric --L 6 --sector-rep 000000 --seed 3 --out " +
                f.string())
                .exit_code == 0);
    auto payload = slurp(f);
    REQUIRE(payload.size() == 8 + 8 * 8 * sizeof(double));
    uint64_t dim;
    std::memcpy(&dim, payload.data(), 8);
    REQUIRE(dim == 8);
    auto meta = json::parse(slurp(f.string() + ".json"));
    REQUIRE(meta["dim"] == 8);
    REQUIRE(meta["couplings"].size() == 4);
}

TEST_CASE("bridge command emits a depth profile") {
    auto d = tmpdir();
    auto f = d / "bridge.csv";
    auto r = run("bridge --L 9 --samples 200 --seed 2 --out " + f.string());
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["sector_size"] == 38);
    auto csv = slurp(f);
    REQUIRE(csv.rfind("t,mean_depth,sigma\n0,0,0\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("spectra command writes histogram with reference columns") {
    auto d = tmpdir();
    auto f = d / "hist.csv";
    auto r = run("spectra --model asymmetric --L 9 --realizations 10 --seed 4 --bins 20 --out " +
                 f.string());
    REQUIRE(r.exit_code == 0);
    auto csv = slurp(f);
    REQUIRE(csv.rfind("bin_center,density,goe,2goe,3goe,poisson\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 21);
    auto j = json::parse(slurp(f.string() + ".json"));
    REQUIRE(j["dim"] == 38);
    REQUIRE(j["ks"].size() == 4);
    for (const auto& [name, v] : j["ks"].items()) {
        REQUIRE(v.get<double>() >= 0.0);
        REQUIRE(v.get<double>() <= 1.0);
    }
}

TEST_CASE("reproduce diffs known tables and rejects unknown ids") {
    auto r = run("reproduce --table sm-q2-L6");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("FAIL") == std::string::npos);
    REQUIRE(r.out.find("PASS") != std::string::npos);
    REQUIRE(run("reproduce --table no-such-table").exit_code != 0);
}

TEST_CASE("run-all produces a manifest covering every artifact") {
    auto d = tmpdir() / "bundle";
    auto r = run("run-all --model ghz --L 6 --seed 7 --realizations 5 --out-dir " +
                 d.string());
    REQUIRE(r.exit_code == 0);
    auto manifest = json::parse(slurp(d / "manifest.json"));
    REQUIRE(manifest["artifacts"].size() == 5);
    for (const auto& a : manifest["artifacts"]) {
        auto p = d / a["name"].get<std::string>();
        auto content = slurp(p);
        REQUIRE(content.size() == a["bytes"].get<size_t>());
    }

    auto d2 = tmpdir() / "bundle2";
    REQUIRE(run("run-all --model ghz --L 6 --seed 7 --realizations 5 --out-dir " +
                d2.string())
                .exit_code == 0);
    REQUIRE(json::parse(slurp(d2 / "manifest.json"))["artifacts"] ==
            manifest["artifacts"]);
}
