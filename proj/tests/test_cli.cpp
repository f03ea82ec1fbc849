#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + ARITHVOL_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(ARITHVOL_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const char* kConfig = R"({
  "bundle": {"model": "P1Z", "degree": 1, "family": "Canonical", "c_num": 1, "c_den": 1, "twists": []},
  "primes": [7, 31, 101],
  "m_schedule": [5, 10, 20],
  "seed": 7
})";

}  // namespace

TEST_CASE("hzero prints the log 7 row") {
    const auto r = run("hzero --model p1z --degree 1 --metric canonical --c-num 0 --c-den 1 --m 2");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("m,rank,count,method,hzero_lower,hzero_upper\n", 0) == 0);
    const std::string row = r.out.substr(r.out.find('\n') + 1);
    CHECK(row.rfind("2,3,7,exact,", 0) == 0);
    CHECK(row.find("1.94591014906") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
    CHECK(run("hzero --m 0").code == 2);
    CHECK(run("hzero --bogus").code == 2);
    CHECK(run("hzero --c-den 0 --m 1").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("valimage --p 4 --m 1").code == 2);
    CHECK(run("theorem-a --config /nonexistent/cfg.json").code == 2);
}

TEST_CASE("budget exhaustion exits 3") { CHECK(run("sections --m 3 --budget 0").code == 3); }

TEST_CASE("theorem-a CSV, JSON and SVG") {
    const auto dir = scratch("theorem_a");
    write(dir / "cfg.json", kConfig);
    const auto r = run("theorem-a --config " + (dir / "cfg.json").string() + " --json " + (dir / "rep.json").string() +
                       " --svg-dir " + (dir / "svg").string());
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("7,20,", 0) != 0) continue;
        found = true;
        const double gap = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(gap == doctest::Approx(0.027045).epsilon(1e-4));
    }
    CHECK(found);
    CHECK(fs::exists(dir / "rep.json"));
    std::size_t svgs = 0;
    for (const auto& e : fs::directory_iterator(dir / "svg")) svgs += e.path().extension() == ".svg";
    CHECK(svgs == 9);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const auto dir = scratch("determinism");
    write(dir / "cfg.json", kConfig);
    const std::string cfg = (dir / "cfg.json").string();
    const auto a = run("theorem-a --config " + cfg + " --threads 1 --json " + (dir / "a.json").string());
    const auto b = run("theorem-a --config " + cfg + " --threads 3 --json " + (dir / "b.json").string());
    const auto c = run("theorem-a --config " + cfg + " --json " + (dir / "c.json").string(), "ARITHVOL_THREADS=2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "c.json"));

    const auto s1 = run("verify sweep --suite inequalities --seed 5 --pairs 40");
    const auto s2 = run("verify sweep --suite inequalities --seed 5 --pairs 40");
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
    const auto e1 = run("sections --c-num 1 --c-den 2 --m 4 --threads 1");
    const auto e2 = run("sections --c-num 1 --c-den 2 --m 4 --threads 3");
    CHECK(e1.out == e2.out);
}

TEST_CASE("other subcommands") {
    const auto in = run("intersect --c-num 1 --c-num2 4");
    CHECK(in.code == 0);
    CHECK(in.out.find("\"value\"") != std::string::npos);

    const auto red = run("verify reduction --c-num 7 --c-den 10 --m 1 --n 2");
    CHECK(red.code == 0);
    CHECK(red.out.find("\"count_up\": 41") != std::string::npos);

    const auto fj = run("verify fujita --c-num 7 --c-den 10 --p 2 --n 1 --k-max 4 --gate-monotone");
    CHECK(fj.code == 4);

    const auto dir = scratch("svg");
    const auto ok = run("okounkov --c-num 1 --p 7 --schedule 10,20 --out " + (dir / "run.json").string() + " --svg " +
                        (dir / "run.svg").string());
    CHECK(ok.code == 0);
    CHECK(slurp(dir / "run.svg").find("<svg") != std::string::npos);
    const auto sv = run("emit-svg --input " + (dir / "run.json").string() + " --bound-box 0,0,0.5,1");
    CHECK(sv.code == 0);
    CHECK(sv.out.find("</svg>") != std::string::npos);
}
