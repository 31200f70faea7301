#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(RADEX_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("p2 subcommand") {
    const Run a = run("p2 --n 10 --check");
    CHECK(a.code == 0);
    CHECK(a.out.find("p2(10) = 22") != std::string::npos);
    CHECK(a.out.find("oracle 22 ok") != std::string::npos);

    const Run b = run("p2 --range 1..5 --output csv");
    CHECK(b.code == 0);
    const auto rows = lines(b.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].rfind("n,rounded,stabilized", 0) == 0);
    CHECK(rows[5].rfind("5,4,true", 0) == 0);

    CHECK(run("p2 --n 10 --k-max 2").code == 2);
}

TEST_CASE("p2 JSON certificate and reproducibility") {
    const Run a = run("p2 --n 12 --output json --threads 1");
    const Run b = run("p2 --n 12 --output json --threads 3");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["schema"] == "1");
    const auto& c = j["results"][0];
    CHECK(c["n"] == 12);
    CHECK(c["rounded"] == "37");
    CHECK(c["stabilized"] == true);
    CHECK(c["config"]["k1_sign"] == 1);
    CHECK(c["config"]["k8_phase"] == 1);
    CHECK(c["partial_sums"].size() == c["k_used"].get<std::size_t>());

    const Run e = run("p2 --n 12 --output json", "RADEX_BITS=200");
    CHECK(nlohmann::json::parse(e.out)["results"][0]["bits"] == 200);
}

TEST_CASE("p subcommand") {
    const Run a = run("p --n 100 --check");
    CHECK(a.code == 0);
    CHECK(a.out.find("p(100) = 190569292") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
    CHECK(run("oracle p2 --to 5").out == "1,1,2,2,4,4\n");
    const Run p = run("oracle p --to 10");
    CHECK(p.code == 0);
    CHECK(p.out.size() > 3);
    CHECK(p.out.substr(p.out.size() - 3) == "42\n");
    CHECK(run("oracle alpha --to 3").out == "1,1,-2,3\n");
    const auto all = lines(run("oracle all --to 4 --output csv").out);
    REQUIRE(all.size() == 6);
    CHECK(all[0] == "n,p,p2,a4,r");
    CHECK(run("oracle p --to 2001").code == 1);
    CHECK(run("oracle nonsense --to 3").code == 1);
}

TEST_CASE("verify subcommand") {
    CHECK(run("verify multipliers --k-max 60").code == 0);
    CHECK(run("verify decomposition --to 300").code == 0);
    CHECK(run("verify logconcavity --to 2000").code == 0);
    CHECK(run("verify kloosterman --k-max 20 --nm-max 4").code == 0);
    const Run j = run("verify multipliers --k-max 12 --output json");
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["schema"] == "1");
    CHECK(parsed["passed"] == true);
    CHECK(parsed["failures"].empty());
    CHECK(run("verify nothing").code == 1);
}

TEST_CASE("bound-report subcommand") {
    const Run r = run("bound-report --family 4 --k-max 10 --n-max 3 --output csv");
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == "family,k,n,nu,abs_value,ratio");
    CHECK(run("bound-report --family 9").code == 1);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("p2").code == 1);
    CHECK(run("p2 --n 3 --range 1..4").code == 1);
    CHECK(run("p2 --n 3 --output xml").code == 1);
    CHECK(run("p2 --n 3 --k8-phase 2").code == 1);
    CHECK(run("p2 --n 3 --tol abc").code == 1);
    CHECK(run("p2 --n 3 --bogus").code == 1);
    CHECK(run("p2 --n 3", "RADEX_BITS=12").code == 1);
    CHECK(run("--help").code == 0);
}
