#include "betadim/beta_core.hpp"
#include "betadim/parse.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

using json = nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("BETADIM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "BETADIM_CLI must point at the betadim binary");
    return p;
}

struct run_result {
    int code;
    std::string out;
};

run_result run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

double mid_of(const json& field) { return std::stod(field.at("mid").get<std::string>()); }

} // namespace

TEST_CASE("expand subcommand") {
    auto r = run("expand --beta 5/2 --x 1/2 --n 4");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["digits"] == json::array({1, 0, 1, 1}));

    auto r2 = run("expand --beta 3 --x 0 --n 3");
    CHECK(json::parse(r2.out)["digits"] == json::array({0, 0, 0}));

    // Algebraic base with 1 = 1/b + 1/b^3 (root of t^3 - t^2 - 1).
    auto r3 = run("expand --beta poly:[-1,0,-1,1]@[1.4,1.5] --x 1/2 --n 6");
    CHECK(r3.code == 0);
    json j3 = json::parse(r3.out);
    CHECK(j3["digits"].size() == 6);
    auto beta = betadim::parse_real("poly:[-1,0,-1,1]@[1.4,1.5]");
    auto digits = betadim::expand(beta, betadim::real_alg(mpq_class(1, 2)), 6);
    for (int i = 0; i < 6; ++i) CHECK(j3["digits"][i].get<int>() == digits[i]);
}

TEST_CASE("expand error paths") {
    CHECK(run("expand --beta nonsense --x 1/2 --n 4").code == 2);
    CHECK(run("expand --beta poly:[-1,-1,0,1]@[1.4,1.5] --x 1/2 --n 4").code == 2);  // rootless
    CHECK(run("expand --beta 5/2 --x 3/2 --n 4").code == 5);  // x out of [0,1)
}

TEST_CASE("dimension subcommand") {
    auto r = run("dimension --beta 4 --theta 0,1,3");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["degenerate"] == false);
    CHECK(mid_of(j["s"]) == doctest::Approx(0.7924813).epsilon(1e-6));

    auto r2 = run("dimension --beta 3.6 --theta 0,1,3");
    json j2 = json::parse(r2.out);
    CHECK(mid_of(j2["alpha"]) == doctest::Approx(2.7320508).epsilon(1e-6));

    auto r3 = run("dimension --beta 3.1 --theta 2,3");
    CHECK(r3.code == 4);
    json j3 = json::parse(r3.out);
    CHECK(j3["degenerate"] == true);
    CHECK(mid_of(j3["s"]) == doctest::Approx(0.0));
}

TEST_CASE("count subcommand") {
    auto r = run("count --beta 2 --k 5");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 5);
    CHECK(j["rows"][4]["count"] == "32");
    for (const auto& row : j["rows"]) CHECK(row["within"] == true);

    auto r2 = run("count --beta 3.6 --k 6 --theta 0,1,3 --format csv");
    CHECK(r2.code == 0);
    CHECK(r2.out.rfind("k,count,lower,upper,within", 0) == 0);
}

TEST_CASE("curve subcommand") {
    auto r = run("curve --theta 0,2 --lo 2.2 --hi 2.6 --samples 3 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("beta,s_mid,s_rad,alpha_mid,alpha_rad,plateau,error", 0) == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 4);  // header + 3 rows

    auto r2 = run("curve --theta 0,1,3 --lo 3.57 --hi 3.79 --samples 5");
    json j2 = json::parse(r2.out);
    CHECK(j2["alpha_nondecreasing"] == true);
    for (const auto& row : j2["rows"]) CHECK(row["plateau"] == true);
}

TEST_CASE("localifs subcommands") {
    auto r = run("localifs --beta 5/2 --depth 2 build-b");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["parts"].size() == 3);
    CHECK(j["parts"][0]["lo_exact"] == "0");
    CHECK(j["parts"][0]["hi_exact"] == "4/25");
    CHECK(j["parts"][1]["lo_exact"] == "8/25");
    CHECK(j["parts"][1]["hi_exact"] == "2/5");
    CHECK(j["parts"][2]["lo_exact"] == "4/5");
    CHECK(j["parts"][2]["hi_exact"] == "24/25");

    auto rq = run("localifs --beta poly:[-2,-2,1]@[2.7,2.8] q");
    json jq = json::parse(rq.out);
    CHECK(jq["verdict"] == "InQ");
    CHECK(jq["eps"] == json::array({2, 2}));

    auto rq3 = run("localifs --beta 3 q");
    CHECK(json::parse(rq3.out)["verdict"] == "NotInQ");

    CHECK(run("localifs --beta 3 --depth 2 diff").code == 5);

    auto rc = run("localifs --beta 5/2 --depth 6 check");
    json jc = json::parse(rc.out);
    CHECK(jc["ok"] == true);

    CHECK(run("localifs --beta 7/2 --depth 2 build-b").code == 5);  // out of range
}

TEST_CASE("identical invocations produce byte-identical output") {
    auto a = run("dimension --beta 3.6 --theta 0,1,3");
    auto b = run("dimension --beta 3.6 --theta 0,1,3");
    CHECK(a.out == b.out);

    auto c = run("curve --theta 0,1,3 --lo 3.57 --hi 3.79 --samples 4 --jobs 3");
    auto d = run("curve --theta 0,1,3 --lo 3.57 --hi 3.79 --samples 4");
    CHECK(c.out == d.out);
}

TEST_CASE("environment variable adjusts precision") {
    std::string cmd = "BETADIM_PREC=192 " + cli_path() + " dimension --beta 4 --theta 0,1,3";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    json j = json::parse(out);
    // Higher precision prints more digits of the same value.
    CHECK(j["s"]["mid"].get<std::string>().size() > 40);
}
