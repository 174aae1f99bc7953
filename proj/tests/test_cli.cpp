#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coldgate/circuit.hpp"
#include "coldgate/config.hpp"
#include "coldgate/errors.hpp"
#include "coldgate/scenarios.hpp"

using namespace coldgate;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("coldgate_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("number parsing understands multiples of pi") {
    CHECK(parse_number("pi") == doctest::Approx(kPi));
    CHECK(parse_number("-pi/2") == doctest::Approx(-kPi / 2));
    CHECK(parse_number("3pi/2") == doctest::Approx(1.5 * kPi));
    CHECK(parse_number("1.5*pi") == doctest::Approx(1.5 * kPi));
    CHECK(parse_number("2.5e-3") == doctest::Approx(2.5e-3));
    CHECK_THROWS_AS(parse_number("pie"), ValidationError);
    CHECK_THROWS_AS(parse_number("1,5"), ValidationError);
}

TEST_CASE("key=value config") {
    auto c = Config::parse("# comment\nseed_offset = 3\nphi=pi  # trailing\nflag=true\nlist=1, 2,pi\n");
    CHECK(c.integer("seed_offset", 0) == 3);
    CHECK(c.number("phi", 0.0) == doctest::Approx(kPi));
    CHECK(c.flag("flag", false));
    CHECK(c.numbers("list", {}).size() == 3);
    CHECK(c.number("missing", 2.5) == 2.5);
    CHECK_NOTHROW(c.reject_unknown());
    const std::string echo = c.echo();
    CHECK(echo.find("missing=2.5") != std::string::npos);
    CHECK(echo.find("seed_offset=3") != std::string::npos);

    auto u = Config::parse("known=1\nunknwon=2\n");
    (void)u.integer("known", 0);
    CHECK_THROWS_AS(u.reject_unknown(), ValidationError);
    CHECK_THROWS_AS(Config::parse("novalue\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse("a=1\na=2\n"), ValidationError);
    auto bad = Config::parse("n=abc\n");
    CHECK_THROWS_AS(bad.integer("n", 0), ValidationError);
}

TEST_CASE("JSON config") {
    auto c = Config::parse(R"({"kT": 0.25, "kind": "moving", "values": [1, 2], "on": false})");
    CHECK(c.number("kT", 0.0) == doctest::Approx(0.25));
    CHECK(c.text("kind", "") == "moving");
    CHECK(c.numbers("values", {}) == std::vector<double>{1, 2});
    CHECK_FALSE(c.flag("on", true));
    CHECK_THROWS_AS(Config::parse("{ not json"), ValidationError);
}

TEST_CASE("circuit scripts") {
    const auto ops = parse_circuit("INIT r000\nH 2 3, 4 # pulses\nSWEEP pi pi pi\nLX pi/2\nMEASURE all\n", 4);
    REQUIRE(ops.size() == 5);
    CHECK(ops[0].values == std::vector<double>{2, 0, 0, 0});
    CHECK(ops[1].sites == std::vector<int>{1, 2, 3});
    CHECK(ops[2].values.size() == 3);
    CHECK(ops[3].values[0] == doctest::Approx(kPi / 2));
    CHECK_THROWS_AS(parse_circuit("H 5\n", 4), ValidationError);
    CHECK_THROWS_AS(parse_circuit("INIT 01\n", 4), ValidationError);
    CHECK_THROWS_AS(parse_circuit("FOO 1\n", 4), ValidationError);
    CHECK_THROWS_AS(parse_circuit("LX pie\n", 4), ValidationError);
}

TEST_CASE("circuit run: two-atom Ramsey pair") {
    const auto ops = parse_circuit("H 1 2\nLX pi\nH 1 2\n", 2);
    const auto run = run_circuit(ops, 2, 1, -1, 1);
    const std::vector<cplx> want{0.5, 0.5, -0.5, 0.5};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(run.reg.state()[k] - want[k]) < 1e-14);
}

TEST_CASE("scenarios are deterministic and echo their config") {
    const auto a = scratch("a"), b = scratch("b");
    for (const auto& dir : {a, b}) {
        Config c = Config::parse("");
        RunOptions o;
        o.out_dir = dir.string();
        o.seed = 5;
        CHECK(run_scenario("qc-ramsey", c, o) == 0);
        Config s = Config::parse("");
        CHECK(run_scenario("qc-syndrome-table", s, o) == 0);
    }
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files >= 4);
    CHECK(fs::exists(a / "qc-ramsey.config"));
    CHECK(fs::exists(a / "qc-syndrome-table.config"));
    const std::string csv = slurp(a / "syndrome_table.csv");
    CHECK(csv.rfind("error,syndrome,central\n", 0) == 0);
}

TEST_CASE("scenario input errors") {
    RunOptions o;
    o.out_dir = scratch("err").string();
    Config unknown = Config::parse("no_such_key=1\n");
    CHECK_THROWS_AS(run_scenario("qc-ghz", unknown, o), ValidationError);
    Config empty;
    CHECK_THROWS_AS(run_scenario("no-such-scenario", empty, o), ValidationError);
    CHECK(scenario_names().size() == 11);
}
