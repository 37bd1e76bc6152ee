#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "ambiclass/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = ambiclass::cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("genclass subcommand matches the worked example")
    {
        auto r = run({"--format", "json", "genclass", "-d", "82", "--primes", "3"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["result"]["generates"] == true);
        auto r2 = run({"--format", "json", "genclass", "-d", "82", "--primes", "23"});
        CHECK(json::parse(r2.out)["result"]["generates"] == false);
    }

    TEST_CASE("filtration subcommand")
    {
        auto r = run({"--format", "json", "filtration", "-d", "82"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["result"]["orders"] == json::array({2, 2}));
        CHECK(doc["result"]["structure"] == json::array({4}));
        CHECK(doc["input"]["D"] == 328);
    }

    TEST_CASE("structure subcommand")
    {
        auto r = run({"--format", "json", "structure", "--p", "3", "--divisors", "3"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["result"]["groups"] == json::array({json::array({3, 9})}));
        auto r2 = run({"--format", "json", "structure", "--p", "3", "--nontrivial-norm", "3"});
        json doc2 = json::parse(r2.out);
        CHECK(doc2["result"]["groups"].size() == 2);
    }

    TEST_CASE("hasse-symbol and is-norm")
    {
        auto r = run({"--format", "json", "hasse-symbol", "-d", "82", "-x", "3", "--place", "41"});
        json doc = json::parse(r.out);
        CHECK(doc["result"]["symbol"] == -1);
        CHECK(doc["certificates"]["associate"] == 249);
        auto r2 = run({"--format", "json", "is-norm", "-d", "82", "-x", "23"});
        CHECK(json::parse(r2.out)["result"]["is_norm"] == true);
        auto r3 = run({"--format", "json", "solve-norm", "-d", "82", "-x", "23"});
        json doc3 = json::parse(r3.out);
        CHECK(doc3["result"]["found"] == true);
        CHECK(doc3["certificates"]["norm"] == 23);
    }

    TEST_CASE("json output round-trips")
    {
        for (auto args : std::vector<std::vector<std::string>>{
                 {"--format", "json", "class-group", "-d", "-47"},
                 {"--format", "json", "ambiguous", "-d", "82"},
                 {"--format", "json", "redei", "-d", "82"},
                 {"--format", "json", "bernoulli", "-d", "-47", "--p", "5"},
                 {"--format", "json", "mwk-check", "-d", "-23", "--p", "3"}}) {
            auto r = run(args);
            REQUIRE(r.code == 0);
            json doc = json::parse(r.out);
            CHECK(json::parse(doc.dump()) == doc);
            CHECK(doc.contains("input"));
            CHECK(doc.contains("result"));
            CHECK(doc.contains("certificates"));
        }
    }

    TEST_CASE("exit codes")
    {
        CHECK(run({"no-such-command"}).code == 64);
        CHECK(run({"genclass", "--bogus-flag"}).code == 64);
        CHECK(run({"class-group", "-m", "12"}).code == 2);    // not squarefree
        CHECK(run({"class-group"}).code == 2);                 // missing field
        CHECK(run({"genclass", "-d", "82", "--primes", "7"}).code == 2);  // inert prime
    }

    TEST_CASE("sweep is deterministic across thread counts")
    {
        auto r1 = run({"sweep", "--min", "2", "--max", "120", "--check", "chevalley-rank",
                       "--threads", "1"});
        auto r4 = run({"sweep", "--min", "2", "--max", "120", "--check", "chevalley-rank",
                       "--threads", "4"});
        REQUIRE(r1.code == 0);
        CHECK(r1.out == r4.out);
        auto rf = run({"--format", "json", "sweep", "--min", "-80", "--max", "80", "--check",
                       "filtration-oracle"});
        REQUIRE(rf.code == 0);
        json doc = json::parse(rf.out);
        CHECK(doc["result"]["failures"] == 0);
    }

    TEST_CASE("radicand and discriminant input paths agree")
    {
        auto r1 = run({"--format", "json", "class-group", "-d", "82"});
        auto r2 = run({"--format", "json", "class-group", "-m", "82"});
        auto r3 = run({"--format", "json", "class-group", "-d", "328"});
        CHECK(json::parse(r1.out) == json::parse(r2.out));
        CHECK(json::parse(r1.out) == json::parse(r3.out));
    }
}
