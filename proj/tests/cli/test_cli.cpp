#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "radnorm/errors.hpp"

using nlohmann::json;
namespace cli = radnorm::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RADNORM_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("norm of z") {
    const Outcome o = run({"norm", "--space", "rm", "--p", "2", "--q", "2", "--fn", "z"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.5773502).epsilon(1e-7));
    CHECK(j.contains("error_estimate"));
    CHECK(j["evaluations"].get<int>() > 0);
    CHECK(o.err.empty());
  }

  TEST_CASE("sub-critical kernel at fixed alpha is finite") {
    const Outcome o = run({"norm", "--space", "rm", "--p", "2", "--q", "2", "--fn", "K(0.99, 0.9)"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(std::isfinite(j["value"].get<double>()));
    CHECK(j["status"] == "converged");
  }

  TEST_CASE("pairing of z with itself") {
    const Outcome o = run({"pair", "--f", "z", "--g", "z"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["re"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(j["im"].get<double>()) <= 1e-12);
  }

  TEST_CASE("projection values") {
    const Outcome o = run({"project", "--gamma", "0", "--fn", "z^2", "--at", "0.5,0;0.3,1.5"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    REQUIRE(j["values"].size() == 2);
    CHECK(j["values"][0]["re"].get<double>() == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(run({"project", "--fn", "z", "--at", "1,0"}).code == 2);
    CHECK(run({"project", "--gamma", "-1", "--fn", "z", "--at", "0.5,0"}).code == 2);
  }

  TEST_CASE("invalid input exits with 2 and a JSON error") {
    const Outcome a = run({"norm", "--p", "1", "--q", "2", "--fn", "z"});
    CHECK(a.code == 2);
    CHECK(json::parse(a.err)["error"] == "invalid_exponents");
    CHECK(a.out.empty());

    const Outcome b = run({"norm", "--p", "2", "--q", "2", "--fn", "z^"});
    CHECK(b.code == 2);
    const json e = json::parse(b.err);
    CHECK(e["error"] == "parse_error");
    CHECK(e["offset"] == 2);
    CHECK(e["expected"][0] == "unsigned integer");

    const Outcome c = run({"norm", "--p", "2", "--q", "2", "--fn", "K(1, 2)"});
    CHECK(c.code == 2);
    CHECK(json::parse(c.err)["error"] == "range_error");

    const Outcome d = run({"norm", "--p", "2", "--q", "2"});
    CHECK(d.code == 2);
    CHECK(json::parse(d.err)["error"] == "usage_error");

    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"norm", "--space", "hardy", "--p", "2", "--q", "2", "--fn", "z"}).code == 2);
    CHECK(run({"norm", "--p", "2", "--q", "2", "--fn", "z", "--rel-tol", "0"}).code == 2);
    CHECK(run({"schedule", "--p", "2", "--q", "3", "--m", "3"}).code == 2);
    CHECK(run({"asymptotics", "--p", "2", "--q", "2", "--beta", "0.5"}).code == 2);
    CHECK(run({"asymptotics", "--p", "2", "--q", "2", "--beta", "2", "--alpha-grid", "1e-3:1e-1"}).code == 2);
    CHECK(run({"sweep", "--p", "2", "--q", "2", "--corpus", data("missing.txt")}).code == 2);
  }

  TEST_CASE("schedule overflow exits with 4") {
    const Outcome o = run({"schedule", "--p", "2", "--q", "1.25", "--m", "7"});
    CHECK(o.code == 4);
    CHECK(json::parse(o.err)["error"] == "overflow_error");
    CHECK(run({"schedule", "--p", "2", "--q", "1.25", "--m", "6"}).code == 0);
  }

  TEST_CASE("error kinds map to exit codes") {
    CHECK(cli::exit_code_for(radnorm::DivergenceError("x")) == 3);
    CHECK(cli::exit_code_for(radnorm::OverflowError("x")) == 4);
    CHECK(cli::exit_code_for(radnorm::FitUnreliable("x", 0.5)) == 5);
    CHECK(cli::exit_code_for(radnorm::DomainError("x")) == 2);
    CHECK(cli::exit_code_for(radnorm::ParseError(0, {"number"}, "end of input")) == 2);
  }

  TEST_CASE("help lists the expression grammar for every command") {
    for (const char* cmd : {"norm", "asymptotics", "sweep", "separate", "project", "pair", "schedule"}) {
      const Outcome o = run({cmd, "--help"});
      CHECK(o.code == 0);
      CHECK_MESSAGE(o.out.find("expr := term") != std::string::npos, cmd);
      CHECK_MESSAGE(o.out.find("K(a,b)") != std::string::npos, cmd);
    }
    CHECK(run({"--help"}).out.find("expr := term") != std::string::npos);
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::string> args = {"norm", "--space", "mixed", "--p", "3", "--q", "1.5", "--fn",
                                           "0.5 K(0.95, 2) + z^3"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> sched = {"schedule", "--p", "3", "--q", "1.5", "--m", "4"};
    CHECK(run(sched).out == run(sched).out);
    const std::vector<std::string> sweep = {"sweep", "--p", "4", "--q", "2", "--corpus", data("corpus.txt")};
    CHECK(run(sweep).out == run(sweep).out);
  }

  TEST_CASE("csv output") {
    const Outcome o = run({"norm", "--p", "2", "--q", "2", "--fn", "z", "--format", "csv"});
    REQUIRE(o.code == 0);
    CHECK(o.out.rfind("experiment,sample,x,quantity,value,error\n", 0) == 0);
    const Outcome s = run({"schedule", "--p", "2", "--q", "1.25", "--m", "2", "--format", "csv"});
    CHECK(s.out.find("log10_delta") != std::string::npos);
    CHECK(run({"norm", "--p", "2", "--q", "2", "--fn", "z", "--format", "xml"}).code == 2);
  }

  TEST_CASE("sweep over a corpus file") {
    const Outcome o = run({"sweep", "--p", "4", "--q", "2", "--corpus", data("corpus.txt")});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["experiment"] == "sweep");
    CHECK(j["summary"]["worst_ratio"].get<double>() <= 1.0 + 1e-6);
  }

  TEST_CASE("--output writes the document to a file") {
    const auto path = std::filesystem::temp_directory_path() / "radnorm_cli_output_test.json";
    std::filesystem::remove(path);
    const Outcome o = run({"pair", "--f", "1", "--g", "1", "--output", path.string()});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    const json j = json::parse(in);
    CHECK(j["re"].get<double>() == doctest::Approx(1.0));
    std::filesystem::remove(path);
  }

  TEST_CASE("RADNORM_REL_TOL overrides the default tolerance") {
    const std::vector<std::string> args = {"norm", "--p", "2", "--q", "2", "--fn", "K(0.9, 2)"};
    ::setenv("RADNORM_REL_TOL", "1e-4", 1);
    const Outcome loose = run(args);
    ::setenv("RADNORM_REL_TOL", "not-a-number", 1);
    const Outcome bad = run(args);
    ::unsetenv("RADNORM_REL_TOL");
    const Outcome tight = run(args);
    REQUIRE(loose.code == 0);
    REQUIRE(tight.code == 0);
    CHECK(json::parse(loose.out)["evaluations"].get<long>() < json::parse(tight.out)["evaluations"].get<long>());
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.err)["error"] == "usage_error");
  }

  TEST_CASE("asymptotics and separation commands") {
    const Outcome a = run({"asymptotics", "--p", "2", "--q", "2", "--beta", "2", "--alpha-grid", "1e-3:1e-1:5"});
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["fits"]["loglog"]["slope"].get<double>() == doctest::Approx(-1.0).epsilon(0.05));
    const Outcome s = run({"separate", "--p", "2", "--q", "1.25", "--m", "3"});
    REQUIRE(s.code == 0);
    const json j = json::parse(s.out);
    CHECK(j["parameters"]["schedule"]["m"] == 3);
    CHECK(j.contains("fits"));
  }
}
