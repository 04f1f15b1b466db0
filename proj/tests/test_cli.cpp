#include "tancascade/cli.hpp"
#include "tancascade/render.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <vector>

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tancascade");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = tancascade::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cascade subcommand") {
  auto r = run({"cascade", "--depth", "2", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["betas"][0]["t"].get<double>() == doctest::Approx(2.94).epsilon(0.01 / 2.94));
  CHECK(run({"cascade", "--depth", "2", "--json"}).out == r.out);

  auto csv = run({"cascade", "--depth", "2", "--csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,alpha,beta", 0) == 0);

  CHECK(run({"cascade", "--depth", "2", "--json", "--csv"}).code == 1);
}

TEST_CASE("cycle subcommand") {
  auto r = run({"cycle", "--t", "0.5"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["period_T"] == 1);
  CHECK(j["points"][0].get<double>() == 0.0);
  CHECK(run({"cycle", "--t", "3.0"}).out.find("\"period_T\": 8") != std::string::npos);
  CHECK(run({"cycle", "--t", "abc"}).code == 1);
  CHECK(run({"cycle", "--t", "4.0"}).code == 1);
}

TEST_CASE("renorm subcommand") {
  auto yes = nlohmann::json::parse(run({"renorm", "--t", "3.0", "--level", "1"}).out);
  CHECK(yes["renormalizable"] == true);
  auto no = run({"renorm", "--t", "2.0", "--level", "1"});
  CHECK(no.code == 0);
  CHECK(nlohmann::json::parse(no.out)["renormalizable"] == false);
}

TEST_CASE("transversal subcommand") {
  auto r = run({"transversal", "--n", "1"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["positivity"] == true);
  auto seeded = run({"--seed-bracket", "2.84,2.99", "transversal", "--n", "1"});
  CHECK(seeded.code == 0);
}

TEST_CASE("attractor subcommand") {
  auto r = run({"attractor", "--depth", "4", "--t-star", "3.0931214414"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["ok"] == true);
  auto bad = run({"attractor", "--depth", "3", "--t-star", "3.0"});
  CHECK(bad.code == 2);
}

TEST_CASE("render subcommands write PPM files") {
  const std::string plane = "cli_plane_test.ppm", diag = "cli_diagram_test.ppm";
  CHECK(run({"plane", "--out", plane, "--width", "32", "--height", "16"}).code == 0);
  auto r = tancascade::read_ppm(plane);
  CHECK(r.width == 32);
  CHECK(r.height == 16);
  CHECK(run({"diagram", "--t-min", "0.1", "--t-max", "3.1", "--out", diag, "--width", "40", "--height", "30"}).code ==
        0);
  CHECK(tancascade::read_ppm(diag).width == 40);
  std::remove(plane.c_str());
  std::remove(diag.c_str());
  CHECK(run({"plane", "--region", "1,2,3", "--out", plane}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"cascade"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
