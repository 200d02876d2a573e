#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "rauzy/digitseq.hpp"
#include "rauzy/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run rz(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rauzy::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("rauzy_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate rational") {
  TempDir d;
  const auto r = rz({"generate", "--kind", "rational", "--value", "1/3", "--base", "10", "--n", "10", "--output", d / "r.txt"});
  CHECK(r.code == 0);
  CHECK(slurp(d / "r.txt") == "base=10\n3333333333\n");
  const auto meta = json::parse(slurp(d / "r.txt.meta.json"));
  CHECK(meta["schema_version"] == 1);
  CHECK(meta["command"] == "generate");
  CHECK(meta["params"]["value"] == "1/3");
}

TEST_CASE("random kinds need a seed and are reproducible") {
  TempDir d;
  CHECK(rz({"generate", "--kind", "uniform", "--n", "100", "--output", d / "u.txt"}).code == 64);
  for (const auto* kind : {"uniform", "bernoulli", "interleave"}) {
    std::vector<std::string> args{"generate", "--kind", kind, "--n", "5000", "--seed", "5"};
    if (std::string(kind) == "bernoulli") args.insert(args.end(), {"--p", "0.75,0.25"});
    auto a = args, b = args;
    a.insert(a.end(), {"--output", d / "a.txt"});
    b.insert(b.end(), {"--output", d / "b.txt"});
    REQUIRE(rz(a).code == 0);
    REQUIRE(rz(b).code == 0);
    CHECK(slurp(d / "a.txt") == slurp(d / "b.txt"));
  }
}

TEST_CASE("generate markov, champernowne and block-concat") {
  TempDir d;
  {
    std::ofstream f(d / "spec.json");
    f << R"({"base": 2, "order": 1, "rho": [0.5, 0.5], "P": [[0.9, 0.1], [0.1, 0.9]]})";
  }
  CHECK(rz({"generate", "--kind", "markov", "--spec", d / "spec.json", "--n", "1000", "--seed", "1", "--output", d / "m.txt"}).code == 0);
  CHECK(rauzy::read_digits(d / "m.txt").size() == 1000);
  CHECK(rz({"generate", "--kind", "champernowne", "--base", "2", "--n", "8", "--output", d / "c.txt"}).code == 0);
  CHECK(slurp(d / "c.txt") == "base=2\n11011100\n");
  CHECK(rz({"generate", "--kind", "block-concat", "--s", "0.1", "--j-max", "4", "--one", "2,3", "--seed", "9", "--output", d / "bc.txt"}).code == 0);
  CHECK(rauzy::read_digits(d / "bc.txt").size() == 1700);
  const auto meta = json::parse(slurp(d / "bc.txt.meta.json"));
  CHECK(meta["report"]["m"] == json::array({1, 2, 2, 4}));
  CHECK(rz({"generate", "--kind", "block-concat", "--s", "0.1", "--one", "9,9", "--seed", "9", "--output", d / "x.txt"}).code == 64);
  CHECK(rz({"generate", "--kind", "nope", "--output", d / "x.txt"}).code == 64);
}

TEST_CASE("analyze classifications") {
  TempDir d;
  {
    std::ofstream f(d / "zero.txt");
    f << "base=2\n" << std::string(5000, '0') << "\n";
  }
  auto r = rz({"analyze", "--input", d / "zero.txt"});
  CHECK(r.code == 0);
  CHECK(r.out == "PreservingLike\n");
  CHECK(fs::exists(d / "zero.txt.csv"));
  const auto prof = json::parse(slurp(d / "zero.txt.json"));
  CHECK(prof["schema_version"] == 1);
  CHECK(prof["upe"] == 0.0);

  REQUIRE(rz({"generate", "--kind", "bernoulli", "--p", "0.75,0.25", "--n", "400000", "--seed", "2", "--output", d / "b.txt"}).code == 0);
  r = rz({"analyze", "--input", d / "b.txt", "--ell-max", "3", "--out-prefix", d / "bp"});
  CHECK(r.out.rfind("Intermediate [0.2", 0) == 0);
  CHECK(slurp(d / "bp.csv").rfind("ell,N,mismatches,scored,beta\n", 0) == 0);

  REQUIRE(rz({"generate", "--kind", "uniform", "--n", "300000", "--seed", "2", "--output", d / "u.txt"}).code == 0);
  r = rz({"analyze", "--input", d / "u.txt", "--ell-max", "2", "--tol", "0.02"});
  CHECK(r.out == "NormalLike\n");
}

TEST_CASE("analyze is independent of the thread count") {
  TempDir d;
  REQUIRE(rz({"generate", "--kind", "uniform", "--base", "3", "--n", "200000", "--seed", "4", "--output", d / "u.txt"}).code == 0);
  REQUIRE(rz({"analyze", "--input", d / "u.txt", "--threads", "1", "--out-prefix", d / "t1"}).code == 0);
  REQUIRE(rz({"analyze", "--input", d / "u.txt", "--threads", "7", "--out-prefix", d / "t7"}).code == 0);
  CHECK(slurp(d / "t1.csv") == slurp(d / "t7.csv"));
  CHECK(slurp(d / "t1.json") == slurp(d / "t7.json"));
}

TEST_CASE("exit codes") {
  TempDir d;
  {
    std::ofstream f(d / "bad.txt");
    f << "base=2\n01x\n";
  }
  CHECK(rz({"analyze", "--input", d / "bad.txt"}).code == 2);
  CHECK(rz({"analyze", "--input", d / "missing.txt"}).code == 2);
  CHECK(rz({"analyze"}).code == 64);
  CHECK(rz({}).code == 64);
  CHECK(rz({"frobnicate"}).code == 64);
  CHECK(rz({"--help"}).code == 0);
  CHECK(rz({"oracle", "--base", "2", "--ell", "5", "--seed", "1"}).code == 64);
  CHECK(rz({"oracle", "--base", "2", "--ell", "2", "--trials", "20", "--seed", "1"}).code == 0);
  CHECK(rz({"oracle", "--base", "3", "--ell", "1", "--trials", "20", "--seed", "1"}).code == 0);
  CHECK(rz({"oracle", "--base", "2", "--ell", "1"}).code == 64);
  {
    std::ofstream f(d / "short.txt");
    f << "base=2\n0101\n";
  }
  CHECK(rz({"analyze", "--input", d / "short.txt", "--ell-max", "8"}).code == 64);
  CHECK(rz({"analyze", "--input", d / "short.txt", "--ell-max", "1", "--base", "3"}).code == 2);
}

TEST_CASE("bounds output") {
  TempDir d;
  REQUIRE(rz({"bounds", "--base", "2", "--grid", "4", "--output", d / "bd", "--plot"}).code == 0);
  const auto csv = slurp(d / "bd.csv");
  CHECK(csv.rfind("s,lower,upper,A1,A2,A4,L\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find("0.500000000000,1.000000000000,1.000000000000") != std::string::npos);
  CHECK(fs::exists(d / "bd.svg"));
  const auto j = json::parse(slurp(d / "bd.json"));
  CHECK(j["schema_version"] == 1);
}

TEST_CASE("measure and codec round trip through the CLI") {
  TempDir d;
  auto r = rz({"measure", "bernoulli-opt", "--base", "2", "--s", "0.25", "--log-base", "2"});
  REQUIRE(r.code == 0);
  const auto m = json::parse(r.out);
  CHECK(m["noise"] == 0.25);
  CHECK(std::abs(m["entropy"].get<double>() - 0.8112781244591328) < 1e-12);

  REQUIRE(rz({"generate", "--kind", "rauzy-codec", "--k", "5", "--blocks", "20", "--seed", "3", "--output", d / "v.txt"}).code == 0);
  const auto meta = json::parse(slurp(d / "v.txt.meta.json"));
  CHECK(meta["report"]["max_block_errors"].get<unsigned>() <= 2);
  CHECK(meta["report"]["params"]["ell"] == 1601);
  r = rz({"codec-verify", "--input", d / "v.txt", "--k", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  {
    std::ofstream f(d / "spec.json");
    f << R"({"base": 2, "order": 1, "rho": [0.5, 0.5], "P": [[0.75, 0.25], [0.25, 0.75]]})";
  }
  r = rz({"measure", "spec", "--spec", d / "spec.json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["noise"] == 0.25);
  {
    std::ofstream f(d / "bad.json");
    f << R"({"base": 2, "order": 1, "rho": [0.9, 0.1], "P": [[0.75, 0.25], [0.25, 0.75]]})";
  }
  CHECK(rz({"measure", "spec", "--spec", d / "bad.json"}).code == 64);
}

TEST_CASE("serialization helpers") {
  CHECK(rauzy::format_fixed(0.25) == "0.250000000000");
  const auto spec = rauzy::uniform_spec(3, 1);
  const auto back = rauzy::markov_spec_from_json(rauzy::to_json(spec));
  CHECK(back.P == spec.P);
  CHECK(back.rho == spec.rho);
  CHECK_THROWS_AS(rauzy::markov_spec_from_json(json{{"base", 2}}), rauzy::ParseError);
}
