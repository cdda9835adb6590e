#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cdc/cli.hpp"
#include "support.hpp"

using namespace cdc;
using namespace cdc::cli;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = CDC_CONFIG_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "cdc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "cdc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<unsigned char> bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_bytes(const fs::path& p, const std::vector<unsigned char>& b) {
  std::ofstream os(p, std::ios::binary);
  os.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

void le(std::vector<unsigned char>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

}  // namespace

TEST_CASE("binary matrix layout is bit exact") {
  PrimeField f(65537);
  Matrix m(2, 3);
  m << f(1), f(2), f(3), f(65536), f(256), f(0);
  Matrix n = f.zeros(2, 3);
  n(1, 2) = f(7);
  const auto path = scratch("layout.bin");
  write_matrices(path.string(), {m, n});

  std::vector<unsigned char> want = {'C', 'D', 'C', 'M', 'A', 'T', 'R', 'X'};
  for (std::uint64_t v : {65537, 2, 3, 2}) le(want, v);
  for (std::uint64_t v : {1, 2, 3, 65536, 256, 0}) le(want, v);
  for (std::uint64_t v : {0, 0, 0, 0, 0, 7}) le(want, v);
  CHECK(bytes_of(path) == want);

  auto back = read_matrices(path.string(), f);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == m);
  CHECK(back[1] == n);
}

TEST_CASE("binary reader rejects damaged files") {
  PrimeField f(65537);
  std::vector<unsigned char> good = {'C', 'D', 'C', 'M', 'A', 'T', 'R', 'X'};
  for (std::uint64_t v : {65537, 1, 1, 1, 5}) le(good, v);
  const auto path = scratch("damaged.bin");
  auto kind_of = [&](const std::vector<unsigned char>& b, const PrimeField& field) {
    write_bytes(path, b);
    try {
      read_matrices(path.string(), field);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error");
    return ErrorKind::Io;
  };
  write_bytes(path, good);
  CHECK(read_matrices(path.string(), f)[0](0, 0) == f(5));

  auto bad = good;
  bad[0] = 'X';
  CHECK(kind_of(bad, f) == ErrorKind::Io);
  bad = good;
  bad.pop_back();
  CHECK(kind_of(bad, f) == ErrorKind::Io);
  bad = good;
  bad.push_back(0);
  CHECK(kind_of(bad, f) == ErrorKind::Io);
  CHECK(kind_of(good, PrimeField(101)) == ErrorKind::InvalidInput);
  bad = good;
  bad[40] = 0x01;
  bad[41] = 0x00;
  bad[42] = 0x01;  // residue 65537
  CHECK(kind_of(bad, f) == ErrorKind::InvalidInput);
  CHECK_THROWS_AS(read_matrices(scratch("missing.bin").string(), f), Error);
}

TEST_CASE("config parsing") {
  auto c = parse_config(json::parse(R"({"scheme":"GCSA","servers":15,"ell":1,"kc":2,
      "partition":{"p":1,"m":2,"n":2},"seeds":{"data":4},"stragglers":{"count":12}})"));
  CHECK(c.scheme == "GCSA");
  CHECK(c.servers == 15);
  CHECK(c.part.m == 2);
  CHECK(c.data_seed == 4);
  CHECK(c.responsive_count == 12);

  auto kind = [](const std::string& text) {
    try {
      parse_config(json::parse(text));
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(kind(R"({"scheme":"CSA","servers":4,"colour":1})").find("colour") != std::string::npos);
  CHECK(kind(R"({"scheme":"CSA","servers":4,"dims":{"nu":2}})").find("dims.nu") != std::string::npos);
  CHECK(kind(R"({"scheme":"CSA"})").find("servers") != std::string::npos);
  CHECK(kind(R"({"scheme":"XYZ","servers":4})").find("XYZ") != std::string::npos);
  CHECK(kind(R"({"scheme":"CSA","servers":"four"})").find("servers") != std::string::npos);
  CHECK(kind(R"({"scheme":"CSA","servers":4,"stragglers":{"count":2,"responsive":[0]}})") !=
        "accepted");
}

TEST_CASE("csa demo reports the closed-form costs") {
  auto r = call({"run", kConfigs + "/csa_demo.json"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["verified"] == true);
  CHECK(doc["threshold"] == 5);
  // S / K_c per input and ((ell+1)K_c - 1) / (ell K_c)
  for (const auto& u : doc["costs"]["upload"]) {
    CHECK(u["num"] == 4);
    CHECK(u["den"] == 1);
  }
  CHECK(doc["costs"]["download"]["num"] == 5);
  CHECK(doc["costs"]["download"]["den"] == 4);
  CHECK(doc["costs"]["used_servers"].size() == 5);
  CHECK(doc["matches_theory"] == true);
}

TEST_CASE("run errors map to exit codes") {
  auto r = call({"run", kConfigs + "/csa_r_exceeds_s.json"});
  CHECK(r.code == kValidation);
  CHECK(r.err.find("R <= S") != std::string::npos);
  CHECK(json::parse(r.err)["category"] == "validation");

  r = call({"run", kConfigs + "/byzantine_over_budget.json"});
  CHECK(r.code == kDecodeFailure);
  CHECK(json::parse(r.err)["category"] == "decode-failure");

  r = call({"run", kConfigs + "/does_not_exist.json"});
  CHECK(r.code == kIo);
  CHECK(json::parse(r.err)["category"] == "io");

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(call({"run", bad.string()}).code == kValidation);
}

TEST_CASE("every sample config succeeds or fails as designed") {
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    const auto name = entry.path().filename().string();
    auto r = call({"run", entry.path().string()});
    CAPTURE(name);
    if (name == "csa_r_exceeds_s.json") {
      CHECK(r.code == kValidation);
    } else if (name == "byzantine_over_budget.json") {
      CHECK(r.code == kDecodeFailure);
    } else {
      REQUIRE(r.code == 0);
      auto doc = json::parse(r.out);
      CHECK(doc["verified"] == true);
      CHECK(doc["matches_theory"] == true);
    }
  }
  auto doc = json::parse(call({"run", kConfigs + "/byzantine_within_budget.json"}).out);
  CHECK(doc["costs"]["error_servers"] == json::array({4}));
}

TEST_CASE("runs are deterministic and thread independent") {
  auto one = json::parse(call({"run", kConfigs + "/gcsa_demo.json", "--threads", "1"}).out);
  auto many = json::parse(call({"run", kConfigs + "/gcsa_demo.json", "--threads", "6"}).out);
  CHECK(one == many);
  auto again = json::parse(call({"run", kConfigs + "/gcsa_demo.json"}).out);
  CHECK(one == again);
  auto other = json::parse(call({"--seed", "99", "run", kConfigs + "/gcsa_demo.json"}).out);
  CHECK(other["digest"] != one["digest"]);
}

TEST_CASE("binary inputs drive a run") {
  PrimeField f(65537);
  std::mt19937_64 rng(8);
  auto a = testing::random_batch(f, 4, 3, 2, rng);
  auto b = testing::random_batch(f, 4, 2, 3, rng);
  write_matrices(scratch("a.bin").string(), a);
  write_matrices(scratch("b.bin").string(), b);
  const auto cfg = scratch("from_files.json");
  std::ofstream(cfg) << R"({"scheme":"CSA","servers":6,"ell":2,"kc":2,
      "dims":{"lambda":3,"kappa":2,"mu":3},"inputs":["a.bin","b.bin"],
      "output":"from_files_result.json"})";
  auto r = call({"run", cfg.string()});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["digest"] == digest(testing::direct_products(a, b)));
  std::ifstream saved(scratch("from_files_result.json"));
  CHECK(json::parse(saved) == doc);

  // vectors for an N-linear run are stored as d x 1 matrices
  MatrixBatch u, v;
  for (int i = 0; i < 2; ++i) {
    u.push_back(f.random(3, 1, rng));
    v.push_back(f.random(3, 1, rng));
  }
  write_matrices(scratch("u.bin").string(), u);
  write_matrices(scratch("v.bin").string(), v);
  std::ofstream(cfg) << R"({"scheme":"N-CSA","servers":4,"ell":1,"kc":2,
      "map":{"kind":"elementwise","n":2,"dim":3},"inputs":["u.bin","v.bin"]})";
  r = call({"run", cfg.string()});
  REQUIRE(r.code == 0);
  VectorBatch want;
  for (int i = 0; i < 2; ++i) want.push_back(u[i].col(0).cwiseProduct(v[i].col(0)));
  CHECK(json::parse(r.out)["digest"] == digest(want));

  // wrong item count
  std::ofstream(cfg) << R"({"scheme":"CSA","servers":6,"ell":1,"kc":2,
      "dims":{"lambda":3,"kappa":2,"mu":3},"inputs":["a.bin","b.bin"]})";
  CHECK(call({"run", cfg.string()}).code == kValidation);
  CHECK(call({"--field-modulus", "101", "run", cfg.string()}).code == kValidation);
}

TEST_CASE("costs subcommand") {
  auto row = [](std::vector<std::string> args) {
    args.insert(args.begin(), "costs");
    auto r = call(args);
    REQUIRE(r.code == 0);
    return r.out.substr(r.out.find('\n') + 1);
  };
  CHECK(row({"--scheme", "CSA", "--ell", "2", "--kc", "2", "--servers", "8"}) == "CSA,8,5,4,1,5,4\n");
  CHECK(row({"--scheme", "GCSA", "--ell", "1", "--kc", "2", "--p", "1", "--m", "2", "--n", "2",
             "--servers", "15"})
            .rfind("GCSA,15,12,", 0) == 0);
  CHECK(row({"--scheme", "N-CSA", "--degree", "3", "--ell", "2", "--kc", "2"}).rfind("N-CSA,6,6,", 0) == 0);
  CHECK(row({"--scheme", "EP", "--p", "2", "--m", "2", "--n", "2"}).rfind("EP,9,9,", 0) == 0);
  auto r = call({"costs", "--scheme", "CSA", "--ell", "2", "--kc", "2", "--servers", "4"});
  CHECK(r.code == kValidation);
  CHECK(call({"costs", "--scheme", "Nope"}).code == kUsage);
}

TEST_CASE("hull and latency subcommands write CSV") {
  const auto out = scratch("hull.csv");
  auto r = call({"--output", out.string(), "hull", "--family", "EP", "--servers", "30", "--r-max", "25"});
  REQUIRE(r.code == 0);
  std::ifstream got(out), want(std::string(CDC_GOLDEN_DIR) + "/hull_ep_30_25.csv");
  std::stringstream g, w;
  g << got.rdbuf();
  w << want.rdbuf();
  CHECK(g.str() == w.str());

  r = call({"hull", "--family", "GCSA", "--servers", "300", "--r-max", "250", "--pmn-bound", "27"});
  CHECK(r.out.rfind("family,U_num,U_den,D_num,D_den,p,m,n,ell,kc\n", 0) == 0);
  CHECK(call({"hull", "--family", "CSA", "--servers", "20", "--r-max", "25"}).code == kValidation);

  r = call({"latency", "--jobs", "100", "--steps", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("K,ep_lower,gcsa_upper,p,m,n,ell,kc\n0.5,", 0) == 0);
}

TEST_CASE("verify subcommand") {
  auto r = call({"verify", "csa-oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = call({"verify", "security-exhaustive"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1/1 checks passed") != std::string::npos);
  CHECK(call({"verify", "no-such-suite"}).code == kUsage);
  CHECK(call({}).code == kUsage);
  CHECK(call({"--help"}).code == 0);
}
