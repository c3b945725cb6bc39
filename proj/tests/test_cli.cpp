#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "invis/cli.hpp"
#include "invis/profile_io.hpp"
#include "invis/scan.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "invis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = invis::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory removed when the test case ends.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("invis_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
  return out;
}

std::string exp_profile(double n0, double K) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                R"({"n0":[%.17g,0],"L_um":6,"terms":[{"type":"exp","z":[0.003,0],"K_per_um":%.17g}]})",
                n0, K);
  return buf;
}

const char* kShapedSinusoid =
    R"({"n0":[2,0],"L_um":6,"terms":[{"type":"sin_pt","nu0":0.003,"m":8,"r":0.8}]})";

}  // namespace

TEST_CASE("vacuum scan has zero reflection and transmission error") {
  TempDir tmp;
  const auto profile = tmp.write("vac.json", R"({"n0":[1,0],"L_um":2})");
  const Run r = run({"scan", "--profile", profile, "--lambda-min", "1000", "--lambda-max", "2000",
                     "--points", "5"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "lambda_nm,k_per_um,Rl2,Rr2,T_minus_1_sq,det_err");
  double prev = 0.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    REQUIRE(f.size() == 6);
    CHECK(f[0] > prev);
    prev = f[0];
    CHECK(f[1] == doctest::Approx(2000.0 * std::numbers::pi / f[0]));
    CHECK(f[2] == 0.0);
    CHECK(f[3] == 0.0);
    CHECK(f[4] == 0.0);
    CHECK(f[5] == 0.0);
  }
  CHECK(fields(ls[1])[0] == 1000.0);
  CHECK(fields(ls[5])[0] == 2000.0);
}

TEST_CASE("scan writes to a file and is reproducible") {
  TempDir tmp;
  const auto profile = tmp.write("sinusoid.json", kShapedSinusoid);
  const auto a = tmp.file("a.csv"), b = tmp.file("b.csv");
  for (const auto& path : {a, b}) {
    const Run r = run({"scan", "--profile", profile, "--lambda-min", "2995", "--lambda-max", "3005",
                       "--points", "7", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(lines(slurp(a)).size() == 8);
}

TEST_CASE("scan with both engines adds suffixed perturbative columns") {
  TempDir tmp;
  const auto profile = tmp.write("sinusoid.json", kShapedSinusoid);
  const Run r = run({"scan", "--profile", profile, "--lambda-min", "2995", "--lambda-max", "3005",
                     "--points", "3", "--engine", "both", "--order", "2"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] ==
        "lambda_nm,k_per_um,Rl2,Rr2,T_minus_1_sq,det_err,Rl2_p2,Rr2_p2,T_minus_1_sq_p2,det_err_p2");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    REQUIRE(f.size() == 10);
    // second-order truncation tracks the exact reflectance closely here
    CHECK(f[6] == doctest::Approx(f[2]).epsilon(0.05));
    CHECK(f[7] == doctest::Approx(f[3]).epsilon(0.05));
  }
}

TEST_CASE("scan usage and profile errors exit with 1") {
  TempDir tmp;
  const auto good = tmp.write("vac.json", R"({"n0":[1,0],"L_um":2})");
  const auto bad = tmp.write("bad.json", R"({"n0":[1,0],"L_um":2,"colour":"red"})");
  CHECK(run({"scan", "--profile", bad, "--lambda-min", "1000", "--lambda-max", "2000", "--points", "5"}).code == 1);
  CHECK(run({"scan", "--profile", tmp.file("missing.json"), "--lambda-min", "1000", "--lambda-max",
             "2000", "--points", "5"}).code == 1);
  CHECK(run({"scan", "--profile", good, "--lambda-min", "2000", "--lambda-max", "1000", "--points", "5"}).code == 1);
  CHECK(run({"scan", "--profile", good, "--lambda-min", "1000", "--lambda-max", "2000", "--points", "1"}).code == 1);
  CHECK(run({"scan", "--profile", good, "--lambda-min", "1000", "--lambda-max", "2000", "--points", "5",
             "--engine", "fast"}).code == 1);
  CHECK(run({"scan", "--profile", good}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  const Run e = run({"scan", "--profile", bad, "--lambda-min", "1000", "--lambda-max", "2000", "--points", "5"});
  CHECK(e.err.find("error") != std::string::npos);
}

TEST_CASE("numerical failure exits with 2") {
  TempDir tmp;
  // zero tolerances make every error estimate infinite
  const auto slab = tmp.write("slab.json", R"({"n0":[3,0],"L_um":5})");
  const Run r = run({"scan", "--profile", slab, "--lambda-min", "500", "--lambda-max", "600",
                     "--points", "2", "--rtol", "0", "--atol", "0"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("check reports verdicts as JSON") {
  TempDir tmp;
  const auto sinusoid = tmp.write("sinusoid.json", kShapedSinusoid);
  const Run a = run({"check", "--profile", sinusoid, "--m0", "8", "--j0", "6", "--k1", "-9.424777960769379e-4"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["verdict"] == "left-invisible");
  CHECK(ja["epsilon"] == -1);
  CHECK(ja["ratio_theorem1"]["re"].get<double>() == doctest::Approx(9.0));
  CHECK(ja["spec"]["lambda_nm"].get<double>() == doctest::Approx(3001.35).epsilon(1e-5));
  CHECK(ja["res_left"]["rel"].get<double>() < 1e-10);

  const auto bare = tmp.write("bare.json", R"({"n0":[2,0],"L_um":6})");
  const Run b = run({"check", "--profile", bare, "--m0", "8", "--j0", "6"});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["verdict"] == "bidirectional");

  const double K = 2.0 * std::numbers::pi * 8 / 6.0;
  const auto expo = tmp.write("exp.json", exp_profile(2.0, K));
  const Run c = run({"check", "--profile", expo, "--m0", "8", "--j0", "6"});
  REQUIRE(c.code == 0);
  const json jc = json::parse(c.out);
  CHECK(jc["verdict"] == "none");
  CHECK(jc["res_transmission"]["rel"].get<double>() > 1e-3);
  CHECK(jc["epsilon"].is_null());
}

TEST_CASE("check with an inconsistent working point exits with 2") {
  TempDir tmp;
  const auto sinusoid = tmp.write("sinusoid.json", kShapedSinusoid);
  CHECK(run({"check", "--profile", sinusoid, "--m0", "8", "--j0", "5"}).code == 2);
  CHECK(run({"check", "--profile", sinusoid, "--m0", "8", "--k1", "1.0"}).code == 2);
  CHECK(run({"check", "--profile", sinusoid}).code == 1);
}

TEST_CASE("two-exponential design echoes the second frequency and amplitude") {
  TempDir tmp;
  const auto out = tmp.file("two.json");
  const Run r = run({"design", "two-exp", "--m0", "51", "--j0", "33", "--L", "11.25", "--K1", "-17.593",
                     "--z1-re", "0.08", "--out", out});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["K2_per_um"].get<double>() == doctest::Approx(22.647).epsilon(1e-3));
  CHECK(j["z2_over_k0sq"][0].get<double>() == doctest::Approx(-0.111478).epsilon(1e-3));
  CHECK(j["z2_over_k0sq"][1].get<double>() == doctest::Approx(0.0170778).epsilon(1e-3));
  CHECK(j["lambda_nm"].get<double>() == doctest::Approx(1500.0).epsilon(1e-12));
  const auto p = invis::load_profile(out);
  CHECK(p.terms().size() == 2);

  const Run chk = run({"check", "--profile", out, "--m0", "51", "--j0", "33"});
  REQUIRE(chk.code == 0);
  CHECK(json::parse(chk.out)["verdict"] == "left-invisible");

  CHECK(run({"design", "two-exp", "--m0", "51", "--j0", "33", "--L", "11.25", "--K1", "20.994",
             "--z1-re", "0.08", "--out", out}).code == 0);
  const double kb = std::sqrt(2.0 * (3.4 * 3.4 + 1.0)) * 4.0 * std::numbers::pi / 3.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", kb);
  CHECK(run({"design", "two-exp", "--m0", "51", "--j0", "33", "--L", "11.25", "--K1", buf,
             "--z1-re", "0.08", "--out", out}).code == 2);
  CHECK(run({"design", "two-exp", "--m0", "51", "--j0", "33", "--L", "11.25", "--K1", "-17.593",
             "--z1-re", "0.08", "--direction", "up", "--out", out}).code == 1);
}

TEST_CASE("bidirectional sinusoid design echoes its frequency") {
  TempDir tmp;
  const auto out = tmp.file("bidir.json");
  const Run r = run({"design", "bidir-sin", "--m0", "51", "--j0", "33", "--L", "11.25", "--z-re",
                     "0.05", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["K1_per_um"].get<double>() == doctest::Approx(20.994).epsilon(5e-5));
  CHECK(fs::exists(out));
}

TEST_CASE("PT partner design echoes the shifted working point") {
  TempDir tmp;
  const double K = 2.0 * std::numbers::pi * 8 / 6.0;
  const auto seed = tmp.write("seed.json", exp_profile(1.0, K));
  const auto out = tmp.file("partner.json");
  const Run r = run({"design", "pt-partner", "--profile", seed, "--m0", "8", "--n0-check", "2", "--out", out});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lambda_nm"].get<double>() == doctest::Approx(3001.35).epsilon(1e-5));
  CHECK(j["j0"] == 6);
  CHECK(j["k1_per_um"].get<double>() == doctest::Approx(-9.424778e-4).epsilon(1e-6));
  const auto p = invis::load_profile(out);
  REQUIRE(p.terms().size() == 1);
  CHECK(std::get<invis::SinusoidPT>(p.terms()[0]).r == doctest::Approx(0.8));

  CHECK(run({"design", "pt-partner", "--profile", seed, "--m0", "8", "--n0-check", "1.7", "--out", out}).code == 2);
}

TEST_CASE("oracle command compares the two engines") {
  TempDir tmp;
  const auto sinusoid = tmp.write("sinusoid.json", kShapedSinusoid);
  const Run r = run({"oracle", "--profile", sinusoid, "--lambda", "3001.35", "--slices", "4000"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["max_entry_difference"].get<double>() < 1e-6);
  CHECK(j["det_err_exact"].get<double>() < 1e-9);
  CHECK(j["slices"] == 4000);
  CHECK(run({"oracle", "--profile", sinusoid, "--lambda", "-1"}).code == 1);
}

TEST_CASE("parallel scan matches the serial reference row for row") {
  const invis::IndexProfile p = invis::parse_profile(kShapedSinusoid);
  invis::ScanOptions o;
  o.lambda_min_nm = 2990.0;
  o.lambda_max_nm = 3010.0;
  o.points = 41;
  o.engine = invis::Engine::both;
  const auto a = invis::scan_serial(p, o);
  const auto b = invis::scan_parallel(p, o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda_nm == b[i].lambda_nm);
    CHECK(a[i].exact->rl2 == b[i].exact->rl2);
    CHECK(a[i].exact->t_minus_1_sq == b[i].exact->t_minus_1_sq);
    CHECK(a[i].perturbative->rr2 == b[i].perturbative->rr2);
  }
  o.lambda_min_nm = 1000.0;
  o.lambda_max_nm = 2000.0;
  o.points = 3;
  CHECK(invis::wavelength_grid(o) == std::vector<double>{1000.0, 1500.0, 2000.0});
}
