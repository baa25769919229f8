#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "genex/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = genex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "genex_cli_test") { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("list") {
  const auto r = cli({"list"});
  CHECK(r.code == 0);
  for (const char* name : {"psi4-extrap", "psi6-extrap", "psi8-extrap"}) CHECK(r.out.find(name) != std::string::npos);
  const auto ls = lines(r.out);
  auto row = [&](const std::string& name) {
    return *std::find_if(ls.begin(), ls.end(), [&](const std::string& l) { return l.rfind(name + " ", 0) == 0; });
  };
  CHECK(row("psi32s").back() == '7');
  CHECK(row("psi6-k5-ps9").back() == '9');
}

TEST_CASE("check") {
  const auto a = cli({"check", "--method", "psi4-extrap"});
  CHECK(a.code == 0);
  CHECK(a.out.find("g51   = -2.500000e-01") != std::string::npos);
  CHECK(lines(a.out).back() == "PASS");

  CHECK(cli({"check", "--method", "psi32s"}).code == 0);
  CHECK(cli({"check", "--method", "no-such-method"}).code == 2);

  TempDir dir;
  const auto bad = dir.path / "bad.txt";
  std::ofstream(bad) << "order 4\n1 -0.4\n0.5 0.5 1.3\n";
  const auto r = cli({"check", "--method", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  // Order claimed 4 but the weights only make it order 2.
  const auto weak = dir.path / "weak.txt";
  std::ofstream(weak) << "order 4\n1 0.5\n0.5 0.5 0.5\n";
  CHECK(cli({"check", "--method", weak.string()}).code == 1);
}

TEST_CASE("run writes drift rows and one error row") {
  const auto r = cli({"run", "--method", "psi4-extrap", "--problem", "kepler", "--tf", "30", "--N", "3000", "--p", "1"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3003);
  CHECK(ls[0] == "method,problem,order,N,h,p,evals_per_proc,evals_total,metric,value");
  CHECK(ls[1].find("invariant_drift@t=0,0") != std::string::npos);
  CHECK(ls.back().find(",phase_error,") != std::string::npos);
  CHECK(r.err.find("phase_error=") != std::string::npos);

  const auto p = cli({"run", "--method", "psi32s", "--problem", "lv", "--tf", "6.28", "--N", "100", "--p", "10",
                      "--workers", "3"});
  CHECK(p.code == 0);
  CHECK(lines(p.out).size() == 1 + 11 + 1);
  CHECK(lines(p.out).back().find(",tail_error,") != std::string::npos);
}

TEST_CASE("identical invocations produce identical files") {
  TempDir dir;
  const auto a = dir.path / "a.csv", b = dir.path / "b.csv";
  for (const auto& f : {a, b}) {
    CHECK(cli({"sweep", "--method", "psi4-extrap,psi32s", "--problem", "lv", "--tf", "6.28", "--N", "32,64",
               "--out", f.string()})
              .code == 0);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(lines(slurp(a)).size() == 5);
}

TEST_CASE("latency") {
  const auto r = cli({"latency", "--method", "psi32s", "--problem", "kepler", "--tf", "30", "--N", "3000", "--p",
                      "1,10,3000"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  std::vector<double> v;
  for (std::size_t i = 1; i < ls.size(); ++i) v.push_back(std::stod(ls[i].substr(ls[i].rfind(',') + 1)));
  CHECK(*std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end()) <= 2.0);
}

TEST_CASE("exit codes") {
  CHECK(cli({"run", "--p", "7", "--N", "3000"}).code == 2);
  CHECK(cli({"run", "--problem", "pendulum"}).code == 2);
  CHECK(cli({"run", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"run", "--method", "psi6-extrap", "--problem", "lv", "--tf", "300", "--N", "10"}).code == 3);
  const auto help = cli({"run", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--workers") != std::string::npos);
}
