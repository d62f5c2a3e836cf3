#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fricke/cli.hpp"
#include "json.hpp"

using namespace fricke;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "fricke_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> csv_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> f;
  std::istringstream in(line);
  for (std::string x; std::getline(in, x, ',');) f.push_back(x);
  return f;
}

}  // namespace

TEST_CASE("command examples") {
  auto bq = run({"bq", "--triple", "3,3,3", "--fuel", "10000"});
  CHECK(bq.code == kExitDefinite);
  CHECK(json::parse(bq.out)["verdict"]["status"] == "Satisfies");

  auto m = run({"mcshane", "--triple", "3,3,3", "--tol", "1e-8"});
  CHECK(m.code == kExitDefinite);
  auto js = json::parse(m.out)["series"];
  CHECK(js["sum"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(js["converged"] == true);

  auto d = run({"identity", "--triple", "1,1,1"});
  CHECK(d.code == kExitInconclusive);
  CHECK(json::parse(d.out)["series"]["diverged"] == true);

  auto f = run({"bq", "--triple", "0,3,3i"});
  CHECK(f.code == kExitDefinite);
  CHECK(json::parse(f.out)["verdict"]["witness"]["slope"] == "0/1");

  auto e = run({"ends", "--triple", "0,3,3i"});
  CHECK(e.code == kExitDefinite);
  CHECK(json::parse(e.out)["ends"]["classification"] == "SingleCurve");

  auto c = run({"classify", "--triple", "0,0,3"});
  CHECK(c.code == kExitDefinite);
  CHECK(json::parse(c.out)["tags"] == json::array({"Real", "Dihedral"}));

  CHECK(run({"selftest"}).code == kExitDefinite);
  CHECK(run({"--help"}).code == kExitDefinite);
  CHECK(run({"sweep", "--help"}).out.find("CSV columns") != std::string::npos);
}

TEST_CASE("malformed inputs exit with the input error code") {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"frobnicate"},
      {"bq"},
      {"bq", "--triple", "3,3"},
      {"bq", "--triple", "3,3,x"},
      {"bq", "--triple", "3,3,3", "--fuel", "0"},
      {"bq", "--triple", "3,3,3", "--fuel", "-4"},
      {"bq", "--triple", "3,3,3", "--fuel", "ten"},
      {"bq", "--triple", "3,3,3", "--bogus"},
      {"extended-bq", "--triple", "nan,3,3"},
      {"identity", "--triple", "3,3,4", "--variant", "sideways"},
      {"identity", "--triple", "3,3,4", "--tol", "-1"},
      {"identity", "--triple", "2,2,2"},
      {"mcshane", "--triple", "3,3,4"},
      {"bundle", "--word", "RLX", "--kappa", "-2"},
      {"bundle", "--word", "RR", "--kappa", "-2"},
      {"bundle", "--matrix", "1,2,3", "--kappa", "-2"},
      {"bundle", "--word", "RL", "--triple", "3,3,4"},
      {"ends", "--triple", "3,3,3", "--bound", "0", "--depth", "5"},
      {"ends", "--triple", "3,3,3", "--fuel", "0"},
      {"sweep", "--triple", "3,3,3", "--task", "paint", "--u-range", "0,1"},
      {"sweep", "--triple", "3,3,3", "--vary", "w", "--u-range", "0,1"},
      {"sweep", "--triple", "3,3,3", "--grid", "0,3", "--u-range", "0,1"},
      {"sweep", "--triple", "3,3,3", "--grid", "2,2", "--u-range", "1"},
      {"sweep", "--triple", "3,3,3", "--grid", "2,2", "--u-range", "1,1", "--v-range", "0,1"},
      {"classify", "--triple", "3,3,3", "--config", "/nonexistent/config.json"},
  };
  for (const auto& args : bad) {
    auto r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    INFO("args: ", joined);
    CHECK(r.code == kExitInputError);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("inconclusive and capped runs have their own codes") {
  auto r = run({"bq", "--triple", "0.5+0.3i,0.4-0.2i,1+0.1i", "--fuel", "3"});
  CHECK(r.code == kExitInconclusive);
  CHECK(json::parse(r.out)["verdict"]["status"] == "Inconclusive");
  auto e = run({"ends", "--triple", "2.05,2,1.95", "--depth", "30"});
  CHECK(e.code == kExitResourceCap);
  CHECK(e.err.find("resource limit") != std::string::npos);
}

TEST_CASE("config files supply defaults and flags win") {
  auto path = scratch("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"triple": "3,3,4", "tol": 1e-9})";
  }
  auto a = run({"identity", "--config", path.string()});
  CHECK(a.code == kExitDefinite);
  CHECK(json::parse(a.out)["character"]["triple"]["z"][0] == 4.0);
  auto b = run({"identity", "--config", path.string(), "--triple", "3,3,5"});
  CHECK(b.code == kExitDefinite);
  CHECK(json::parse(b.out)["character"]["triple"]["z"][0] == 5.0);

  {
    std::ofstream f(path);
    f << R"({"triple": [3, 3, [0, 1]]})";
  }
  auto c = run({"classify", "--config", path.string()});
  CHECK(c.code == kExitDefinite);
  CHECK(json::parse(c.out)["triple"]["z"][1] == 1.0);

  {
    std::ofstream f(path);
    f << R"({"triple": "3,3,3", "colour": "red"})";
  }
  CHECK(run({"classify", "--config", path.string()}).code == kExitInputError);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run({"classify", "--config", path.string()}).code == kExitInputError);
  {
    std::ofstream f(path);
    f << R"({"fuel": 10})";
  }
  // fuel is not a flag of classify
  CHECK(run({"classify", "--triple", "3,3,3", "--config", path.string()}).code == kExitInputError);
}

TEST_CASE("csv output") {
  auto r = run({"classify", "--triple", "0,0,3", "--csv"});
  CHECK(r.code == kExitDefinite);
  auto lines = csv_lines(r.out);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "key,value");
  auto layers = run({"mcshane", "--triple", "3,3,3", "--csv"});
  CHECK(layers.code == kExitDefinite);
  CHECK(csv_lines(layers.out).size() > 5);
}

TEST_CASE("sweep examples") {
  auto a = run({"sweep", "--triple", "3,3,0", "--vary", "z", "--u-range", "2.5,3.5", "--v-range", "2.5,3.5", "--grid",
                "2,2", "--task", "bq"});
  CHECK(a.code == kExitDefinite);
  auto lines = csv_lines(a.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "i,j,x_re,x_im,y_re,y_im,z_re,z_im,status,payload,fuel");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto f = fields(lines[k]);
    REQUIRE(f.size() == 11);
    CHECK(f[8] != "Inconclusive");
    CHECK(f[8].rfind("error", 0) != 0);
  }
  // row-major with j outer
  CHECK(fields(lines[2])[0] == "1");
  CHECK(fields(lines[2])[1] == "0");
  CHECK(fields(lines[3])[0] == "0");
  CHECK(fields(lines[3])[1] == "1");

  auto b = run({"sweep", "--triple", "3,3,4", "--vary", "z", "--u-range", "4,4", "--task", "identity-residual"});
  CHECK(b.code == kExitDefinite);
  auto bl = csv_lines(b.out);
  REQUIRE(bl.size() == 2);
  auto bf = fields(bl[1]);
  CHECK(bf[8] == "converged");
  CHECK(std::stod(bf[9]) < 1e-6);

  auto c = run({"sweep", "--triple", "2,2,0", "--vary", "z", "--u-range", "1,3", "--grid", "3,1", "--task", "bq"});
  auto cl = csv_lines(c.out);
  REQUIRE(cl.size() == 4);
  CHECK(fields(cl[2])[6] == "2");
  CHECK(fields(cl[2])[8] == "Fails/reducible");
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
  std::vector<std::string> args = {"sweep", "--triple", "3,3,0", "--vary", "z", "--u-range", "-3,3", "--v-range",
                                   "-3,3", "--grid", "12,12", "--task", "bq", "--fuel", "2000"};
  auto one = args, many = args;
  one.insert(one.end(), {"--jobs", "1"});
  many.insert(many.end(), {"--jobs", "4"});
  auto a = run(one), b = run(many), c = run(many);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
  CHECK(csv_lines(a.out).size() == 145);

  auto path = scratch("sweep.csv");
  auto d = args;
  d.insert(d.end(), {"--out", path.string()});
  CHECK(run(d).code == a.code);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == a.out);

  auto bad = args;
  bad.insert(bad.end(), {"--out", "/nonexistent/dir/out.csv"});
  CHECK(run(bad).code == kExitInputError);
}

TEST_CASE("per-cell errors do not abort a sweep") {
  // the reducible cell throws inside the identity task and is reported as a status
  auto r = run({"sweep", "--triple", "2,2,0", "--vary", "z", "--u-range", "1,3", "--grid", "3,1", "--task",
                "identity-residual", "--max-terms", "2000"});
  auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(fields(lines[2])[8].rfind("error/", 0) == 0);
}
