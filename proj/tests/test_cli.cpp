#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "facet/io.hpp"
#include "fixtures.hpp"

using namespace facet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("facet_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string write_instance(const TempDir& dir, const StandardFormLP& lp,
                           const std::string& name) {
  NativeInstanceDocument doc;
  doc.lp = lp;
  const std::string path = dir.file(name);
  write_text(path, write_native(doc));
  return path;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli_dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("enumerate prints the basis table") {
  TempDir dir;
  const std::string path =
      write_instance(dir, fixtures::no_slater_2x5(), "golden.json");
  const CliRun r = run({"enumerate", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("feasible bases: 6") != std::string::npos);
  CHECK(r.out.find("all degenerate: yes") != std::string::npos);
  CHECK(r.out.find("basis {2, 3}") != std::string::npos);  // 1-based display

  // Byte-stable for fixed input.
  CHECK(run({"enumerate", path}).out == r.out);
}

TEST_CASE("analyze reports the strict-feasibility verdict") {
  TempDir dir;
  const std::string yes =
      write_instance(dir, fixtures::one_nondegenerate_2x5(), "yes.json");
  const std::string no =
      write_instance(dir, fixtures::no_slater_2x5(), "no.json");

  const CliRun ry = run({"analyze", yes});
  CHECK(ry.code == 0);
  CHECK(ry.out.find("strictly feasible: yes") != std::string::npos);

  const CliRun rn = run({"analyze", no});
  CHECK(rn.code == 0);
  CHECK(rn.out.find("strictly feasible: no") != std::string::npos);
  CHECK(rn.out.find("exposing support (1-based): {1, 3, 4}") !=
        std::string::npos);
}

TEST_CASE("reduce summarizes the two-step reduction") {
  TempDir dir;
  const std::string path =
      write_instance(dir, fixtures::no_slater_2x5(), "golden.json");
  const std::string out_path = dir.file("reduced.json");
  const CliRun r = run({"reduce", path, "--out", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.find("exposing support (1-based): {1, 3, 4}") !=
        std::string::npos);
  CHECK(r.out.find("kept columns (1-based): {2, 5}") != std::string::npos);
  CHECK(r.out.find("reduced size: 1 x 2, rank 1") != std::string::npos);
  CHECK(r.out.find("slater verified: yes") != std::string::npos);

  const NativeInstanceDocument reduced =
      read_native([&] {
        std::ifstream in(out_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
      }());
  CHECK(reduced.lp.rows() == 1);
  CHECK(reduced.lp.cols() == 2);
}

TEST_CASE("generate then analyze round trips through files") {
  TempDir dir;
  const std::string path = dir.file("gen.json");
  const CliRun g = run({"generate", "--kind", "primal-no-slater", "--m", "3",
                        "--n", "8", "--r", "4", "--seed", "5", "--out", path});
  CHECK(g.code == 0);
  CHECK(fs::exists(path));

  const CliRun a = run({"analyze", path});
  CHECK(a.code == 0);
  CHECK(a.out.find("strictly feasible: no") != std::string::npos);
}

TEST_CASE("solve subcommand runs both methods") {
  TempDir dir;
  const std::string path =
      write_instance(dir, fixtures::one_nondegenerate_2x5(), "lp.json");

  const CliRun ipm = run({"solve", path, "--method", "ipm"});
  CHECK(ipm.code == 0);
  CHECK(ipm.out.find("converged: yes") != std::string::npos);
  CHECK(ipm.out.find("objective: 0.333333") != std::string::npos);

  const CliRun sx = run({"solve", path, "--method", "simplex", "--rule",
                         "dantzig", "--variant", "primal"});
  CHECK(sx.code == 0);
  CHECK(sx.out.find("status: optimal") != std::string::npos);
  CHECK(sx.out.find("objective: 0.333333") != std::string::npos);
}

TEST_CASE("experiment subcommand writes csv and honors exit codes") {
  TempDir dir;
  const std::string cfg = dir.file("cfg.json");
  write_text(cfg,
             "{\"protocol\": \"theorems\", \"m\": 4, \"n\": 9, "
             "\"r_range\": [1, 8], \"seeds\": 6}");
  const std::string csv = dir.file("rows.csv");
  const CliRun r = run({"experiment", "--config", cfg, "--out", csv});
  CHECK(r.code == 0);
  REQUIRE(fs::exists(csv));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == csv_header());
}

TEST_CASE("cli maps failures to exit codes") {
  CHECK(run({"bogus"}).code == 1);              // usage
  CHECK(run({"analyze"}).code == 1);            // missing argument
  CHECK(run({"analyze", "/nonexistent"}).code == 2);
  TempDir dir;
  const std::string bad = dir.file("bad.json");
  write_text(bad, "{\"schema_version\": 99}");
  CHECK(run({"analyze", bad}).code == 2);
}
