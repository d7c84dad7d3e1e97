// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "au/cli/commands.hpp"
#include "au/cli/csv.hpp"
#include "au/cli/report.hpp"
#include "au/detect.hpp"
#include "au/error.hpp"
#include "au/gallery.hpp"

using namespace au;
using namespace au::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string tmp(const std::string& name) { return std::string(AU_TEST_TMPDIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("csv parsing") {
  const Trajectory t = parse_trajectory("t,f\n0,0\n1,1\n");
  REQUIRE(t.channels.size() == 1);
  CHECK(t.names[0] == "f");
  CHECK(t.channels[0].size() == 2);
  CHECK(t.channels[0].value(1) == 1.0);

  const Trajectory crlf = parse_trajectory("t,f,df,tag\r\n0,1,2,int\r\n0.5,3,4,\r\n1,5,6,irr\r\n");
  CHECK(crlf.has_tags);
  CHECK(crlf.channel("df").value(2) == 6.0);
  CHECK(crlf.channels[0].tag(0) == PointTag::integer);
  CHECK(crlf.channels[0].tag(1) == PointTag::none);
  CHECK(crlf.channels[0].tag(2) == PointTag::irrational);
  CHECK_THROWS_AS(crlf.channel("g"), Error);

  auto message = [](const std::string& text) {
    try {
      (void)parse_trajectory(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("t,f\n0,0\n1,1\n1,2\n") == "non-monotone at line 4");
  CHECK(message("t,f\n0,0\n1,nan\n").find("line 3") != std::string::npos);
  CHECK(message("t,f\n0,0\n1,inf\n").find("non-finite") != std::string::npos);
  CHECK(message("t,f\n0,0\n1\n").find("header mismatch") != std::string::npos);
  CHECK(message("x,f\n0,0\n1,1\n").find("line 1") != std::string::npos);
  CHECK(message("t,f,f\n0,0,0\n1,1,1\n").find("duplicate") != std::string::npos);
  CHECK(message("t,f,tag\n0,0,zzz\n1,1,\n").find("unknown tag") != std::string::npos);
  CHECK(message("t,f\n0,0x\n1,1\n").find("malformed") != std::string::npos);
  CHECK(message("").find("missing header") != std::string::npos);
}

TEST_CASE("csv round trip is lossless") {
  const SampledFunction f = sample(make_gallery(GalleryKind::punctured_exp), TailWindow(0.0, 5.0), 1e-3);
  const std::string text = format_trajectory({"f"}, {f}, true);
  const Trajectory back = parse_trajectory(text);
  const SampledFunction& g = back.channels[0];
  REQUIRE(g.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(g.time(i) == f.time(i));
    CHECK(g.value(i) == f.value(i));
    CHECK(g.tag(i) == f.tag(i));
  }
  CHECK(format_trajectory({"f"}, {g}, true) == text);
}

TEST_CASE("double formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.328125) == "0.328125");
  CHECK(format_double(0.1) == "0.10000000000000001");
  for (double x : {1.0 / 3.0, std::exp(-7.3), -1e-300, 123456789.123}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  Json j = {{"a", 0.1}, {"b", NAN}, {"c", {1, 2}}};
  CHECK(dump(j) == "{\n  \"a\": 0.10000000000000001,\n  \"b\": null,\n  \"c\": [\n    1,\n    2\n  ]\n}\n");
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for("Holds") == 0);
  CHECK(exit_code_for("ok") == 0);
  CHECK(exit_code_for("Refuted") == 1);
  CHECK(exit_code_for("Inconclusive") == 2);
}

TEST_CASE("gallery export then analyze") {
  const std::string csv = tmp("cli_sine.csv");
  const Outcome g = run_cli({"gallery", "--name", "sine", "--from", "0", "--to", "6.283",
                             "--step", "0.001", "--out", csv});
  CHECK(g.code == 0);
  CHECK(g.out.find("\"status\": \"ok\"") != std::string::npos);
  const Outcome a = run_cli({"analyze", "--input", csv, "--property", "au", "--eps", "0.1"});
  CHECK(a.code == 0);
  const Json report = Json::parse(a.out);
  CHECK(report["schema_version"] == 1);
  CHECK(report["status"] == "Holds");
  CHECK(report["recheck"] == true);
  CHECK(report["command"]["name"] == "analyze");
}

TEST_CASE("analyze refutes the chirp") {
  const std::string csv = tmp("cli_chirp.csv");
  REQUIRE(run_cli({"gallery", "--name", "sine_square", "--from", "0", "--to", "200",
                   "--step", "0.001", "--out", csv}).code == 0);
  const Outcome a = run_cli({"analyze", "--input", csv, "--property", "au", "--eps", "0.5"});
  CHECK(a.code == 1);
  const Json report = Json::parse(a.out);
  CHECK(report["status"] == "Refuted");
  CHECK(report["verdict"]["witness"]["gap"].get<double>() >= 0.5);
}

TEST_CASE("limit inconclusive exit code") {
  const std::string csv = tmp("cli_log.csv");
  {
    std::ofstream out(csv);
    out << "t,f\n";
    for (int i = 0; i <= 5000; ++i) out << i * 0.01 << "," << std::log1p(i * 0.01) << "\n";
  }
  const Outcome a = run_cli({"analyze", "--input", csv, "--property", "limit", "--eps", "0.5"});
  CHECK(a.code == 2);
}

TEST_CASE("richardson command") {
  const Outcome r = run_cli({"richardson", "--coeffs", "1,1,1,1", "--h", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["elimination"]["final_value"].get<double>() == 0.328125);
  CHECK(j["elimination"]["final_coefficient"].get<double>() == 0.328125);

  const Outcome d = run_cli({"richardson", "--derive", "--name", "identity", "--n", "1",
                             "--t", "2", "--h", "0.5"});
  CHECK(d.code == 0);
  CHECK(Json::parse(d.out)["estimate"]["value"].get<double>() == 1.0);

  const std::string csv = tmp("cli_cube.csv");
  {
    std::ofstream out(csv);
    out << "t,f\n";
    for (int i = 0; i <= 64; ++i) {
      const double t = i / 16.0;
      out << format_double(t) << "," << format_double(t * t) << "\n";
    }
  }
  const Outcome s = run_cli({"richardson", "--derive", "--input", csv, "--n", "2",
                             "--t", "1", "--h", "1"});
  CHECK(s.code == 0);
  CHECK(Json::parse(s.out)["estimate"]["value"].get<double>() == doctest::Approx(2.0));
  CHECK(run_cli({"richardson", "--derive", "--input", csv, "--n", "2", "--t", "1.01",
                 "--h", "1"}).code == 1);
}

TEST_CASE("approx, decompose, croft, theorem commands") {
  const std::string csv = tmp("cli_pexp.csv");
  REQUIRE(run_cli({"gallery", "--name", "punctured_exp", "--from", "0", "--to", "20",
                   "--step", "0.001", "--tag-integers", "--out", csv}).code == 0);
  const Trajectory tr = ingest(csv);
  CHECK(tr.has_tags);
  CHECK(tr.channels[0].value(1000) == 0.0);

  const Outcome ap = run_cli({"approx", "--input", csv, "--eps", "0.3", "--T", "2", "--delta", "0.5"});
  CHECK(ap.code == 0);
  CHECK(Json::parse(ap.out)["tube"]["inside"] == true);
  const Outcome bad = run_cli({"approx", "--input", csv, "--eps", "0.3", "--T", "0", "--delta", "0.5"});
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.out).contains("witness"));

  const Outcome de = run_cli({"decompose", "--input", csv, "--eps", "0.5", "--stages", "5"});
  CHECK(de.code == 0);
  CHECK(Json::parse(de.out)["decomposition"]["stages"].size() == 5);

  const Outcome th = run_cli({"theorem", "--input", csv, "--case", "integral", "--eps", "0.01"});
  CHECK(th.code == 0);
  CHECK(Json::parse(th.out)["theorem"]["consistent"] == true);

  const Outcome cr = run_cli({"croft", "--name", "sine_pi", "--t-values", "1,2", "--n-max",
                              "1000", "--eps", "0.001"});
  CHECK(cr.code == 0);
  const Outcome cr2 = run_cli({"croft", "--name", "abs_sine_pi", "--t-values", "0.5",
                               "--n-max", "1000", "--eps", "0.1"});
  CHECK(cr2.code == 1);

  const std::string dcsv = tmp("cli_damped.csv");
  REQUIRE(run_cli({"gallery", "--name", "damped_sine", "--from", "0", "--to", "30",
                   "--step", "0.001", "--derivatives", "2", "--out", dcsv}).code == 0);
  const Outcome ho = run_cli({"theorem", "--input", dcsv, "--case", "higher-order",
                              "--order", "2", "--eps", "0.1"});
  CHECK(ho.code == 0);
  CHECK(Json::parse(ho.out)["theorem"]["derived_channels"].empty());
  const Outcome mapped = run_cli({"theorem", "--input", dcsv, "--case", "differential",
                                  "--map", "df=df", "--map", "f=f", "--eps", "0.1"});
  CHECK(mapped.code == 0);
}

TEST_CASE("errors surface with exit code 1") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"analyze", "--input", tmp("missing.csv"), "--eps", "0.1"}).code == 1);
  const Outcome e = run_cli({"analyze", "--input", tmp("missing.csv"), "--eps", "0.1"});
  CHECK(e.err.find("cannot open") != std::string::npos);
  CHECK(run_cli({"gallery", "--name", "nothing", "--from", "0", "--to", "1", "--step", "0.1"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("reports are deterministic") {
  const std::string csv = tmp("cli_det.csv");
  REQUIRE(run_cli({"gallery", "--name", "damped_sine", "--from", "0", "--to", "20",
                   "--step", "0.001", "--out", csv}).code == 0);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"analyze", "--input", csv, "--property", "au", "--eps", "0.05"},
        std::vector<std::string>{"theorem", "--input", csv, "--case", "hadamard", "--eps", "0.05"},
        std::vector<std::string>{"approx", "--input", csv, "--eps", "0.2", "--T", "0", "--delta",
                                 "0.1", "--seed", "4"}}) {
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  const std::string rep = tmp("cli_det.json");
  run_cli({"analyze", "--input", csv, "--eps", "0.05", "--out", rep});
  const std::string first = slurp(rep);
  run_cli({"analyze", "--input", csv, "--eps", "0.05", "--out", rep});
  CHECK(slurp(rep) == first);
  CHECK_FALSE(first.empty());
}
