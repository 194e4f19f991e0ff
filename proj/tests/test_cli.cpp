#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string t; in >> t;) v.push_back(t);
  return v;
}

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ulab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Result run(const std::string& line) { return run(split(line)); }

std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  for (std::string l; std::getline(in, l);)
    if (l.rfind(key + ": ", 0) == 0) return l.substr(key.size() + 2);
  return "<missing>";
}

// Arguments given as vectors so that spaces and quoting survive.
const std::vector<std::vector<std::string>> kGoldenCommands = {
    {"filtration", "--word", "[x1,x2]", "--kind", "zassenhaus", "--p", "2", "--n", "3"},
    {"filtration", "--word", "x1^3", "--kind", "p-central", "--p", "3", "--n", "2"},
    {"witness", "--word", "x1^3", "--kind", "p-central", "--p", "3", "--n", "3"},
    {"witness", "--word", "[x1, x2]", "--kind", "lower-central", "--n", "3"},
    {"magnus", "--word", "x1*x2", "--cutoff", "3"},
    {"magnus", "--word", "x1^3", "--ring", "Z", "--index", "(1)"},
    {"series", "--group", "u4f2", "--kind", "zassenhaus", "--p", "2"},
    {"homs", "--relators", "[x1,x2]", "--rank", "2", "--target", "u3f2"},
    {"homs", "--relators", "x1^2", "--rank", "1", "--target", "cyclic:4", "--list"},
    {"conjugator", "--target", "power:1", "--p", "3", "--s", "1"},
    {"conjugator", "--target", "inverse", "--p", "2", "--s", "2"},
    {"family", "--family", "mpks:p=3,k=1,s=1"},
    {"separate", "--family", "rigid:p=3,s=1,k=1,m=1,variant=split", "--element", "1,0"},
    {"kernel-verify", "--family", "demushkin:type=3,p=2,s=1", "--n", "3"},
    {"massey", "--group", "cyclic:3", "--alphas", "id,id,id", "--n", "3"},
    {"massey", "--group", "cyclic:2", "--alphas", "id", "--n", "4"},
    {"massey", "--group", "cyclic:9", "--alphas", "2", "--n", "3"},
    {"cross-check", "--group", "abelian:2,2", "--alphas", "1:0", "--n", "3"},
    {"embed", "--group", "mp3", "--p", "3"},
    {"embed", "--case", "1", "--p", "3", "--s", "1", "--k", "1"},
    {"appendix", "verify", "--p", "2", "--N", "9", "--target", "u3f2"},
    {"compare", "--group", "u3f3", "--p", "3"},
    {"--format", "json", "massey", "--group", "cyclic:3", "--alphas", "id", "--n", "3"},
};

std::string golden_transcript() {
  std::string s;
  for (const auto& args : kGoldenCommands) {
    std::string line;
    for (const auto& a : args) line += (line.empty() ? "" : " ") + a;
    const Result r = run(args);
    s += "$ ulab " + line + "\n" + r.out + "[exit " + std::to_string(r.code) + "]\n";
  }
  return s;
}

}  // namespace

TEST_CASE("documented command examples") {
  const Result f = run(std::vector<std::string>{"filtration", "--word", "[x1,x2]", "--kind", "zassenhaus", "--p", "2", "--n", "3"});
  CHECK(f.code == 1);
  CHECK(field(f.out, "verdict") == "not a member");
  CHECK(field(f.out, "witness_index") == "(1,2)");

  const Result m = run("massey --group cyclic:3 --alphas id,id,id --n 3");
  CHECK(m.code == 0);
  CHECK(field(m.out, "verdict") == "DefinedNotVanishing");

  const Result a = run("appendix verify --p 2 --N 9 --target u3f2");
  CHECK(a.code == 0);
  CHECK(field(a.out, "verdict") == "kernel 3-unipotent property FAILS");
  CHECK(field(a.out, "witness") == "[x1,x2]");
  CHECK(field(a.out, "target_1_homs") != "<missing>");
}

TEST_CASE("exit codes") {
  CHECK(run("massey --group cyclic:2 --alphas id --n 4").code == 1);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("filtration --word x1** --kind zassenhaus --p 2 --n 3").code == 2);
  CHECK(run("filtration --word x1 --kind zassenhaus --p 4 --n 3").code == 2);
  CHECK(run("family --family rigid:p=3,s=1,m=1,variant=sideways").code == 2);
  CHECK(run("filtration --word x1 --kind lower-central --n 40").code == 3);
  CHECK(run("witness --word [x1,x2] --kind zassenhaus --p 2 --n 2").code == 1);
  CHECK(run("appendix verify --p 2 --N 2 --target u3f2").code == 1);
  const Result bad = run("series --group nonsense --kind zassenhaus --p 2");
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("config file caps budgets") {
  const std::string path = "ulab_cli_test_config.json";
  {
    std::ofstream(path) << R"({"max_group_order": 10})";
  }
  CHECK(run("--config " + path + " series --group u4f2 --kind zassenhaus --p 2").code == 3);
  {
    std::ofstream(path) << R"({"max_group_ordr": 10})";
  }
  CHECK(run("--config " + path + " series --group u3f2 --kind zassenhaus --p 2").code == 2);
  std::remove(path.c_str());
  CHECK(run("--config /nonexistent/ulab.json family --family trivial").code == 2);
}

TEST_CASE("reports echo a command that reparses to itself") {
  for (const auto& args : kGoldenCommands) {
    const Result first = run(args);
    const std::string echo = field(first.out, "command");
    if (echo == "<missing>") {
      // json reports carry the echo as a field
      const auto j = nlohmann::json::parse(first.out);
      const Result again = run("--format json " + j["command"].get<std::string>());
      CHECK(nlohmann::json::parse(again.out)["command"] == j["command"]);
      CHECK(again.out == first.out);
      continue;
    }
    const Result again = run(echo);
    CHECK_MESSAGE(field(again.out, "command") == echo, echo);
    CHECK(again.out == first.out);
    CHECK(again.code == first.code);
  }
}

TEST_CASE("json reports are versioned and ordered") {
  const Result r = run("--format json conjugator --target power:1 --p 3 --s 1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["schema"] == "ulab-report/1");
  CHECK(j["tool"] == "ulab 0.1.0");
  CHECK(j.begin().key() == "schema");
  CHECK(j["order_A"] == "3");
}

TEST_CASE("timings only on request") {
  CHECK(field(run("family --family trivial").out, "elapsed_ms") == "<missing>");
  CHECK(field(run("--timings family --family trivial").out, "elapsed_ms") != "<missing>");
  CHECK(run("--version").out == "ulab 0.1.0\n");
  CHECK(run("--threads 2 family --family trivial").code == 0);
}

TEST_CASE("golden reports are byte-stable") {
  const std::string transcript = golden_transcript();
  CHECK(golden_transcript() == transcript);
  const std::string path = std::string(ULAB_GOLDEN_DIR) + "/reports.txt";
  if (std::getenv("ULAB_WRITE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << transcript;
    MESSAGE("golden file rewritten");
    return;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == transcript);
}
