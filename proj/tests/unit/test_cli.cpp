#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "trustrev/scenario.hpp"

namespace {

const std::string kScenarios{TRUSTREV_SCENARIO_DIR};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "trustrev");
  std::ostringstream out;
  std::ostringstream err;
  const int code = trustrev::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("revise with a partition") {
  const auto r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick & diam", "--order", "dalal",
                      "--partition", kScenarios + "/pd.part", "--formula", "sick & !diam"});
  CHECK(r.code == 0);
  CHECK(r.out == "result: {sick,diam}\ndnf: sick & diam\n");
}

TEST_CASE("revise without trust is AGM") {
  const auto r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick & diam", "--order", "dalal",
                      "--formula", "sick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dnf: sick & diam\n") != std::string::npos);
}

TEST_CASE("revise with a metric, structured") {
  const auto r = run({"revise", "--signature", "ear skin", "--beliefs", "skin & !ear", "--order", "dalal",
                      "--metric", kScenarios + "/d_D.metric", "--formula", "ear & !skin", "--format",
                      "structured"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"mechanism\":\"metric\",\"threshold\":0,\"result_states\":[\"{ear}\"],\"result_dnf\":\"ear & !skin\"}\n");
}

TEST_CASE("revise errors") {
  auto r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick & diam", "--order", "dalal",
                "--formula", "false"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unsatisfiable input") != std::string::npos);
  r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick & diam", "--order", "sideways",
           "--formula", "sick"});
  CHECK(r.code == 1);
  r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick &", "--order", "dalal", "--formula", "sick"});
  CHECK(r.code == 2);
  CHECK(r.err.find("SyntaxError") != std::string::npos);
  r = run({"revise", "--signature", "sick diam"});
  CHECK(r.code == 1);
  r = run({"revise", "--signature", "sick diam", "--beliefs", "sick", "--order", "dalal", "--formula", "sick",
           "--partition", "/nonexistent/file.part"});
  CHECK(r.code == 2);
}

TEST_CASE("revise with an explicit order file") {
  const auto ranks = write_temp("trustrev_cli_ranks.txt", "{diam} 0\n{sick} 1\n{} 2\n{sick,diam} 3\n");
  const auto r = run({"revise", "--signature", "sick diam", "--beliefs", "!sick & diam", "--order",
                      "explicit:" + ranks.string(), "--formula", "sick"});
  CHECK(r.code == 0);
  CHECK(r.out == "result: {sick}\ndnf: sick & !diam\n");
  std::filesystem::remove(ranks);
}

TEST_CASE("expand") {
  auto r = run({"expand", "--partition", kScenarios + "/pd.part", "--formula", "sick"});
  CHECK(r.code == 0);
  CHECK(r.out == "expansion: {sick,diam} {sick}\ndnf: sick & diam | sick & !diam\n");
  r = run({"expand", "--partition", kScenarios + "/pj.part", "--formula", "!diam"});
  CHECK(r.out.rfind("expansion: {sick} {}\n", 0) == 0);
  const auto trivial = write_temp("trustrev_cli_trivial.part", "{sick,diam} {sick} {diam} {}\n");
  r = run({"expand", "--partition", trivial.string(), "--signature", "sick diam", "--formula", "sick & diam"});
  CHECK(r.out.rfind("expansion: {sick,diam} {diam} {sick} {}\n", 0) == 0);
  std::filesystem::remove(trivial);
}

TEST_CASE("check partition and metric files") {
  auto r = run({"check", "partition", kScenarios + "/pd.part"});
  CHECK(r.code == 0);
  CHECK(r.out == "ok, cells=2\n{sick,diam} {sick} | {diam} {}\n");
  r = run({"check", "metric", kScenarios + "/d_D.metric", "--threshold", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "ok, min_nontrivial_threshold=0\n{ear,skin} {ear} | {skin} {}\n");
  r = run({"check", "metric", kScenarios + "/d_S.metric"});
  CHECK(r.out == "ok, min_nontrivial_threshold=0\n");

  const auto bad = write_temp("trustrev_cli_bad.metric",
                              "signature ear skin\n{ear,skin} {ear} 0\n{ear,skin} {skin} 5\n{ear,skin} {} 2\n"
                              "{ear} {skin} 0\n{ear} {} 2\n{skin} {} 2\n");
  r = run({"check", "metric", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("triangle") != std::string::npos);
  CHECK(r.err.find("{ear,skin}") != std::string::npos);

  const auto overlapping = write_temp("trustrev_cli_bad.part", "signature a\n{a} | {a} {}\n");
  r = run({"check", "partition", overlapping.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::filesystem::remove(bad);
  std::filesystem::remove(overlapping);

  r = run({"check", "metric", kScenarios + "/d_D.metric", "--metric-cap", "10"});
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("scenario run") {
  auto r = run({"scenario", "run", kScenarios + "/doctor_jeweler.scn"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[11] batch A: D: sick ; J: !diam | partition | result: {sick} | dnf: sick & !diam\n") !=
        std::string::npos);
  const auto again = run({"scenario", "run", kScenarios + "/doctor_jeweler.scn"});
  CHECK(again.out == r.out);

  r = run({"scenario", "run", kScenarios + "/two_doctors.scn"});
  CHECK(r.out.find("| metric m=1 | result: {} | dnf: !ear & !skin") != std::string::npos);

  const auto out_path = std::filesystem::temp_directory_path() / "trustrev_cli_trace.jsonl";
  r = run({"scenario", "run", kScenarios + "/two_doctors.scn", "--format", "structured", "--trace",
           out_path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(trustrev::parse_structured_trace(buf.str()).records.size() == 5);
  std::filesystem::remove(out_path);
}

TEST_CASE("scenario run error handling") {
  const auto malformed = write_temp("trustrev_cli_malformed.scn", "signature a\nagent A belief: a order: dalal\nbogus\n");
  auto r = run({"scenario", "run", malformed.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  const auto failing = write_temp("trustrev_cli_failing.scn",
                                  "signature a\nagent A belief: a order: dalal\nagent B\n"
                                  "trust A B partition: {a} | {}\nreport B A: false\n");
  r = run({"scenario", "run", failing.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("error: ") != std::string::npos);
  r = run({"scenario", "run", failing.string(), "--strict-events"});
  CHECK(r.code == 2);
  std::filesystem::remove(malformed);
  std::filesystem::remove(failing);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
