#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(PLANDIV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.output.append(buf, n);
  int rc = pclose(pipe);
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::string rover_args() {
  return "--domain " + support::fixture("rover/domain.pddl").string() +
         " --problem " + support::fixture("rover/problem.pddl").string();
}

std::string depots_args() {
  return "--domain " + support::fixture("depots/domain.pddl").string() +
         " --problem " + support::fixture("depots/pfile1.pddl").string();
}

std::string survey_plans() {
  return " --plans " + support::fixture("rover/survey_a.plan").string() + " " +
         support::fixture("rover/survey_b.plan").string();
}

std::string depot_plans() {
  return " --plans " + support::fixture("depots/reordered.plan").string() +
         " " + support::fixture("depots/truck0.plan").string() + " " +
         support::fixture("depots/truck1.plan").string();
}

/// Temp workspace under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("plandiv_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("cli score: frozen rover matrices as JSON") {
  CliResult r =
      run_cli("score " + rover_args() + survey_plans() + " --metrics flex,sgo");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["schema"] == 1);
  CHECK(j["plans"] == json::array({"survey_a", "survey_b"}));
  REQUIRE(j["metrics"].size() == 2);
  CHECK(j["metrics"]["flex"]["matrix"][0][0] == 1.0);
  CHECK(j["metrics"]["flex"]["matrix"][0][1] == 0.444444);
  CHECK(j["metrics"]["flex"]["matrix"][1][0] == 0.444444);
  CHECK(j["metrics"]["sgo"]["matrix"][0][1] == 0.6);
  CHECK_FALSE(j["metrics"]["flex"].contains("timings_ms"));
}

TEST_CASE("cli score: omitting --metrics computes all six") {
  CliResult r = run_cli("score " + rover_args() + survey_plans());
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  REQUIRE(j["metrics"].size() == 6);
  for (const char* name :
       {"actions", "states", "causal", "uniqueness", "flex", "sgo"})
    CHECK(j["metrics"].contains(name));
  CHECK(j["metrics"]["actions"]["matrix"][0][1] == 1.0);
}

TEST_CASE("cli score: aggregate matrix from --weights") {
  CliResult r = run_cli("score " + rover_args() + survey_plans() +
                        " --metrics actions,sgo --weights actions=1,sgo=3");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  REQUIRE(j["metrics"].size() == 3);
  // (1*1.0 + 3*0.6) / 4 = 0.7 for the survey pair.
  CHECK(j["metrics"]["aggregate"]["matrix"][0][1] == 0.7);
  CHECK(j["metrics"]["aggregate"]["matrix"][0][0] == 1.0);
}

TEST_CASE("cli score: depots uniqueness asymmetry survives to the output") {
  CliResult r = run_cli("score " + depots_args() + depot_plans() +
                        " --metrics uniqueness");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["plans"] == json::array({"reordered", "truck0", "truck1"}));
  auto& m = j["metrics"]["uniqueness"]["matrix"];
  CHECK(m[1][0] == 1.0);  // truck0's actions all occur in reordered
  CHECK(m[0][1] == 0.0);  // reordered has an action truck0 lacks
  CHECK(m[1][2] == 0.0);
  CHECK(m[2][1] == 0.0);
}

TEST_CASE("cli score: output is byte-stable; --timing adds timings") {
  std::string cmd = "score " + rover_args() + survey_plans() +
                    " --metrics actions,causal --format csv";
  CliResult first = run_cli(cmd);
  CliResult second = run_cli(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("timings_ms") == std::string::npos);

  CliResult timed = run_cli(cmd + " --timing");
  REQUIRE(timed.exit_code == 0);
  CHECK(timed.output.find("# timings_ms: actions") != std::string::npos);

  CliResult timed_json =
      run_cli("score " + rover_args() + survey_plans() +
              " --metrics actions --timing");
  json j = json::parse(timed_json.output);
  CHECK(j["metrics"]["actions"].contains("timings_ms"));
  CHECK(j["metrics"]["actions"]["timings_ms"].size() == 2);
}

TEST_CASE("cli score: CSV golden output") {
  CliResult r = run_cli("score " + rover_args() + survey_plans() +
                        " --metrics flex --format csv");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  CHECK(r.output ==
        "# metric: flex\n"
        ",survey_a,survey_b\n"
        "survey_a,1.000000,0.444444\n"
        "survey_b,0.444444,1.000000\n");
}

TEST_CASE("cli score: multiple CSV sections separated by a blank line") {
  CliResult r = run_cli("score " + rover_args() + survey_plans() +
                        " --metrics actions,sgo --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("# metric: actions\n") != std::string::npos);
  CHECK(r.output.find("\n\n# metric: sgo\n") != std::string::npos);
}

TEST_CASE("cli score: --output writes the same bytes to a file") {
  TempDir tmp;
  fs::path out = tmp.path / "result.json";
  std::string base = "score " + rover_args() + survey_plans() +
                     " --metrics sgo";
  CliResult direct = run_cli(base);
  CliResult filed = run_cli(base + " --output " + out.string());
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.output.empty());
  CHECK(support::read_file(out) == direct.output);
}

TEST_CASE("cli score: --threads does not change the bytes") {
  std::string cmd = "score " + depots_args() + depot_plans();
  CliResult serial = run_cli(cmd + " --threads 1");
  CliResult threaded = run_cli(cmd + " --threads 4");
  REQUIRE(serial.exit_code == 0);
  REQUIRE(threaded.exit_code == 0);
  CHECK(serial.output == threaded.output);
}

TEST_CASE("cli select: frozen depots selection") {
  CliResult r = run_cli("select " + depots_args() + depot_plans() +
                        " --metrics sgo --select-k 2 --diversity-mode minimum");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["selection"]["metric"] == "sgo");
  CHECK(j["selection"]["mode"] == "minimum");
  CHECK(j["selection"]["k"] == 2);
  CHECK(j["selection"]["labels"] == json::array({"reordered", "truck0"}));
  CHECK(j["selection"]["diversity_score"] == 0.416667);
  CHECK(j["metrics"].contains("sgo"));
}

TEST_CASE("cli select: csv section and k=1 score placeholder") {
  CliResult r = run_cli("select " + depots_args() + depot_plans() +
                        " --metrics sgo --select-k 2 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("# selection\n") != std::string::npos);
  CHECK(r.output.find("metric,sgo\n") != std::string::npos);
  CHECK(r.output.find("mode,minimum\n") != std::string::npos);
  CHECK(r.output.find("k,2\n") != std::string::npos);
  CHECK(r.output.find("diversity_score,0.416667\n") != std::string::npos);
  CHECK(r.output.find("selected,reordered,truck0\n") != std::string::npos);

  CliResult one = run_cli("select " + depots_args() + depot_plans() +
                          " --metrics sgo --select-k 1 --format csv");
  REQUIRE(one.exit_code == 0);
  CHECK(one.output.find("diversity_score,n/a\n") != std::string::npos);
  CHECK(one.output.find("selected,reordered\n") != std::string::npos);

  CliResult one_json = run_cli("select " + depots_args() + depot_plans() +
                               " --metrics sgo --select-k 1");
  json j = json::parse(one_json.output);
  CHECK(j["selection"]["diversity_score"].is_null());
  CHECK(j["selection"]["labels"] == json::array({"reordered"}));
}

TEST_CASE("cli select: aggregate weights drive the selection") {
  CliResult r = run_cli("select " + depots_args() + depot_plans() +
                        " --weights actions=1,sgo=1 --select-k 2");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["selection"]["metric"] == "aggregate");
  CHECK(j["metrics"].contains("aggregate"));
  CHECK(j["selection"]["labels"].size() == 2);
}

TEST_CASE("cli select: diagnostics exit nonzero") {
  CliResult big = run_cli("select " + depots_args() + depot_plans() +
                          " --metrics sgo --select-k 7");
  CHECK(big.exit_code == 1);
  CHECK(big.output.find("selection size must be between 1 and 3") !=
        std::string::npos);

  CliResult none = run_cli("select " + depots_args() + depot_plans() +
                           " --select-k 2");
  CHECK(none.exit_code == 1);
  CHECK(none.output.find("select needs exactly one metric") !=
        std::string::npos);

  CliResult many = run_cli("select " + depots_args() + depot_plans() +
                           " --metrics actions,sgo --select-k 2");
  CHECK(many.exit_code == 1);
}

TEST_CASE("cli trace: alphabet and traces for the rover plans") {
  CliResult r = run_cli("trace " + rover_args() + " --plans " +
                        support::fixture("rover/survey_a.plan").string() +
                        " " +
                        support::fixture("rover/survey_b.plan").string() +
                        " " + support::fixture("rover/relay.plan").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["plans"] == json::array({"relay", "survey_a", "survey_b"}));
  REQUIRE(j["alphabet"].size() == 3);
  CHECK(j["alphabet"][0]["symbol"] == "A");
  CHECK(j["alphabet"][0]["atom"] == "soil-data-sent");
  CHECK(j["alphabet"][1]["symbol"] == "B");
  CHECK(j["alphabet"][1]["atom"] == "rock-data-sent");
  CHECK(j["traces"]["survey_a"] == "XXBXXXXAXC");
  CHECK(j["traces"]["survey_b"] == "XXBXXXAXCX");
  CHECK(j["traces"]["relay"] == "XXXCBXXXXA");
}

TEST_CASE("cli trace: CSV golden output") {
  CliResult r = run_cli("trace " + rover_args() + " --plans " +
                        support::fixture("rover/survey_a.plan").string() +
                        " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "# alphabet\n"
        "symbol,atom\n"
        "A,soil-data-sent\n"
        "B,rock-data-sent\n"
        "C,image-data-sent\n"
        "\n"
        "# traces\n"
        "plan,trace\n"
        "survey_a,XXBXXXXAXC\n");
}

TEST_CASE("cli trace: empty plan and goals true in the initial state") {
  std::string markers_domain =
      support::fixture("markers/domain.pddl").string();
  CliResult empty =
      run_cli("trace --domain " + markers_domain + " --problem " +
              support::fixture("markers/start_done.pddl").string() +
              " --plans " + support::fixture("markers/empty.plan").string());
  REQUIRE_MESSAGE(empty.exit_code == 0, empty.output);
  json je = json::parse(empty.output);
  CHECK(je["traces"]["empty"] == "");

  CliResult gii =
      run_cli("trace --domain " + markers_domain + " --problem " +
              support::fixture("markers/goal_in_init.pddl").string() +
              " --plans " + support::fixture("markers/add_q.plan").string());
  REQUIRE_MESSAGE(gii.exit_code == 0, gii.output);
  json jg = json::parse(gii.output);
  CHECK(jg["traces"]["add_q"] == "B");
  REQUIRE(jg["alphabet"].size() == 2);
  CHECK(jg["alphabet"][0]["atom"] == "p");
}

TEST_CASE("cli: directory input collects and sorts plan files") {
  TempDir tmp;
  std::string b = support::read_file(support::fixture("rover/survey_b.plan"));
  std::string a = support::read_file(support::fixture("rover/survey_a.plan"));
  tmp.file("zeta.plan", a);
  tmp.file("alpha.plan", b);
  CliResult r = run_cli("score " + rover_args() + " --plans " +
                        tmp.path.string() + " --metrics actions");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  json j = json::parse(r.output);
  CHECK(j["plans"] == json::array({"alpha", "zeta"}));
}

TEST_CASE("cli: duplicate plan labels are rejected") {
  std::string plan = support::fixture("rover/survey_a.plan").string();
  CliResult r = run_cli("score " + rover_args() + " --plans " + plan + " " +
                        plan + " --metrics actions");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("duplicate plan label 'survey_a'") != std::string::npos);
}

TEST_CASE("cli: missing plan file is a clean diagnostic") {
  CliResult r = run_cli("score " + rover_args() +
                        " --plans /no/such/file.plan --metrics actions");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("no such file or directory") != std::string::npos);
}

TEST_CASE("cli: parse errors carry file, line, and column") {
  TempDir tmp;
  fs::path bad = tmp.file("bad.plan", "; header\n(warp-drive)\n");
  CliResult r = run_cli("score " + rover_args() + " --plans " + bad.string() +
                        " --metrics actions");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find(bad.string() + ":2:1: error: unknown action warp-drive") !=
        std::string::npos);
}

TEST_CASE("cli: invalid plans name the label and failing step") {
  TempDir tmp;
  fs::path bad = tmp.file("too_eager.plan", "(take-image)\n");
  CliResult r = run_cli("score " + rover_args() + " --plans " + bad.string() +
                        " " + support::fixture("rover/survey_a.plan").string() +
                        " --metrics sgo");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("plan 'too_eager' is invalid") != std::string::npos);
  CHECK(r.output.find("(step 0)") != std::string::npos);
  CHECK(r.output.find("precondition") != std::string::npos);
}

TEST_CASE("cli: metric list diagnostics") {
  CliResult unknown = run_cli("score " + rover_args() + survey_plans() +
                              " --metrics bogus");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.output.find("unknown metric 'bogus'") != std::string::npos);

  CliResult twice = run_cli("score " + rover_args() + survey_plans() +
                            " --metrics actions,a");
  CHECK(twice.exit_code == 1);
  CHECK(twice.output.find("metric 'actions' listed twice") !=
        std::string::npos);

  CliResult stray = run_cli("score " + rover_args() + survey_plans() +
                            " --metrics actions --weights sgo=1");
  CHECK(stray.exit_code == 1);
  CHECK(stray.output.find("not in --metrics") != std::string::npos);

  CliResult badweight = run_cli("score " + rover_args() + survey_plans() +
                                " --weights actions=sideways");
  CHECK(badweight.exit_code == 1);
  CHECK(badweight.output.find("invalid weight 'sideways'") !=
        std::string::npos);
}

TEST_CASE("cli: unparsable task files fail with their own positions") {
  TempDir tmp;
  fs::path dom = tmp.file("broken.pddl",
                          "(define (domain broken)\n  (:requirements :adl))");
  CliResult r = run_cli("score --domain " + dom.string() + " --problem " +
                        support::fixture("rover/problem.pddl").string() +
                        survey_plans() + " --metrics actions");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find(dom.string() + ":2:18: error: unsupported requirement "
                      ":adl") != std::string::npos);
}
