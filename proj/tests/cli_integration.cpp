// End-to-end tests of the command-line tool: spawns the real binary and
// checks stdout plus the documented exit codes (0 ok, 2 out-of-constraint,
// 3 negative without --dual, 4 bad input, 5 node budget).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(REASONKIT_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe))
    result.out.append(buffer, n);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string data(const std::string& name) {
  return std::string(REASONKIT_DATA_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("explaining a positive instance under the assumed constraint") {
    RunResult r = run("explain --model " + data("eligibility.tree") + " --constraints " +
                      data("eligibility_c.bool") + " --instance LKPA=0011 --mode implies");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: IN_C_POSITIVE"));
    CHECK(contains(r.out, "mode: implies"));
    CHECK(contains(r.out, "reasons (1):"));
    CHECK(contains(r.out, "(!L & A)"));
    CHECK_FALSE(contains(r.out, "(!L & P & A)"));
  }

  TEST_CASE("the same instance with the constraint ignored") {
    RunResult r = run("explain --model " + data("eligibility.tree") + " --constraints " +
                      data("eligibility_c.bool") + " --instance LKPA=0011 --mode ignore");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "(!L & P & A)"));
    CHECK_FALSE(contains(r.out, "(!L & A)\n"));
  }

  TEST_CASE("a formula model gives the same answers as the tree") {
    RunResult tree = run("explain --model " + data("eligibility.tree") + " --constraints " +
                         data("eligibility_c.bool") + " --instance 0111");
    RunResult formula = run("explain --model " + data("eligibility_f.bool") + " --constraints " +
                            data("eligibility_c.bool") + " --instance 0111");
    CHECK(tree.code == 0);
    CHECK(tree.out == formula.out);
    CHECK(contains(tree.out, "(K)"));
    CHECK(contains(tree.out, "(!L & A)"));
  }

  TEST_CASE("out-of-constraint instances exit with code 2") {
    RunResult r = run("explain --model " + data("toy_f.bool") + " --constraints " +
                      data("toy_c.bool") + " --instance 10");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "error:"));

    RunResult benefit = run("explain --model " + data("eligibility.tree") + " --constraints " +
                            data("eligibility_c.bool") + " --instance 0001");
    CHECK(benefit.code == 2);
  }

  TEST_CASE("negative decisions exit with code 3 unless the dual is requested") {
    std::string base = "explain --model " + data("toy_f.bool") + " --constraints " +
                       data("toy_c.bool") + " --instance 01";
    RunResult refused = run(base);
    CHECK(refused.code == 3);

    RunResult dual = run(base + " --dual");
    CHECK(dual.code == 0);
    CHECK(contains(dual.out, "(explaining the complement class)"));
    CHECK(contains(dual.out, "(!X1 & X2)"));

    RunResult benefit = run("explain --model " + data("eligibility.tree") + " --constraints " +
                            data("eligibility_c.bool") + " --instance 1000");
    CHECK(benefit.code == 3);
  }

  TEST_CASE("bad input exits with code 4") {
    CHECK(run("explain --model " + data("no-such-model.bool") + " --instance 1").code == 4);
    CHECK(run("explain --model " + data("toy_f.bool") + " --instance banana").code == 4);
    CHECK(run("explain --model " + data("toy_f.bool") + " --instance 111").code == 4);
    // forcing is an ignore-mode affordance
    CHECK(run("explain --model " + data("toy_f.bool") + " --constraints " + data("toy_c.bool") +
              " --mode implies --force --instance 10")
              .code == 4);
    CHECK(run("explain --model " + data("toy_f.bool")).code == 4);  // no instance
  }

  TEST_CASE("forcing lets ignore mode bypass the constraint") {
    RunResult r = run("explain --model " + data("toy_f.bool") + " --constraints " +
                      data("toy_c.bool") + " --mode ignore --force --dual --instance 10");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: OUT_OF_C"));
    CHECK(contains(r.out, "(X1 & !X2)"));
  }

  TEST_CASE("an exhausted node budget exits with code 5") {
    std::string base = "explain --model " + data("eligibility.tree") + " --constraints " +
                       data("eligibility_c.bool") + " --instance 1111";
    CHECK(run(base + " --node-budget 4").code == 5);
    CHECK(run(base).code == 0);

    // the environment variable is the fallback for the flag
    std::string cmd = "REASONKIT_NODE_BUDGET=4 " + std::string(REASONKIT_CLI_PATH) + " " + base;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::fread(buffer, 1, sizeof buffer, pipe) > 0) {
    }
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 5);
  }

  TEST_CASE("structured output carries the full query description") {
    RunResult r = run("explain --model " + data("eligibility.tree") + " --constraints " +
                          data("eligibility_c.bool") +
                          " --instance LKPA=0011 --format structured",
                      /*merge_stderr=*/false);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["mode"] == "implies");
    CHECK(doc["instance"] == "0011");
    CHECK(doc["status"] == "IN_C_POSITIVE");
    CHECK(doc["dual"] == false);
    CHECK(doc["force"] == false);
    CHECK(doc["filter_policy"] == "none");
    CHECK(doc["constraint_unsat"] == false);
    REQUIRE(doc["reasons"].size() == 1);
    CHECK(doc["reasons"][0]["literals"] == json::array({"!L", "A"}));
    CHECK(doc["reasons"][0]["length"] == 2);
    CHECK(doc["reasons"][0]["status"] == "kept");
    CHECK(doc["reasons"][0]["representative"].is_null());
    CHECK(doc["lengths"] == json::array({2}));
  }

  TEST_CASE("structured errors embed the exit code") {
    RunResult r = run("explain --model " + data("toy_f.bool") + " --constraints " +
                          data("toy_c.bool") + " --instance 10 --format structured",
                      /*merge_stderr=*/false);
    CHECK(r.code == 2);
    json doc = json::parse(r.out);
    CHECK(doc["instance"] == "10");
    CHECK(doc["exit_code"] == 2);
    CHECK(contains(doc["error"].get<std::string>(), "constraint"));
  }

  TEST_CASE("batch files produce one block per instance and report the first failure") {
    RunResult r = run("explain --model " + data("eligibility.tree") + " --constraints " +
                      data("eligibility_c.bool") + " --instances-file " +
                      data("eligibility.instances"));
    CHECK(r.code == 0);
    // five instances, each with its own header
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = r.out.find("instance: ", pos)) != std::string::npos; ++pos)
      ++count;
    CHECK(count == 5);

    RunResult structured = run("explain --model " + data("eligibility.tree") +
                                   " --constraints " + data("eligibility_c.bool") +
                                   " --instances-file " + data("eligibility.instances") +
                                   " --format structured",
                               /*merge_stderr=*/false);
    json docs = json::parse(structured.out);
    REQUIRE(docs.is_array());
    REQUIRE(docs.size() == 5);
    CHECK(docs[0]["instance"] == "0011");
    CHECK(docs[4]["instance"] == "1111");
    CHECK(docs[4]["reasons"][0]["literals"] == json::array({"K"}));
  }

  TEST_CASE("parallel workers produce byte-identical output") {
    std::string base = "explain --model " + data("eligibility.tree") + " --constraints " +
                       data("eligibility_c.bool") + " --instances-file " +
                       data("eligibility.instances") + " --mode ignore";
    RunResult seq = run(base + " --jobs 1");
    RunResult par = run(base + " --jobs 3");
    CHECK(seq.code == 0);
    CHECK(par.code == 0);
    CHECK(seq.out == par.out);
  }

  TEST_CASE("equivalence-class filtering reports the representative") {
    RunResult r = run("explain --model " + data("parity_f.bool") + " --constraints " +
                      data("parity_c.bool") + " --instance 01 --mode ignore --filter ceq");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "filter: ceq"));
    CHECK(contains(r.out, "reasons (1):"));
    CHECK(contains(r.out, "(X2)"));
    CHECK(contains(r.out, "(!X1) merged-into-representative -> (X2)"));

    // without the filter both reasons are reported
    RunResult plain = run("explain --model " + data("parity_f.bool") + " --constraints " +
                          data("parity_c.bool") + " --instance 01 --mode ignore");
    CHECK(contains(plain.out, "reasons (2):"));
  }

  TEST_CASE("subsumption-maximal filtering drops dominated reasons") {
    RunResult r = run("explain --model " + data("onehot_demo.tree") + " --constraints " +
                      data("onehot_demo.groups") + " --instance 10001 --filter csub");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "reasons (1):"));
    CHECK(contains(r.out, "(!E3 & !E4 & M)"));
    CHECK(contains(r.out, "(E1 & M) dropped-subsumed -> (!E3 & !E4 & M)"));

    RunResult plain = run("explain --model " + data("onehot_demo.tree") + " --constraints " +
                          data("onehot_demo.groups") + " --instance 10001");
    CHECK(contains(plain.out, "reasons (2):"));
    CHECK(contains(plain.out, "(E1 & M)"));
  }

  TEST_CASE("a custom variable order does not change the reported reasons") {
    std::string base = "explain --model " + data("eligibility.tree") + " --constraints " +
                       data("eligibility_c.bool") + " --instance 0111";
    RunResult def = run(base);
    RunResult reordered = run(base + " --order A,P,K,L");
    CHECK(reordered.code == 0);
    CHECK(def.out == reordered.out);
    CHECK(run(base + " --order A,P,K").code == 4);
  }

  TEST_CASE("board builders assemble the full constraint stack") {
    RunResult r = run("explain --model " + data("ttt.tree") +
                      " --constraints ttt:cell --constraints ttt:alternation"
                      " --instance 100000011001000000 --mode implies");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: IN_C_POSITIVE"));
    CHECK(contains(r.out, "(F0X & F4X)"));

    // a board where O moved first is rejected by the alternation constraint
    RunResult bad = run("explain --model " + data("ttt.tree") +
                        " --constraints ttt:cell --constraints ttt:alternation"
                        " --instance 010000000000000000");
    CHECK(bad.code == 2);
  }

  TEST_CASE("the diagram dump is valid graphviz") {
    std::string dot_path = "/tmp/reasonkit_cli_test_target.dot";
    std::remove(dot_path.c_str());
    RunResult r = run("explain --model " + data("toy_f.bool") + " --instance 11 --mode ignore" +
                      " --dump-dot " + dot_path);
    CHECK(r.code == 0);
    std::ifstream dot(dot_path);
    REQUIRE(dot.good());
    std::string first_line;
    std::getline(dot, first_line);
    CHECK(contains(first_line, "digraph target"));
    std::remove(dot_path.c_str());
  }

  TEST_CASE("compare contrasts the three modes and prints the chain") {
    RunResult r = run("compare --model " + data("eligibility.tree") + " --constraints " +
                      data("eligibility_c.bool") + " --instance 1111");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mode ignore: 2 reasons"));
    CHECK(contains(r.out, "mode implies: 1 reason"));
    CHECK(contains(r.out, "mode conjoin:"));
    CHECK(contains(r.out, "(L & K)"));
    CHECK(contains(r.out, "(K)"));
    CHECK(contains(r.out, "subsumed by"));
    CHECK_FALSE(contains(r.out, "(unexpected)"));

    RunResult structured = run("compare --model " + data("eligibility.tree") +
                                   " --constraints " + data("eligibility_c.bool") +
                                   " --instance 1111 --format structured",
                               /*merge_stderr=*/false);
    json doc = json::parse(structured.out);
    CHECK(doc["modes"]["implies"]["reasons"][0]["literals"] == json::array({"K"}));
    CHECK(doc["chain"]["ignore_to_implies"].size() == 2);
    for (const json& link : doc["chain"]["ignore_to_implies"])
      CHECK_FALSE(link["subsumed_by"].is_null());
  }

  TEST_CASE("compare rejects infeasible instances with the documented codes") {
    CHECK(run("compare --model " + data("toy_f.bool") + " --constraints " + data("toy_c.bool") +
              " --instance 10")
              .code == 2);
    CHECK(run("compare --model " + data("toy_f.bool") + " --constraints " + data("toy_c.bool") +
              " --instance 01")
              .code == 3);
    CHECK(run("compare --model " + data("toy_f.bool") + " --constraints " + data("toy_c.bool") +
              " --instance 01 --dual")
              .code == 0);
  }

  TEST_CASE("selftest reports the bundled suites and the oracle tally") {
    RunResult r = run("selftest --cases 5 --seed 3 --max-vars 6");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "examples: 9/9 matched"));
    CHECK(contains(r.out, "tables: 5/5 rows matched"));
    CHECK(contains(r.out, "oracle agreement 5/5"));

    RunResult bundled_only = run("selftest --cases 0");
    CHECK(bundled_only.code == 0);
    CHECK(contains(bundled_only.out, "oracle agreement 0/0"));
  }

  TEST_CASE("an unsatisfiable constraint warns and yields the vacuous reason") {
    std::string contradiction = "/tmp/reasonkit_cli_test_unsat.bool";
    {
      std::ofstream out(contradiction);
      out << "X1 & !X1\n";
    }
    RunResult r = run("explain --model " + data("toy_f.bool") + " --constraints " +
                      contradiction + " --instance 01 --mode implies");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "warning:"));
    CHECK(contains(r.out, "reasons (1):"));
    CHECK(contains(r.out, "  true"));
    std::remove(contradiction.c_str());
  }
}
