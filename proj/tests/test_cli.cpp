#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clb/cli.hpp"
#include "clb/relation.hpp"

using namespace clb;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("clb_test_" + name);
  std::ofstream f(path, std::ios::binary);
  f << contents;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kOmega = "(\\x.x x)(\\x.x x)";

}  // namespace

TEST_CASE("relation file parsing") {
  CoupledRelation r = parse_relation_file(
      "# a comment\n"
      "[R1]\n"
      "\\x.x -- \\y.y\n"
      "\n"
      "[R2]\n"
      "\\x.x -- \\y.y\n"
      "(\\x.x x)(\\x.x x) -- (\\x.x x)(\\x.x x)\n");
  CHECK(r.r1.size() == 1);
  CHECK(r.r2.size() == 2);
  CHECK(r.is_coupled());

  // without sections everything goes to R2
  CoupledRelation d = parse_relation_file("\\x.x -- \\x.x\n");
  CHECK(d.r1.empty());
  CHECK(d.r2.size() == 1);
}

TEST_CASE("eval and trace") {
  RunResult r = run({"eval", "(\\x.x)(\\y.y)", "--fuel", "50"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("converged") != std::string::npos);

  r = run({"eval", kOmega, "--fuel", "50"});
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("fuel exhausted") != std::string::npos);

  r = run({"trace", "(\\x.x)((\\y.y)(\\z.z))", "--strategy", "cbv",
           "--fuel", "50"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("(\\x.x) (\\z.z)") != std::string::npos);
}

TEST_CASE("equiv exit codes") {
  RunResult r = run({"equiv", "\\x.x", kOmega, "--ctx-bound", "2",
                     "--fuel", "50"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("distinguished") != std::string::npos);

  r = run({"equiv", "\\x.x", "\\y.y", "--ctx-bound", "3", "--fuel", "50"});
  CHECK(r.exit_code == 0);

  r = run({"equiv", "\\x.x", kOmega, "--ev-only", "--ctx-bound", "2",
           "--fuel", "50"});
  CHECK(r.exit_code == 1);
}

TEST_CASE("check-clb on relation files") {
  std::string good = write_temp("good.rel",
                                "(\\x.x x)(\\x.x x) -- (\\x.x x)(\\x.x x)\n");
  RunResult r = run({"check-clb", good, "--fuel", "50",
                     "--closure-bound", "3"});
  CHECK(r.exit_code == 0);

  std::string bad = write_temp("bad.rel", "\\x.x -- (\\x.x x)(\\x.x x)\n");
  r = run({"check-clb", bad, "--fuel", "50", "--closure-bound", "3"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("verification fuel") != std::string::npos);
}

TEST_CASE("check-clb flags non-coupled relations") {
  std::string rel = write_temp(
      "noncoupled.rel",
      "[R1]\n\\x.x -- (\\x.x x)(\\x.x x)\n"
      "[R2]\n(\\x.x x)(\\x.x x) -- (\\x.x x)(\\x.x x)\n");
  RunResult r = run({"check-clb", rel, "--fuel", "50",
                     "--closure-bound", "3"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("coupledness") != std::string::npos);
  // the progression clauses themselves hold: only coupledness is refuted
  CHECK(r.out.find("\"coupled\": false") != std::string::npos);
}

TEST_CASE("check-ab and check-lb") {
  std::string rel = write_temp("omega.rel",
                               "(\\x.x x)(\\x.x x) -- (\\x.x x)(\\x.x x)\n");
  RunResult r = run({"check-ab", rel, "--fuel", "50",
                     "--closure-bound", "3"});
  CHECK(r.exit_code == 0);

  r = run({"check-lb", rel, "--fuel", "50", "--closure-bound", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("agree") != std::string::npos);
}

TEST_CASE("check-upto: eta-expansion holds up to environment with ctx.red") {
  std::string rel = write_temp("eta.rel", "\\x.(\\y.y) x -- \\x.x\n");
  RunResult plain = run({"check-clb", rel, "--strategy", "cbv",
                         "--fuel", "50", "--closure-bound", "3"});
  CHECK(plain.exit_code == 1);
  CHECK(plain.out.find("cbv-abs-pairing") != std::string::npos);

  RunResult upto = run({"check-upto", rel, "--strategy", "cbv",
                        "--technique", "ctx.red",
                        "--variant", "up-to-environment",
                        "--fuel", "50", "--closure-bound", "3"});
  CHECK(upto.exit_code == 0);
}

TEST_CASE("check-upto rejects unknown variants and techniques") {
  std::string rel = write_temp("any.rel", "\\x.x -- \\x.x\n");
  CHECK(run({"check-upto", rel, "--variant", "bogus"}).exit_code == 3);
  CHECK(run({"check-upto", rel, "--technique", "bogus"}).exit_code == 3);
}

TEST_CASE("usage and parse errors exit 3") {
  CHECK(run({}).exit_code == 3);
  CHECK(run({"no-such-verb"}).exit_code == 3);
  CHECK(run({"eval", "\\x."}).exit_code == 3);
  CHECK(run({"check-clb", "/nonexistent/path.rel"}).exit_code == 3);
  CHECK(run({"eval", "\\x.x", "--strategy", "lazy"}).exit_code == 3);
}

TEST_CASE("gen-corpus is reproducible and size-bounded") {
  RunResult a = run({"gen-corpus", "--count", "10", "--max-size", "7",
                     "--seed", "42"});
  RunResult b = run({"gen-corpus", "--count", "10", "--max-size", "7",
                     "--seed", "42"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  int lines = 0;
  std::istringstream ss(a.out);
  std::string line;
  while (std::getline(ss, line)) {
    ++lines;
    Term t = parse_term(line);
    CHECK(t.is_closed());
    CHECK(t.size() <= 7);
  }
  CHECK(lines == 10);

  RunResult c = run({"gen-corpus", "--count", "10", "--max-size", "7",
                     "--seed", "43"});
  CHECK(c.out != a.out);
}

TEST_CASE("reports are byte-identical across runs") {
  auto p1 = std::filesystem::temp_directory_path() / "clb_test_rep1.json";
  auto p2 = std::filesystem::temp_directory_path() / "clb_test_rep2.json";
  std::vector<std::string> args = {"equiv", "\\x.x", kOmega,
                                   "--ctx-bound", "3", "--fuel", "50"};
  auto with_output = [&](const std::string& path) {
    auto a = args;
    a.push_back("-o");
    a.push_back(path);
    return run(a);
  };
  RunResult r1 = with_output(p1.string());
  RunResult r2 = with_output(p2.string());
  CHECK(r1.exit_code == r2.exit_code);
  std::string j1 = slurp(p1.string()), j2 = slurp(p2.string());
  CHECK(j1 == j2);
  CHECK(j1.find("\"schema_version\": 1") != std::string::npos);
  CHECK(j1.find("\"verb\": \"equiv\"") != std::string::npos);
}

TEST_CASE("validate-axioms passes on a small sample") {
  RunResult r = run({"validate-axioms", "--count", "3", "--fuel", "50",
                     "--closure-bound", "3", "--seed", "1"});
  CHECK_MESSAGE(r.exit_code == 0, (r.out + r.err));
  CHECK(r.out.find("PASS extensive(pev)") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
