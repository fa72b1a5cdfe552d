#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cag::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream file(path);
  file << content;
  return path;
}

}  // namespace

TEST_CASE("marked-dist matches the documented output") {
  const Result r = run({"marked-dist", "--group1", "cyclic:4", "--group2",
                        "cyclic:6", "--rmax", "8"});
  CHECK(r.status == 0);
  CHECK(r.out == "agreement radius: 3\n");
  const Result same = run({"marked-dist", "--group1", "cyclic:4", "--group2",
                           "cyclic:4", "--rmax", "5"});
  CHECK(same.out == "agreement radius: at least 5\n");
}

TEST_CASE("ca-apply matches the documented output") {
  const Result r = run({"ca-apply", "--rule", "eca:90", "--config", "0,0,0,1",
                        "--period", "4"});
  CHECK(r.status == 0);
  CHECK(r.out == "1,0,1,0\n");

  // Same computation through the finite-group route.
  const Result finite = run({"ca-apply", "--rule", "eca:90", "--config",
                             "0,0,0,1", "--group", "cyclic:4"});
  CHECK(finite.status == 0);
  CHECK(finite.out == "1,0,1,0\n");

  const Result mismatch = run({"ca-apply", "--rule", "eca:90", "--config",
                               "0,0,0,1", "--period", "5"});
  CHECK(mismatch.status == 1);
}

TEST_CASE("surj-1d and inj-1d") {
  const Result surj = run({"surj-1d", "--rule", "eca:0"});
  CHECK(surj.status == 0);
  CHECK(surj.out == "surjective: false\n");
  const Result inj = run({"inj-1d", "--rule", "eca:15"});
  CHECK(inj.status == 0);
  CHECK(inj.out == "injective: true\n");
}

TEST_CASE("hb-dist and fix-window") {
  const Result hb = run({"hb-dist", "--group1", "cyclic:4", "--group2",
                         "cyclic:6", "--alphabet", "2", "--rmax", "4"});
  CHECK(hb.status == 0);
  CHECK(hb.out == "agreement radius: 1\n");

  const Result fw = run({"fix-window", "--group", "cyclic:2", "--alphabet",
                         "2", "--radius", "2"});
  CHECK(fw.status == 0);
  CHECK(fw.out == "coset classes: 2\npatterns: 4\n");
}

TEST_CASE("gromov radius and transfer report") {
  const Result g = run({"gromov-radius", "--rule", "eca:15", "--subshift",
                        "full"});
  CHECK(g.status == 0);
  CHECK(g.out ==
        "memory radius: 1\nembedding radius: 1\ntransfer radius: 2\n");

  const Result t = run({"transfer-check", "--rule", "eca:15", "--subshift",
                        "fix:4", "--max-period", "6"});
  CHECK(t.status == 0);
  CHECK(t.out.find("transfer verdict: injective") != std::string::npos);
}

TEST_CASE("json output is deterministic") {
  const std::vector<std::string> cmd{
      "converge", "--sequence", "cyclic:6,cyclic:24", "--limit", "zd:1",
      "--rule", "eca:15", "--rmax", "6", "--format", "json"};
  const Result a = run(cmd);
  const Result b = run(cmd);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("rule and kernel files round trip through the CLI") {
  const auto composed = run({"ca-compose", "--rule1", "eca:90", "--rule2",
                             "eca:90"});
  CHECK(composed.status == 0);
  const auto rule_path = temp_file("cag_cli_rule.txt", composed.out);
  // The written rule file parses and acts like the square of rule 90.
  const Result applied = run({"ca-apply", "--rule",
                              "file:" + rule_path.string(), "--config",
                              "0,0,0,0,1,0,0,0"});
  CHECK(applied.status == 0);
  CHECK(applied.out == "0,0,1,0,0,0,1,0\n");

  const auto kernel_path = temp_file("cag_cli_kernel.txt",
                                     "prime 2\ndim 1\nA: 1\na: 1\n");
  const Result decide = run({"lin-decide", "--kernel",
                             "file:" + kernel_path.string(), "--group",
                             "cyclic:3"});
  CHECK(decide.status == 0);
  CHECK(decide.out.find("verdict: non-injective and non-surjective") !=
        std::string::npos);

  const Result inverse = run({"lin-inverse", "--kernel",
                              "file:" + kernel_path.string(), "--group",
                              "cyclic:4"});
  CHECK(inverse.status == 1);  // rule 90 kernel is singular over Z/4

  const auto shift_path =
      temp_file("cag_cli_shift.txt", "prime 2\ndim 1\na: 1\n");
  const Result shift_inverse = run({"lin-inverse", "--kernel",
                                    "file:" + shift_path.string(), "--group",
                                    "cyclic:4"});
  CHECK(shift_inverse.status == 0);
  CHECK(shift_inverse.out == "prime 2\ndim 1\nA: 1\n");
}

TEST_CASE("ca-synthesize recovers a rule from its own action") {
  const Result r = run({"ca-synthesize", "--rule", "eca:90", "--period", "8",
                        "--bound", "1"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "rank 1\nalphabet 2\nmemory a A\n"
        "00 -> 0\n01 -> 1\n10 -> 1\n11 -> 0\n");
  // A bound below the true radius is a domain error.
  const Result too_small = run({"ca-synthesize", "--rule", "eca:90",
                                "--period", "8", "--bound", "0"});
  CHECK(too_small.status == 1);
}

TEST_CASE("stable-finite subcommand") {
  // Z/3 group file via shorthand; M = [g], L = [g^2].
  const auto m_path = temp_file("cag_cli_m.txt", "prime 2\nsize 1\n1*1\n");
  const auto l_path = temp_file("cag_cli_l.txt", "prime 2\nsize 1\n1*2\n");
  const Result r = run({"stable-finite", "--group", "cyclic:3", "--m",
                        m_path.string(), "--l", l_path.string(), "--side",
                        "left"});
  CHECK(r.status == 0);
  CHECK(r.out == "two-sided: confirmed\n");

  const Result bad = run({"stable-finite", "--group", "cyclic:3", "--m",
                          l_path.string(), "--l", l_path.string(), "--side",
                          "left"});
  CHECK(bad.status == 1);
}

TEST_CASE("help and missing subcommand") {
  CHECK(run({"--help"}).status == 0);
  CHECK(run({}).status == 2);
}

TEST_CASE("exit codes: parse, domain, resource") {
  CHECK(run({"marked-dist", "--group1", "nonsense", "--group2", "cyclic:2",
             "--rmax", "3"})
            .status == 2);
  CHECK(run({"marked-dist", "--group1"}).status == 2);
  CHECK(run({"marked-dist", "--group1", "free:2", "--group2", "cyclic:2",
             "--rmax", "3"})
            .status == 1);  // rank mismatch is a domain error

  setenv("CAG_RESOURCE_CAP", "50", 1);
  const Result capped = run({"fix-window", "--group", "free:1", "--alphabet",
                             "2", "--radius", "4"});
  unsetenv("CAG_RESOURCE_CAP");
  CHECK(capped.status == 3);
  // Restore the default for later tests in this process.
  const Result restored = run({"fix-window", "--group", "free:1",
                               "--alphabet", "2", "--radius", "4"});
  CHECK(restored.status == 0);
}

TEST_CASE("group files round trip through the CLI") {
  // Write a group file by hand and check the same group answers queries.
  const std::string z4_file = "rank 1\ncyclic\n4\n";
  const auto path = temp_file("cag_cli_group.txt", z4_file);
  const Result r = run({"marked-dist", "--group1", "finite:" + path.string(),
                        "--group2", "cyclic:6", "--rmax", "8"});
  CHECK(r.status == 0);
  CHECK(r.out == "agreement radius: 3\n");
}

TEST_CASE("shipped sample files stay canonical") {
  const std::string data = CAG_DATA_DIR;
  const Result stable = run({"stable-finite", "--group",
                             "finite:" + data + "/s3.txt", "--m",
                             data + "/unit_m.txt", "--l",
                             data + "/unit_l.txt", "--side", "left"});
  CHECK(stable.status == 0);
  CHECK(stable.out == "two-sided: confirmed\n");

  const Result decide = run({"lin-decide", "--kernel",
                             "file:" + data + "/three_term_kernel.txt",
                             "--group", "finite:" + data + "/s3.txt"});
  CHECK(decide.status == 0);
  CHECK(decide.out == "rank: 6/6\nverdict: bijective\n");

  const Result apply = run({"ca-apply", "--rule",
                            "file:" + data + "/rule90.txt", "--config",
                            "0,0,0,1"});
  CHECK(apply.out == "1,0,1,0\n");

  const Result singular = run({"lin-decide", "--kernel",
                               "file:" + data + "/xor_kernel.txt", "--group",
                               "finite:" + data + "/z4.txt"});
  CHECK(singular.out.find("non-injective") != std::string::npos);
}

TEST_CASE("window csv dump re-parses") {
  const auto dump_path =
      std::filesystem::temp_directory_path() / "cag_cli_window.csv";
  const Result r = run({"fix-window", "--group", "cyclic:4", "--alphabet",
                        "2", "--radius", "3", "--dump", dump_path.string()});
  CHECK(r.status == 0);
  std::ifstream in(dump_path);
  std::stringstream content;
  content << in.rdbuf();
  // Header plus 16 patterns.
  CHECK(content.str().find("e,a,A,aa,AA,aaa,AAA") == 0);
  int lines = 0;
  std::string line;
  std::istringstream counter(content.str());
  while (std::getline(counter, line)) {
    ++lines;
  }
  CHECK(lines == 17);
}
