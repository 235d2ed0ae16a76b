#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ecfuzz/io.hpp"

#ifndef ECFUZZ_CLI_PATH
#error "ECFUZZ_CLI_PATH must point at the command-line binary"
#endif
#ifndef ECFUZZ_DATA_DIR
#error "ECFUZZ_DATA_DIR must point at the data directory"
#endif

namespace {

const std::string kCli = ECFUZZ_CLI_PATH;
const std::string kData = ECFUZZ_DATA_DIR;
const std::string kSmall = kData + "/small23.curve";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  static int seq = 0;
  ++seq;
  std::string out_path = "cli_stdout_" + std::to_string(seq) + ".tmp";
  std::string err_path = "cli_stderr_" + std::to_string(seq) + ".tmp";
  std::string cmd = "\"" + kCli + "\" " + args + " > " + out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  return ecfuzz::parse_csv(in);
}

}  // namespace

TEST_CASE("mul prints the product, costs, table and chain") {
  RunResult r =
      run_cli("mul --curve " + kSmall + " --k 763 --strategy window --psize 3 --chain");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "base: (0x5, 0x5)"));
  CHECK(contains(r.out, "k: 763 (0x2fb)"));
  CHECK(contains(r.out, "strategy: window (psize 3)"));
  CHECK(contains(r.out, "result: (0x14, 0x8)"));
  CHECK(contains(r.out, "doublings: 7"));
  CHECK(contains(r.out, "additions: 3"));
  CHECK(contains(r.out, "table: 4 odd multiples (1P..7P), build cost 1 doubling + 3 additions"));
  CHECK(contains(r.out, "chain: 5P 10P 20P 40P 47P 94P 188P 376P 381P 762P 763P"));
}

TEST_CASE("mul strategies agree on the product and differ on cost") {
  RunResult bin = run_cli("mul --curve " + kSmall + " --k 763 --strategy binary");
  RunResult sgn =
      run_cli("mul --curve " + kSmall + " --k 763 --strategy ones-complement --psize 3");
  RunResult runs = run_cli("mul --curve " + kSmall + " --k 763 --strategy runs");
  CHECK(bin.exit_code == 0);
  CHECK(sgn.exit_code == 0);
  CHECK(runs.exit_code == 0);
  CHECK(contains(bin.out, "result: (0x14, 0x8)"));
  CHECK(contains(sgn.out, "result: (0x14, 0x8)"));
  CHECK(contains(runs.out, "result: (0x14, 0x8)"));
  CHECK(contains(bin.out, "doublings: 9"));
  CHECK(contains(bin.out, "additions: 7"));
  CHECK(contains(sgn.out, "doublings: 8"));
  CHECK(contains(sgn.out, "additions: 1"));
}

TEST_CASE("mul with a zero scalar is the point at infinity") {
  RunResult r = run_cli("mul --curve " + kSmall + " --k 0 --strategy binary");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "result: infinity"));
  CHECK(contains(r.out, "doublings: 0"));
  CHECK(contains(r.out, "additions: 0"));
}

TEST_CASE("window-method cost table") {
  RunResult r = run_cli("table2");
  CHECK(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"psize", "doublings", "additions",
                                            "precomp_tabulated", "precomp_stored", "note"});
  // psize 2: 9 doublings, 4 additions; 3 tabulated, 1 stored
  CHECK(rows[1][0] == "2");
  CHECK(rows[1][1] == "9");
  CHECK(rows[1][2] == "4");
  CHECK(rows[1][3] == "3");
  CHECK(rows[1][4] == "1");
  // psize 7: 3 doublings, 1 addition; 127 tabulated, 63 stored
  CHECK(rows[6][0] == "7");
  CHECK(rows[6][1] == "3");
  CHECK(rows[6][2] == "1");
  CHECK(rows[6][3] == "127");
  CHECK(rows[6][4] == "63");
  // psize 10: the whole scalar is one window
  CHECK(rows[9][1] == "0");
  CHECK(rows[9][2] == "0");
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(contains(rows[i][5], "odd multiples beyond the base"));
}

TEST_CASE("signed-recoding cost table") {
  RunResult r = run_cli("table3");
  CHECK(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 10);

  RunResult r2 = run_cli("table2");
  auto plain = csv_rows(r2.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == plain[i][1]);  // doubling column follows the plain scan
    CHECK(rows[i][2] == plain[i][2]);
  }

  // psize 3: tabulated == stored == 3; the signed scan itself is cheaper
  CHECK(rows[2][0] == "3");
  CHECK(rows[2][3] == "3");
  CHECK(rows[2][4] == "3");
  CHECK(contains(rows[2][5], "signed execution takes 8 doublings, 1 additions"));
  // psize 2 keeps its signed recoding too
  CHECK(contains(rows[1][5], "signed execution takes 10 doublings, 3 additions"));
  // psize 7/9/10: the tabulated precomputation disagrees with the stored table
  CHECK(rows[6][3] == "61");
  CHECK(rows[6][4] == "63");
  CHECK(contains(rows[6][5], "tabulated 61 differs from the 63 odd multiples stored"));
  CHECK(contains(rows[8][5], "tabulated 251 differs from the 255 odd multiples stored"));
  CHECK(contains(rows[9][5], "tabulated 501 differs from the 511 odd multiples stored"));
  // psize 8 agrees on everything: no note at all
  CHECK(rows[7][3] == "127");
  CHECK(rows[7][4] == "127");
  CHECK(rows[7][5] == "");
  // beyond psize 4 the signed recoding folds back into the plain one
  for (std::size_t i = 4; i < rows.size(); ++i)
    CHECK_FALSE(contains(rows[i][5], "signed execution"));
}

TEST_CASE("modmul traces the bit scan") {
  SUBCASE("explicit multiplier") {
    RunResult r = run_cli("modmul 26 24 17 --t 5");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "X=26 Y=24 m=17 t=5"));
    CHECK_FALSE(contains(r.out, "(auto)"));
    CHECK(contains(r.out, "bit 0: 0 -> -1*85 = -85"));
    CHECK(contains(r.out, "bit 1: 0 -> -2*85 = -170"));
    CHECK(contains(r.out, "bit 2: 0 -> -4*85 = -340"));
    CHECK(contains(r.out, "bit 3: 1 -> +8*26 = 208"));
    CHECK(contains(r.out, "bit 4: 1 -> +16*26 = 416"));
    CHECK(contains(r.out, "raw 29, reduction steps 1, result 12"));
  }
  SUBCASE("auto multiplier picks the same t") {
    RunResult r = run_cli("modmul 26 24 17");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "t=5 (auto)"));
    CHECK(contains(r.out, "raw 29, reduction steps 1, result 12"));
  }
  SUBCASE("rejections") {
    CHECK(run_cli("modmul 26 24 17 --t 0").exit_code == 2);
    CHECK(run_cli("modmul 26 24 17 --t -3").exit_code == 2);
    CHECK(run_cli("modmul 26 24 15").exit_code == 2);  // composite modulus
    CHECK(run_cli("modmul -1 24 17").exit_code == 2);  // negative operand
  }
}

TEST_CASE("surface emits one CSV row per grid point") {
  RunResult r = run_cli("surface --resolution 2");
  CHECK(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);  // header + 2x2
  CHECK(rows[0] == std::vector<std::string>{"storage", "precomputing", "crisp"});
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
  CHECK(rows[2][0] == "1");
  CHECK(rows[2][1] == "0");
  CHECK(contains(r.err, "fixed doubling=0.5"));

  RunResult fixed = run_cli("surface --rules dominant9 --fix storage=0.4 --resolution 3");
  CHECK(fixed.exit_code == 0);
  auto frows = csv_rows(fixed.out);
  REQUIRE(frows.size() == 10);
  CHECK(frows[0] == std::vector<std::string>{"precomputing", "doubling", "crisp"});

  CHECK(run_cli("surface --fix sideways=0.4").exit_code == 2);
  CHECK(run_cli("surface --fix storage=1.4").exit_code == 2);
  CHECK(run_cli("surface --resolution 1").exit_code == 2);  // rejected by the option range
}

TEST_CASE("simulate walks the workload and reports each step") {
  std::string wl_path = "cli_workload.tmp";
  {
    std::ofstream wl(wl_path);
    wl << "# five scalars\n763\n511\n2046\n0x2fb\n97\n";
  }
  RunResult r = run_cli("simulate --curve " + kSmall + " --workload " + wl_path +
                        " --rules dominant9 --initial-psize 3");
  std::remove(wl_path.c_str());
  CHECK(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);  // header + 5 steps
  CHECK(rows[0][0] == "step");
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "763");
  CHECK(rows[1][3] == "1");  // first step always builds the table
  CHECK(rows[4][1] == "763");
  CHECK(contains(r.err, "steps: 5"));
  CHECK(contains(r.err, "rebuilds:"));
  CHECK(contains(r.err, "final psize:"));
}

TEST_CASE("key exchange is deterministic for a seed and both sides match") {
  std::string args = "ecdh --curve " + kSmall + " --seed 7 --strategy window --psize 3";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "strategy: window (psize 3)"));
  CHECK(contains(a.out, "alice shared:"));
  CHECK(contains(a.out, "(match)"));

  RunResult other = run_cli("ecdh --curve " + kSmall + " --seed 8");
  CHECK(other.exit_code == 0);
  CHECK(other.out != a.out);
}

TEST_CASE("failures exit with the documented codes") {
  CHECK(run_cli("mul --curve " + kData + "/missing.curve --k 5").exit_code == 2);
  CHECK(run_cli("mul --curve " + kSmall + " --k 5 --strategy quantum").exit_code == 2);
  CHECK(run_cli("mul --curve " + kSmall + " --k not_a_number").exit_code == 2);
  CHECK(run_cli("mul --curve " + kSmall + " --k -4").exit_code == 2);
  CHECK(run_cli("mul --curve " + kSmall + " --k 5 --psize 99").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);            // a subcommand is required
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("mul --help").exit_code == 0);
}
