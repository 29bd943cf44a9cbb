// End-to-end checks of the installed command-line interface: spawns the real
// binary, captures stdout, and verifies exit codes and output schemas.
// Usage: cli_exec_tests <path-to-cli>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

int failures = 0;

struct Result {
  int code;
  std::string out;
};

Result run_cli(const std::string& command) {
  Result r{-1, {}};
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
    r.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

void check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_exec_tests <path-to-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  {
    const Result r = run_cli(cli + " derive");
    check(r.code == 0, "derive exits 0");
    check(r.out.find("0.3535533906") != std::string::npos,
          "derive prints the optimal knot");
    check(r.out.find("oracle gap") != std::string::npos,
          "derive prints the oracle gap");
  }
  {
    const Result r = run_cli(cli + " integrate --expr 'exp(t)' --a 0 --b 1 --n 8");
    check(r.code == 0, "integrate exits 0 on a smooth integrand");
    check(r.out.find("estimate:") != std::string::npos,
          "integrate prints an estimate");
    check(r.out.find("corrected:") != std::string::npos,
          "integrate prints the corrected estimate");
  }
  {
    const Result r = run_cli(cli + " integrate --expr '2*+3'");
    check(r.code == 2, "expression syntax error exits 2");
  }
  {
    const Result r = run_cli(cli + " integrate --expr 'log(t)' --a -1 --b 1");
    check(r.code == 3, "endpoint domain error exits 3");
  }
  {
    const Result r = run_cli(cli + " integrate --expr 'sqrt(t)'");
    check(r.code == 4, "no applicable bound exits 4");
  }
  {
    const Result r =
        run_cli(cli + " integrate --expr 'sqrt(t)' --gamma1 0.5 --format csv");
    check(r.code == 0, "supplied derivative bound rescues sqrt");
    check(r.out.find("bound_T1p_lower,") != std::string::npos,
          "only the lower-secant bound is emitted");
    check(r.out.find("bound_T1p_range,") == std::string::npos,
          "no range bound without an upper bound of f'");
  }
  {
    const Result r = run_cli(cli +
                             " study --expr 'exp(t)' --n 1,2,4,8,16,32 "
                             "--format csv --reference 1.718281828459045");
    check(r.code == 0, "study exits 0");
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    check(header ==
              "n,h,estimate,corrected,abs_error,abs_corrected_error,"
              "bound_T4ab,bound_T1p_range,bound_T2p_sigma,bound_T2p_omega,"
              "bound_T3p_range,bound_T4p_sigma,slope_error,slope_corrected",
          "study CSV header is byte-stable");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    check(rows == 6, "study emits one row per panel count");
  }
  {
    const std::string path = "/tmp/optiquad_study_test.csv";
    std::remove(path.c_str());
    const Result r = run_cli(cli + " study --expr 't' --n 1,2 --format csv "
                                   "--output " + path);
    check(r.code == 0, "study writes a file");
    std::ifstream file(path);
    std::string header;
    std::getline(file, header);
    check(header.rfind("n,h,estimate", 0) == 0, "output file has the header");
    std::remove(path.c_str());
  }
  {
    const Result r = run_cli(cli + " compare --expr 'exp(t)' --n 1");
    check(r.code == 0, "compare exits 0");
    check(r.out.find("optimal") != std::string::npos &&
              r.out.find("simpson") != std::string::npos,
          "compare lists both rules");
  }
  {
    const Result r = run_cli("OPTIQUAD_GRID=2001 " + cli +
                             " integrate --expr 't^2' --format csv");
    check(r.code == 0, "OPTIQUAD_GRID override is accepted");
  }
  {
    const Result r = run_cli(cli + " --help");
    check(r.code == 0, "--help exits 0");
  }
  {
    const Result r = run_cli(cli + " integrate");
    check(r.code == 2, "missing required --expr exits 2");
  }

  if (failures == 0) std::printf("all cli checks passed\n");
  return failures == 0 ? 0 : 1;
}
