// One PASS/FAIL line per acceptance criterion. Criteria 1-11 run in-process;
// 1 and 12 are repeated through the command-line binary.

#include "locoloc/paper_check.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

using namespace locoloc;

namespace {

struct Run {
  int status = -1;
  std::string out;
  double seconds = 0;
};

Run cli(const std::string& args) {
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  FILE* p = popen((std::string(LOCOLOC_CLI) + " " + args + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// kk cq for q = 2..50 through the binary, in one process per q
bool cq_through_cli(std::string& why) {
  for (long q = 2; q <= 50; ++q) {
    const std::string qs = std::to_string(q);
    const Run r = cli("kk cq --q " + qs + " --flavor complex");
    if (r.status != 0) {
      why = "exit " + std::to_string(r.status) + " for q=" + qs;
      return false;
    }
    const std::string want = "K_0(C_" + qs + ") = Z/" + qs + "\nK_1(C_" + qs + ") = 0\n";
    if (r.out != want) {
      why = "q=" + std::to_string(q) + ": " + r.out;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> results = run_paper_check();

  int failed = 0;
  for (auto& r : results) {
    std::string extra;
    if (r.id == 1) {
      std::string why;
      if (!cq_through_cli(why)) {
        r.passed = false;
        r.failures.push_back("cli: " + why);
      }
      extra = " (library " + std::to_string(r.seconds) + " s)";
      if (r.seconds >= 1.0) {
        r.passed = false;
        r.failures.push_back("runtime " + std::to_string(r.seconds) + " s >= 1 s");
      }
    }
    if (r.id == 6 && r.seconds >= 60.0) {
      r.passed = false;
      r.failures.push_back("runtime " + std::to_string(r.seconds) + " s >= 60 s");
    }
    std::cout << r.id << " " << (r.passed ? "PASS" : "FAIL") << " " << r.title;
    if (r.trials) std::cout << " [" << r.passed_trials << "/" << r.trials << "]";
    std::cout << extra << "\n";
    for (const auto& f : r.failures) std::cout << "    " << f << "\n";
    if (!r.passed) ++failed;
  }

  const Run pc = cli("paper-check");
  std::size_t rows = 0;
  const std::regex row(R"(^ ?(\d+)  PASS  )");
  std::istringstream lines(pc.out);
  for (std::string line; std::getline(lines, line);)
    if (std::regex_search(line, row)) ++rows;
  const bool ok12 = pc.status == 0 && rows == 11 && pc.seconds < 300.0;
  std::cout << "12 " << (ok12 ? "PASS" : "FAIL") << " paper-check aggregates 1-11 (exit " << pc.status << ", " << rows
            << "/11 rows, " << pc.seconds << " s)\n";
  if (!ok12) {
    ++failed;
    std::cout << pc.out;
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (12 - failed) << "/12 in " << total << " s\n";
  return failed ? 1 : 0;
}
