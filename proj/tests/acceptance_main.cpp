#include <cstdio>
#include <cstring>
#include <fstream>

#include "bamm/acceptance.hpp"

int main(int argc, char** argv) {
  bamm::AcceptanceOptions opt;
  const char* report = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) opt.suite = bamm::Suite::full;
    else if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) report = argv[++i];
  }
  bamm::AcceptanceSuite suite(opt);
  const auto results = suite.run_all();
  bool ok = true;
  for (const auto& c : results) {
    std::printf("%s criterion %d: %s\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str());
    ok = ok && c.pass();
  }
  if (report) std::ofstream(report) << suite.report(results).dump(2) << "\n";
  return ok ? 0 : 1;
}
