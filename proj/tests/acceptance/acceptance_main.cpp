// Runs the acceptance criteria; one line per criterion, exit 1 on any failure.
#include <brp/suite/acceptance.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  brp::suite::SuiteOptions opt;
  opt.log = &std::cout;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else opt.only.push_back(std::atoi(a.c_str()));
  }
  const auto results = brp::suite::run_acceptance(opt);
  int passed = 0;
  for (const auto& r : results) passed += r.pass;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return brp::suite::all_pass(results) ? 0 : 1;
}
