// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--n N] [--seed S] [--threads T] [--expect-fail ID]...
//
// Exits 0 when the set of failing criteria equals the --expect-fail set. A
// criterion listed there that starts passing also fails the run, so the list
// cannot go stale silently.

#include <CLI11.hpp>

#include <iostream>
#include <set>

#include "validation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  plasmon::validation::Options opt;
  std::vector<int> expected;
  app.add_option("--n", opt.n, "Boundary nodes for the plane checks");
  app.add_option("--seed", opt.seed, "Seed for random probes");
  app.add_option("--threads", opt.threads, "Worker threads");
  app.add_option("--expect-fail", expected, "Criterion known to fail");
  CLI11_PARSE(app, argc, argv);

  const auto results = plasmon::validation::run_acceptance(opt);
  std::cout << plasmon::validation::format_table(results);

  const std::set<int> known(expected.begin(), expected.end());
  int unexpected = 0;
  for (const auto& r : results) {
    const bool listed = known.count(r.id) > 0;
    if (!r.passed && listed) {
      std::cout << "known failure " << r.id << ": " << r.values.dump() << '\n';
    } else if (!r.passed) {
      ++unexpected;
    } else if (listed) {
      std::cout << "criterion " << r.id << " passes but is listed as a known failure\n";
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
