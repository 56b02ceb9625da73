// Acceptance runner: one pass/fail line per criterion. Criterion 9 is a
// stretch goal that only runs when TINV_STRETCH is set.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "tinv/checks.hpp"

using namespace tinv;

namespace {

struct Criterion {
  int id;
  double limit_seconds;
  std::function<CheckResult()> run;
};

bool report(int id, const CheckResult& r, double limit) {
  bool in_time = limit <= 0 || r.seconds <= limit;
  bool pass = r.ok && in_time;
  std::printf("criterion %d %s  %s: %d checks, %.2f s%s%s\n", id, pass ? "PASS" : "FAIL", r.name.c_str(), r.cases,
              r.seconds, r.note.empty() ? "" : ", ", r.note.c_str());
  if (!in_time) std::printf("    over the %.0f s limit\n", limit);
  for (std::size_t i = 0; i < r.failures.size() && i < 20; ++i) std::printf("    %s\n", r.failures[i].c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main() {
  std::vector<KnotRecord> knots, torus;
  try {
    knots = load_knots(data_dir() + "/knots.tsv");
    torus = load_knots(data_dir() + "/torus.tsv");
  } catch (const std::exception& e) {
    std::printf("cannot load the bundled tables: %s\n", e.what());
    return 2;
  }
  ComplexCache cache;
  std::vector<Criterion> criteria = {
      {1, 1, [] { return local_suite(); }},
      {2, 5, [] { return delooping_suite(); }},
      {3, 600,
       [&] {
         auto r = oracle_suite(knots, cache);
         r.expect(knots.size() >= 20, "fewer than 20 bundled knots");
         return r;
       }},
      {4, 600, [&] { return alternating_suite(knots, cache); }},
      {5, 1800, [&] { return torus_suite(torus, cache); }},
      {6, 0, [&] { return ti_suite(knots, cache); }},
      {7, 0, [&] { return invariance_suite(knots, cache); }},
      {8, 0, [&] { return parity_suite(knots, cache); }},
  };
  bool all = true;
  for (const auto& c : criteria) all = report(c.id, c.run(), c.limit_seconds) && all;

  if (std::getenv("TINV_STRETCH")) {
    auto r = whitehead_suite();
    bool pass = report(9, r, 7200);
    std::printf("criterion 9 is non-blocking%s\n", pass ? "" : "; failure does not affect the exit status");
  } else {
    std::printf("criterion 9 NOT RUN  Whitehead double (stretch, expected-slow; set TINV_STRETCH=1 to run)\n");
  }
  return all ? 0 : 1;
}
