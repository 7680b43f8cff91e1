// Acceptance suite: runs every verification criterion at full scale and
// prints one pass/fail line per criterion.  Exit code 0 only when all pass.
//
//   acceptance [--quick]   (--quick shrinks horizons for development runs)

#include <cstring>
#include <iostream>

#include "adic/verify.hpp"

int main(int argc, char** argv) {
  adic::VerifyOptions options;
  options.scratch_dir = "acceptance_tmp";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      options.scale_to_horizon(100000);
      options.box_samples = 4000;
    }
  }
  const auto results = adic::run_all_criteria(options, &std::cout);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
