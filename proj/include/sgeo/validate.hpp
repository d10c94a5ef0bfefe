#pragma once

#include <string>
#include <vector>

namespace sgeo {

// Cross-module property suite behind the `validate` subcommand. Every family
// is deterministic (fixed internal seeds). The mutation knob exists for
// checking that the suite actually bites: flipping the shift direction must
// fail the stencil-reconstruction families.
struct ValidateOptions {
  bool flip_adder = false;
};

struct ValidateFamily {
  std::string name;
  bool pass = false;
  std::string detail;  // measured worst tolerance or failure description
};

struct ValidateReport {
  std::vector<ValidateFamily> families;
  bool all_pass() const {
    for (const ValidateFamily& f : families) {
      if (!f.pass) return false;
    }
    return true;
  }
};

ValidateReport run_validate(const ValidateOptions& opts = {});

}  // namespace sgeo
