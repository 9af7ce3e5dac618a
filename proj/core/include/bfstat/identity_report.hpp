#pragma once

#include <string>

namespace bfstat {

// One checked identity: both sides rendered, plus the verdict. Exact checks
// render integers or polynomials; numeric checks render decimals.
struct IdentityReport {
  std::string name;
  std::string parameters;
  std::string left;
  std::string right;
  bool pass = false;
};

}  // namespace bfstat
