#pragma once

#include <stdexcept>
#include <string>

namespace gada {

// Thrown by HardLabelOracle::verify once the per-image query budget is spent.
// Attack loops treat it as a stop signal; they normally avoid it by checking
// remaining budget up front.
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("query budget exhausted") {}
};

struct ZeroNormFeature : std::runtime_error {
  ZeroNormFeature() : std::runtime_error("feature vector has zero norm") {}
};

// The face mesh projects entirely outside the frame; a UV search space
// cannot be built for this image.
struct NoFaceCoverage : std::runtime_error {
  NoFaceCoverage() : std::runtime_error("face mask is empty") {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gada
