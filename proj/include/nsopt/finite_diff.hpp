#pragma once

#include <functional>

#include "nsopt/core.hpp"

namespace nsopt {

enum class FDScheme {
  Forward,  // (F(x + t e_i) - F(x)) / t, n + 1 evaluations
  Central,  // (F(x + t e_i) - F(x - t e_i)) / (2 t), 2 n evaluations
};

struct FDParams {
  // sqrt of double machine epsilon, the usual forward-difference step.
  double step = 1.4901161193847656e-08;
  FDScheme scheme = FDScheme::Forward;
};

// Difference-quotient gradient estimate. For nonsmooth F this lands in an
// approximate subdifferential as long as no probe straddles a kink exactly.
// Throws OracleError if any probe evaluates to a non-finite value.
Vector fd_gradient(const std::function<double(const Vector&)>& value, const Vector& x,
                   const FDParams& params = {});

// Wraps a value-only objective as an oracle whose subgrad member runs
// fd_gradient with the given parameters.
ObjectiveOracle fd_oracle(std::function<double(const Vector&)> value,
                          const FDParams& params = {});

}  // namespace nsopt
