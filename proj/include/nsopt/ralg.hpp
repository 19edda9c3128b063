#pragma once

#include <functional>

#include "nsopt/core.hpp"

namespace nsopt {

// Tuning knobs for the space-dilation subgradient solver. Defaults follow the
// standard ralgb5 setting; h0 is problem-scale dependent and is the one knob
// callers usually override (box diagonal length when a box is available).
struct RAlgParams {
  double h0 = 1.0;       // initial step length
  double alpha = 4.0;    // space dilation coefficient, >= 1 (1 disables dilation)
  double q1 = 1.0;       // step factor applied after each outer iteration
  double q2 = 1.1;       // step growth factor inside a direction
  int nh = 3;            // inner steps between q2 growth events
  double epsx = 1e-8;    // stop when an outer iteration moves x by less than this
  double epsg = 1e-12;   // stop when the subgradient norm drops below this
  int maxitn = 7000;     // outer iteration cap
  int max_inner = 500;   // inner steps per direction before declaring a stall

  // Refine each direction search with a secant step onto the bracketed kink.
  // Dramatically sharpens runs driven by exact subgradients, but should be
  // disabled for finite-difference oracles: their estimates straddle the kink
  // at the refined point and come back garbage.
  bool refine = true;

  // Called once per outer iteration with (itn, f_best, subgradient norm, h).
  std::function<void(int, double, double, double)> trace;
};

// Solver internals exposed for inspection; optional out-parameter of minimize.
struct RAlgState {
  Vector x;
  Vector x_best;
  double f_best = 0.0;
  Matrix B;  // space-transformation matrix, identity at start
  double h = 0.0;
  int itn = 0;
};

// Shor's r-algorithm (ralgb5): subgradient descent in a transformed space that
// is dilated along the difference of successive subgradients. Requires
// oracle.subgrad. Returns the best point seen, not the last iterate.
SolveReport minimize(const ObjectiveOracle& oracle, const Vector& x0,
                     const RAlgParams& params = {}, RAlgState* state_out = nullptr);

}  // namespace nsopt
