#include "nsopt/ralg.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace nsopt {

namespace {

void check_ralg_params(const RAlgParams& p) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(p.h0)) throw std::invalid_argument("RAlgParams: h0 must be positive");
  if (!(p.alpha >= 1.0) || !std::isfinite(p.alpha)) {
    throw std::invalid_argument("RAlgParams: alpha must be >= 1");
  }
  if (!positive(p.q1)) throw std::invalid_argument("RAlgParams: q1 must be positive");
  if (!(p.q2 >= 1.0) || !std::isfinite(p.q2)) {
    throw std::invalid_argument("RAlgParams: q2 must be >= 1");
  }
  if (p.nh < 1) throw std::invalid_argument("RAlgParams: nh must be >= 1");
  if (!positive(p.epsx)) throw std::invalid_argument("RAlgParams: epsx must be positive");
  if (!positive(p.epsg)) throw std::invalid_argument("RAlgParams: epsg must be positive");
  if (p.maxitn < 1) throw std::invalid_argument("RAlgParams: maxitn must be >= 1");
  if (p.max_inner < 1) throw std::invalid_argument("RAlgParams: max_inner must be >= 1");
}

struct Evaluation {
  double f;
  Vector g;
};

}  // namespace

SolveReport minimize(const ObjectiveOracle& oracle, const Vector& x0,
                     const RAlgParams& params, RAlgState* state_out) {
  check_ralg_params(params);
  if (!oracle.value) throw std::invalid_argument("minimize: oracle.value is empty");
  if (!oracle.has_subgrad()) throw std::invalid_argument("minimize: oracle.subgrad is empty");
  if (!all_finite(x0)) throw std::invalid_argument("minimize: x0 is not finite");

  const auto t_start = std::chrono::steady_clock::now();
  const Eigen::Index n = x0.size();

  SolveReport report;
  long oracle_calls = 0;
  // Failure inside the oracle ends the solve with whatever best point exists.
  auto evaluate = [&](const Vector& x) -> Evaluation {
    ++oracle_calls;
    Evaluation e{oracle.value(x), oracle.subgrad(x)};
    if (!std::isfinite(e.f) || !all_finite(e.g) || e.g.size() != n) {
      throw OracleError("minimize: oracle produced a non-finite or mismatched result");
    }
    return e;
  };

  RAlgState state;
  state.x = x0;
  state.B = Matrix::Identity(n, n);
  state.h = params.h0;
  state.itn = 0;

  Termination termination = Termination::MaxIterations;
  std::string message;
  int last_improvement_itn = 0;
  int relaunches_left = 5;
  double f_at_last_relaunch = std::numeric_limits<double>::infinity();

  try {
    Evaluation cur = evaluate(state.x);
    state.x_best = state.x;
    state.f_best = cur.f;

    while (true) {
      const double gnorm = cur.g.norm();
      if (gnorm <= params.epsg) {
        termination = Termination::SubgradTolerance;
        break;
      }
      if (state.itn >= params.maxitn) {
        termination = Termination::MaxIterations;
        break;
      }

      Vector xi = state.B.transpose() * cur.g;
      double xi_norm = xi.norm();
      if (xi_norm == 0.0) {
        // B is invertible, so this means g vanished in working precision.
        termination = Termination::SubgradTolerance;
        break;
      }
      Vector d = state.B * (xi / xi_norm);

      // Dilation only ever contracts B. Once the whole matrix has decayed (or
      // the current direction maps to round-off noise) it no longer encodes
      // useful geometry, just a global step shrink; restart the metric and
      // fold the current step scale into h, relaunching from the incumbent so
      // successive restarts compound instead of wandering.
      const double frob_scale = state.B.norm() / std::sqrt(static_cast<double>(n));
      if (frob_scale < 1e-5 || d.norm() < 1e-9 * frob_scale) {
        const double step_scale = state.h * d.norm();
        state.B = Matrix::Identity(n, n);
        state.h = std::min(params.h0, std::max(10.0 * step_scale, 1e2 * params.epsx));
        if ((state.x - state.x_best).squaredNorm() > 0.0) {
          state.x = state.x_best;
          cur = evaluate(state.x);
        }
        if (cur.g.norm() <= params.epsg) {
          termination = Termination::SubgradTolerance;
          break;
        }
        xi = cur.g;
        xi_norm = xi.norm();
        d = xi / xi_norm;
      }

      // Adaptive descent along -d: keep stepping while the new subgradient
      // still opposes the direction, growing h every nh steps.
      Vector displacement = Vector::Zero(n);
      Evaluation next = cur;
      int inner = 0;
      bool stalled = true;
      bool zero_subgrad = false;
      bool kink_refined = false;
      double useful = 0.0;     // distance actually advanced on a refined exit
      double frac_exit = 0.0;  // pullback fraction of that exit
      double slope_before = xi_norm;  // d.g at the current point
      double last_step = 0.0;
      while (inner < params.max_inner) {
        last_step = state.h;
        state.x -= state.h * d;
        displacement -= state.h * d;
        next = evaluate(state.x);
        if (next.f < state.f_best) {
          state.f_best = next.f;
          state.x_best = state.x;
          last_improvement_itn = state.itn;
        }
        ++inner;
        if (inner % params.nh == 0) state.h *= params.q2;
        if (next.g.norm() <= params.epsg) {
          zero_subgrad = true;
          stalled = false;
          break;
        }
        const double slope_after = d.dot(next.g);
        if (slope_after <= 0.0) {
          // The ray minimum sits between the last two points; the secant zero
          // of the directional derivative locates it (exactly so for piecewise
          // linear stretches). Move back to it when that does not lose ground,
          // which both sharpens the iterate and evaluates the subgradient at
          // the kink instead of at the overshoot.
          const double denom = slope_before - slope_after;
          const double frac =
              denom > 0.0 && slope_before > 0.0 ? -slope_after / denom : 0.0;
          if (params.refine && frac > 0.0) {
            const Vector pullback = frac * last_step * d;
            Evaluation at_kink = evaluate(state.x + pullback);
            if (at_kink.f < state.f_best) {
              state.f_best = at_kink.f;
              state.x_best = state.x + pullback;
              last_improvement_itn = state.itn;
            }
            // Continue from the kink only when its subgradient differs from
            // the iteration start's; otherwise the dilation would get a zero
            // update and the next iteration would repeat this ray exactly.
            // Keeping the overshoot point in that case feeds the dilation the
            // wall jump it needs to rotate the direction away.
            if (at_kink.f <= next.f &&
                (at_kink.g - cur.g).squaredNorm() > 0.0) {
              state.x += pullback;
              displacement += pullback;
              next = at_kink;
              kink_refined = true;
              useful = (1.0 - frac) * last_step;
              frac_exit = frac;
            }
          }
          stalled = false;
          break;
        }
        slope_before = slope_after;
      }
      // A single-step exit means h overshot the whole descent segment. When
      // the refinement step found the segment end at a balanced kink, retune
      // h to that distance so the next searches resolve the local structure.
      // A lopsided exit (slope magnitudes orders apart, frac near 1) means
      // the ray grazed a steep wall right at the start point; the kink
      // distance there is drift noise, not a scale worth adopting, so only
      // deflate gently and let the dilation suppress the recurrence. Without
      // some deflation h only ever grows (q1 is 1 by default) and the
      // dilation matrix has to absorb the excess, which kills it in double
      // precision.
      if (inner == 1) {
        if (kink_refined && frac_exit < 0.97) {
          state.h = std::min(state.h, std::max(2.0 * useful, 0.5 * params.epsx));
        } else {
          state.h /= params.q2;
        }
      }
      ++state.itn;
      if (params.trace) params.trace(state.itn, state.f_best, next.g.norm(), state.h);
      if (zero_subgrad) {
        termination = Termination::SubgradTolerance;
        break;
      }
      if (stalled) {
        if (displacement.norm() <= params.epsx) {
          // The search could not move the iterate in working precision.
          termination = Termination::StepTolerance;
          break;
        }
        termination = Termination::OracleFailure;
        message = "direction search took max_inner steps without a subgradient sign change";
        break;
      }
      // Steps this small only mean the method is done once descent has also
      // dried up; refined exits legitimately advance less than epsx per
      // iteration while they are still chipping away at f. When descent has
      // stalled, grant a few fresh starts from the incumbent before giving
      // up, but only while they keep paying off.
      if (displacement.norm() <= params.epsx &&
          state.itn - last_improvement_itn > 600) {
        if (relaunches_left > 0 && state.f_best < f_at_last_relaunch) {
          --relaunches_left;
          f_at_last_relaunch = state.f_best;
          state.h = std::max(state.h, 1e2 * params.epsx);
          state.x = state.x_best;
          cur = evaluate(state.x);
          last_improvement_itn = state.itn;
          continue;
        }
        termination = Termination::StepTolerance;
        break;
      }

      Vector r = state.B.transpose() * (next.g - cur.g);
      const double r_norm = r.norm();
      if (r_norm > 0.0) {
        r /= r_norm;
        state.B += (1.0 / params.alpha - 1.0) * (state.B * r) * r.transpose();
      }
      cur = next;
      state.h *= params.q1;
    }
  } catch (const OracleError& err) {
    termination = Termination::OracleFailure;
    message = err.what();
    if (state.x_best.size() == 0) {
      // Failed on the very first evaluation; report the start point.
      state.x_best = x0;
      state.f_best = std::numeric_limits<double>::quiet_NaN();
    }
  }

  const auto t_end = std::chrono::steady_clock::now();
  report.x_final = state.x_best;
  report.f_final = state.f_best;
  report.itn = state.itn;
  report.oracle_calls = oracle_calls;
  report.time_sec = std::chrono::duration<double>(t_end - t_start).count();
  report.termination = termination;
  report.message = message;
  if (state_out) *state_out = state;
  return report;
}

}  // namespace nsopt
