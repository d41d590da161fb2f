#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"

namespace ruelle {

/// The Ruelle operator of f acting on functions of the first m coordinates.
///
/// f is truncated to f_m(a.w) = f(a.w.tail) for words w of length m, with a
/// fixed reference tail (default 0^inf). For locally constant f of depth
/// <= m+1 this is the exact action of L_f on depth-m functions. Each row has
/// d nonzero entries exp(f_m(a.w)), stored at index a d^m + index(w).
class TransferOperator {
 public:
  TransferOperator(const Potential& f, std::size_t depth, const Point& tail = Point::constant(0));

  int symbols() const { return d_; }
  std::size_t depth() const { return depth_; }
  std::size_t states() const { return states_; }
  /// exp f_m(a.w).
  double weight(Symbol a, std::size_t w) const {
    return weights_[static_cast<std::size_t>(a) * states_ + w];
  }
  /// Largest certified evaluation error among the tabulated values of f.
  double evaluation_error() const { return evaluation_error_; }
  /// Bound on |f - f_m| from the regularity metadata, when known.
  std::optional<double> truncation_error() const { return truncation_error_; }

  /// (L g)(w) = sum_a exp f_m(a.w) g(a.w). Requires g.depth() <= depth().
  CylinderFunction apply(const CylinderFunction& g) const;
  /// Transpose action on a vector of d^m cylinder masses.
  std::vector<double> apply_dual(std::span<const double> rho) const;

 private:
  int d_;
  std::size_t depth_;
  std::size_t states_;
  std::vector<double> weights_;
  double evaluation_error_ = 0.0;
  std::optional<double> truncation_error_;
};

CylinderFunction apply(const Potential& f, const CylinderFunction& g, std::size_t m);

/// Unnormalized mass vector rho with sum_w rho(w) g(w) = integrate(mu, L g) for every depth-m g.
std::vector<double> dual_apply(const Potential& f, const CylinderMeasure& mu, std::size_t m);

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 10'000;
};

/// Perron data of the depth-m transfer matrix.
struct RpfData {
  double lambda = 0.0;
  CylinderFunction psi;   // strictly positive, integrate(nu, psi) = 1
  CylinderMeasure nu;     // left eigenvector as a probability
  double residual_fn = 0.0;    // |L psi - lambda psi|_inf / (lambda |psi|_inf)
  double residual_meas = 0.0;  // |L* nu - lambda nu|_inf / (lambda |nu|_inf)
  int iterations = 0;
  /// Interval for the eigenvalue of the untruncated operator, propagated from
  /// evaluation errors and (when known) the truncation error of f_m.
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
};

/// Power iteration from the constant start vector, for both the right and the
/// left Perron vectors. Throws ConvergenceError when either residual exceeds
/// options.tol after options.max_iter iterations.
RpfData power_iterate(const Potential& f, std::size_t m, PowerIterationOptions options = {});

/// log lambda at depth m.
double pressure(const Potential& f, std::size_t m, PowerIterationOptions options = {});

/// f + log psi - log psi o sigma - log lambda, as a locally constant
/// potential of depth m + 1 (m the depth of rpf).
Potential normalize(const Potential& f, const RpfData& rpf);

/// |L_f 1 - 1|_inf at depth m.
double check_normalized(const Potential& f, std::size_t m);

/// L_f^n g at depth m.
CylinderFunction iterate_to_fixed_point(const Potential& f_bar, const CylinderFunction& g, std::size_t m,
                                        std::size_t n);

/// Iterates mu -> L* mu / mass for `steps` steps; returns the last measure
/// and the last mass (the eigenvalue estimate int L 1 d mu).
std::pair<CylinderMeasure, double> dual_T_iterate(const Potential& f, const CylinderMeasure& mu0, std::size_t m,
                                                  std::size_t steps);

}  // namespace ruelle
