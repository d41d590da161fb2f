#pragma once

// The long-range Ising chain on {-1,+1}^Z and its one-sided reduction.
//
// Two-sided configurations are written (..., x_{-2}, x_{-1} | x_0, x_1, ...).
// One-sided points use the library's 1-indexed convention, so the chain
// coordinate x_i (i >= 0) is Point::at(i + 1). Symbol 0 is spin -1 and
// symbol 1 is spin +1.

#include <cstddef>
#include <string>
#include <string_view>

#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"

namespace ruelle::ising {

struct Params {
  double alpha = 3.0;
  double beta = 1.0;
  /// Series cutoff J: coupling sums run over distances 1..J.
  std::size_t cutoff = 200;

  /// Throws std::invalid_argument unless alpha > 1, beta > 0 and J >= 2.
  void validate() const;
};

/// past.at(i) = x_{-i} for i >= 1, future.at(i) = x_{i-1} for i >= 1.
struct TwoSidedPoint {
  Point past = Point::constant(1);
  Point future = Point::constant(1);

  /// "PAST:FUTURE" with each side in Point::parse syntax, e.g. "1|0:01|1".
  static TwoSidedPoint parse(std::string_view text);
  /// The two-sided shift: (.. x_{-1} | x_0 x_1 ..) -> (.. x_{-1} x_0 | x_1 ..).
  TwoSidedPoint shifted() const;
  int spin(long i) const;
  std::string to_string() const;

  bool operator==(const TwoSidedPoint&) const = default;
};

inline int spin_of(Symbol s) { return s == 0 ? -1 : 1; }

/// zeta(alpha) as a partial sum to J plus the midpoint of the integral bracket
/// [(J+1)^{1-alpha}, J^{1-alpha}] / (alpha - 1); error is the half-width.
Evaluation zeta(double alpha, std::size_t J = 200);

/// f(x) = -sum_{0 < |n| <= J} x_0 x_n / |n|^alpha, error 2 J^{1-alpha}/(alpha-1).
Evaluation f_two_sided(const Params& p, const TwoSidedPoint& x);

/// g(x_0, x_1, ...) = -x_0 sum_{j=1}^J x_j / j^alpha - zeta(alpha).
Evaluation g_one_sided(const Params& p, const Point& x);

/// g_one_sided as a Potential on the spin alphabet, with summable-variation
/// metadata var_n <= 2 sum_{j >= n} j^{-alpha}.
Potential g_potential(const Params& p);

/// h(x) = sum_{m >= 0} f(shift^m x) - f(shift^m phi(x)) with phi replacing
/// the past by the constant x_0:
///   h(x) = -sum_{m=0}^{terms-1} x_m sum_{n=1}^J (x_{-n} - x_0) / (m+n)^alpha.
/// The error bounds both truncations. Requires alpha > 2.
Evaluation transfer_h(const Params& p, const TwoSidedPoint& x, std::size_t terms);

/// The one-sided potential f - h + h o shift for the transfer function
/// above, in closed form:
///   g_one_sided(x) + (x_1 - x_0) sum_{m >= 0} x_{m+1} sum_{n >= 1} (m+n)^{-alpha}.
/// Requires alpha > 2.
Evaluation g_from_transfer(const Params& p, const Point& x, std::size_t terms);

struct CoboundaryResult {
  /// |f(x) - g_one_sided(x_0, x_1, ...) - h(x) + h(shift x)| and its certified bound.
  double residual = 0.0;
  double bound = 0.0;
  /// Same identity with g_from_transfer in place of g_one_sided.
  double residual_transfer = 0.0;
  double bound_transfer = 0.0;
  bool holds() const { return residual <= bound; }
};

CoboundaryResult coboundary_check(const Params& p, const TwoSidedPoint& x, std::size_t terms);

struct HoelderWitness {
  std::size_t N = 0;
  TwoSidedPoint x;
  TwoSidedPoint y;
  /// |f(x) - f(y)| / d(x,y)^gamma with d(x,y) = 2^{-(N+1)}, the first
  /// disagreement being at |i| = N+1.
  double ratio = 0.0;
  double difference = 0.0;
};

/// x = +1 everywhere, y = x with x_{N+1} and x_{-(N+1)} flipped, N the first
/// with 2^{N gamma} 4 / (N+1)^alpha > M.
HoelderWitness hoelder_witness(const Params& p, double gamma, double M);

struct WaltersScaling {
  /// sup_{n <= N} sum_{j=p}^{n+p} j^{1-alpha} = sum_{j=p}^{N+p} j^{1-alpha}.
  double finite = 0.0;
  /// sum_{j >= p} j^{1-alpha}; +inf when alpha <= 2.
  double limit = 0.0;
  double limit_error = 0.0;
  bool decaying = false;
};

WaltersScaling ising_walters_estimate(const Params& p, std::size_t p_offset, std::size_t N);

}  // namespace ruelle::ising
