#pragma once

// Finite-volume Gibbs kernels on the one-sided lattice.
//
// For a volume n and boundary condition y the kernel K_n(., y) is the
// probability on the d^n points x = w . sigma^n(y), |w| = n, with weight
// exp(beta S_n f(x)), S_n the Birkhoff sum. Kernel values for a bounded
// cylinder function g are K_n(g, y) = sum_x g(x) weight(x) / Z_n^y.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

/// beta S_n f(w . tail) for every word w of length n, in word-index order.
std::vector<double> volume_log_weights(const Potential& f, double beta, std::size_t n, const Point& tail,
                                       std::size_t max_points = kDefaultMaxPoints);

/// Z_n^y(beta) = sum over the d^n points w . sigma^n(y) of exp(beta S_n f).
double partition(const Potential& f, double beta, std::size_t n, const Point& y,
                 std::size_t max_points = kDefaultMaxPoints);

/// K_n(g, y) by direct enumeration. g may read coordinates beyond n; those
/// come from the boundary.
double kernel(const Potential& f, double beta, std::size_t n, const Point& y, const CylinderFunction& g,
              std::size_t max_points = kDefaultMaxPoints);

/// L^n(g)(sigma^n y) / L^n(1)(sigma^n y) for L the transfer operator of
/// beta f at depth m. Exact for locally constant f of depth <= m+1 when
/// g.depth() <= m and m is at least the number of boundary coordinates the
/// potential reads.
double kernel_via_transfer(const Potential& f, double beta, std::size_t n, const Point& y,
                           const CylinderFunction& g, std::size_t m);

/// The cylinder marginal of K_n(., y) at depth m <= n.
CylinderMeasure kernel_measure(const Potential& f, double beta, std::size_t n, const Point& y, std::size_t m,
                               std::size_t max_points = kDefaultMaxPoints);

/// |int K_n(g, .) dK_{n+r}(., z) - K_{n+r}(g, z)| by exact enumeration.
double finite_volume_dlr_check(const Potential& f, double beta, std::size_t n, std::size_t r, const Point& z,
                               const CylinderFunction& g, std::size_t max_points = kDefaultMaxPoints);

struct TlRow {
  std::size_t n = 0;
  Word cylinder;
  std::size_t boundary_id = 0;
  double kernel = 0.0;
  double nu_ref = 0.0;
  double deviation = 0.0;
};

struct TlTable {
  std::vector<TlRow> rows;
  /// max_deviation[c][n-1] = max over boundaries of |K_n(C_c, y) - nu(C_c)|.
  std::vector<std::vector<double>> max_deviation;
  RpfData reference;
};

/// K_n(C, y) for n = 1..n_max against the eigenprobability of beta f.
/// reference_depth 0 picks the smallest depth that resolves every cylinder
/// (and the potential, when it is locally constant).
TlTable tl_sequence(const Potential& f, double beta, std::span<const Word> cylinders,
                    std::span<const Point> boundaries, std::size_t n_max, std::size_t reference_depth = 0,
                    PowerIterationOptions options = {}, std::size_t max_points = kDefaultMaxPoints);

struct DEstimate {
  /// max over n <= N, |w| = n and tail pairs of |S_n f(w t1) - S_n f(w t2)|.
  double value = 0.0;
  /// Metadata upper bound on the supremum over all n; nullopt means no finite bound is known.
  std::optional<double> bound;
  std::vector<double> per_n;
};

/// Brute-force estimate of D = sup_n sup |S_n f(x) - S_n f(y)| over x, y
/// sharing their first n coordinates. For locally constant f of depth r the
/// tails are all d^(r-1) words followed by 0^inf, which makes the value
/// exact; otherwise `tails` (default: reference_tails) are used.
DEstimate D_estimate(const Potential& f, std::size_t N, std::span<const Point> tails = {},
                     std::size_t max_points = kDefaultMaxPoints);

struct SandwichResult {
  bool holds = false;
  /// min(e^{2 D beta} K_n(C,z) / K_n(C,y), K_n(C,y) / (e^{-2 D beta} K_n(C,z))); >= 1 when the bound holds.
  double margin = 0.0;
  double kernel_y = 0.0;
  double kernel_z = 0.0;
};

SandwichResult sandwich_check(const Potential& f, double beta, std::size_t n, const Cylinder& c, const Point& y,
                              const Point& z, double D, std::size_t max_points = kDefaultMaxPoints);

struct DlrResidual {
  double residual = 0.0;
  /// Bound on the representative-point quadrature error; 0 when f and g are
  /// resolved inside the measure depth, +inf when no variation bound is known.
  double quadrature_bound = 0.0;
};

/// |int K_n(g, y) dmu(y) - int g dmu| with the outer integral taken over one
/// representative point v . tail per depth-M cylinder [v] of mu.
DlrResidual dlr_residual(const Potential& f, double beta, const CylinderMeasure& mu, std::size_t n,
                         const CylinderFunction& g, const Point& tail = Point::constant(0),
                         std::size_t max_points = kDefaultMaxPoints);

/// |K_n with weights exp(beta (S_n f - a_n)) minus K_n|. The shifted kernel
/// is summed without rescaling, so beta a_n must keep the weights finite.
double constant_shift_check(const Potential& f, double beta, std::size_t n, const Point& y,
                            const CylinderFunction& g, double a_n, std::size_t max_points = kDefaultMaxPoints);

/// |K_n(g, y1) - K_n(g, y2)|; requires sigma^n y1 == sigma^n y2.
double tail_measurability_check(const Potential& f, double beta, std::size_t n, const Point& y1, const Point& y2,
                                const CylinderFunction& g, std::size_t max_points = kDefaultMaxPoints);

/// max over depth-m indicators g of |int g dnu_f - int (g / psi_f) dmu_fbar|,
/// mu_fbar the fixed point of the dual of the normalized operator.
double change_of_measure_check(const Potential& f, std::size_t m, PowerIterationOptions options = {});

}  // namespace ruelle
