#pragma once

// Interactions on N = {1, 2, ...}: families of functions Phi_A indexed by
// finite supports A, each depending only on the coordinates in A.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"

namespace ruelle {

/// A(k,n) = {k, ..., 2k+n} (k >= 1, n >= 0) or a pair {first, second}, first < second.
struct SupportSet {
  enum class Kind { Progression, Pair };
  Kind kind = Kind::Progression;
  std::size_t a = 1;  // k, or the smaller site
  std::size_t b = 0;  // n, or the larger site

  static SupportSet progression(std::size_t k, std::size_t n);
  /// Sites may come in either order; they must differ.
  static SupportSet pair(std::size_t n, std::size_t m);

  std::size_t min_site() const { return a; }
  std::size_t max_site() const { return kind == Kind::Progression ? 2 * a + b : b; }
  std::size_t size() const { return kind == Kind::Progression ? a + b + 1 : 2; }
  bool contains(std::size_t site) const;
  /// Sites in increasing order.
  std::vector<std::size_t> sites() const;
  std::string to_string() const;

  auto operator<=>(const SupportSet&) const = default;
};

/// Phi_A tabulated over the d^|A| configurations of its support, the
/// coordinate at the smallest site being the most significant digit.
struct InteractionTerm {
  SupportSet support;
  std::vector<double> values;

  double operator()(const Point& x, int d) const;
  double sup_abs() const;
};

/// The truncation a stored interaction was built with.
struct Truncation {
  /// Progressions A(k,n) are stored for k <= k_max and n <= n_max.
  std::size_t k_max = 0;
  std::size_t n_max = 0;
  /// Pair families: pairs with both sites <= site_cutoff are stored.
  std::size_t site_cutoff = 0;
};

class Interaction {
 public:
  /// Bound on the per-site sum of sup |Phi_A| over omitted supports, for sites <= N.
  using RemainderFn = std::function<double(std::size_t)>;

  Interaction(Alphabet alphabet, Truncation truncation, RemainderFn remainder);

  const Alphabet& alphabet() const { return alphabet_; }
  int symbols() const { return alphabet_.size(); }
  const Truncation& truncation() const { return truncation_; }
  const std::map<SupportSet, InteractionTerm>& terms() const { return terms_; }

  /// Stores a term; identically zero tables are dropped.
  void add(InteractionTerm term);
  /// nullptr for absent supports, whose term is identically zero.
  const InteractionTerm* find(const SupportSet& s) const;
  double value(const SupportSet& s, const Point& x) const;

  double norm_remainder(std::size_t N) const { return remainder_(N); }

  /// Set by from_potential: the basepoint y, f(y), and a bound on the
  /// site-1 reconstruction error from omitted progressions.
  std::optional<Point> basepoint;
  double basepoint_value = 0.0;
  double reconstruction_remainder = 0.0;

 private:
  Alphabet alphabet_;
  Truncation truncation_;
  RemainderFn remainder_;
  std::map<SupportSet, InteractionTerm> terms_;
};

/// The interaction of a potential relative to a basepoint y:
///   Phi_{A(k,n)}(x) = f(x_k..x_{2k+n} . sigma^{2k+n} y) - f(x_k..x_{2k+n-1} . sigma^{2k+n-1} y), n >= 1,
///   Phi_{A(k,0)}(x) = f(x_k..x_{2k} . sigma^{2k} y) - f(y).
/// Terms with k <= cutoff.k_max and n <= cutoff.n_max are tabulated.
/// Throws RegularityError when f carries no variation metadata.
Interaction from_potential(const Potential& f, const Point& y, Truncation cutoff,
                           std::size_t max_points_per_term = std::size_t{1} << 20);

/// Sum of the stored Phi_A(x) over supports containing site 1.
double reconstruct_at_site1(const Interaction& phi, const Point& x);

struct InteractionNorm {
  double value = 0.0;
  double remainder = 0.0;
};

/// max over sites s <= N of sum_{A containing s} sup |Phi_A| over stored
/// terms, with the bound on the omitted part.
InteractionNorm interaction_norm(const Interaction& phi, std::size_t N);

/// H_n(x) = sum of Phi_A(x) over stored supports meeting {1,...,n}.
double hamiltonian_from_interaction(const Interaction& phi, std::size_t n, const Point& x);

/// Phi_{n,n+1}(x) = x_n x_{n+1} - 1 on {0,1} for pairs up to site_cutoff.
Interaction ising_nn(std::size_t site_cutoff = 512);

enum class IsingLabels { ZeroOne, Spins };

/// (x_n x_m - 1) / |n-m|^alpha on {0,1}, or x_n x_m / |n-m|^alpha with spins.
Interaction ising_lr(double alpha, IsingLabels labels = IsingLabels::ZeroOne, std::size_t site_cutoff = 512);

/// Sum of two interactions on the same alphabet; remainders add.
Interaction operator+(const Interaction& lhs, const Interaction& rhs);

}  // namespace ruelle
