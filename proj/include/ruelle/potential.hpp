#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ruelle/shift.hpp"

namespace ruelle {

/// Default cap on the number of points a brute-force enumeration may visit.
inline constexpr std::size_t kDefaultMaxPoints = std::size_t{1} << 22;

/// A value together with a certified bound on |value - exact|.
struct Evaluation {
  double value = 0.0;
  double error = 0.0;
};

namespace regularity {

/// f depends on x_1..x_depth only.
struct LocallyConstant {
  std::size_t depth = 0;
};

/// |f(x) - f(y)| <= constant * d(x,y)^gamma.
struct Hoelder {
  double gamma = 1.0;
  double constant = 0.0;
};

/// Upper bounds on var_n(f) and on the tails sum_{k >= n} var_k(f).
/// tail_sum may return +inf when the variations are not summable.
struct SummableVariation {
  std::function<double(std::size_t)> var_bound;
  std::function<double(std::size_t)> tail_sum;
};

struct GenericContinuous {};

}  // namespace regularity

using Regularity = std::variant<regularity::LocallyConstant, regularity::Hoelder,
                                regularity::SummableVariation, regularity::GenericContinuous>;

/// A real function on the full shift evaluated at eventually periodic points.
///
/// The evaluator must be total and must return a certified error bound; the
/// bound is zero for locally constant potentials.
class Potential {
 public:
  using Evaluator = std::function<Evaluation(const Point&)>;

  Potential(Alphabet alphabet, Evaluator evaluator, Regularity regularity);

  Evaluation operator()(const Point& x) const { return evaluator_(x); }

  const Alphabet& alphabet() const { return alphabet_; }
  int symbols() const { return alphabet_.size(); }
  const Regularity& regularity() const { return regularity_; }

  std::optional<std::size_t> locally_constant_depth() const;
  /// Table of a locally constant potential over d^depth words, when it has one.
  const std::vector<double>* table() const { return table_.get(); }

  /// Upper bound on var_n(f) from the regularity metadata.
  std::optional<double> variation_bound(std::size_t n) const;
  /// Upper bound on sum_{k >= n} var_k(f) from the regularity metadata.
  std::optional<double> variation_tail(std::size_t n) const;

 private:
  friend Potential make_locally_constant(const Alphabet&, std::size_t, std::vector<double>);

  Alphabet alphabet_;
  Evaluator evaluator_;
  Regularity regularity_;
  std::shared_ptr<const std::vector<double>> table_;
};

inline Evaluation eval(const Potential& f, const Point& x) { return f(x); }

Potential make_constant(const Alphabet& alphabet, double c);

/// f(x) = table[index of (x_1..x_depth)]; table has d^depth entries.
Potential make_locally_constant(const Alphabet& alphabet, std::size_t depth, std::vector<double> table);

/// beta * f, with regularity and error bounds scaled accordingly.
Potential scaled(const Potential& f, double beta);
/// f + c.
Potential shifted(const Potential& f, double c);

/// Parameters of the Hofbauer-Walters family on {0,1}: f depends on the
/// length of the leading run of equal symbols.
struct HofbauerWalters {
  std::function<double(std::size_t)> a_seq;  // a_n for x in L_n, n >= 2
  std::function<double(std::size_t)> c_seq;  // c_n for x in R_n, n >= 2
  double a = 0.0;                            // L_1 and 0^inf
  double b = 0.0;                            // R_1
  double c = 0.0;                            // 1^inf
  /// Variation metadata when the caller can bound sup_{j >= n} |a_j - a|, |c_j - c|.
  std::optional<regularity::SummableVariation> variation;
};

/// L_n = [0^n 1] and R_n = [1^n 0]. The classification is exact for
/// eventually periodic points, so every evaluation has zero error.
Potential make_hofbauer_walters(HofbauerWalters params);

/// Length of the leading run of x_1 in x, or nullopt when x is constant.
std::optional<std::size_t> leading_run(const Point& x);

struct BirkhoffSum {
  std::size_t n = 0;
  double value = 0.0;
  double error = 0.0;
};

/// f(x) + f(sigma x) + ... + f(sigma^(n-1) x), errors summed.
BirkhoffSum birkhoff(const Potential& f, const Point& x, std::size_t n);

/// Tails used when a brute-force estimate must complete a finite word: the d
/// constant tails, plus (01)^inf and (10)^inf when d = 2.
std::vector<Point> reference_tails(int d);

/// Upper estimate of var_n(f) = sup{|f(x) - f(y)| : x_i = y_i, i <= n}.
///
/// Exact for locally constant f. Otherwise the regularity metadata bound is
/// used (Hoelder: K 2^(-gamma (n+1))). Without metadata the oscillation over
/// the reference tails plus twice the evaluation error is returned; this is
/// an estimate, not a certificate. Throws SizeGuardError when d^n words
/// exceed max_points and no metadata is available.
double var_n(const Potential& f, std::size_t n, std::size_t max_points = kDefaultMaxPoints);

/// Two-sided bracket for var_n: `lower` from enumeration over reference
/// tails (minus evaluation errors), `upper` from metadata when present.
struct VariationBracket {
  double lower = 0.0;
  std::optional<double> upper;
};
VariationBracket var_bracket(const Potential& f, std::size_t n, std::size_t max_points = kDefaultMaxPoints);

/// sup_{1 <= n <= N} var_{n+p}(S_n f), S_n the Birkhoff sum. Exact for
/// locally constant f, reference-tail enumeration otherwise.
double walters_estimate(const Potential& f, std::size_t p, std::size_t N,
                        std::size_t max_points = kDefaultMaxPoints);

struct JopSeries {
  double partial_sum = 0.0;
  /// Heuristic: the terms decay no faster than 1/n over the last half of the range.
  bool diverging = false;
  /// Fitted decay exponent of the terms over [N/2, N]; +inf when terms vanish.
  double tail_exponent = 0.0;
};

/// sum_{n=1}^N exp(-(1/2 + eps)(var_1 + ... + var_n)) using var_n(f, .).
JopSeries jop_series(const Potential& f_normalized, double epsilon, std::size_t N,
                     std::size_t max_points = kDefaultMaxPoints);
/// Same series for an explicit variation sequence.
JopSeries jop_series(const std::function<double(std::size_t)>& variation, double epsilon, std::size_t N);

}  // namespace ruelle
