#pragma once

// Symbolic substrate for the one-sided full shift on d symbols.
//
// Coordinates are 1-indexed: a point x has coordinates x_1, x_2, ...
// Symbols are stored as 0..d-1. Words of length m are indexed in
// lexicographic order with the first symbol most significant, so the
// word (w_1,...,w_m) has index sum_i w_i d^(m-i). Every depth-m table in the
// library (functions, measures, JSON arrays) uses this order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ruelle {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Symbol set {0,...,d-1}, optionally carrying real labels (e.g. spins).
class Alphabet {
 public:
  explicit Alphabet(int d);
  Alphabet(int d, std::vector<double> labels);

  /// d = 2 with 0 -> -1 and 1 -> +1.
  static Alphabet spins();

  int size() const { return d_; }
  bool has_labels() const { return !labels_.empty(); }
  /// Real label of a symbol: the spin map when present, the symbol itself otherwise.
  double label(Symbol s) const;
  const std::vector<double>& labels() const { return labels_; }

  bool operator==(const Alphabet&) const = default;

 private:
  int d_;
  std::vector<double> labels_;
};

/// d^m, throwing std::overflow_error when it does not fit in size_t.
std::size_t ipow(std::size_t d, std::size_t m);

std::size_t word_index(std::span<const Symbol> w, int d);
Word word_at(std::size_t index, std::size_t length, int d);

/// Parses "0110" style literals (one digit per symbol, d <= 10).
Word parse_word(std::string_view text, int d);
std::string format_word(std::span<const Symbol> w);

/// Eventually periodic point x = prefix . cycle . cycle . ...
///
/// The stored representation is canonical (primitive cycle, shortest
/// prefix), so two points are equal iff all their coordinates agree.
class Point {
 public:
  Point(Word prefix, Word cycle);

  static Point constant(Symbol s) { return Point({}, {s}); }
  static Point periodic(Word cycle) { return Point({}, std::move(cycle)); }
  /// Parses "prefix|cycle", e.g. "01|1". A literal without '|' is read as a cycle.
  static Point parse(std::string_view text, int d);

  /// Coordinate x_i, i >= 1.
  Symbol at(std::size_t i) const;
  /// The word (x_1, ..., x_n).
  Word first(std::size_t n) const;
  /// Index of (x_1,...,x_n) among words of length n.
  std::size_t first_index(std::size_t n, int d) const;

  const Word& prefix() const { return prefix_; }
  const Word& cycle() const { return cycle_; }
  Symbol max_symbol() const;

  /// w . x
  Point prepend(std::span<const Symbol> w) const;
  /// sigma^k x
  Point shifted(std::size_t k = 1) const;
  /// Coordinates 1..horizon() determine the point: beyond it the sequence
  /// is periodic with period cycle().size().
  std::size_t horizon() const { return prefix_.size() + cycle_.size(); }

  std::string to_string() const;

  bool operator==(const Point&) const = default;

 private:
  Word prefix_;
  Word cycle_;
};

/// Left shift: (x_1, x_2, ...) -> (x_2, x_3, ...).
Point shift(const Point& x);

/// The d points a.x for a = 0..d-1.
std::vector<Point> preimages(const Point& x, int d);

/// 2^-N with N the first (1-based) coordinate where x and y differ; 0 if x == y.
double metric_distance(const Point& x, const Point& y);

/// A cylinder [w] = {x : x_1..x_|w| = w}.
struct Cylinder {
  Word base;
  std::size_t depth() const { return base.size(); }
  bool contains(const Point& x) const;
};

/// A function of the first `depth` coordinates, tabulated over d^depth words.
class CylinderFunction {
 public:
  CylinderFunction(int d, std::size_t depth, std::vector<double> table);

  static CylinderFunction constant(int d, double c);
  static CylinderFunction indicator(int d, std::span<const Symbol> w);

  int symbols() const { return d_; }
  std::size_t depth() const { return depth_; }
  const std::vector<double>& table() const { return table_; }
  double at(std::size_t index) const { return table_[index]; }
  double operator()(const Point& x) const;

  /// The same function tabulated at depth + levels.
  CylinderFunction refine(std::size_t levels = 1) const;
  double max() const;
  double min() const;

 private:
  int d_;
  std::size_t depth_;
  std::vector<double> table_;
};

/// A probability on the cylinders of a fixed depth.
class CylinderMeasure {
 public:
  static constexpr double kMassTolerance = 1e-12;

  /// Weights must be nonnegative and sum to 1 within kMassTolerance.
  CylinderMeasure(int d, std::size_t depth, std::vector<double> weights);
  /// Normalizes a nonnegative vector with positive mass.
  static CylinderMeasure from_unnormalized(int d, std::size_t depth, std::vector<double> weights);

  static CylinderMeasure uniform(int d, std::size_t depth);
  /// Product measure with one-site marginal p at the given depth.
  static CylinderMeasure bernoulli(std::span<const double> p, std::size_t depth);
  static CylinderMeasure point_mass(int d, std::span<const Symbol> w);

  int symbols() const { return d_; }
  std::size_t depth() const { return depth_; }
  const std::vector<double>& weights() const { return weights_; }
  double at(std::size_t index) const { return weights_[index]; }
  double of(const Cylinder& c) const;

  /// Marginal on the first depth - levels coordinates.
  CylinderMeasure coarsen(std::size_t levels = 1) const;

 private:
  int d_;
  std::size_t depth_;
  std::vector<double> weights_;
};

/// Exact sum over words w of mu(w) g(w restricted to g.depth()). Requires mu.depth() >= g.depth().
double integrate(const CylinderMeasure& mu, const CylinderFunction& g);

}  // namespace ruelle
