#include "ruelle/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ruelle {

Alphabet::Alphabet(int d) : d_(d) {
  if (d < 2) throw std::invalid_argument("alphabet needs at least 2 symbols");
}

Alphabet::Alphabet(int d, std::vector<double> labels) : Alphabet(d) {
  if (labels.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("label map must have one entry per symbol");
  }
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("label map must be injective");
  }
  labels_ = std::move(labels);
}

Alphabet Alphabet::spins() { return Alphabet(2, {-1.0, 1.0}); }

double Alphabet::label(Symbol s) const {
  if (s < 0 || s >= d_) throw std::out_of_range("symbol outside alphabet");
  return labels_.empty() ? static_cast<double>(s) : labels_[static_cast<std::size_t>(s)];
}

std::size_t ipow(std::size_t d, std::size_t m) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (r > std::numeric_limits<std::size_t>::max() / d) {
      throw std::overflow_error("d^m does not fit in size_t");
    }
    r *= d;
  }
  return r;
}

std::size_t word_index(std::span<const Symbol> w, int d) {
  std::size_t idx = 0;
  for (Symbol s : w) {
    if (s < 0 || s >= d) throw std::out_of_range("symbol outside alphabet");
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(s);
  }
  return idx;
}

Word word_at(std::size_t index, std::size_t length, int d) {
  Word w(length);
  const auto base = static_cast<std::size_t>(d);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % base);
    index /= base;
  }
  if (index != 0) throw std::out_of_range("word index exceeds d^length");
  return w;
}

Word parse_word(std::string_view text, int d) {
  if (d > 10) throw std::invalid_argument("word literals support at most 10 symbols");
  Word w;
  w.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9' || ch - '0' >= d) {
      throw std::invalid_argument("invalid symbol '" + std::string(1, ch) + "' in word literal");
    }
    w.push_back(ch - '0');
  }
  return w;
}

std::string format_word(std::span<const Symbol> w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol c : w) {
    if (c >= 0 && c <= 9) {
      s.push_back(static_cast<char>('0' + c));
    } else {
      s += "(" + std::to_string(c) + ")";
    }
  }
  return s;
}

namespace {

// Smallest p dividing |cycle| with cycle invariant under rotation by p.
Word primitive_root(const Word& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = cycle[i] == cycle[i - p];
    if (ok) return Word(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return cycle;
}

}  // namespace

Point::Point(Word prefix, Word cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw std::invalid_argument("point cycle must be nonempty");
  for (Symbol s : prefix_) {
    if (s < 0) throw std::invalid_argument("negative symbol in point");
  }
  for (Symbol s : cycle_) {
    if (s < 0) throw std::invalid_argument("negative symbol in point");
  }
  cycle_ = primitive_root(cycle_);
  while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
    prefix_.pop_back();
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
  }
}

Point Point::parse(std::string_view text, int d) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) return Point({}, parse_word(text, d));
  if (text.find('|', bar + 1) != std::string_view::npos) {
    throw std::invalid_argument("point literal has more than one '|'");
  }
  auto cycle = parse_word(text.substr(bar + 1), d);
  if (cycle.empty()) throw std::invalid_argument("point literal needs a nonempty cycle");
  return Point(parse_word(text.substr(0, bar), d), std::move(cycle));
}

Symbol Point::at(std::size_t i) const {
  if (i == 0) throw std::out_of_range("coordinates are 1-indexed");
  if (i <= prefix_.size()) return prefix_[i - 1];
  return cycle_[(i - 1 - prefix_.size()) % cycle_.size()];
}

Word Point::first(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i + 1);
  return w;
}

std::size_t Point::first_index(std::size_t n, int d) const {
  std::size_t idx = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const Symbol s = at(i);
    if (s >= d) throw std::out_of_range("point symbol outside alphabet");
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(s);
  }
  return idx;
}

Symbol Point::max_symbol() const {
  Symbol m = *std::max_element(cycle_.begin(), cycle_.end());
  if (!prefix_.empty()) m = std::max(m, *std::max_element(prefix_.begin(), prefix_.end()));
  return m;
}

Point Point::prepend(std::span<const Symbol> w) const {
  Word p(w.begin(), w.end());
  p.insert(p.end(), prefix_.begin(), prefix_.end());
  return Point(std::move(p), cycle_);
}

Point Point::shifted(std::size_t k) const {
  if (k <= prefix_.size()) {
    return Point(Word(prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end()), cycle_);
  }
  Word c = cycle_;
  const std::size_t r = (k - prefix_.size()) % c.size();
  std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
  return Point({}, std::move(c));
}

std::string Point::to_string() const { return format_word(prefix_) + "|" + format_word(cycle_); }

Point shift(const Point& x) { return x.shifted(1); }

std::vector<Point> preimages(const Point& x, int d) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Symbol a = 0; a < d; ++a) {
    const Symbol w[1] = {a};
    out.push_back(x.prepend(w));
  }
  return out;
}

double metric_distance(const Point& x, const Point& y) {
  const std::size_t horizon = std::max(x.prefix().size(), y.prefix().size()) +
                              std::lcm(x.cycle().size(), y.cycle().size());
  for (std::size_t i = 1; i <= horizon; ++i) {
    if (x.at(i) != y.at(i)) return std::ldexp(1.0, -static_cast<int>(i));
  }
  return 0.0;
}

bool Cylinder::contains(const Point& x) const {
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (x.at(i + 1) != base[i]) return false;
  }
  return true;
}

CylinderFunction::CylinderFunction(int d, std::size_t depth, std::vector<double> table)
    : d_(d), depth_(depth), table_(std::move(table)) {
  if (d < 2) throw std::invalid_argument("cylinder function needs d >= 2");
  if (table_.size() != ipow(static_cast<std::size_t>(d), depth)) {
    throw std::invalid_argument("cylinder function table must have d^depth entries");
  }
}

CylinderFunction CylinderFunction::constant(int d, double c) { return CylinderFunction(d, 0, {c}); }

CylinderFunction CylinderFunction::indicator(int d, std::span<const Symbol> w) {
  std::vector<double> t(ipow(static_cast<std::size_t>(d), w.size()), 0.0);
  t[word_index(w, d)] = 1.0;
  return CylinderFunction(d, w.size(), std::move(t));
}

double CylinderFunction::operator()(const Point& x) const { return table_[x.first_index(depth_, d_)]; }

CylinderFunction CylinderFunction::refine(std::size_t levels) const {
  const std::size_t k = ipow(static_cast<std::size_t>(d_), levels);
  std::vector<double> t(table_.size() * k);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = table_[i / k];
  return CylinderFunction(d_, depth_ + levels, std::move(t));
}

double CylinderFunction::max() const { return *std::max_element(table_.begin(), table_.end()); }
double CylinderFunction::min() const { return *std::min_element(table_.begin(), table_.end()); }

CylinderMeasure::CylinderMeasure(int d, std::size_t depth, std::vector<double> weights)
    : d_(d), depth_(depth), weights_(std::move(weights)) {
  if (d < 2) throw std::invalid_argument("cylinder measure needs d >= 2");
  if (weights_.size() != ipow(static_cast<std::size_t>(d), depth)) {
    throw std::invalid_argument("cylinder measure must have d^depth weights");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("cylinder measure weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("cylinder measure weights must sum to 1");
  }
}

CylinderMeasure CylinderMeasure::from_unnormalized(int d, std::size_t depth, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("cylinder measure weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("cylinder measure needs finite positive mass");
  }
  for (double& w : weights) w /= total;
  return CylinderMeasure(d, depth, std::move(weights));
}

CylinderMeasure CylinderMeasure::uniform(int d, std::size_t depth) {
  const std::size_t n = ipow(static_cast<std::size_t>(d), depth);
  return from_unnormalized(d, depth, std::vector<double>(n, 1.0));
}

CylinderMeasure CylinderMeasure::bernoulli(std::span<const double> p, std::size_t depth) {
  const int d = static_cast<int>(p.size());
  const std::size_t n = ipow(p.size(), depth);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (Symbol s : word_at(i, depth, d)) prod *= p[static_cast<std::size_t>(s)];
    w[i] = prod;
  }
  return from_unnormalized(d, depth, std::move(w));
}

CylinderMeasure CylinderMeasure::point_mass(int d, std::span<const Symbol> w) {
  std::vector<double> weights(ipow(static_cast<std::size_t>(d), w.size()), 0.0);
  weights[word_index(w, d)] = 1.0;
  return CylinderMeasure(d, w.size(), std::move(weights));
}

double CylinderMeasure::of(const Cylinder& c) const {
  if (c.depth() > depth_) throw std::invalid_argument("cylinder deeper than measure");
  const std::size_t k = ipow(static_cast<std::size_t>(d_), depth_ - c.depth());
  const std::size_t start = word_index(c.base, d_) * k;
  double s = 0.0;
  for (std::size_t i = start; i < start + k; ++i) s += weights_[i];
  return s;
}

CylinderMeasure CylinderMeasure::coarsen(std::size_t levels) const {
  if (levels > depth_) throw std::invalid_argument("cannot coarsen below depth 0");
  const std::size_t k = ipow(static_cast<std::size_t>(d_), levels);
  std::vector<double> w(weights_.size() / k, 0.0);
  for (std::size_t i = 0; i < weights_.size(); ++i) w[i / k] += weights_[i];
  return from_unnormalized(d_, depth_ - levels, std::move(w));
}

double integrate(const CylinderMeasure& mu, const CylinderFunction& g) {
  if (mu.symbols() != g.symbols()) throw std::invalid_argument("alphabet mismatch");
  if (mu.depth() < g.depth()) {
    throw std::invalid_argument("measure depth must be at least the function depth");
  }
  const std::size_t k = ipow(static_cast<std::size_t>(mu.symbols()), mu.depth() - g.depth());
  double s = 0.0;
  for (std::size_t i = 0; i < mu.weights().size(); ++i) s += mu.at(i) * g.at(i / k);
  return s;
}

}  // namespace ruelle
