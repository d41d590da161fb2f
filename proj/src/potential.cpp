#include "ruelle/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t checked_pow(int d, std::size_t m, std::size_t max_points, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (r > max_points / static_cast<std::size_t>(d)) {
      throw SizeGuardError(std::string(what) + ": d^" + std::to_string(m) +
                           " exceeds the enumeration limit");
    }
    r *= static_cast<std::size_t>(d);
  }
  return r;
}

// Oscillation of `values` over blocks of `block` consecutive entries.
double block_oscillation(const std::vector<double>& values, std::size_t block) {
  double worst = 0.0;
  for (std::size_t start = 0; start < values.size(); start += block) {
    const auto [lo, hi] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(start),
                                              values.begin() + static_cast<std::ptrdiff_t>(start + block));
    worst = std::max(worst, *hi - *lo);
  }
  return worst;
}

}  // namespace

Potential::Potential(Alphabet alphabet, Evaluator evaluator, Regularity regularity)
    : alphabet_(std::move(alphabet)), evaluator_(std::move(evaluator)), regularity_(std::move(regularity)) {
  if (!evaluator_) throw std::invalid_argument("potential needs an evaluator");
  if (const auto* h = std::get_if<regularity::Hoelder>(&regularity_)) {
    if (!(h->gamma > 0.0 && h->gamma <= 1.0) || !(h->constant >= 0.0)) {
      throw std::invalid_argument("Hoelder metadata needs gamma in (0,1] and K >= 0");
    }
  }
  if (const auto* s = std::get_if<regularity::SummableVariation>(&regularity_)) {
    if (!s->var_bound || !s->tail_sum) {
      throw std::invalid_argument("summable-variation metadata needs both bound callables");
    }
  }
}

std::optional<std::size_t> Potential::locally_constant_depth() const {
  if (const auto* lc = std::get_if<regularity::LocallyConstant>(&regularity_)) return lc->depth;
  return std::nullopt;
}

std::optional<double> Potential::variation_bound(std::size_t n) const {
  return std::visit(
      [n](const auto& r) -> std::optional<double> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, regularity::LocallyConstant>) {
          if (n >= r.depth) return 0.0;
          return std::nullopt;
        } else if constexpr (std::is_same_v<R, regularity::Hoelder>) {
          // Points agreeing on n coordinates are at distance <= 2^-(n+1).
          return r.constant * std::exp2(-r.gamma * static_cast<double>(n + 1));
        } else if constexpr (std::is_same_v<R, regularity::SummableVariation>) {
          return r.var_bound(n);
        } else {
          return std::nullopt;
        }
      },
      regularity_);
}

std::optional<double> Potential::variation_tail(std::size_t n) const {
  return std::visit(
      [n](const auto& r) -> std::optional<double> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, regularity::LocallyConstant>) {
          if (n >= r.depth) return 0.0;
          return std::nullopt;
        } else if constexpr (std::is_same_v<R, regularity::Hoelder>) {
          const double q = std::exp2(-r.gamma);
          return r.constant * std::exp2(-r.gamma * static_cast<double>(n + 1)) / (1.0 - q);
        } else if constexpr (std::is_same_v<R, regularity::SummableVariation>) {
          return r.tail_sum(n);
        } else {
          return std::nullopt;
        }
      },
      regularity_);
}

Potential make_constant(const Alphabet& alphabet, double c) {
  return make_locally_constant(alphabet, 0, {c});
}

Potential make_locally_constant(const Alphabet& alphabet, std::size_t depth, std::vector<double> table) {
  const int d = alphabet.size();
  if (table.size() != ipow(static_cast<std::size_t>(d), depth)) {
    throw std::invalid_argument("locally constant potential needs d^depth table entries, got " +
                                std::to_string(table.size()));
  }
  for (double v : table) {
    if (!std::isfinite(v)) throw std::invalid_argument("potential table entries must be finite");
  }
  auto shared = std::make_shared<const std::vector<double>>(std::move(table));
  Potential f(
      alphabet,
      [shared, depth, d](const Point& x) { return Evaluation{(*shared)[x.first_index(depth, d)], 0.0}; },
      regularity::LocallyConstant{depth});
  f.table_ = shared;
  return f;
}

Potential scaled(const Potential& f, double beta) {
  if (const auto* t = f.table()) {
    std::vector<double> table = *t;
    for (double& v : table) v *= beta;
    return make_locally_constant(f.alphabet(), *f.locally_constant_depth(), std::move(table));
  }
  const double b = std::abs(beta);
  Regularity reg = std::visit(
      [b](const auto& r) -> Regularity {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, regularity::Hoelder>) {
          return regularity::Hoelder{r.gamma, b * r.constant};
        } else if constexpr (std::is_same_v<R, regularity::SummableVariation>) {
          return regularity::SummableVariation{[b, v = r.var_bound](std::size_t n) { return b * v(n); },
                                                [b, t = r.tail_sum](std::size_t n) { return b * t(n); }};
        } else {
          return r;
        }
      },
      f.regularity());
  return Potential(
      f.alphabet(),
      [f, beta, b](const Point& x) {
        const auto e = f(x);
        return Evaluation{beta * e.value, b * e.error};
      },
      std::move(reg));
}

Potential shifted(const Potential& f, double c) {
  if (const auto* t = f.table()) {
    std::vector<double> table = *t;
    for (double& v : table) v += c;
    return make_locally_constant(f.alphabet(), *f.locally_constant_depth(), std::move(table));
  }
  return Potential(
      f.alphabet(),
      [f, c](const Point& x) {
        const auto e = f(x);
        return Evaluation{e.value + c, e.error};
      },
      f.regularity());
}

std::optional<std::size_t> leading_run(const Point& x) {
  const Symbol s = x.at(1);
  const std::size_t horizon = x.horizon();
  for (std::size_t i = 2; i <= horizon + 1; ++i) {
    if (x.at(i) != s) return i - 1;
  }
  // The first horizon + 1 coordinates agree, which covers a full period.
  return std::nullopt;
}

Potential make_hofbauer_walters(HofbauerWalters params) {
  if (!params.a_seq || !params.c_seq) throw std::invalid_argument("Hofbauer-Walters needs a_n and c_n");
  Regularity reg = regularity::GenericContinuous{};
  if (params.variation) reg = *params.variation;
  const Alphabet alphabet(2);
  return Potential(
      alphabet,
      [p = std::move(params)](const Point& x) {
        if (x.max_symbol() > 1) throw std::out_of_range("Hofbauer-Walters potential is defined on {0,1}");
        const Symbol s = x.at(1);
        const auto run = leading_run(x);
        if (!run) return Evaluation{s == 0 ? p.a : p.c, 0.0};
        if (s == 0) return Evaluation{*run >= 2 ? p.a_seq(*run) : p.a, 0.0};
        return Evaluation{*run >= 2 ? p.c_seq(*run) : p.b, 0.0};
      },
      std::move(reg));
}

BirkhoffSum birkhoff(const Potential& f, const Point& x, std::size_t n) {
  if (n == 0) throw std::invalid_argument("Birkhoff sums need n >= 1");
  BirkhoffSum s{n, 0.0, 0.0};
  Point y = x;
  for (std::size_t j = 0; j < n; ++j) {
    const auto e = f(y);
    s.value += e.value;
    s.error += e.error;
    y = shift(y);
  }
  return s;
}

std::vector<Point> reference_tails(int d) {
  std::vector<Point> tails;
  for (Symbol a = 0; a < d; ++a) tails.push_back(Point::constant(a));
  if (d == 2) {
    tails.push_back(Point::periodic({0, 1}));
    tails.push_back(Point::periodic({1, 0}));
  }
  return tails;
}

namespace {

// Exact var_n of a locally constant potential of depth m > n.
double locally_constant_variation(const Potential& f, std::size_t depth, std::size_t n,
                                  std::size_t max_points) {
  const int d = f.symbols();
  const std::size_t count = checked_pow(d, depth, max_points, "var_n");
  std::vector<double> values(count);
  if (const auto* t = f.table()) {
    values = *t;
  } else {
    const Point zero = Point::constant(0);
    for (std::size_t i = 0; i < count; ++i) values[i] = f(zero.prepend(word_at(i, depth, d))).value;
  }
  return block_oscillation(values, ipow(static_cast<std::size_t>(d), depth - n));
}

struct TailOscillation {
  double spread = 0.0;
  double max_error = 0.0;
};

// Oscillation of S_k f over points w.t, |w| = len, t in the reference tails.
TailOscillation enumerate_oscillation(const Potential& f, std::size_t len, std::size_t k,
                                      std::size_t max_points) {
  const int d = f.symbols();
  const auto tails = reference_tails(d);
  const std::size_t words = checked_pow(d, len, max_points / tails.size(), "variation enumeration");
  TailOscillation out;
  for (std::size_t i = 0; i < words; ++i) {
    const Word w = word_at(i, len, d);
    double lo = kInf;
    double hi = -kInf;
    for (const auto& t : tails) {
      const auto s = birkhoff(f, t.prepend(w), k);
      lo = std::min(lo, s.value);
      hi = std::max(hi, s.value);
      out.max_error = std::max(out.max_error, s.error);
    }
    out.spread = std::max(out.spread, hi - lo);
  }
  return out;
}

}  // namespace

double var_n(const Potential& f, std::size_t n, std::size_t max_points) {
  if (const auto depth = f.locally_constant_depth()) {
    if (n >= *depth) return 0.0;
    return locally_constant_variation(f, *depth, n, max_points);
  }
  if (const auto bound = f.variation_bound(n)) return *bound;
  const auto osc = enumerate_oscillation(f, n, 1, max_points);
  return osc.spread + 2.0 * osc.max_error;
}

VariationBracket var_bracket(const Potential& f, std::size_t n, std::size_t max_points) {
  if (const auto depth = f.locally_constant_depth()) {
    const double v = var_n(f, n, max_points);
    return {v, v};
  }
  const auto osc = enumerate_oscillation(f, n, 1, max_points);
  return {std::max(0.0, osc.spread - 2.0 * osc.max_error), f.variation_bound(n)};
}

double walters_estimate(const Potential& f, std::size_t p, std::size_t N, std::size_t max_points) {
  if (p == 0 || N == 0) throw std::invalid_argument("walters_estimate needs p >= 1 and N >= 1");
  const int d = f.symbols();
  double best = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    if (const auto depth = f.locally_constant_depth()) {
      // S_n f depends on coordinates 1..n-1+depth.
      const std::size_t reach = n - 1 + *depth;
      if (n + p >= reach) continue;
      const std::size_t count = checked_pow(d, reach, max_points, "walters_estimate");
      std::vector<double> values(count);
      const Point zero = Point::constant(0);
      for (std::size_t i = 0; i < count; ++i) {
        values[i] = birkhoff(f, zero.prepend(word_at(i, reach, d)), n).value;
      }
      best = std::max(best, block_oscillation(values, ipow(static_cast<std::size_t>(d), reach - n - p)));
    } else {
      const auto osc = enumerate_oscillation(f, n + p, n, max_points);
      best = std::max(best, osc.spread + 2.0 * osc.max_error);
    }
  }
  return best;
}

JopSeries jop_series(const std::function<double(std::size_t)>& variation, double epsilon, std::size_t N) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("jop_series needs epsilon > 0");
  if (N == 0) throw std::invalid_argument("jop_series needs N >= 1");
  std::vector<double> log_terms(N + 1, 0.0);
  double cumulative = 0.0;
  JopSeries out;
  for (std::size_t n = 1; n <= N; ++n) {
    cumulative += variation(n);
    log_terms[n] = -(0.5 + epsilon) * cumulative;
    out.partial_sum += std::exp(log_terms[n]);
  }
  const std::size_t half = std::max<std::size_t>(1, N / 2);
  if (half == N) {
    out.tail_exponent = 0.0;
  } else {
    out.tail_exponent = -(log_terms[N] - log_terms[half]) /
                        (std::log(static_cast<double>(N)) - std::log(static_cast<double>(half)));
  }
  // Slack so that exact n^-1 tails are not pushed over the line by rounding.
  out.diverging = out.tail_exponent <= 1.0 + 1e-9;
  return out;
}

JopSeries jop_series(const Potential& f_normalized, double epsilon, std::size_t N, std::size_t max_points) {
  return jop_series([&](std::size_t n) { return var_n(f_normalized, n, max_points); }, epsilon, N);
}

}  // namespace ruelle
