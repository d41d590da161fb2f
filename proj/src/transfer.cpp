#include "ruelle/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

TransferOperator::TransferOperator(const Potential& f, std::size_t depth, const Point& tail)
    : d_(f.symbols()), depth_(depth) {
  if (depth == 0) throw std::invalid_argument("transfer operator needs depth >= 1");
  states_ = ipow(static_cast<std::size_t>(d_), depth);
  const std::size_t words = states_ * static_cast<std::size_t>(d_);
  weights_.resize(words);
  const auto lc = f.locally_constant_depth();
  const auto* table = f.table();
  for (std::size_t i = 0; i < words; ++i) {
    double value = 0.0;
    if (table != nullptr && *lc <= depth + 1) {
      value = (*table)[i / ipow(static_cast<std::size_t>(d_), depth + 1 - *lc)];
    } else {
      const auto e = f(tail.prepend(word_at(i, depth + 1, d_)));
      value = e.value;
      evaluation_error_ = std::max(evaluation_error_, e.error);
    }
    weights_[i] = std::exp(value);
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::domain_error("exp f overflows or underflows at depth " + std::to_string(depth));
    }
  }
  truncation_error_ = f.variation_bound(depth + 1);
}

CylinderFunction TransferOperator::apply(const CylinderFunction& g) const {
  if (g.symbols() != d_) throw std::invalid_argument("alphabet mismatch");
  if (g.depth() > depth_) {
    throw std::invalid_argument("function depth " + std::to_string(g.depth()) + " exceeds operator depth " +
                                std::to_string(depth_));
  }
  // (a.w) restricted to g.depth() has index (a d^m + w) / d^(m+1-k).
  const std::size_t drop = ipow(static_cast<std::size_t>(d_), depth_ + 1 - g.depth());
  std::vector<double> out(states_, 0.0);
  for (Symbol a = 0; a < d_; ++a) {
    const std::size_t base = static_cast<std::size_t>(a) * states_;
    for (std::size_t w = 0; w < states_; ++w) out[w] += weights_[base + w] * g.at((base + w) / drop);
  }
  return CylinderFunction(d_, depth_, std::move(out));
}

std::vector<double> TransferOperator::apply_dual(std::span<const double> rho) const {
  if (rho.size() != states_) throw std::invalid_argument("mass vector must have d^m entries");
  std::vector<double> out(states_, 0.0);
  const auto d = static_cast<std::size_t>(d_);
  for (Symbol a = 0; a < d_; ++a) {
    const std::size_t base = static_cast<std::size_t>(a) * states_;
    for (std::size_t w = 0; w < states_; ++w) out[(base + w) / d] += rho[w] * weights_[base + w];
  }
  return out;
}

CylinderFunction apply(const Potential& f, const CylinderFunction& g, std::size_t m) {
  return TransferOperator(f, m).apply(g);
}

std::vector<double> dual_apply(const Potential& f, const CylinderMeasure& mu, std::size_t m) {
  if (mu.depth() != m) throw std::invalid_argument("measure depth must equal the operator depth");
  return TransferOperator(f, m).apply_dual(mu.weights());
}

namespace {

double sup_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

struct RatioBounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
};

RatioBounds ratio_bounds(std::span<const double> image, std::span<const double> v) {
  RatioBounds r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double q = image[i] / v[i];
    r.lo = std::min(r.lo, q);
    r.hi = std::max(r.hi, q);
  }
  return r;
}

}  // namespace

RpfData power_iterate(const Potential& f, std::size_t m, PowerIterationOptions options) {
  if (!(options.tol > 0.0) || options.max_iter < 1) throw std::invalid_argument("invalid power iteration options");
  const TransferOperator op(f, m);
  const int d = op.symbols();
  const std::size_t n = op.states();
  // Stop well inside the requested tolerance; the residual test below decides success.
  const double target = std::max(options.tol * 1e-3, 4.0 * std::numeric_limits<double>::epsilon());

  // Right vector. Collatz-Wielandt: min(L psi / psi) <= lambda <= max(L psi / psi).
  std::vector<double> psi(n, 1.0);
  int iterations = 0;
  RatioBounds bounds;
  for (int it = 0; it < options.max_iter; ++it) {
    auto image = op.apply(CylinderFunction(d, m, psi)).table();
    bounds = ratio_bounds(image, psi);
    const double scale = sup_norm(image);
    for (std::size_t i = 0; i < n; ++i) psi[i] = image[i] / scale;
    iterations = it + 1;
    if (bounds.hi - bounds.lo <= target * bounds.hi) break;
  }
  const double lambda = 0.5 * (bounds.lo + bounds.hi);

  // Left vector, normalized to unit mass each step.
  std::vector<double> nu(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < options.max_iter; ++it) {
    auto image = op.apply_dual(nu);
    const auto b = ratio_bounds(image, nu);
    const double mass = std::accumulate(image.begin(), image.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) nu[i] = image[i] / mass;
    iterations = std::max(iterations, it + 1);
    if (b.hi - b.lo <= target * b.hi) break;
  }

  const auto l_psi = op.apply(CylinderFunction(d, m, psi)).table();
  const auto l_nu = op.apply_dual(nu);
  double res_fn = 0.0;
  double res_meas = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res_fn = std::max(res_fn, std::abs(l_psi[i] - lambda * psi[i]));
    res_meas = std::max(res_meas, std::abs(l_nu[i] - lambda * nu[i]));
  }
  res_fn /= lambda * sup_norm(psi);
  res_meas /= lambda * sup_norm(nu);
  if (res_fn > options.tol || res_meas > options.tol) {
    throw ConvergenceError("power iteration at depth " + std::to_string(m) + " did not reach tol " +
                           std::to_string(options.tol) + " within " + std::to_string(options.max_iter) +
                           " iterations (residuals " + std::to_string(res_fn) + ", " + std::to_string(res_meas) +
                           ")");
  }

  auto nu_measure = CylinderMeasure::from_unnormalized(d, m, nu);
  double pairing = 0.0;
  for (std::size_t i = 0; i < n; ++i) pairing += nu_measure.at(i) * psi[i];
  for (double& v : psi) v /= pairing;

  const double spread = op.evaluation_error() + op.truncation_error().value_or(0.0);
  RpfData out{lambda,
              CylinderFunction(d, m, std::move(psi)),
              std::move(nu_measure),
              res_fn,
              res_meas,
              iterations,
              lambda * std::exp(-spread),
              lambda * std::exp(spread)};
  return out;
}

double pressure(const Potential& f, std::size_t m, PowerIterationOptions options) {
  return std::log(power_iterate(f, m, options).lambda);
}

Potential normalize(const Potential& f, const RpfData& rpf) {
  const std::size_t m = rpf.psi.depth();
  const int d = f.symbols();
  const auto& psi = rpf.psi.table();
  if (*std::min_element(psi.begin(), psi.end()) <= 0.0) {
    throw std::domain_error("normalization needs a strictly positive eigenfunction");
  }
  const TransferOperator op(f, m);
  const std::size_t states = op.states();
  const std::size_t words = states * static_cast<std::size_t>(d);
  const double log_lambda = std::log(rpf.lambda);
  std::vector<double> table(words);
  for (std::size_t i = 0; i < words; ++i) {
    const auto a = static_cast<Symbol>(i / states);
    const std::size_t w = i % states;
    table[i] = std::log(op.weight(a, w)) + std::log(psi[i / static_cast<std::size_t>(d)]) - std::log(psi[w]) -
               log_lambda;
  }
  return make_locally_constant(f.alphabet(), m + 1, std::move(table));
}

double check_normalized(const Potential& f, std::size_t m) {
  const auto image = apply(f, CylinderFunction::constant(f.symbols(), 1.0), m);
  double dev = 0.0;
  for (double v : image.table()) dev = std::max(dev, std::abs(v - 1.0));
  return dev;
}

CylinderFunction iterate_to_fixed_point(const Potential& f_bar, const CylinderFunction& g, std::size_t m,
                                        std::size_t n) {
  if (g.depth() > m) throw std::invalid_argument("function depth exceeds operator depth");
  const TransferOperator op(f_bar, m);
  if (n == 0) return g.depth() == m ? g : g.refine(m - g.depth());
  CylinderFunction h = op.apply(g);
  for (std::size_t k = 1; k < n; ++k) h = op.apply(h);
  return h;
}

std::pair<CylinderMeasure, double> dual_T_iterate(const Potential& f, const CylinderMeasure& mu0, std::size_t m,
                                                  std::size_t steps) {
  if (mu0.depth() != m) throw std::invalid_argument("initial measure depth must equal the operator depth");
  if (steps == 0) throw std::invalid_argument("dual_T_iterate needs at least one step");
  const TransferOperator op(f, m);
  std::vector<double> mu = mu0.weights();
  double mass = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    mu = op.apply_dual(mu);
    mass = std::accumulate(mu.begin(), mu.end(), 0.0);
    for (double& v : mu) v /= mass;
  }
  return {CylinderMeasure::from_unnormalized(f.symbols(), m, std::move(mu)), mass};
}

}  // namespace ruelle
