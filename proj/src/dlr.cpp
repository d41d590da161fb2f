#include "ruelle/dlr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

std::size_t guarded_pow(int d, std::size_t n, std::size_t max_points, const char* what) {
  std::size_t count = 0;
  try {
    count = ipow(static_cast<std::size_t>(d), n);
  } catch (const std::overflow_error&) {
    count = std::numeric_limits<std::size_t>::max();
  }
  if (count > max_points) {
    throw SizeGuardError(std::string(what) + ": " + std::to_string(d) + "^" + std::to_string(n) +
                         " points exceed the limit of " + std::to_string(max_points));
  }
  return count;
}

// g at the point (word i of length n) . tail.
double value_at(const CylinderFunction& g, std::size_t i, std::size_t n, const Point& tail) {
  const int d = g.symbols();
  const std::size_t k = g.depth();
  if (k <= n) return g.at(i / ipow(static_cast<std::size_t>(d), n - k));
  return g.at(i * ipow(static_cast<std::size_t>(d), k - n) + tail.first_index(k - n, d));
}

// exp(lw - max lw), so the largest weight is 1.
std::vector<double> relative_weights(const std::vector<double>& lw) {
  const double top = *std::max_element(lw.begin(), lw.end());
  std::vector<double> w(lw.size());
  for (std::size_t i = 0; i < lw.size(); ++i) w[i] = std::exp(lw[i] - top);
  return w;
}

double kernel_from_weights(const std::vector<double>& w, std::size_t n, const Point& tail,
                           const CylinderFunction& g) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    num += w[i] * value_at(g, i, n, tail);
    den += w[i];
  }
  return num / den;
}

double kernel_at_tail(const Potential& f, double beta, std::size_t n, const Point& tail, const CylinderFunction& g,
                      std::size_t max_points) {
  return kernel_from_weights(relative_weights(volume_log_weights(f, beta, n, tail, max_points)), n, tail, g);
}

void check_alphabet(const Potential& f, const CylinderFunction& g) {
  if (f.symbols() != g.symbols()) throw std::invalid_argument("alphabet mismatch");
}

}  // namespace

std::vector<double> volume_log_weights(const Potential& f, double beta, std::size_t n, const Point& tail,
                                       std::size_t max_points) {
  const int d = f.symbols();
  const auto dd = static_cast<std::size_t>(d);
  guarded_pow(d, n, max_points, "volume enumeration");
  if (tail.max_symbol() >= d) throw std::invalid_argument("boundary uses symbols outside the alphabet");
  const auto* table = f.table();
  const std::size_t r = f.locally_constant_depth().value_or(0);

  // F_k(u) = f(u . tail) + F_{k-1}(u_2..u_k) for words u of length k.
  std::vector<double> prev{0.0};
  std::size_t width = 1;  // d^(k-1)
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> cur(width * dd);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      double v = 0.0;
      if (table != nullptr) {
        const std::size_t idx = k >= r ? i / ipow(dd, k - r) : i * ipow(dd, r - k) + tail.first_index(r - k, d);
        v = (*table)[idx];
      } else {
        v = f(tail.prepend(word_at(i, k, d))).value;
      }
      cur[i] = beta * v + prev[i % width];
    }
    prev = std::move(cur);
    width *= dd;
  }
  return prev;
}

double partition(const Potential& f, double beta, std::size_t n, const Point& y, std::size_t max_points) {
  const auto lw = volume_log_weights(f, beta, n, y.shifted(n), max_points);
  const double top = *std::max_element(lw.begin(), lw.end());
  double s = 0.0;
  for (double v : lw) s += std::exp(v - top);
  return std::exp(top) * s;
}

double kernel(const Potential& f, double beta, std::size_t n, const Point& y, const CylinderFunction& g,
              std::size_t max_points) {
  check_alphabet(f, g);
  return kernel_at_tail(f, beta, n, y.shifted(n), g, max_points);
}

double kernel_via_transfer(const Potential& f, double beta, std::size_t n, const Point& y,
                           const CylinderFunction& g, std::size_t m) {
  check_alphabet(f, g);
  if (n == 0) return g(y);
  const TransferOperator op(scaled(f, beta), m);
  auto num = op.apply(g);
  auto den = op.apply(CylinderFunction::constant(f.symbols(), 1.0));
  for (std::size_t k = 1; k < n; ++k) {
    num = op.apply(num);
    den = op.apply(den);
  }
  const Point tail = y.shifted(n);
  return num(tail) / den(tail);
}

CylinderMeasure kernel_measure(const Potential& f, double beta, std::size_t n, const Point& y, std::size_t m,
                               std::size_t max_points) {
  if (m > n) throw std::invalid_argument("kernel marginal depth must not exceed the volume");
  const int d = f.symbols();
  const auto w = relative_weights(volume_log_weights(f, beta, n, y.shifted(n), max_points));
  const std::size_t drop = ipow(static_cast<std::size_t>(d), n - m);
  std::vector<double> out(ipow(static_cast<std::size_t>(d), m), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) out[i / drop] += w[i];
  return CylinderMeasure::from_unnormalized(d, m, std::move(out));
}

double finite_volume_dlr_check(const Potential& f, double beta, std::size_t n, std::size_t r, const Point& z,
                               const CylinderFunction& g, std::size_t max_points) {
  check_alphabet(f, g);
  const int d = f.symbols();
  const Point far = z.shifted(n + r);
  const auto outer = relative_weights(volume_log_weights(f, beta, n + r, far, max_points));

  // K_n(g, x) only sees sigma^n x = u . far, u the last r symbols of the outer word.
  const std::size_t inner_count = ipow(static_cast<std::size_t>(d), r);
  std::vector<double> inner(inner_count);
  for (std::size_t u = 0; u < inner_count; ++u) {
    inner[u] = kernel_at_tail(f, beta, n, far.prepend(word_at(u, r, d)), g, max_points);
  }
  double lhs = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    lhs += outer[i] * inner[i % inner_count];
    mass += outer[i];
  }
  lhs /= mass;
  const double rhs = kernel_from_weights(outer, n + r, far, g);
  return std::abs(lhs - rhs);
}

TlTable tl_sequence(const Potential& f, double beta, std::span<const Word> cylinders,
                    std::span<const Point> boundaries, std::size_t n_max, std::size_t reference_depth,
                    PowerIterationOptions options, std::size_t max_points) {
  if (cylinders.empty() || boundaries.empty()) throw std::invalid_argument("tl_sequence needs cylinders and boundaries");
  const int d = f.symbols();
  std::size_t longest = 1;
  for (const auto& c : cylinders) longest = std::max(longest, c.size());
  std::size_t m = reference_depth;
  if (m == 0) {
    if (const auto r = f.locally_constant_depth()) {
      m = std::max({longest, *r > 0 ? *r - 1 : std::size_t{1}, std::size_t{1}});
    } else {
      // No exact depth: go as deep as a 2^16-entry transfer table allows.
      m = longest;
      while (ipow(static_cast<std::size_t>(d), m + 2) <= (std::size_t{1} << 16)) ++m;
    }
  }
  if (m < longest) throw std::invalid_argument("reference depth does not resolve every cylinder");

  TlTable out{{}, std::vector<std::vector<double>>(cylinders.size(), std::vector<double>(n_max, 0.0)),
              power_iterate(scaled(f, beta), m, options)};
  std::vector<double> nu_ref(cylinders.size());
  std::vector<CylinderFunction> indicators;
  for (std::size_t c = 0; c < cylinders.size(); ++c) {
    nu_ref[c] = out.reference.nu.of(Cylinder{cylinders[c]});
    indicators.push_back(CylinderFunction::indicator(d, cylinders[c]));
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t b = 0; b < boundaries.size(); ++b) {
      const Point tail = boundaries[b].shifted(n);
      const auto w = relative_weights(volume_log_weights(f, beta, n, tail, max_points));
      for (std::size_t c = 0; c < cylinders.size(); ++c) {
        const double k = kernel_from_weights(w, n, tail, indicators[c]);
        const double dev = std::abs(k - nu_ref[c]);
        out.rows.push_back({n, cylinders[c], b, k, nu_ref[c], dev});
        out.max_deviation[c][n - 1] = std::max(out.max_deviation[c][n - 1], dev);
      }
    }
  }
  return out;
}

DEstimate D_estimate(const Potential& f, std::size_t N, std::span<const Point> tails, std::size_t max_points) {
  const int d = f.symbols();
  std::vector<Point> used;
  std::optional<double> bound;
  if (const auto r = f.locally_constant_depth()) {
    // S_n f(w t) reads at most r - 1 coordinates of t.
    const std::size_t reach = *r > 0 ? *r - 1 : 0;
    const std::size_t count = guarded_pow(d, reach, max_points, "D_estimate tails");
    for (std::size_t i = 0; i < count; ++i) used.push_back(Point::constant(0).prepend(word_at(i, reach, d)));
    double s = 0.0;
    for (std::size_t k = 1; k < *r; ++k) s += var_n(f, k, max_points);
    bound = s;
  } else {
    used = tails.empty() ? reference_tails(d) : std::vector<Point>(tails.begin(), tails.end());
    if (const auto t = f.variation_tail(1); t && std::isfinite(*t)) bound = *t;
  }

  DEstimate out;
  for (std::size_t n = 1; n <= N; ++n) {
    std::vector<double> lo;
    std::vector<double> hi;
    for (const auto& t : used) {
      const auto s = volume_log_weights(f, 1.0, n, t, max_points);
      if (lo.empty()) {
        lo = s;
        hi = s;
        continue;
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        lo[i] = std::min(lo[i], s[i]);
        hi[i] = std::max(hi[i], s[i]);
      }
    }
    double best = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) best = std::max(best, hi[i] - lo[i]);
    out.per_n.push_back(best);
    out.value = std::max(out.value, best);
  }
  out.bound = bound;
  return out;
}

SandwichResult sandwich_check(const Potential& f, double beta, std::size_t n, const Cylinder& c, const Point& y,
                              const Point& z, double D, std::size_t max_points) {
  if (c.depth() > n) throw std::invalid_argument("sandwich bound needs |C| <= n");
  const auto g = CylinderFunction::indicator(f.symbols(), c.base);
  SandwichResult out;
  out.kernel_y = kernel(f, beta, n, y, g, max_points);
  out.kernel_z = kernel(f, beta, n, z, g, max_points);
  const double spread = std::exp(2.0 * D * std::abs(beta));
  out.margin = std::min(spread * out.kernel_z / out.kernel_y, out.kernel_y * spread / out.kernel_z);
  // Relative slack for rounding when D is attained exactly.
  out.holds = out.margin >= 1.0 - 1e-12;
  return out;
}

DlrResidual dlr_residual(const Potential& f, double beta, const CylinderMeasure& mu, std::size_t n,
                         const CylinderFunction& g, const Point& tail, std::size_t max_points) {
  check_alphabet(f, g);
  if (mu.symbols() != f.symbols()) throw std::invalid_argument("alphabet mismatch");
  const std::size_t M = mu.depth();
  if (n > M) throw std::invalid_argument("dlr_residual needs n <= depth of the measure");
  if (g.depth() > M) throw std::invalid_argument("dlr_residual needs g resolved by the measure");
  const int d = f.symbols();
  guarded_pow(d, M, max_points, "dlr_residual");

  // K_n(g, v . tail) depends on v only through v_{n+1}..v_M.
  const std::size_t inner_count = ipow(static_cast<std::size_t>(d), M - n);
  std::vector<double> inner(inner_count);
  for (std::size_t u = 0; u < inner_count; ++u) {
    inner[u] = kernel_at_tail(f, beta, n, tail.prepend(word_at(u, M - n, d)), g, max_points);
  }
  double lhs = 0.0;
  for (std::size_t v = 0; v < mu.weights().size(); ++v) lhs += mu.at(v) * inner[v % inner_count];

  DlrResidual out;
  out.residual = std::abs(lhs - integrate(mu, g));
  const auto r = f.locally_constant_depth();
  if (r && M + 1 >= n + *r) {
    out.quadrature_bound = 0.0;
  } else {
    // Points in one depth-M cylinder give S_n f values within sum_j var_{M-j}(f).
    double V = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = f.variation_bound(M - j);
      if (!v) {
        V = std::numeric_limits<double>::infinity();
        break;
      }
      V += *v;
    }
    out.quadrature_bound = (g.max() - g.min()) * (1.0 - std::exp(-2.0 * std::abs(beta) * V));
  }
  return out;
}

double constant_shift_check(const Potential& f, double beta, std::size_t n, const Point& y,
                            const CylinderFunction& g, double a_n, std::size_t max_points) {
  check_alphabet(f, g);
  const Point tail = y.shifted(n);
  const auto lw = volume_log_weights(f, beta, n, tail, max_points);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    const double w = std::exp(lw[i] - beta * a_n);
    num += w * value_at(g, i, n, tail);
    den += w;
  }
  if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num)) {
    throw std::domain_error("shifted weights leave the floating-point range");
  }
  return std::abs(num / den - kernel_from_weights(relative_weights(lw), n, tail, g));
}

double tail_measurability_check(const Potential& f, double beta, std::size_t n, const Point& y1, const Point& y2,
                                const CylinderFunction& g, std::size_t max_points) {
  if (!(y1.shifted(n) == y2.shifted(n))) {
    throw std::invalid_argument("boundaries must agree from coordinate n+1 on");
  }
  return std::abs(kernel(f, beta, n, y1, g, max_points) - kernel(f, beta, n, y2, g, max_points));
}

double change_of_measure_check(const Potential& f, std::size_t m, PowerIterationOptions options) {
  const auto rpf = power_iterate(f, m, options);
  const auto f_bar = normalize(f, rpf);
  const auto mu = power_iterate(f_bar, m, options).nu;
  double worst = 0.0;
  for (std::size_t w = 0; w < mu.weights().size(); ++w) {
    worst = std::max(worst, std::abs(rpf.nu.at(w) - mu.at(w) / rpf.psi.at(w)));
  }
  return worst;
}

}  // namespace ruelle
