#include "ruelle/ising.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ruelle::ising {

void Params::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (cutoff < 2) throw std::invalid_argument("series cutoff must be at least 2");
}

TwoSidedPoint TwoSidedPoint::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("two-sided point needs PAST:FUTURE");
  return {Point::parse(text.substr(0, colon), 2), Point::parse(text.substr(colon + 1), 2)};
}

TwoSidedPoint TwoSidedPoint::shifted() const {
  const Symbol x0 = future.at(1);
  return {past.prepend(std::span<const Symbol>(&x0, 1)), future.shifted(1)};
}

int TwoSidedPoint::spin(long i) const {
  return spin_of(i >= 0 ? future.at(static_cast<std::size_t>(i) + 1) : past.at(static_cast<std::size_t>(-i)));
}

std::string TwoSidedPoint::to_string() const { return past.to_string() + ":" + future.to_string(); }

namespace {

void require_spins(const Point& x) {
  if (x.max_symbol() > 1) throw std::invalid_argument("spin configurations use symbols 0 and 1 only");
}

double power(std::size_t j, double e) { return std::pow(static_cast<double>(j), e); }

// Upper bound on sum_{m >= T} sum_{n >= 1} (m+n)^-a + sum_{m < T} sum_{n > J} (m+n)^-a, a > 2, T >= 1.
double double_tail(double a, std::size_t T, std::size_t J) {
  const double t = static_cast<double>(T);
  // sum_{s > T} (s - T) s^-a <= T^{2-a}/(a-2) - T (T+1)^{1-a}/(a-1).
  double s = std::pow(t, 2.0 - a) / (a - 2.0) - t * std::pow(t + 1.0, 1.0 - a) / (a - 1.0);
  for (std::size_t m = 0; m < T; ++m) s += power(m + J, 1.0 - a) / (a - 1.0);
  return s;
}

void require_summable(const Params& p, std::size_t terms) {
  p.validate();
  if (!(p.alpha > 2.0)) {
    throw std::domain_error("the transfer-function series diverges for alpha <= 2 (it is finite as long as alpha > 2)");
  }
  if (terms == 0) throw std::invalid_argument("transfer function needs at least one term");
}

}  // namespace

Evaluation zeta(double alpha, std::size_t J) {
  if (!(alpha > 1.0)) throw std::invalid_argument("zeta needs alpha > 1");
  if (J == 0) throw std::invalid_argument("zeta needs J >= 1");
  double s = 0.0;
  // Smallest terms first.
  for (std::size_t j = J; j >= 1; --j) s += power(j, -alpha);
  const double hi = power(J, 1.0 - alpha) / (alpha - 1.0);
  const double lo = power(J + 1, 1.0 - alpha) / (alpha - 1.0);
  const double rounding = 4.0 * static_cast<double>(J) * std::numeric_limits<double>::epsilon() * s;
  return {s + 0.5 * (lo + hi), 0.5 * (hi - lo) + rounding};
}

Evaluation f_two_sided(const Params& p, const TwoSidedPoint& x) {
  p.validate();
  require_spins(x.past);
  require_spins(x.future);
  double s = 0.0;
  for (std::size_t n = p.cutoff; n >= 1; --n) {
    s += (x.spin(static_cast<long>(n)) + x.spin(-static_cast<long>(n))) * power(n, -p.alpha);
  }
  return {-x.spin(0) * s, 2.0 * power(p.cutoff, 1.0 - p.alpha) / (p.alpha - 1.0)};
}

Evaluation g_one_sided(const Params& p, const Point& x) {
  p.validate();
  require_spins(x);
  double s = 0.0;
  for (std::size_t j = p.cutoff; j >= 1; --j) s += spin_of(x.at(j + 1)) * power(j, -p.alpha);
  const auto z = zeta(p.alpha, p.cutoff);
  return {-spin_of(x.at(1)) * s - z.value, power(p.cutoff, 1.0 - p.alpha) / (p.alpha - 1.0) + z.error};
}

Potential g_potential(const Params& p) {
  p.validate();
  const double a = p.alpha;
  regularity::SummableVariation meta{
      [a](std::size_t n) {
        const double k = static_cast<double>(std::max<std::size_t>(n, 1));
        return 2.0 * (std::pow(k, -a) + std::pow(k, 1.0 - a) / (a - 1.0));
      },
      [a](std::size_t n) {
        if (!(a > 2.0)) return std::numeric_limits<double>::infinity();
        const double k = static_cast<double>(std::max<std::size_t>(n, 1));
        return 2.0 * (std::pow(k, 1.0 - a) + std::pow(k, 2.0 - a) / (a - 2.0));
      }};
  return Potential(Alphabet::spins(), [p](const Point& x) { return g_one_sided(p, x); }, std::move(meta));
}

Evaluation transfer_h(const Params& p, const TwoSidedPoint& x, std::size_t terms) {
  require_summable(p, terms);
  require_spins(x.past);
  require_spins(x.future);
  const Symbol x0 = x.future.at(1);
  // phi(x) = x: every term vanishes.
  if (x.past == Point::constant(x0)) return {0.0, 0.0};
  double h = 0.0;
  for (std::size_t m = terms; m-- > 0;) {
    double inner = 0.0;
    for (std::size_t n = p.cutoff; n >= 1; --n) {
      inner += (x.spin(-static_cast<long>(n)) - spin_of(x0)) * power(m + n, -p.alpha);
    }
    h -= x.spin(static_cast<long>(m)) * inner;
  }
  return {h, 2.0 * double_tail(p.alpha, terms, p.cutoff)};
}

Evaluation g_from_transfer(const Params& p, const Point& x, std::size_t terms) {
  require_summable(p, terms);
  const auto g = g_one_sided(p, x);
  const int jump = spin_of(x.at(2)) - spin_of(x.at(1));
  if (jump == 0) return g;
  double s = 0.0;
  for (std::size_t m = terms; m-- > 0;) {
    double inner = 0.0;
    for (std::size_t n = p.cutoff; n >= 1; --n) inner += power(m + n, -p.alpha);
    s += spin_of(x.at(m + 2)) * inner;
  }
  return {g.value + jump * s, g.error + 2.0 * double_tail(p.alpha, terms, p.cutoff)};
}

CoboundaryResult coboundary_check(const Params& p, const TwoSidedPoint& x, std::size_t terms) {
  const auto f = f_two_sided(p, x);
  const auto g = g_one_sided(p, x.future);
  const auto gt = g_from_transfer(p, x.future, terms);
  const auto h = transfer_h(p, x, terms);
  const auto hs = transfer_h(p, x.shifted(), terms);
  CoboundaryResult out;
  const double common = f.error + h.error + hs.error;
  out.residual = std::abs(f.value - g.value - h.value + hs.value);
  out.bound = common + g.error;
  out.residual_transfer = std::abs(f.value - gt.value - h.value + hs.value);
  out.bound_transfer = common + gt.error;
  return out;
}

HoelderWitness hoelder_witness(const Params& p, double gamma, double M) {
  p.validate();
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  constexpr std::size_t kMaxN = 10'000'000;
  std::size_t N = 1;
  while (std::exp2(static_cast<double>(N) * gamma) * 4.0 * power(N + 1, -p.alpha) <= M) {
    if (++N > kMaxN) throw std::domain_error("no witness below N = 10^7");
  }
  HoelderWitness w;
  w.N = N;
  w.x = {Point::constant(1), Point::constant(1)};
  Word past(N, 1);
  past.push_back(0);
  Word future(N + 1, 1);
  future.push_back(0);
  w.y = {Point(past, {1}), Point(future, {1})};
  // Both series agree beyond |n| = N+1, so the truncated difference is exact.
  Params q = p;
  q.cutoff = std::max(p.cutoff, N + 1);
  w.difference = std::abs(f_two_sided(q, w.x).value - f_two_sided(q, w.y).value);
  w.ratio = w.difference * std::exp2(static_cast<double>(N + 1) * gamma);
  return w;
}

WaltersScaling ising_walters_estimate(const Params& p, std::size_t p_offset, std::size_t N) {
  p.validate();
  if (p_offset == 0 || N == 0) throw std::invalid_argument("walters estimate needs p >= 1 and N >= 1");
  const double e = 1.0 - p.alpha;
  WaltersScaling out;
  for (std::size_t j = N + p_offset; j >= p_offset; --j) out.finite += power(j, e);
  out.decaying = p.alpha > 2.0;
  if (!out.decaying) {
    out.limit = std::numeric_limits<double>::infinity();
    out.limit_error = 0.0;
    return out;
  }
  const std::size_t Q = p_offset + 100'000;
  double s = 0.0;
  for (std::size_t j = Q; j >= p_offset; --j) s += power(j, e);
  const double hi = power(Q, 2.0 - p.alpha) / (p.alpha - 2.0);
  const double lo = power(Q + 1, 2.0 - p.alpha) / (p.alpha - 2.0);
  out.limit = s + 0.5 * (hi + lo);
  out.limit_error = 0.5 * (hi - lo) + 4.0 * static_cast<double>(Q) * std::numeric_limits<double>::epsilon() * s;
  return out;
}

}  // namespace ruelle::ising
