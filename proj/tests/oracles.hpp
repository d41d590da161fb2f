#pragma once

// Reference computations used only by the tests. They avoid the library's
// fast paths: kernels are summed point by point from explicit Birkhoff sums,
// and eigendata comes from a dense eigensolve.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"

namespace oracle {

using ruelle::Point;
using ruelle::Potential;
using ruelle::Word;

inline std::vector<double> random_table(std::mt19937_64& rng, int d, std::size_t depth, double amplitude) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> t(ruelle::ipow(static_cast<std::size_t>(d), depth));
  for (double& v : t) v = u(rng);
  return t;
}

inline Potential random_potential(std::mt19937_64& rng, int d, std::size_t depth, double amplitude = 1.0) {
  return ruelle::make_locally_constant(ruelle::Alphabet(d), depth, random_table(rng, d, depth, amplitude));
}

inline Point random_point(std::mt19937_64& rng, int d, int max_prefix = 5, int max_cycle = 3) {
  std::uniform_int_distribution<int> sym(0, d - 1);
  std::uniform_int_distribution<int> plen(0, max_prefix);
  std::uniform_int_distribution<int> clen(1, max_cycle);
  Word prefix(static_cast<std::size_t>(plen(rng)));
  Word cycle(static_cast<std::size_t>(clen(rng)));
  for (auto& s : prefix) s = sym(rng);
  for (auto& s : cycle) s = sym(rng);
  return Point(prefix, cycle);
}

/// f(x) for a depth-r table, read directly from coordinates.
inline double table_value(const std::vector<double>& table, int d, std::size_t r, const Point& x) {
  std::size_t idx = 0;
  for (std::size_t i = 1; i <= r; ++i) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(x.at(i));
  return table[idx];
}

/// Dense matrix of L_f on functions of the first m coordinates, f of depth <= m+1:
/// (L g)(w) = sum_a exp f(a w) g((a w) truncated to m).
inline Eigen::MatrixXd dense_transfer(const Potential& f, std::size_t m) {
  const int d = f.symbols();
  const auto n = static_cast<Eigen::Index>(ruelle::ipow(static_cast<std::size_t>(d), m));
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index w = 0; w < n; ++w) {
    const Word word = ruelle::word_at(static_cast<std::size_t>(w), m, d);
    for (int a = 0; a < d; ++a) {
      Word aw{a};
      aw.insert(aw.end(), word.begin(), word.end());
      const double fv = f(Point::constant(0).prepend(aw)).value;
      aw.pop_back();
      L(w, static_cast<Eigen::Index>(ruelle::word_index(aw, d))) += std::exp(fv);
    }
  }
  return L;
}

struct DenseEigen {
  double lambda = 0.0;
  Eigen::VectorXd right;  // positive, max-normalized
  Eigen::VectorXd left;   // positive, sums to 1
};

inline DenseEigen dense_perron(const Eigen::MatrixXd& L) {
  DenseEigen out;
  auto pick = [](const Eigen::MatrixXd& M, double& value) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    }
    value = es.eigenvalues()[best].real();
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    return v;
  };
  double lt = 0.0;
  out.right = pick(L, out.lambda);
  out.right /= out.right.maxCoeff();
  out.left = pick(L.transpose(), lt);
  out.left /= out.left.sum();
  return out;
}

/// S_n f(x) by evaluating f at x, sigma x, ..., one point at a time.
inline double birkhoff_direct(const Potential& f, const Point& x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += f(x.shifted(j)).value;
  return s;
}

/// K_n(g, y) summed over the d^n points w . sigma^n y with explicit weights.
template <typename G>
double kernel_direct(const Potential& f, double beta, std::size_t n, const Point& y, G&& g) {
  const int d = f.symbols();
  const Point tail = y.shifted(n);
  const std::size_t count = ruelle::ipow(static_cast<std::size_t>(d), n);
  std::vector<double> logw(count);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back(tail.prepend(ruelle::word_at(i, n, d)));
    logw[i] = beta * birkhoff_direct(f, pts.back(), n);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = std::exp(logw[i] - top);
    num += w * g(pts[i]);
    den += w;
  }
  return num / den;
}

/// sum_{j=1}^{J} j^-s summed from the small end, plus an Euler-Maclaurin tail.
inline double zeta_series(double s, std::size_t J = 2'000'000) {
  double sum = 0.0;
  for (std::size_t j = J; j >= 1; --j) sum += std::pow(static_cast<double>(j), -s);
  const double x = static_cast<double>(J);
  return sum + std::pow(x, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(x, -s) + s / 12.0 * std::pow(x, -s - 1.0);
}

/// Dirichlet eta: sum (-1)^{j+1} j^-s, averaged over two consecutive partial sums.
inline double eta_series(double s, std::size_t J = 2'000'000) {
  double a = 0.0;
  for (std::size_t j = J; j >= 1; --j) a += ((j % 2 == 1) ? 1.0 : -1.0) * std::pow(static_cast<double>(j), -s);
  const double b = a + ((J % 2 == 0) ? 1.0 : -1.0) * std::pow(static_cast<double>(J + 1), -s);
  return 0.5 * (a + b);
}

}  // namespace oracle
