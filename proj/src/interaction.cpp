#include "ruelle/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "ruelle/errors.hpp"

namespace ruelle {

SupportSet SupportSet::progression(std::size_t k, std::size_t n) {
  if (k == 0) throw std::invalid_argument("progression A(k,n) needs k >= 1");
  return {Kind::Progression, k, n};
}

SupportSet SupportSet::pair(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("sites are numbered from 1");
  if (n == m) throw std::invalid_argument("pair support needs distinct sites");
  return {Kind::Pair, std::min(n, m), std::max(n, m)};
}

bool SupportSet::contains(std::size_t site) const {
  if (kind == Kind::Pair) return site == a || site == b;
  return site >= a && site <= max_site();
}

std::vector<std::size_t> SupportSet::sites() const {
  if (kind == Kind::Pair) return {a, b};
  std::vector<std::size_t> out;
  for (std::size_t s = a; s <= max_site(); ++s) out.push_back(s);
  return out;
}

std::string SupportSet::to_string() const {
  if (kind == Kind::Pair) return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
  return "A(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

double InteractionTerm::operator()(const Point& x, int d) const {
  std::size_t idx = 0;
  if (support.kind == SupportSet::Kind::Pair) {
    idx = static_cast<std::size_t>(x.at(support.a)) * static_cast<std::size_t>(d) +
          static_cast<std::size_t>(x.at(support.b));
  } else {
    idx = x.shifted(support.a - 1).first_index(support.size(), d);
  }
  return values[idx];
}

double InteractionTerm::sup_abs() const {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

Interaction::Interaction(Alphabet alphabet, Truncation truncation, RemainderFn remainder)
    : alphabet_(std::move(alphabet)), truncation_(truncation), remainder_(std::move(remainder)) {}

void Interaction::add(InteractionTerm term) {
  const std::size_t expected = ipow(static_cast<std::size_t>(symbols()), term.support.size());
  if (term.values.size() != expected) {
    throw std::invalid_argument("term on " + term.support.to_string() + " needs " + std::to_string(expected) +
                                " values");
  }
  const auto key = term.support;
  if (std::all_of(term.values.begin(), term.values.end(), [](double v) { return v == 0.0; })) {
    terms_.erase(key);
    return;
  }
  terms_.insert_or_assign(key, std::move(term));
}

const InteractionTerm* Interaction::find(const SupportSet& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? nullptr : &it->second;
}

double Interaction::value(const SupportSet& s, const Point& x) const {
  const auto* t = find(s);
  return t == nullptr ? 0.0 : (*t)(x, symbols());
}

namespace {

// Upper bound on sum_{i >= j} var_i(f), or nullopt when unknown.
std::function<std::optional<double>(std::size_t)> variation_tail_fn(const Potential& f) {
  if (const auto r = f.locally_constant_depth()) {
    std::vector<double> var(*r + 1, 0.0);
    for (std::size_t i = 1; i < *r; ++i) var[i] = var_n(f, i);
    return [var, r = *r](std::size_t j) -> std::optional<double> {
      double s = 0.0;
      for (std::size_t i = std::max<std::size_t>(j, 1); i < r; ++i) s += var[i];
      return s;
    };
  }
  return [f](std::size_t j) { return f.variation_tail(j); };
}

}  // namespace

Interaction from_potential(const Potential& f, const Point& y, Truncation cutoff, std::size_t max_points_per_term) {
  if (std::holds_alternative<regularity::GenericContinuous>(f.regularity())) {
    throw RegularityError("from_potential needs Hoelder, summable-variation or locally constant metadata");
  }
  if (cutoff.k_max == 0) throw std::invalid_argument("from_potential needs k_max >= 1");
  const int d = f.symbols();
  if (y.max_symbol() >= d) throw std::invalid_argument("basepoint uses symbols outside the alphabet");

  const auto tail = variation_tail_fn(f);
  if (!tail(cutoff.n_max + 2) || !std::isfinite(*tail(cutoff.n_max + 2))) {
    throw RegularityError("variation tail after n_max = " + std::to_string(cutoff.n_max) + " is not finite");
  }
  const std::size_t k_max = cutoff.k_max;
  const std::size_t n_max = cutoff.n_max;
  std::optional<double> hoelder_closed;
  if (const auto* h = std::get_if<regularity::Hoelder>(&f.regularity())) {
    const double q = std::exp2(-h->gamma);
    hoelder_closed = h->constant * std::exp2(-h->gamma * static_cast<double>(n_max + 3)) / ((1.0 - q) * (1.0 - q));
  }
  // Omitted progressions through a site s <= N all have k <= s and n > n_max,
  // and |Phi_{A(k,n)}| <= var_{k+n}(f).
  auto remainder = [tail, hoelder_closed, k_max, n_max](std::size_t N) {
    if (N > k_max) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t k = 1; k <= N; ++k) s += tail(k + n_max + 1).value_or(std::numeric_limits<double>::infinity());
    return hoelder_closed ? std::min(s, *hoelder_closed) : s;
  };

  Interaction phi(f.alphabet(), cutoff, remainder);
  const double f_y = f(y).value;
  const auto lc = f.locally_constant_depth();
  double max_error = f(y).error;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      // Both arguments share their first k+n coordinates.
      if (lc && n >= 1 && k + n >= *lc) continue;
      const std::size_t len = k + n + 1;
      std::size_t count = 0;
      try {
        count = ipow(static_cast<std::size_t>(d), len);
      } catch (const std::overflow_error&) {
        count = std::numeric_limits<std::size_t>::max();
      }
      if (count > max_points_per_term) {
        throw SizeGuardError("term " + SupportSet::progression(k, n).to_string() + " needs " + std::to_string(d) +
                             "^" + std::to_string(len) + " values");
      }
      const Point far = y.shifted(2 * k + n);
      const Point near = y.shifted(2 * k + n - 1);
      std::vector<double> values(count);
      for (std::size_t i = 0; i < count; ++i) {
        const Word u = word_at(i, len, d);
        const auto first = f(far.prepend(u));
        max_error = std::max(max_error, first.error);
        if (n == 0) {
          values[i] = first.value - f_y;
        } else {
          const auto second = f(near.prepend(std::span<const Symbol>(u).first(len - 1)));
          max_error = std::max(max_error, second.error);
          values[i] = first.value - second.value;
        }
      }
      phi.add({SupportSet::progression(k, n), std::move(values)});
    }
  }
  phi.basepoint = y;
  phi.basepoint_value = f_y;
  double omitted = 0.0;
  if (lc) {
    omitted = var_n(f, n_max + 2);
  } else {
    omitted = f.variation_bound(n_max + 2).value_or(*tail(n_max + 2));
  }
  phi.reconstruction_remainder = omitted + 2.0 * static_cast<double>(n_max + 1) * max_error;
  return phi;
}

double reconstruct_at_site1(const Interaction& phi, const Point& x) {
  double s = 0.0;
  for (const auto& [support, term] : phi.terms()) {
    if (support.contains(1)) s += term(x, phi.symbols());
  }
  return s;
}

InteractionNorm interaction_norm(const Interaction& phi, std::size_t N) {
  if (N == 0) throw std::invalid_argument("interaction_norm needs N >= 1");
  std::vector<double> per_site(N + 1, 0.0);
  for (const auto& [support, term] : phi.terms()) {
    if (support.min_site() > N) continue;
    const double s = term.sup_abs();
    for (std::size_t site : support.sites()) {
      if (site <= N) per_site[site] += s;
    }
  }
  return {*std::max_element(per_site.begin(), per_site.end()), phi.norm_remainder(N)};
}

double hamiltonian_from_interaction(const Interaction& phi, std::size_t n, const Point& x) {
  if (n == 0) throw std::invalid_argument("hamiltonian needs n >= 1");
  const auto& t = phi.truncation();
  if (t.k_max > 0 && n > t.k_max) {
    throw std::invalid_argument("volume " + std::to_string(n) + " exceeds the stored k_max " + std::to_string(t.k_max));
  }
  if (t.site_cutoff > 0 && n > t.site_cutoff) {
    throw std::invalid_argument("volume " + std::to_string(n) + " exceeds the stored site cutoff");
  }
  double h = 0.0;
  for (const auto& [support, term] : phi.terms()) {
    if (support.min_site() <= n) h += term(x, phi.symbols());
  }
  return h;
}

Interaction ising_nn(std::size_t site_cutoff) {
  if (site_cutoff < 2) throw std::invalid_argument("ising_nn needs a site cutoff >= 2");
  auto remainder = [site_cutoff](std::size_t N) { return N < site_cutoff ? 0.0 : 2.0; };
  Interaction phi(Alphabet(2), Truncation{0, 0, site_cutoff}, remainder);
  for (std::size_t n = 1; n < site_cutoff; ++n) phi.add({SupportSet::pair(n, n + 1), {-1.0, -1.0, -1.0, 0.0}});
  return phi;
}

Interaction ising_lr(double alpha, IsingLabels labels, std::size_t site_cutoff) {
  if (!(alpha > 1.0)) throw std::invalid_argument("ising_lr needs alpha > 1");
  if (site_cutoff < 2) throw std::invalid_argument("ising_lr needs a site cutoff >= 2");
  // Omitted partners of a site s <= N sit beyond the cutoff, at distance > L - N.
  auto remainder = [alpha, site_cutoff](std::size_t N) {
    if (N >= site_cutoff) return std::numeric_limits<double>::infinity();
    return std::pow(static_cast<double>(site_cutoff - N), 1.0 - alpha) / (alpha - 1.0);
  };
  const bool spins = labels == IsingLabels::Spins;
  const Alphabet alphabet = spins ? Alphabet::spins() : Alphabet(2);
  Interaction phi(alphabet, Truncation{0, 0, site_cutoff}, remainder);
  for (std::size_t n = 1; n <= site_cutoff; ++n) {
    for (std::size_t m = n + 1; m <= site_cutoff; ++m) {
      const double w = std::pow(static_cast<double>(m - n), -alpha);
      std::vector<double> values(4);
      for (Symbol p = 0; p < 2; ++p) {
        for (Symbol q = 0; q < 2; ++q) {
          const double prod = alphabet.label(p) * alphabet.label(q);
          values[static_cast<std::size_t>(2 * p + q)] = spins ? prod * w : (prod - 1.0) * w;
        }
      }
      phi.add({SupportSet::pair(n, m), std::move(values)});
    }
  }
  return phi;
}

Interaction operator+(const Interaction& lhs, const Interaction& rhs) {
  if (!(lhs.alphabet() == rhs.alphabet())) throw std::invalid_argument("alphabet mismatch");
  auto smaller = [](std::size_t a, std::size_t b) { return a == 0 ? b : (b == 0 ? a : std::min(a, b)); };
  const Truncation t{smaller(lhs.truncation().k_max, rhs.truncation().k_max),
                     std::min(lhs.truncation().n_max, rhs.truncation().n_max),
                     smaller(lhs.truncation().site_cutoff, rhs.truncation().site_cutoff)};
  Interaction out(lhs.alphabet(), t,
                  [lhs, rhs](std::size_t N) { return lhs.norm_remainder(N) + rhs.norm_remainder(N); });
  for (const auto& [support, term] : lhs.terms()) out.add(term);
  for (const auto& [support, term] : rhs.terms()) {
    if (const auto* mine = out.find(support)) {
      InteractionTerm sum = *mine;
      for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += term.values[i];
      out.add(std::move(sum));
    } else {
      out.add(term);
    }
  }
  return out;
}

}  // namespace ruelle
