#include "ruelle/descriptor.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "ruelle/ising.hpp"

namespace ruelle {

using nlohmann::json;

namespace {

const json& params_of(const json& desc) {
  if (desc.contains("params")) {
    if (!desc["params"].is_object()) throw std::invalid_argument("descriptor \"params\" must be an object");
    return desc["params"];
  }
  return desc;
}

template <typename T>
T field(const json& p, const char* name) {
  if (!p.contains(name)) throw std::invalid_argument(std::string("descriptor is missing \"") + name + "\"");
  try {
    return p[name].get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("descriptor field \"") + name + "\" has the wrong type");
  }
}

template <typename T>
T field_or(const json& p, const char* name, T fallback) {
  return p.contains(name) ? field<T>(p, name) : fallback;
}

Potential hofbauer_from(const json& p) {
  const double a = field<double>(p, "a");
  const double b = field<double>(p, "b");
  const double c = field<double>(p, "c");
  const double A = field_or<double>(p, "A", 0.0);
  const double C = field_or<double>(p, "C", 0.0);
  const double q = field_or<double>(p, "p", 2.0);
  if (!(q > 0.0)) throw std::invalid_argument("hofbauer exponent \"p\" must be positive");
  HofbauerWalters hw;
  hw.a = a;
  hw.b = b;
  hw.c = c;
  hw.a_seq = [a, A, q](std::size_t n) { return a + A * std::pow(static_cast<double>(n), -q); };
  hw.c_seq = [c, C, q](std::size_t n) { return c + C * std::pow(static_cast<double>(n), -q); };
  // Points sharing n >= 1 leading symbols either share their run class or
  // both lie in runs of length >= n, where a_j and c_j sit within B n^-q of a and c.
  const double B = std::max(std::abs(A), std::abs(C));
  const double osc = std::abs(a - b) + std::abs(b - c) + std::abs(a - c) + std::abs(A) + std::abs(C);
  auto var = [B, q, osc](std::size_t n) { return n == 0 ? osc : B * std::pow(static_cast<double>(n), -q); };
  auto tail = [B, q, osc](std::size_t n) {
    if (B == 0.0) return n == 0 ? osc : 0.0;
    if (!(q > 1.0)) return std::numeric_limits<double>::infinity();
    const double k = static_cast<double>(std::max<std::size_t>(n, 1));
    return (n == 0 ? osc : 0.0) + B * (std::pow(k, -q) + std::pow(k, 1.0 - q) / (q - 1.0));
  };
  hw.variation = regularity::SummableVariation{var, tail};
  return make_hofbauer_walters(std::move(hw));
}

}  // namespace

Potential potential_from_json(const json& desc, std::uint64_t seed) {
  if (!desc.is_object()) throw std::invalid_argument("potential descriptor must be a JSON object");
  const auto kind = field<std::string>(desc, "kind");
  const json& p = params_of(desc);
  if (kind == "constant") {
    return make_constant(Alphabet(field_or<int>(p, "d", 2)), field<double>(p, "value"));
  }
  if (kind == "table") {
    const int d = field_or<int>(p, "d", 2);
    const auto depth = field<std::size_t>(p, "depth");
    auto values = field<std::vector<double>>(p, "values");
    if (values.size() != ipow(static_cast<std::size_t>(d), depth)) {
      throw std::invalid_argument("table descriptor needs d^depth = " +
                                  std::to_string(ipow(static_cast<std::size_t>(d), depth)) + " values, got " +
                                  std::to_string(values.size()));
    }
    return make_locally_constant(Alphabet(d), depth, std::move(values));
  }
  if (kind == "ising_lr") {
    ising::Params ip;
    ip.alpha = field<double>(p, "alpha");
    ip.cutoff = field_or<std::size_t>(p, "cutoff", ip.cutoff);
    return ising::g_potential(ip);
  }
  if (kind == "hofbauer") return hofbauer_from(p);
  if (kind == "random") {
    const int d = field_or<int>(p, "d", 2);
    const auto depth = field<std::size_t>(p, "depth");
    const double amplitude = field_or<double>(p, "amplitude", 1.0);
    if (d < 2) throw std::invalid_argument("random descriptor needs d >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    std::vector<double> values(ipow(static_cast<std::size_t>(d), depth));
    for (double& v : values) v = u(rng);
    return make_locally_constant(Alphabet(d), depth, std::move(values));
  }
  throw std::invalid_argument("unknown potential kind \"" + kind + "\"");
}

json to_json(const CylinderFunction& g) { return {{"d", g.symbols()}, {"depth", g.depth()}, {"values", g.table()}}; }

json to_json(const CylinderMeasure& mu) {
  return {{"d", mu.symbols()}, {"depth", mu.depth()}, {"weights", mu.weights()}};
}

json to_json(const RpfData& rpf) {
  return {{"lambda", rpf.lambda},
          {"pressure", std::log(rpf.lambda)},
          {"lambda_interval", {rpf.lambda_lower, rpf.lambda_upper}},
          {"psi", to_json(rpf.psi)},
          {"nu", to_json(rpf.nu)},
          {"residual_fn", rpf.residual_fn},
          {"residual_meas", rpf.residual_meas},
          {"iterations", rpf.iterations}};
}

json to_json(const SupportSet& s) {
  if (s.kind == SupportSet::Kind::Pair) return {{"kind", "pair"}, {"n", s.a}, {"m", s.b}};
  return {{"kind", "progression"}, {"k", s.a}, {"n", s.b}};
}

json to_json(const Interaction& phi) {
  json terms = json::array();
  for (const auto& [support, term] : phi.terms()) terms.push_back({{"support", to_json(support)}, {"values", term.values}});
  const auto& t = phi.truncation();
  json out = {{"d", phi.symbols()},
              {"truncation", {{"k_max", t.k_max}, {"n_max", t.n_max}, {"site_cutoff", t.site_cutoff}}},
              {"terms", std::move(terms)}};
  if (phi.basepoint) {
    out["basepoint"] = phi.basepoint->to_string();
    out["basepoint_value"] = phi.basepoint_value;
    out["reconstruction_remainder"] = phi.reconstruction_remainder;
  }
  return out;
}

}  // namespace ruelle
