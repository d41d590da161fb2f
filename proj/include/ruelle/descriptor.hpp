#pragma once

// JSON descriptors for potentials and JSON views of the library's results.
//
// A potential descriptor is {"kind": K, "params": {...}} with K one of
//   constant  {"d", "value"}
//   table     {"d", "depth", "values"}            values in word-index order
//   ising_lr  {"alpha", "cutoff"}                 the one-sided spin potential g
//   hofbauer  {"a", "b", "c", "A", "C", "p"}      a_n = a + A n^-p, c_n = c + C n^-p
//   random    {"d", "depth", "amplitude"}         iid uniform table entries, seeded
// Parameters may also sit at the top level of the descriptor.

#include <cstdint>

#include <json.hpp>

#include "ruelle/interaction.hpp"
#include "ruelle/potential.hpp"
#include "ruelle/shift.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

/// Throws std::invalid_argument naming the offending field.
Potential potential_from_json(const nlohmann::json& descriptor, std::uint64_t seed = 0);

nlohmann::json to_json(const CylinderFunction& g);
nlohmann::json to_json(const CylinderMeasure& mu);
nlohmann::json to_json(const RpfData& rpf);
nlohmann::json to_json(const SupportSet& s);
nlohmann::json to_json(const Interaction& phi);

}  // namespace ruelle
