#ifndef FOCAL_ORBITS_H_
#define FOCAL_ORBITS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "focal/salience.h"

namespace focal {

// Orbits of a symmetry group acting on the equilibrium set. Orbits are listed
// by their first member in the original equilibrium order; members keep that
// order too.
struct OrbitPartition {
  std::vector<std::vector<EquilibriumId>> orbits;
};

// A permutation of equilibrium positions: perm[i] is the image of element i.
using IndexPermutation = std::vector<std::size_t>;
// A permutation by id; ids absent from the map are fixed points.
using IdPermutation = std::map<EquilibriumId, EquilibriumId>;

// Orbits of the group generated by `generators`, i.e. the connected
// components of e ~ g(e). Throws kInvalidSymmetry on a non-bijective
// generator and kInvalidParameter on duplicate equilibrium ids.
OrbitPartition orbit_partition(const std::vector<EquilibriumId>& equilibria,
                               const std::vector<IndexPermutation>& generators);
OrbitPartition orbit_partition(const std::vector<EquilibriumId>& equilibria,
                               const std::vector<IdPermutation>& generators);

enum class FocalCase {
  kSymmetryInvariant,  // exactly one singleton orbit
  kCommonOrdering,     // one singleton orbit maximizes every player's salience
  kNone,
};

std::string_view FocalCaseName(FocalCase kind);

struct FocalClassification {
  FocalCase kind = FocalCase::kNone;
  std::optional<EquilibriumId> focal;
};

// Every salience assignment must score exactly the partitioned equilibria and
// be constant on each orbit (kInvalidSalience otherwise). When both cases
// hold, the symmetry-invariant case is reported.
FocalClassification classify_unique_focal(
    const OrbitPartition& partition,
    const std::vector<SalienceAssignment>& salience_per_player);

}  // namespace focal

#endif  // FOCAL_ORBITS_H_
