#include "focal/orbits.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "focal/error.h"

namespace focal {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    // Smaller index becomes the root so roots are orbit minima.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::unordered_map<EquilibriumId, std::size_t> PositionIndex(
    const std::vector<EquilibriumId>& equilibria) {
  std::unordered_map<EquilibriumId, std::size_t> index;
  for (std::size_t i = 0; i < equilibria.size(); ++i) {
    if (!index.emplace(equilibria[i], i).second) {
      throw Error(ErrorKind::kInvalidParameter,
                  "duplicate equilibrium id '" + equilibria[i] + "'");
    }
  }
  return index;
}

}  // namespace

OrbitPartition orbit_partition(const std::vector<EquilibriumId>& equilibria,
                               const std::vector<IndexPermutation>& generators) {
  if (equilibria.empty()) {
    throw Error(ErrorKind::kEmptyDomain, "orbit partition of an empty set");
  }
  PositionIndex(equilibria);
  const std::size_t n = equilibria.size();
  DisjointSets sets(n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& perm = generators[g];
    if (perm.size() != n) {
      throw Error(ErrorKind::kInvalidSymmetry,
                  "generator " + std::to_string(g) + " does not act on every equilibrium");
    }
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (perm[i] >= n || hit[perm[i]]) {
        throw Error(ErrorKind::kInvalidSymmetry,
                    "generator " + std::to_string(g) + " is not a bijection");
      }
      hit[perm[i]] = true;
    }
    for (std::size_t i = 0; i < n; ++i) sets.Union(i, perm[i]);
  }

  OrbitPartition out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.Find(i);
    if (slot[root] == n) {
      slot[root] = out.orbits.size();
      out.orbits.emplace_back();
    }
    out.orbits[slot[root]].push_back(equilibria[i]);
  }
  return out;
}

OrbitPartition orbit_partition(const std::vector<EquilibriumId>& equilibria,
                               const std::vector<IdPermutation>& generators) {
  const auto index = PositionIndex(equilibria);
  std::vector<IndexPermutation> converted;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    IndexPermutation perm(equilibria.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (const auto& [from, to] : generators[g]) {
      const auto f = index.find(from);
      const auto t = index.find(to);
      if (f == index.end() || t == index.end()) {
        throw Error(ErrorKind::kInvalidSymmetry,
                    "generator " + std::to_string(g) + " maps outside the equilibrium set");
      }
      perm[f->second] = t->second;
    }
    converted.push_back(std::move(perm));
  }
  return orbit_partition(equilibria, converted);
}

std::string_view FocalCaseName(FocalCase kind) {
  switch (kind) {
    case FocalCase::kSymmetryInvariant: return "case-i-symmetry-invariant";
    case FocalCase::kCommonOrdering: return "case-ii-common-ordering";
    case FocalCase::kNone: return "none";
  }
  return "none";
}

FocalClassification classify_unique_focal(
    const OrbitPartition& partition,
    const std::vector<SalienceAssignment>& salience_per_player) {
  std::set<EquilibriumId> all;
  std::size_t total = 0;
  for (const auto& orbit : partition.orbits) {
    if (orbit.empty()) {
      throw Error(ErrorKind::kInvalidParameter, "orbit partition has an empty orbit");
    }
    total += orbit.size();
    all.insert(orbit.begin(), orbit.end());
  }
  if (all.empty() || all.size() != total) {
    throw Error(ErrorKind::kInvalidParameter, "orbits are empty or overlap");
  }

  for (std::size_t p = 0; p < salience_per_player.size(); ++p) {
    const auto& scores = salience_per_player[p].scores();
    if (scores.size() != all.size()) {
      throw Error(ErrorKind::kInvalidSalience,
                  "salience of player " + std::to_string(p) +
                      " does not cover exactly the equilibrium set");
    }
    for (const auto& orbit : partition.orbits) {
      const auto first = scores.find(orbit.front());
      if (first == scores.end()) {
        throw Error(ErrorKind::kInvalidSalience, "player " + std::to_string(p) +
                                                     " has no salience for '" +
                                                     orbit.front() + "'");
      }
      for (const auto& id : orbit) {
        const auto it = scores.find(id);
        if (it == scores.end() || it->second != first->second) {
          throw Error(ErrorKind::kInvalidSalience,
                      "salience of player " + std::to_string(p) +
                          " is not constant on the orbit of '" + orbit.front() + "'");
        }
      }
    }
  }

  std::vector<EquilibriumId> singletons;
  for (const auto& orbit : partition.orbits) {
    if (orbit.size() == 1) singletons.push_back(orbit.front());
  }
  if (singletons.size() == 1) {
    return {FocalCase::kSymmetryInvariant, singletons.front()};
  }

  std::vector<EquilibriumId> agreed;
  for (const auto& candidate : singletons) {
    bool top_for_all = !salience_per_player.empty();
    for (const auto& salience : salience_per_player) {
      double top = 0.0;
      for (const auto& [id, score] : salience.scores()) top = std::max(top, score);
      if (salience.at(candidate) != top) {
        top_for_all = false;
        break;
      }
    }
    if (top_for_all) agreed.push_back(candidate);
  }
  if (agreed.size() == 1) return {FocalCase::kCommonOrdering, agreed.front()};
  return {FocalCase::kNone, std::nullopt};
}

}  // namespace focal
