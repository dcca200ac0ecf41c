#ifndef FOCAL_SALIENCE_H_
#define FOCAL_SALIENCE_H_

#include <cstdint>
#include <map>
#include <string>

namespace focal {

using EquilibriumId = std::string;

inline constexpr double kDefaultBeta = 1.0;

// Non-negative salience score per equilibrium, as perceived by one player.
class SalienceAssignment {
 public:
  SalienceAssignment() = default;
  explicit SalienceAssignment(std::map<EquilibriumId, double> scores,
                              std::string owner = {});

  const std::map<EquilibriumId, double>& scores() const { return scores_; }
  const std::string& owner() const { return owner_; }
  double at(const EquilibriumId& id) const { return scores_.at(id); }
  bool empty() const { return scores_.empty(); }

 private:
  std::map<EquilibriumId, double> scores_;
  std::string owner_;
};

struct FocalDistribution {
  std::map<EquilibriumId, double> probabilities;
  double beta = kDefaultBeta;
};

// P(e) = exp(beta S(e)) / sum exp(beta S(e')), evaluated after subtracting
// the maximum score. beta = 0 gives the uniform distribution.
FocalDistribution softmax_distribution(const SalienceAssignment& salience,
                                       double beta = kDefaultBeta);

// Argmax of S(e) + eta(e) with eta i.i.d. uniform on [0, noise_scale) drawn
// from `seed`, one draw per equilibrium in id order. Throws kAmbiguousFocal
// when the perturbed maximum is not unique (always the case for exact ties
// with noise_scale = 0).
EquilibriumId select_focal(const SalienceAssignment& salience, double noise_scale,
                           std::uint64_t seed);

}  // namespace focal

#endif  // FOCAL_SALIENCE_H_
