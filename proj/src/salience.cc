#include "focal/salience.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "focal/error.h"
#include "focal/rng.h"

namespace focal {

SalienceAssignment::SalienceAssignment(std::map<EquilibriumId, double> scores,
                                       std::string owner)
    : scores_(std::move(scores)), owner_(std::move(owner)) {
  for (const auto& [id, score] : scores_) {
    if (!std::isfinite(score) || score < 0.0) {
      throw Error(ErrorKind::kInvalidSalience,
                  "salience of '" + id + "' must be a finite non-negative real");
    }
  }
}

FocalDistribution softmax_distribution(const SalienceAssignment& salience, double beta) {
  if (salience.empty()) {
    throw Error(ErrorKind::kEmptyDomain, "softmax over an empty equilibrium set");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::kInvalidParameter, "beta must be a finite value >= 0");
  }
  double top = -INFINITY;
  for (const auto& [id, score] : salience.scores()) top = std::max(top, score);

  FocalDistribution out;
  out.beta = beta;
  double total = 0.0;
  for (const auto& [id, score] : salience.scores()) {
    const double weight = std::exp(beta * (score - top));
    out.probabilities[id] = weight;
    total += weight;
  }
  for (auto& [id, p] : out.probabilities) p /= total;
  return out;
}

EquilibriumId select_focal(const SalienceAssignment& salience, double noise_scale,
                           std::uint64_t seed) {
  if (salience.empty()) {
    throw Error(ErrorKind::kEmptyDomain, "no equilibria to select from");
  }
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw Error(ErrorKind::kInvalidParameter, "noise_scale must be a finite value >= 0");
  }
  Rng rng(seed);
  const EquilibriumId* winner = nullptr;
  double best = -INFINITY;
  bool tied = false;
  for (const auto& [id, score] : salience.scores()) {
    const double perturbed =
        noise_scale > 0.0 ? score + noise_scale * rng.UniformUnit() : score;
    if (perturbed > best) {
      best = perturbed;
      winner = &id;
      tied = false;
    } else if (perturbed == best) {
      tied = true;
    }
  }
  if (tied) {
    throw Error(ErrorKind::kAmbiguousFocal,
                "several equilibria share the maximal salience; no focal point");
  }
  return *winner;
}

}  // namespace focal
