#include "focal/coordination.h"

#include <set>
#include <utility>

#include "focal/error.h"

namespace focal {

ChoiceTally::ChoiceTally(std::vector<std::string> option_ids,
                         std::vector<std::int64_t> counts)
    : option_ids_(std::move(option_ids)), counts_(std::move(counts)) {
  if (option_ids_.size() != counts_.size()) {
    throw Error(ErrorKind::kInvalidParameter, "option ids and counts differ in length");
  }
  std::set<std::string> seen(option_ids_.begin(), option_ids_.end());
  if (seen.size() != option_ids_.size()) {
    throw Error(ErrorKind::kInvalidParameter, "duplicate option id in tally");
  }
  for (std::int64_t c : counts_) {
    if (c < 0) throw Error(ErrorKind::kInvalidParameter, "negative count in tally");
    n_ += c;
  }
}

ChoiceTally ChoiceTally::FromCounts(std::vector<std::int64_t> counts) {
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < counts.size(); ++j) ids.push_back(std::to_string(j));
  return ChoiceTally(std::move(ids), std::move(counts));
}

std::int64_t ChoiceTally::CountOf(const std::string& option_id) const {
  for (std::size_t j = 0; j < option_ids_.size(); ++j) {
    if (option_ids_[j] == option_id) return counts_[j];
  }
  return 0;
}

void ChoiceTally::Add(const std::string& option_id, std::int64_t amount) {
  for (std::size_t j = 0; j < option_ids_.size(); ++j) {
    if (option_ids_[j] == option_id) {
      if (counts_[j] + amount < 0) {
        throw Error(ErrorKind::kInvalidParameter, "count would become negative");
      }
      counts_[j] += amount;
      n_ += amount;
      return;
    }
  }
  throw Error(ErrorKind::kInvalidParameter, "option '" + option_id + "' not offered");
}

namespace {

// Numerator sum_j m_j (m_j - 1) and denominator n (n - 1), both exact.
std::pair<double, double> PairCounts(const ChoiceTally& tally) {
  const std::int64_t n = tally.n();
  if (n < 2) {
    throw Error(ErrorKind::kUndefinedMetric,
                "coordination index needs at least 2 respondents, got " +
                    std::to_string(n));
  }
  std::int64_t same = 0;
  for (std::int64_t m : tally.counts()) same += m * (m - 1);
  return {static_cast<double>(same), static_cast<double>(n) * static_cast<double>(n - 1)};
}

}  // namespace

double coordination_index(const ChoiceTally& tally) {
  const auto [same, pairs] = PairCounts(tally);
  return same / pairs;
}

double normalized_ci(const ChoiceTally& tally) {
  if (tally.num_options() < 2) {
    throw Error(ErrorKind::kUndefinedMetric,
                "normalized coordination index needs at least 2 options");
  }
  // Scaling the integer numerator first leaves a single rounding.
  const auto [same, pairs] = PairCounts(tally);
  return static_cast<double>(tally.num_options()) * same / pairs;
}

}  // namespace focal
