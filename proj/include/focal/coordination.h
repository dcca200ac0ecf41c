#ifndef FOCAL_COORDINATION_H_
#define FOCAL_COORDINATION_H_

#include <cstdint>
#include <string>
#include <vector>

namespace focal {

// Respondent counts over the offered options. Zero-count options are kept:
// they still count towards m in the normalized index.
class ChoiceTally {
 public:
  ChoiceTally() = default;
  ChoiceTally(std::vector<std::string> option_ids, std::vector<std::int64_t> counts);

  // Convenience for anonymous options "0", "1", ...
  static ChoiceTally FromCounts(std::vector<std::int64_t> counts);

  const std::vector<std::string>& option_ids() const { return option_ids_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::size_t num_options() const { return counts_.size(); }
  std::int64_t n() const { return n_; }

  // Count for an option id; 0 when the id is not offered.
  std::int64_t CountOf(const std::string& option_id) const;

  // Adds one respondent to an offered option.
  void Add(const std::string& option_id, std::int64_t amount = 1);

 private:
  std::vector<std::string> option_ids_;
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// Probability that two respondents drawn without replacement chose the same
// option: sum_j m_j (m_j - 1) / (n (n - 1)). Requires n >= 2.
double coordination_index(const ChoiceTally& tally);

// m * CI with m the number of offered options. Requires n >= 2 and m >= 2.
double normalized_ci(const ChoiceTally& tally);

}  // namespace focal

#endif  // FOCAL_COORDINATION_H_
