#include "focal/session.h"

#include <algorithm>
#include <cmath>

#include "focal/error.h"

namespace focal {

double Mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kEmptyInput, "mean of no values");
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

double Median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::kEmptyInput, "median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

SessionMetrics session_metrics(std::span<const SessionRound> history) {
  if (history.empty()) throw Error(ErrorKind::kEmptyInput, "session history is empty");
  SessionMetrics m;
  m.iterations = history.size();
  std::vector<double> blue;
  std::vector<double> orange;
  // Values are accumulated before dividing so integer boards stay exact.
  double blue_agreed = 0.0;
  double orange_agreed = 0.0;
  double conflicted = 0.0;
  for (const auto& round : history) {
    const JointOutcome outcome = score_joint(round.board, round.blue, round.orange);
    blue.push_back(outcome.blue_payoff);
    orange.push_back(outcome.orange_payoff);
    if (!outcome.conflicted_discs.empty()) ++m.missed_nash_iterations;
    m.conflicted_disc_count += outcome.conflicted_discs.size();
    blue_agreed += outcome.blue_agreed_value;
    orange_agreed += outcome.orange_agreed_value;
    conflicted += outcome.conflicted_value;
    m.missed_nash_series.push_back(m.missed_nash_iterations);
    m.payoff_lost_series.push_back(2.0 * conflicted / kConflictPenaltyDivisor);
    m.shortfall_series.push_back(conflicted * (kConflictPenaltyDivisor + 2.0) /
                                 kConflictPenaltyDivisor);
  }
  const double n = static_cast<double>(history.size());
  const double penalty_each = conflicted / kConflictPenaltyDivisor;
  m.blue.total = blue_agreed - penalty_each;
  m.orange.total = orange_agreed - penalty_each;
  m.blue.mean = m.blue.total / n;
  m.orange.mean = m.orange.total / n;
  m.blue.median = Median(blue);
  m.orange.median = Median(orange);
  m.welfare = blue_agreed + orange_agreed - 2.0 * penalty_each;
  m.cumulative_payoff_lost = m.payoff_lost_series.back();
  m.cumulative_shortfall = m.shortfall_series.back();
  return m;
}

}  // namespace focal
