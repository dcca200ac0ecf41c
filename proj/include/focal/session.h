#ifndef FOCAL_SESSION_H_
#define FOCAL_SESSION_H_

#include <span>
#include <vector>

#include "focal/bargaining.h"

namespace focal {

struct SessionRound {
  BargainingBoard board;
  Assignment blue;
  Assignment orange;
};

struct PayoffSummary {
  double mean = 0.0;
  double median = 0.0;
  double total = 0.0;
};

struct SessionMetrics {
  std::size_t iterations = 0;
  PayoffSummary blue;
  PayoffSummary orange;
  double welfare = 0.0;  // blue total + orange total
  std::size_t missed_nash_iterations = 0;
  std::size_t conflicted_disc_count = 0;
  // Penalty the pair actually paid: 0.4 * value per conflicted disc.
  double cumulative_payoff_lost = 0.0;
  // Welfare shortfall against agreeing on the disc: 1.4 * value per conflict.
  double cumulative_shortfall = 0.0;
  // Running totals after each iteration, for plotting.
  std::vector<std::size_t> missed_nash_series;
  std::vector<double> payoff_lost_series;
  std::vector<double> shortfall_series;
};

double Mean(std::span<const double> values);
double Median(std::vector<double> values);

// Throws kEmptyInput on an empty history.
SessionMetrics session_metrics(std::span<const SessionRound> history);

}  // namespace focal

#endif  // FOCAL_SESSION_H_
