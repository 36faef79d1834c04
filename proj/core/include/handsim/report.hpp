#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "handsim/simulation.hpp"

namespace handsim {

struct BatchAggregate {
  int count = 0;
  int successes = 0;
  double success_rate = 0.0;
  std::optional<double> mean_time_to_grasp_ms;   // over runs that grasped
  std::optional<int64_t> max_time_to_grasp_ms;
  double total_energy_mah = 0.0;
};

// Throws std::invalid_argument on an empty batch.
BatchAggregate summarize_batch(const std::vector<RunSummary>& summaries);

std::string render_batch_table(const std::vector<RunSummary>& summaries,
                               const BatchAggregate& agg);

std::string batch_report_json(const std::vector<RunSummary>& summaries,
                              const BatchAggregate& agg);

void write_batch_report(const std::filesystem::path& path,
                        const std::vector<RunSummary>& summaries,
                        const BatchAggregate& agg);

}  // namespace handsim
