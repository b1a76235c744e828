#pragma once

#include <string>
#include <vector>

#include "afst/train/trainer.hpp"

namespace afst::train {

struct SweepRun {
  std::string variant;
  std::uint64_t seed = 0;
  std::string family;
  double success_rate = 0.0;
  double reach_time = 0.0;  // NaN when no successes
  double trajectory_length = 0.0;
  double mean_fst = 0.0;
};

struct SweepResult {
  std::vector<std::string> variants;
  std::vector<std::string> families;
  std::vector<SweepRun> runs;               // one row per (variant, seed, family)
  std::vector<std::string> failures;        // recorded, not fatal

  // Mean SR over seeds for a (variant, family) pair; NaN if no data.
  double mean_sr(const std::string& variant, const std::string& family) const;
  // Mean SR over seeds and families (the Table-3 "average" column).
  double avg_sr(const std::string& variant) const;
};

// Trains every (variant, seed) pair under the shared base config and
// budget, evaluates each trained policy on all requested families, and
// aggregates. Individual training failures are recorded in `failures`
// and skipped.
SweepResult ablation_sweep(const TrainConfig& base,
                           const std::vector<std::string>& variants,
                           const std::vector<std::string>& families,
                           const std::vector<std::uint64_t>& seeds,
                           int eval_episodes, const std::string& out_dir,
                           bool quiet = false);

void write_sweep_csv(const SweepResult& result, const std::string& path);
std::string format_sweep_table(const SweepResult& result);

}  // namespace afst::train
