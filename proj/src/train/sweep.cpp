#include "afst/train/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace afst::train {

namespace {

std::string sanitize(const std::string& variant) {
  std::string s = variant == "AFST" ? "afst" : "ablate" + variant.substr(1);
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

}  // namespace

double SweepResult::mean_sr(const std::string& variant,
                            const std::string& family) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : runs)
    if (r.variant == variant && r.family == family) {
      sum += r.success_rate;
      ++n;
    }
  return n > 0 ? sum / n : std::nan("");
}

double SweepResult::avg_sr(const std::string& variant) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& f : families) {
    const double sr = mean_sr(variant, f);
    if (!std::isnan(sr)) {
      sum += sr;
      ++n;
    }
  }
  return n > 0 ? sum / n : std::nan("");
}

SweepResult ablation_sweep(const TrainConfig& base,
                           const std::vector<std::string>& variants,
                           const std::vector<std::string>& families,
                           const std::vector<std::uint64_t>& seeds,
                           int eval_episodes, const std::string& out_dir,
                           bool quiet) {
  SweepResult result;
  result.variants = variants;
  result.families = families;

  for (const auto& variant : variants) {
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      TrainConfig cfg = apply_variant(base, variant);
      cfg.seed = seeds[si];
      cfg.out_dir =
          out_dir + "/" + sanitize(variant) + "_s" + std::to_string(seeds[si]);
      std::string checkpoint;
      try {
        if (!quiet)
          std::fprintf(stderr, "[sweep] training %s seed %llu\n", variant.c_str(),
                       static_cast<unsigned long long>(seeds[si]));
        checkpoint = train(cfg, quiet).final_checkpoint;
      } catch (const std::exception& e) {
        result.failures.push_back(variant + "/seed" + std::to_string(seeds[si]) +
                                  ": " + e.what());
        continue;
      }
      const LoadedPolicy lp = load_policy_checkpoint(checkpoint);
      const eval::Controller ctrl = make_mean_controller(
          lp.policy, lp.config.conversion_config(), lp.config.force_duration);
      for (std::size_t fi = 0; fi < families.size(); ++fi) {
        eval::ScenarioSpec spec = eval::ScenarioSpec::preset(families[fi]);
        eval::EvalOptions opt;
        opt.episodes = eval_episodes;
        opt.seed = 500 + fi;  // shared across variants for comparability
        opt.mode = lp.config.mode;
        opt.max_decisions = lp.config.max_episode_steps;
        const eval::EvalReport rep =
            eval::evaluate(ctrl, lp.config.robot, lp.config.reward,
                           lp.config.observation, spec, opt);
        SweepRun run;
        run.variant = variant;
        run.seed = seeds[si];
        run.family = families[fi];
        run.success_rate = rep.success_rate;
        run.reach_time = rep.mean_reach_time;
        run.trajectory_length = rep.mean_trajectory_length;
        run.mean_fst = rep.mean_fst;
        result.runs.push_back(run);
      }
    }
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "variant,seed,family,success_rate,reach_time,trajectory_length,mean_fst\n";
  char buf[512];
  for (const auto& r : result.runs) {
    std::snprintf(buf, sizeof(buf), "%s,%llu,%s,%.17g,%.17g,%.17g,%.17g\n",
                  r.variant.c_str(), static_cast<unsigned long long>(r.seed),
                  r.family.c_str(), r.success_rate, r.reach_time,
                  r.trajectory_length, r.mean_fst);
    out << buf;
  }
  for (const auto& f : result.failures) out << "# failed: " << f << "\n";
}

std::string format_sweep_table(const SweepResult& result) {
  std::string table = "variant      ";
  char buf[128];
  for (const auto& f : result.families) {
    std::snprintf(buf, sizeof(buf), "%10s", f.c_str());
    table += buf;
  }
  table += "       avg\n";
  for (const auto& v : result.variants) {
    std::snprintf(buf, sizeof(buf), "%-12s ", v.c_str());
    table += buf;
    for (const auto& f : result.families) {
      const double sr = result.mean_sr(v, f);
      if (std::isnan(sr))
        std::snprintf(buf, sizeof(buf), "%10s", "/");
      else
        std::snprintf(buf, sizeof(buf), "%10.3f", sr);
      table += buf;
    }
    const double avg = result.avg_sr(v);
    if (std::isnan(avg))
      std::snprintf(buf, sizeof(buf), "%10s\n", "/");
    else
      std::snprintf(buf, sizeof(buf), "%10.3f\n", avg);
    table += buf;
  }
  for (const auto& fail : result.failures) table += "failed: " + fail + "\n";
  return table;
}

}  // namespace afst::train
