#include "afst/egae/tabular.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace afst::egae {

void TabularSMDP::validate() const {
  if (n_states <= 0 || n_actions <= 0)
    throw std::invalid_argument("tabular smdp: empty state or action set");
  if (static_cast<int>(outcomes.size()) != n_states ||
      static_cast<int>(initial.size()) != n_states)
    throw std::invalid_argument("tabular smdp: table sizes disagree");
  double p0 = 0.0;
  for (double p : initial) p0 += p;
  if (std::abs(p0 - 1.0) > 1e-9)
    throw std::invalid_argument("tabular smdp: initial distribution not normalized");
  for (int s = 0; s < n_states; ++s) {
    if (static_cast<int>(outcomes[s].size()) != n_actions)
      throw std::invalid_argument("tabular smdp: action table sizes disagree");
    for (int a = 0; a < n_actions; ++a) {
      double p = 0.0;
      for (const auto& o : outcomes[s][a]) {
        p += o.prob;
        if (o.next != kTerminal && (o.next < 0 || o.next >= n_states))
          throw std::invalid_argument("tabular smdp: bad successor state");
        if (o.tau <= 0.0)
          throw std::invalid_argument("tabular smdp: nonpositive sojourn time");
      }
      if (std::abs(p - 1.0) > 1e-9)
        throw std::invalid_argument("tabular smdp: outcome probs not normalized");
    }
  }
}

ExactTables exact_values(const TabularSMDP& smdp, const TabularPolicy& policy,
                         const smdp::DiscountSpec& discount) {
  smdp.validate();
  const int ns = smdp.n_states, na = smdp.n_actions;
  // (I - P_gamma) V = r_bar, expectations taken under the policy.
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ns, ns);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(ns);
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a) {
      const double pa = policy.probs[s][a];
      for (const auto& o : smdp.outcomes[s][a]) {
        r[s] += pa * o.prob * o.reward;
        if (o.next != kTerminal)
          m(s, o.next) -= pa * o.prob * smdp::discount_weight(discount, o.tau, 1);
      }
    }
  ExactTables t;
  t.v = m.colPivHouseholderQr().solve(r);
  t.q.resize(ns, na);
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a) {
      double q = 0.0;
      for (const auto& o : smdp.outcomes[s][a]) {
        const double vn = o.next == kTerminal ? 0.0 : t.v[o.next];
        q += o.prob * (o.reward + smdp::discount_weight(discount, o.tau, 1) * vn);
      }
      t.q(s, a) = q;
    }
  t.a = t.q.colwise() - t.v;
  return t;
}

namespace {

int pick(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

int pick_outcome(const std::vector<TabularOutcome>& outs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    acc += outs[i].prob;
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(outs.size()) - 1;
}

}  // namespace

std::vector<TabularStep> sample_episode(const TabularSMDP& smdp,
                                        const TabularPolicy& policy,
                                        util::Rng& rng, int max_steps) {
  std::vector<TabularStep> steps;
  int s = pick(smdp.initial, util::uniform01(rng));
  while (s != kTerminal) {
    if (static_cast<int>(steps.size()) >= max_steps)
      throw std::runtime_error("tabular smdp: episode did not terminate");
    const int a = pick(policy.probs[s], util::uniform01(rng));
    const auto& o =
        smdp.outcomes[s][a][pick_outcome(smdp.outcomes[s][a], util::uniform01(rng))];
    steps.push_back({s, a, o.tau, o.reward});
    s = o.next;
  }
  return steps;
}

BiasReport bias_experiment(const TabularSMDP& smdp, const TabularPolicy& policy,
                           const std::vector<double>& value_guess,
                           const EstimatorConfig& config, long long episodes,
                           std::uint64_t seed, int batches) {
  smdp.validate();
  config.validate();
  if (static_cast<int>(value_guess.size()) != smdp.n_states)
    throw std::invalid_argument("bias_experiment: value_guess size mismatch");
  if (batches < 2 || episodes < batches)
    throw std::invalid_argument("bias_experiment: need at least 2 batches");

  const ExactTables exact = exact_values(smdp, policy, config.discount);
  const int ns = smdp.n_states, na = smdp.n_actions;

  // Per-batch sums; batch b covers episodes [b*episodes/batches, ...).
  Eigen::MatrixXd sum_sa = Eigen::MatrixXd::Zero(ns, na);
  Eigen::MatrixXd cnt_sa = Eigen::MatrixXd::Zero(ns, na);
  Eigen::VectorXd sum_s = Eigen::VectorXd::Zero(ns);
  Eigen::VectorXd cnt_s = Eigen::VectorXd::Zero(ns);
  // Batch statistics accumulated across finished batches.
  std::vector<std::vector<std::vector<double>>> batch_stats(
      ns, std::vector<std::vector<double>>(na));
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> visits =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(ns, na);

  auto flush_batch = [&]() {
    for (int s = 0; s < ns; ++s) {
      if (cnt_s[s] == 0) continue;
      const double state_mean = sum_s[s] / cnt_s[s];
      for (int a = 0; a < na; ++a) {
        if (cnt_sa(s, a) == 0) continue;
        batch_stats[s][a].push_back(sum_sa(s, a) / cnt_sa(s, a) - state_mean);
      }
    }
    sum_sa.setZero();
    cnt_sa.setZero();
    sum_s.setZero();
    cnt_s.setZero();
  };

  util::Rng rng = util::make_rng(seed, 0);
  std::vector<double> rewards, taus, values, adv;
  const long long per_batch = episodes / batches;
  for (long long e = 0; e < episodes; ++e) {
    const auto steps = sample_episode(smdp, policy, rng);
    rewards.clear();
    taus.clear();
    values.clear();
    for (const auto& st : steps) {
      rewards.push_back(st.reward);
      taus.push_back(st.tau);
      values.push_back(value_guess[st.state]);
    }
    EpisodeView view{rewards, taus, values};
    adv = egae_advantages(view, config);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      sum_sa(steps[i].state, steps[i].action) += adv[i];
      cnt_sa(steps[i].state, steps[i].action) += 1.0;
      sum_s[steps[i].state] += adv[i];
      cnt_s[steps[i].state] += 1.0;
      visits(steps[i].state, steps[i].action) += 1;
    }
    if ((e + 1) % per_batch == 0 || e + 1 == episodes) flush_batch();
  }

  BiasReport report;
  report.episodes = episodes;
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a) {
      const auto& xs = batch_stats[s][a];
      if (xs.size() < 2) continue;
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size() - 1);
      const double se = std::sqrt(var / static_cast<double>(xs.size()));
      BiasRow row{s, a, exact.a(s, a), mean, se, visits(s, a)};
      report.rows.push_back(row);
      const double err = std::abs(mean - exact.a(s, a));
      report.max_abs_error = std::max(report.max_abs_error, err);
      if (se > 0.0)
        report.max_error_in_se = std::max(report.max_error_in_se, err / se);
    }
  return report;
}

void write_bias_report(const BiasReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "state,action,exact_advantage,mean_estimate,std_error,n_visits\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%lld\n", r.state,
                  r.action, r.exact_advantage, r.mean_estimate, r.std_error,
                  r.n_visits);
    out << buf;
  }
}

}  // namespace afst::egae
