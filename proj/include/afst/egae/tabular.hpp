#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "afst/egae/estimator.hpp"
#include "afst/util/rng.hpp"

namespace afst::egae {

// Small finite SMDP with enumerable outcomes, used to validate the
// advantage estimator against exactly solved V/Q/A tables.
struct TabularOutcome {
  double prob;
  int next;       // successor state; may be the terminal state
  double tau;     // sojourn time in seconds
  double reward;
};

struct TabularSMDP {
  int n_states = 0;   // non-terminal states; terminal is implicit state id -1
  int n_actions = 0;
  // outcomes[s][a]: probabilities must sum to 1.
  std::vector<std::vector<std::vector<TabularOutcome>>> outcomes;
  std::vector<double> initial;  // start distribution over non-terminal states

  void validate() const;
};

inline constexpr int kTerminal = -1;

// Stochastic policy, probs[s][a] summing to 1 per state.
struct TabularPolicy {
  std::vector<std::vector<double>> probs;
};

struct ExactTables {
  Eigen::VectorXd v;  // [n_states]
  Eigen::MatrixXd q;  // [n_states x n_actions]
  Eigen::MatrixXd a;  // q minus v per row
};

// Solves V = r_bar + P_gamma V by a dense linear solve, where P_gamma
// folds gamma^tau into the transition weights; Q and A follow by one
// backup. Terminal has value zero.
ExactTables exact_values(const TabularSMDP& smdp, const TabularPolicy& policy,
                         const smdp::DiscountSpec& discount);

struct TabularStep {
  int state;
  int action;
  double tau;
  double reward;
};

// One episode under the policy; terminates on reaching the terminal
// state (throws if max_steps is exceeded, to catch non-absorbing chains).
std::vector<TabularStep> sample_episode(const TabularSMDP& smdp,
                                        const TabularPolicy& policy,
                                        util::Rng& rng, int max_steps = 100000);

struct BiasRow {
  int state;
  int action;
  double exact_advantage;
  double mean_estimate;   // baseline-centered empirical advantage
  double std_error;       // batch-means standard error of the estimate
  long long n_visits;
};

struct BiasReport {
  std::vector<BiasRow> rows;
  long long episodes = 0;
  double max_abs_error = 0.0;      // max |mean_estimate - exact_advantage|
  double max_error_in_se = 0.0;    // same, in units of std_error
};

// Empirical check that the estimator recovers the exact advantage
// function up to a per-state baseline. With lambda = 1 the raw
// estimate at (s, a) converges to A(s, a) + (V(s) - Vhat(s)); the
// offset does not depend on the action, so subtracting the state's
// visitation-weighted mean estimate cancels it -- the same
// cancellation that makes the policy gradient insensitive to the
// baseline. Since sum_a pi(a|s) A(s, a) = 0, the centered estimate is
// compared against A(s, a) itself. Standard errors come from batch
// means over `batches` groups of episodes.
BiasReport bias_experiment(const TabularSMDP& smdp, const TabularPolicy& policy,
                           const std::vector<double>& value_guess,
                           const EstimatorConfig& config, long long episodes,
                           std::uint64_t seed, int batches = 100);

void write_bias_report(const BiasReport& report, const std::string& path);

}  // namespace afst::egae
