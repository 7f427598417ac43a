#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordlab/eval.hpp"
#include "wordlab/rat.hpp"

namespace wordlab {

// Hard cap on the support product |supp(mu)| * |supp(nu)| in kr_exact.
inline constexpr long long kTransportPairBudget = 10'000'000;

// An optimal (or explicitly constructed) coupling between two finitely
// supported measures. Flows are exact rationals; feasibility holds
// exactly: row sums equal left weights, column sums equal right weights.
struct TransportPlan {
  std::vector<std::string> left_atoms;
  std::vector<std::string> right_atoms;
  struct Flow {
    int i, j;
    Rat mass;
  };
  std::vector<Flow> flows;
  Rat cost;  // normalized: sum of mass * ground distance
};

// Ground distance between packed tuple keys: the l^1 product of the
// normalized Hamming metrics, i.e. (#differing bytes)/n.
int ground_raw(const std::string& a, const std::string& b);

// Exact Kantorovich-Rubinstein distance via min-cost flow over the
// support-restricted bipartite graph. Masses are cleared to a common
// integer scale; costs stay integral throughout, so the optimum and the
// plan are exact.
std::pair<Rat, TransportPlan> kr_exact(const Distribution& mu, const Distribution& nu);

// Cost of a given feasible plan against the two measures; throws if the
// plan is not feasible for them.
Rat plan_cost_checked(const TransportPlan& plan, const Distribution& mu, const Distribution& nu);

// The explicit coupling between the class-uniform measure of `rep` and
// the uniform measure on n-cycles, built from all cycle-notation writings
// (exact for n <= 8, sampled with `samples` draws otherwise). Its cost is
// (number of cycles)/n exactly in the exact construction.
TransportPlan coupling_class_to_ncycles(const Permutation& rep, long long samples = 0,
                                        std::uint64_t seed = 0);

double ncycle_bound(int n);       // (ln n + 1)/n
Rat harmonic_coupling_cost(int n);  // H_n / n

struct SupportDiagnostic {
  long long support = 0;
  double rhs = 0;       // (n!)^{(1 - sqrt(eps)) d}, with the paper's c read as 1
  double ratio = 0;     // support / rhs
  std::optional<double> lp_bound;  // sqrt(KR) when a KR value is supplied
};

SupportDiagnostic support_diagnostic(const Distribution& dist, double epsilon,
                                     std::optional<double> kr_value = std::nullopt);

}  // namespace wordlab
