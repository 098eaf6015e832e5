// Candidate filtering demo: generates a synthetic dataset, bulk-loads the
// index, and compares how many kNN candidates survive under the complete
// criterion versus the min/max baseline.

#include <iostream>
#include <vector>

#include "spatialdom/spatialdom.hpp"

int main() {
  using namespace spatialdom;

  GeneratorConfig config;
  config.n = 500;
  config.d = 2;
  config.max_side = 0.05;
  config.seed = 7;
  const std::vector<Entry> entries = generate(config);

  const RTreeNode index = build_str(entries, 16);
  // A region query, not a point: with a degenerate query both criteria
  // collapse to the same comparison and the counts below would be equal.
  const Rect query{Interval(0.4, 0.6), Interval(0.4, 0.6)};
  const LpNorm euclidean(2);

  for (const std::size_t k : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
    const CandidateSet eq2 =
        knn_candidates(index, query, k, PruneCriterion::Eq2, euclidean);
    const CandidateSet baseline =
        knn_candidates(index, query, k, PruneCriterion::MinMax, euclidean);
    std::cout << "k=" << k << ": eq2 keeps " << eq2.ids.size()
              << " candidates (" << eq2.stats.domination_tests
              << " tests), minmax keeps " << baseline.ids.size() << " ("
              << baseline.stats.domination_tests << " tests)\n";
  }

  // The reverse question: which entries could still count the query among
  // their own k nearest neighbours?
  const CandidateSet reverse =
      rknn_candidates(index, query, 2, PruneCriterion::Eq2, euclidean);
  std::cout << "reverse filtering keeps " << reverse.ids.size() << " of "
            << config.n << " entries\n";
  return 0;
}
