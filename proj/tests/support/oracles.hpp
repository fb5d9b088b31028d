#pragma once

#include <cstdint>
#include <vector>

#include "pdmargin/persistence.hpp"

namespace oracle {

// Vietoris-Rips persistence of a small cloud (<= 12 points) from ranks of
// persistent homology groups over Z/2, computed independently at every
// critical value. Dimensions 0..2, unbounded radius. Canonicalized.
pdmargin::PersistenceDiagram rank_persistence(const pdmargin::PointCloud& pc);

// Number of connected components of the graph with edges of length <= radius.
std::size_t components(const pdmargin::PointCloud& pc, double radius);

struct SvmReference {
  std::vector<double> w;
  double bias = 0.0;
  double primal = 0.0;  // ||w||^2 + a * sum hinge
  double dual_bound = 0.0;  // lower bound on the optimum
};

// Linear soft-margin SVM minimizing ||w||^2 + a * sum hinge, solved through
// its dual by sequential minimal optimization; the bias is then chosen by
// exhaustive search over the hinge breakpoints.
SvmReference linear_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                        double a);

// A separating hyperplane found by the perceptron rule, if any is found
// within max_epochs passes.
bool perceptron_separable(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                          std::size_t max_epochs = 10000);

// Distance from (b, d) to the diagonal by dense search over diagonal points
// followed by golden-section refinement.
double diagonal_distance_search(double birth, double death);

}  // namespace oracle
