#ifndef OMNIGRAPH_SVM_HPP
#define OMNIGRAPH_SVM_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "omnigraph/kernel_matrix.hpp"

namespace omnigraph {

struct SvmModel {
  std::vector<double> coef;  // alpha_i * y_i per training instance
  double bias = 0;
  double C = 1;
  std::vector<std::string> training_ids;
  double dual_objective = 0;
  double kkt_residual = 0;
  int iterations = 0;

  nlohmann::json to_json() const;
  static SvmModel from_json(const nlohmann::json& j);
};

struct Prediction {
  int label;      // -1 or +1; exact zero margin breaks to +1
  double margin;  // sum_i coef_i * row_i + bias
};

// C-SVC dual via sequential minimal optimization on the precomputed Gram
// matrix, second-order working-set selection, tolerance 1e-3, at most 1e5
// iterations. Deterministic: ties in selection go to the lowest index.
// Throws ConfigError when check_psd is set and the matrix fails the PSD
// tolerance (advice: clip negative eigenvalues).
SvmModel train_svm(const KernelMatrix& gram, const std::vector<int>& labels,
                   double C, bool check_psd = true);

// Same solver on a subset of rows/columns of the Gram matrix, without
// copying it. coef/training_ids are indexed by position in `subset`.
SvmModel train_svm_subset(const KernelMatrix& gram,
                          const std::vector<int>& labels,
                          const std::vector<size_t>& subset, double C);

Prediction predict(const SvmModel& model, const std::vector<double>& kernel_row);

// Leave-one-out accuracy. Folds whose held-out point has a zero dual
// coefficient in the full solution reuse it (removing an inactive point
// leaves the optimum unchanged); the rest retrain on the Gram minor.
double loo_cv(const KernelMatrix& gram, const std::vector<int>& labels,
              double C, bool check_psd = false);

}  // namespace omnigraph

#endif  // OMNIGRAPH_SVM_HPP
