#include "omnigraph/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "omnigraph/graph.hpp"  // ConfigError

namespace omnigraph {

namespace {

constexpr double kTol = 1e-3;
constexpr int kMaxIterations = 100000;
constexpr double kTau = 1e-12;

// Solves min 0.5 a'Qa - e'a  s.t. y'a = 0, 0 <= a <= C with
// Q_ij = y_i y_j K_ij, K addressed through `subset` into `gram`.
struct SmoResult {
  std::vector<double> alpha;
  double rho = 0;
  double obj = 0;       // maximization form: e'a - 0.5 a'Qa
  double residual = 0;  // final KKT gap
  int iterations = 0;
};

SmoResult solve_smo(const KernelMatrix& gram, const std::vector<int>& y,
                    const std::vector<size_t>& subset, double C) {
  const int n = static_cast<int>(subset.size());
  const size_t full_n = gram.size();
  const double* K = gram.values.data();
  auto k = [&](int i, int j) -> double {
    return K[subset[i] * full_n + subset[j]];
  };
  auto q = [&](int i, int j) -> double { return y[i] * y[j] * k(i, j); };

  SmoResult res;
  res.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  std::vector<double>& a = res.alpha;

  int iter = 0;
  double gap = 0;
  for (; iter < kMaxIterations; ++iter) {
    // first index: most violating in the "up" set
    int i = -1;
    double m = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t) {
      bool in_up = (y[t] == 1 && a[t] < C) || (y[t] == -1 && a[t] > 0);
      if (!in_up) continue;
      double v = -y[t] * grad[t];
      if (v > m) {
        m = v;
        i = t;
      }
    }
    // second index: second-order gain among the "low" set
    int j = -1;
    double big_m = std::numeric_limits<double>::infinity();
    double best_gain = std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t) {
      bool in_low = (y[t] == 1 && a[t] > 0) || (y[t] == -1 && a[t] < C);
      if (!in_low) continue;
      double v = -y[t] * grad[t];
      big_m = std::min(big_m, v);
      if (i < 0 || v >= m) continue;
      double b = m - v;  // > 0
      double qa = q(i, i) + q(t, t) - 2.0 * y[i] * y[t] * q(i, t);
      if (qa <= 0) qa = kTau;
      double gain = -(b * b) / qa;
      if (gain < best_gain) {
        best_gain = gain;
        j = t;
      }
    }
    gap = (i >= 0 && big_m < std::numeric_limits<double>::infinity())
              ? m - big_m
              : 0.0;
    if (i < 0 || j < 0 || gap <= kTol) break;

    // analytic two-variable update
    double qa = q(i, i) + q(j, j) - 2.0 * y[i] * y[j] * q(i, j);
    if (qa <= 0) qa = kTau;
    double delta = (-y[i] * grad[i] + y[j] * grad[j]) / qa;
    double old_ai = a[i], old_aj = a[j];
    double ai = old_ai + y[i] * delta;
    double aj = old_aj - y[j] * delta;

    // clip to the box while keeping y'a constant
    double sum = y[i] * old_ai + y[j] * old_aj;
    ai = std::clamp(ai, 0.0, C);
    aj = y[j] * (sum - y[i] * ai);
    aj = std::clamp(aj, 0.0, C);
    ai = y[i] * (sum - y[j] * aj);
    ai = std::clamp(ai, 0.0, C);

    double dai = ai - old_ai, daj = aj - old_aj;
    if (dai == 0.0 && daj == 0.0) break;
    a[i] = ai;
    a[j] = aj;
    for (int t = 0; t < n; ++t)
      grad[t] += q(t, i) * dai + q(t, j) * daj;
  }
  res.iterations = iter;
  res.residual = std::max(gap, 0.0);

  // bias term from the KKT bounds
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0;
  int nr_free = 0;
  for (int t = 0; t < n; ++t) {
    double yg = y[t] * grad[t];
    if (a[t] >= C) {
      if (y[t] == -1)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else if (a[t] <= 0) {
      if (y[t] == 1)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else {
      ++nr_free;
      sum_free += yg;
    }
  }
  res.rho = nr_free > 0 ? sum_free / nr_free : (ub + lb) / 2.0;

  // e'a - 0.5 a'Qa, using a'Qa = sum_t a_t (grad_t + 1)
  res.obj = 0;
  for (int t = 0; t < n; ++t) res.obj += a[t] - 0.5 * a[t] * (grad[t] + 1.0);
  return res;
}

SvmModel fit(const KernelMatrix& gram, const std::vector<int>& labels,
             const std::vector<size_t>& subset, double C) {
  if (C <= 0) throw ConfigError("C must be positive");
  std::vector<int> y;
  y.reserve(subset.size());
  std::vector<std::string> ids;
  for (size_t s : subset) {
    if (labels[s] != 1 && labels[s] != -1)
      throw ConfigError("labels must be -1 or +1");
    y.push_back(labels[s]);
    ids.push_back(gram.instance_ids[s]);
  }

  SvmModel model;
  model.C = C;
  model.training_ids = std::move(ids);

  bool all_same = std::all_of(y.begin(), y.end(),
                              [&](int v) { return v == y.front(); });
  if (all_same) {
    // degenerate: the dual forces alpha = 0; predict the only class
    model.coef.assign(subset.size(), 0.0);
    model.bias = y.front();
    return model;
  }

  SmoResult res = solve_smo(gram, y, subset, C);
  model.coef.resize(subset.size());
  for (size_t t = 0; t < subset.size(); ++t)
    model.coef[t] = res.alpha[t] * y[t];
  model.bias = -res.rho;
  model.dual_objective = res.obj;
  model.kkt_residual = res.residual;
  model.iterations = res.iterations;
  return model;
}

}  // namespace

SvmModel train_svm(const KernelMatrix& gram, const std::vector<int>& labels,
                   double C, bool check_psd) {
  if (gram.size() != labels.size())
    throw ConfigError("label count does not match Gram size");
  if (check_psd && !gram.is_psd())
    throw ConfigError(
        "kernel matrix is not positive semidefinite within tolerance; clip "
        "negative eigenvalues before training");
  std::vector<size_t> all(gram.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return fit(gram, labels, all, C);
}

SvmModel train_svm_subset(const KernelMatrix& gram,
                          const std::vector<int>& labels,
                          const std::vector<size_t>& subset, double C) {
  return fit(gram, labels, subset, C);
}

Prediction predict(const SvmModel& model, const std::vector<double>& kernel_row) {
  if (kernel_row.size() != model.coef.size())
    throw std::invalid_argument("kernel row length does not match model size");
  double margin = model.bias;
  for (size_t i = 0; i < kernel_row.size(); ++i)
    margin += model.coef[i] * kernel_row[i];
  return {margin >= 0 ? 1 : -1, margin};
}

double loo_cv(const KernelMatrix& gram, const std::vector<int>& labels,
              double C, bool check_psd) {
  const size_t n = gram.size();
  if (n < 2) throw ConfigError("leave-one-out needs at least 2 instances");
  SvmModel full = train_svm(gram, labels, C, check_psd);

  size_t correct = 0;
  std::vector<size_t> fold;
  fold.reserve(n - 1);
  std::vector<double> row(n - 1);
  for (size_t i = 0; i < n; ++i) {
    if (full.coef[i] == 0.0) {
      // inactive point: the fold optimum equals the full one
      double margin = full.bias;
      for (size_t j = 0; j < n; ++j) margin += full.coef[j] * gram.at(i, j);
      if ((margin >= 0 ? 1 : -1) == labels[i]) ++correct;
      continue;
    }
    fold.clear();
    for (size_t j = 0; j < n; ++j)
      if (j != i) fold.push_back(j);
    SvmModel m = train_svm_subset(gram, labels, fold, C);
    for (size_t t = 0; t < fold.size(); ++t) row[t] = gram.at(i, fold[t]);
    if (predict(m, row).label == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

nlohmann::json SvmModel::to_json() const {
  return {{"coef", coef},
          {"bias", bias},
          {"C", C},
          {"training_ids", training_ids},
          {"dual_objective", dual_objective},
          {"kkt_residual", kkt_residual},
          {"iterations", iterations}};
}

SvmModel SvmModel::from_json(const nlohmann::json& j) {
  SvmModel m;
  m.coef = j.at("coef").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  m.C = j.at("C").get<double>();
  m.training_ids = j.at("training_ids").get<std::vector<std::string>>();
  m.dual_objective = j.value("dual_objective", 0.0);
  m.kkt_residual = j.value("kkt_residual", 0.0);
  m.iterations = j.value("iterations", 0);
  return m;
}

}  // namespace omnigraph
