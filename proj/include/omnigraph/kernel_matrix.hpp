#ifndef OMNIGRAPH_KERNEL_MATRIX_HPP
#define OMNIGRAPH_KERNEL_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace omnigraph {

// Dense symmetric Gram matrix over instances, row-major.
struct KernelMatrix {
  std::vector<std::string> instance_ids;
  std::vector<double> values;

  KernelMatrix() = default;
  explicit KernelMatrix(std::vector<std::string> ids)
      : instance_ids(std::move(ids)),
        values(instance_ids.size() * instance_ids.size(), 0.0) {}

  size_t size() const { return instance_ids.size(); }
  double& at(size_t i, size_t j) { return values[i * size() + j]; }
  double at(size_t i, size_t j) const { return values[i * size() + j]; }

  bool is_symmetric(double tol = 1e-9) const;
  // min eigenvalue >= -rel_tol * max eigenvalue
  bool is_psd(double rel_tol = 1e-8) const;
  std::pair<double, double> eigenvalue_range() const;

  KernelMatrix minor(const std::vector<size_t>& keep) const;

  // Binary container: magic "OGKM", u32 version, u32 n, n*n little-endian
  // f64 row-major; instance ids in a JSON sidecar "<path>.ids.json".
  void save(const std::string& path) const;
  static KernelMatrix load(const std::string& path);
};

}  // namespace omnigraph

#endif  // OMNIGRAPH_KERNEL_MATRIX_HPP
