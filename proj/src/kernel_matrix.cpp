#include "omnigraph/kernel_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace omnigraph {

bool KernelMatrix::is_symmetric(double tol) const {
  const size_t n = size();
  for (size_t i = 0; i < n; ++i) {
    if (at(i, i) < 0) return false;
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(at(i, j) - at(j, i)) > tol) return false;
  }
  return true;
}

std::pair<double, double> KernelMatrix::eigenvalue_range() const {
  const Eigen::Index n = static_cast<Eigen::Index>(size());
  if (n == 0) return {0.0, 0.0};
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = at(i, j);
  // symmetrize against round-off before the eigensolve
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s,
                                                        Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

bool KernelMatrix::is_psd(double rel_tol) const {
  auto [lo, hi] = eigenvalue_range();
  return lo >= -rel_tol * std::max(hi, 0.0) - 1e-12;
}

KernelMatrix KernelMatrix::minor(const std::vector<size_t>& keep) const {
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (size_t k : keep) ids.push_back(instance_ids[k]);
  KernelMatrix out(std::move(ids));
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = 0; j < keep.size(); ++j)
      out.at(i, j) = at(keep[i], keep[j]);
  return out;
}

namespace {
constexpr char kMagic[4] = {'O', 'G', 'K', 'M'};
constexpr uint32_t kVersion = 1;
}  // namespace

void KernelMatrix::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(kMagic, 4);
  uint32_t v = kVersion, n = static_cast<uint32_t>(size());
  f.write(reinterpret_cast<const char*>(&v), 4);
  f.write(reinterpret_cast<const char*>(&n), 4);
  f.write(reinterpret_cast<const char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!f) throw std::runtime_error("write failed: " + path);

  nlohmann::json sidecar = {{"instance_ids", instance_ids}};
  std::ofstream sf(path + ".ids.json");
  if (!sf) throw std::runtime_error("cannot open " + path + ".ids.json");
  sf << sidecar.dump(2) << "\n";
}

KernelMatrix KernelMatrix::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error(path + ": not an OGKM kernel matrix");
  uint32_t v = 0, n = 0;
  f.read(reinterpret_cast<char*>(&v), 4);
  f.read(reinterpret_cast<char*>(&n), 4);
  if (v != kVersion)
    throw std::runtime_error(path + ": unsupported OGKM version " +
                             std::to_string(v));
  KernelMatrix out;
  out.values.resize(static_cast<size_t>(n) * n);
  f.read(reinterpret_cast<char*>(out.values.data()),
         static_cast<std::streamsize>(out.values.size() * sizeof(double)));
  if (!f) throw std::runtime_error(path + ": truncated matrix payload");

  std::ifstream sf(path + ".ids.json");
  if (sf) {
    nlohmann::json sidecar = nlohmann::json::parse(sf);
    out.instance_ids =
        sidecar.at("instance_ids").get<std::vector<std::string>>();
    if (out.instance_ids.size() != n)
      throw std::runtime_error(path + ": sidecar id count mismatch");
  } else {
    for (uint32_t i = 0; i < n; ++i) out.instance_ids.push_back(std::to_string(i));
  }
  return out;
}

}  // namespace omnigraph
