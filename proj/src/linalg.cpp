// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proctensor/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>

namespace proctensor {

namespace {

constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 20;

std::size_t initial_max_dim() {
  if (const char* env = std::getenv("PROCTENSOR_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return kDefaultMaxDim;
}

std::atomic<std::size_t>& max_dim_storage() {
  static std::atomic<std::size_t> limit{initial_max_dim()};
  return limit;
}

// Row-major strides: stride[k] = prod_{l>k} dims[l].
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    s[k - 1] = s[k] * dims[k];
  }
  return s;
}

void check_square(const ComplexMatrix& m, const SubsystemShape& shape, const char* what) {
  if (m.rows() != m.cols()) {
    throw ArgumentError(std::string(what) + ": matrix is not square");
  }
  if (static_cast<std::size_t>(m.rows()) != shape.total_dim()) {
    throw ArgumentError(std::string(what) + ": shape dimension " + std::to_string(shape.total_dim()) +
                        " does not match matrix dimension " + std::to_string(m.rows()));
  }
}

// Validates a list of distinct factor indices against `shape`.
void check_indices(const std::vector<std::size_t>& idx, const SubsystemShape& shape, const char* what) {
  std::vector<bool> seen(shape.size(), false);
  for (std::size_t k : idx) {
    if (k >= shape.size()) {
      throw ArgumentError(std::string(what) + ": subsystem index " + std::to_string(k) + " out of range for " +
                          std::to_string(shape.size()) + " factors");
    }
    if (seen[k]) {
      throw ArgumentError(std::string(what) + ": subsystem index " + std::to_string(k) + " repeated");
    }
    seen[k] = true;
  }
}

// For every flat index, the part of it carried by the factors in `subset`
// (the same flat index with all other digits zeroed).
std::vector<std::size_t> subset_component(const SubsystemShape& shape, const std::vector<std::size_t>& subset) {
  const auto& dims = shape.dims();
  const auto strides = strides_of(dims);
  const std::size_t total = shape.total_dim();
  std::vector<std::size_t> out(total, 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t acc = 0;
    for (std::size_t k : subset) {
      acc += ((i / strides[k]) % dims[k]) * strides[k];
    }
    out[i] = acc;
  }
  return out;
}

// Flat index of each input index after relabeling factors by `order`.
std::vector<std::size_t> permuted_index_map(const SubsystemShape& shape, const std::vector<std::size_t>& order) {
  const auto& dims = shape.dims();
  const auto old_strides = strides_of(dims);
  std::vector<std::size_t> new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const auto new_strides = strides_of(new_dims);
  const std::size_t total = shape.total_dim();
  std::vector<std::size_t> map(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      j += ((i / old_strides[order[k]]) % dims[order[k]]) * new_strides[k];
    }
    map[i] = j;
  }
  return map;
}

void check_permutation(const std::vector<std::size_t>& order, const SubsystemShape& shape) {
  if (order.size() != shape.size()) {
    throw ArgumentError("permute_subsystems: order has " + std::to_string(order.size()) + " entries, shape has " +
                        std::to_string(shape.size()));
  }
  check_indices(order, shape, "permute_subsystems");
}

}  // namespace

std::size_t max_dense_dim() { return max_dim_storage().load(); }

void set_max_dense_dim(std::size_t limit) { max_dim_storage().store(limit); }

void check_dense_dim(std::size_t dim, const char* what) {
  if (dim > max_dense_dim()) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds the dense limit " +
                         std::to_string(max_dense_dim()));
  }
}

// ---------------------------------------------------------------------------
// SubsystemShape

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) {
    throw ArgumentError("SubsystemShape: no factors");
  }
  for (std::size_t d : dims_) {
    if (d == 0) throw ArgumentError("SubsystemShape: zero dimension");
  }
  if (!labels_.empty() && labels_.size() != dims_.size()) {
    throw ArgumentError("SubsystemShape: " + std::to_string(labels_.size()) + " labels for " +
                        std::to_string(dims_.size()) + " factors");
  }
}

SubsystemShape SubsystemShape::uniform(std::size_t count, std::size_t d) {
  return SubsystemShape(std::vector<std::size_t>(count, d));
}

std::size_t SubsystemShape::total_dim() const {
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d > max_dense_dim() / total) {
      throw DimensionError("SubsystemShape: total dimension exceeds the dense limit " +
                           std::to_string(max_dense_dim()));
    }
    total *= d;
  }
  return total;
}

SubsystemShape SubsystemShape::select(const std::vector<std::size_t>& indices) const {
  check_indices(indices, *this, "SubsystemShape::select");
  std::vector<std::size_t> d;
  std::vector<std::string> l;
  for (std::size_t k : indices) {
    d.push_back(dims_[k]);
    if (!labels_.empty()) l.push_back(labels_[k]);
  }
  return SubsystemShape(std::move(d), std::move(l));
}

SubsystemShape SubsystemShape::concat(const SubsystemShape& other) const {
  std::vector<std::size_t> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  std::vector<std::string> l;
  if (!labels_.empty() && !other.labels_.empty()) {
    l = labels_;
    l.insert(l.end(), other.labels_.begin(), other.labels_.end());
  }
  return SubsystemShape(std::move(d), std::move(l));
}

// ---------------------------------------------------------------------------
// DensityMatrix

namespace detail {
struct DenseCache {
  std::once_flag once;
  ComplexMatrix matrix;
};
}  // namespace detail

namespace {

std::shared_ptr<detail::DenseCache> dense_ready(ComplexMatrix m) {
  auto cache = std::make_shared<detail::DenseCache>();
  std::call_once(cache->once, [&] { cache->matrix = std::move(m); });
  return cache;
}

}  // namespace

DensityMatrix::DensityMatrix(std::shared_ptr<const ComplexMatrix> factor, std::shared_ptr<detail::DenseCache> dense,
                             SubsystemShape shape)
    : factor_(std::move(factor)), dense_(std::move(dense)), shape_(std::move(shape)), dim_(shape_.total_dim()) {}

const ComplexMatrix& DensityMatrix::matrix() const {
  std::call_once(dense_->once, [this] {
    check_dense_dim(dim_, "DensityMatrix::matrix");
    dense_->matrix = (*factor_) * factor_->adjoint();
  });
  return dense_->matrix;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, SubsystemShape shape, const Tolerances& tol) {
  check_square(m, shape, "DensityMatrix");
  if (!m.allFinite()) {
    throw NotAStateError("DensityMatrix: non-finite entry");
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.herm) {
    throw NotAStateError("DensityMatrix: not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.tr) {
    throw NotAStateError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  const auto spectrum = eigenvalues_hermitian(sym, tol);
  if (spectrum.front() < -tol.psd) {
    throw NotAStateError("DensityMatrix: negative eigenvalue " + std::to_string(spectrum.front()));
  }
  return DensityMatrix(nullptr, dense_ready(std::move(m)), std::move(shape));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, SubsystemShape shape) {
  check_square(m, shape, "DensityMatrix");
  return DensityMatrix(nullptr, dense_ready(std::move(m)), std::move(shape));
}

DensityMatrix DensityMatrix::from_factor(ComplexMatrix a, SubsystemShape shape, const Tolerances& tol) {
  if (static_cast<std::size_t>(a.rows()) != shape.total_dim()) {
    throw ArgumentError("DensityMatrix: factor has " + std::to_string(a.rows()) + " rows, shape dimension is " +
                        std::to_string(shape.total_dim()));
  }
  if (!a.allFinite()) {
    throw NotAStateError("DensityMatrix: non-finite factor entry");
  }
  const double tr = a.squaredNorm();
  if (std::abs(tr - 1.0) > tol.tr) {
    throw NotAStateError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  return unchecked_factor(std::move(a), std::move(shape));
}

DensityMatrix DensityMatrix::unchecked_factor(ComplexMatrix a, SubsystemShape shape) {
  if (static_cast<std::size_t>(a.rows()) != shape.total_dim()) {
    throw ArgumentError("DensityMatrix: factor has " + std::to_string(a.rows()) + " rows, shape dimension is " +
                        std::to_string(shape.total_dim()));
  }
  return DensityMatrix(std::make_shared<const ComplexMatrix>(std::move(a)), std::make_shared<detail::DenseCache>(),
                       std::move(shape));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  check_dense_dim(d, "maximally_mixed");
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix(nullptr, dense_ready(ComplexMatrix::Identity(n, n) / static_cast<double>(d)),
                       SubsystemShape({d}));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, SubsystemShape shape) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ArgumentError("DensityMatrix::pure: zero or non-finite vector");
  }
  if (static_cast<std::size_t>(psi.size()) != shape.total_dim()) {
    throw ArgumentError("DensityMatrix::pure: vector dimension does not match shape");
  }
  ComplexMatrix a = psi / norm;
  return DensityMatrix(std::make_shared<const ComplexMatrix>(std::move(a)), std::make_shared<detail::DenseCache>(),
                       std::move(shape));
}

DensityMatrix DensityMatrix::maximally_entangled(std::size_t d) {
  check_dense_dim(d * d, "maximally_entangled");
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) psi(static_cast<Eigen::Index>(i * d + i)) = 1.0;
  return pure(psi, SubsystemShape({d, d}));
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto ra = static_cast<std::size_t>(a.rows());
  const auto rb = static_cast<std::size_t>(b.rows());
  const auto ca = static_cast<std::size_t>(a.cols());
  const auto cb = static_cast<std::size_t>(b.cols());
  if ((ra != 0 && rb > max_dense_dim() / ra) || (ca != 0 && cb > max_dense_dim() / ca)) {
    throw DimensionError("kron: product dimension exceeds the dense limit " + std::to_string(max_dense_dim()));
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  SubsystemShape shape = a.shape().concat(b.shape());
  if (a.is_factored() && b.is_factored()) {
    return DensityMatrix::unchecked_factor(kron(*a.factor(), *b.factor()), std::move(shape));
  }
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), std::move(shape));
}

namespace {

// Flat indices grouped by traced digits: groups[t * kept_dim + k] is the index
// whose traced digits spell t and whose kept digits spell k.
struct TraceGroups {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> groups;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

TraceGroups trace_groups(const SubsystemShape& shape, const std::vector<std::size_t>& keep) {
  if (keep.empty()) {
    throw ArgumentError("partial_trace: keep set is empty");
  }
  check_indices(keep, shape, "partial_trace");
  TraceGroups g;
  g.kept = keep;
  std::sort(g.kept.begin(), g.kept.end());
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!std::binary_search(g.kept.begin(), g.kept.end(), k)) traced.push_back(k);
  }
  const auto& dims = shape.dims();
  const auto strides = strides_of(dims);
  for (std::size_t k : g.kept) g.kept_dim *= dims[k];
  g.traced_dim = shape.total_dim() / g.kept_dim;

  std::vector<std::size_t> kept_offsets(g.kept_dim);
  for (std::size_t k = 0; k < g.kept_dim; ++k) {
    std::size_t off = 0;
    std::size_t r = k;
    for (std::size_t q = g.kept.size(); q-- > 0;) {
      off += (r % dims[g.kept[q]]) * strides[g.kept[q]];
      r /= dims[g.kept[q]];
    }
    kept_offsets[k] = off;
  }
  g.groups.resize(shape.total_dim());
  for (std::size_t t = 0; t < g.traced_dim; ++t) {
    std::size_t base = 0;
    std::size_t rem = t;
    for (std::size_t q = traced.size(); q-- > 0;) {
      base += (rem % dims[traced[q]]) * strides[traced[q]];
      rem /= dims[traced[q]];
    }
    for (std::size_t k = 0; k < g.kept_dim; ++k) g.groups[t * g.kept_dim + k] = base + kept_offsets[k];
  }
  return g;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            const std::vector<std::size_t>& keep) {
  check_square(m, shape, "partial_trace");
  const TraceGroups g = trace_groups(shape, keep);
  const auto kd = static_cast<Eigen::Index>(g.kept_dim);
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (std::size_t t = 0; t < g.traced_dim; ++t) {
    const std::size_t* idx = &g.groups[t * g.kept_dim];
    for (Eigen::Index c = 0; c < kd; ++c) {
      const auto mc = static_cast<Eigen::Index>(idx[c]);
      for (Eigen::Index r = 0; r < kd; ++r) {
        out(r, c) += m(static_cast<Eigen::Index>(idx[r]), mc);
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  SubsystemShape shape = rho.shape().select(kept);
  if (!rho.is_factored()) {
    return DensityMatrix::unchecked(partial_trace(rho.matrix(), rho.shape(), keep), std::move(shape));
  }
  // ρ_K = B B† with B(k, t * rank + c) = A(groups[t][k], c).
  const ComplexMatrix& a = *rho.factor();
  const TraceGroups g = trace_groups(rho.shape(), keep);
  const auto kd = static_cast<Eigen::Index>(g.kept_dim);
  const auto rank = a.cols();
  ComplexMatrix b(kd, static_cast<Eigen::Index>(g.traced_dim) * rank);
  for (std::size_t t = 0; t < g.traced_dim; ++t) {
    const std::size_t* idx = &g.groups[t * g.kept_dim];
    for (Eigen::Index k = 0; k < kd; ++k) {
      b.block(k, static_cast<Eigen::Index>(t) * rank, 1, rank) = a.row(static_cast<Eigen::Index>(idx[k]));
    }
  }
  if (b.cols() >= b.rows()) {
    return DensityMatrix::unchecked(b * b.adjoint(), std::move(shape));
  }
  return DensityMatrix::unchecked_factor(std::move(b), std::move(shape));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                const std::vector<std::size_t>& subset) {
  check_square(m, shape, "partial_transpose");
  check_indices(subset, shape, "partial_transpose");
  const auto part = subset_component(shape, subset);
  const auto n = m.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::size_t cs = part[static_cast<std::size_t>(c)];
    const std::size_t cr = static_cast<std::size_t>(c) - cs;
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::size_t rs = part[static_cast<std::size_t>(r)];
      const std::size_t rr = static_cast<std::size_t>(r) - rs;
      out(static_cast<Eigen::Index>(rr + cs), static_cast<Eigen::Index>(cr + rs)) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::size_t>& subset) {
  return partial_transpose(rho.matrix(), rho.shape(), subset);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemShape& shape,
                                 const std::vector<std::size_t>& order) {
  check_square(m, shape, "permute_subsystems");
  check_permutation(order, shape);
  const auto map = permuted_index_map(shape, order);
  const auto n = m.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto pc = static_cast<Eigen::Index>(map[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < n; ++r) {
      out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(r)]), pc) = m(r, c);
    }
  }
  return out;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order) {
  if (rho.is_factored()) {
    check_permutation(order, rho.shape());
    const auto map = permuted_index_map(rho.shape(), order);
    const ComplexMatrix& a = *rho.factor();
    ComplexMatrix out(a.rows(), a.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) out.row(static_cast<Eigen::Index>(map[static_cast<std::size_t>(r)])) = a.row(r);
    return DensityMatrix::unchecked_factor(std::move(out), rho.shape().select(order));
  }
  return DensityMatrix::unchecked(permute_subsystems(rho.matrix(), rho.shape(), order), rho.shape().select(order));
}

void apply_local(ComplexVector& psi, const SubsystemShape& shape, const std::vector<std::size_t>& targets,
                 const ComplexMatrix& op) {
  if (static_cast<std::size_t>(psi.size()) != shape.total_dim()) {
    throw ArgumentError("apply_local: vector dimension does not match shape");
  }
  if (targets.empty()) throw ArgumentError("apply_local: no target factors");
  check_indices(targets, shape, "apply_local");
  const auto& dims = shape.dims();
  const auto strides = strides_of(dims);
  std::size_t local = 1;
  for (std::size_t k : targets) local *= dims[k];
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != local) {
    throw ArgumentError("apply_local: operator dimension " + std::to_string(op.rows()) + " does not match " +
                        std::to_string(local));
  }

  // offsets[l]: flat displacement of local index l over the target factors.
  std::vector<std::size_t> offsets(local);
  for (std::size_t l = 0; l < local; ++l) {
    std::size_t off = 0;
    std::size_t r = l;
    for (std::size_t q = targets.size(); q-- > 0;) {
      off += (r % dims[targets[q]]) * strides[targets[q]];
      r /= dims[targets[q]];
    }
    offsets[l] = off;
  }
  const auto part = subset_component(shape, targets);
  const auto ld = static_cast<Eigen::Index>(local);
  ComplexVector buf(ld);
  for (std::size_t base = 0; base < shape.total_dim(); ++base) {
    if (part[base] != 0) continue;
    for (Eigen::Index l = 0; l < ld; ++l) buf(l) = psi(static_cast<Eigen::Index>(base + offsets[l]));
    const ComplexVector res = op * buf;
    for (Eigen::Index l = 0; l < ld; ++l) psi(static_cast<Eigen::Index>(base + offsets[l])) = res(l);
  }
}

ComplexMatrix swap_operator(std::size_t d) {
  check_dense_dim(d * d, "swap_operator");
  const auto n = static_cast<Eigen::Index>(d * d);
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      s(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
    }
  }
  return s;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix e = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Spectra and entropies

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw ContractViolation("eigenvalues_hermitian: matrix is not square");
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.herm) {
    throw ContractViolation("eigenvalues_hermitian: matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ContractViolation("eigenvalues_hermitian: eigensolver did not converge");
  }
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double entropy_of_spectrum(const std::vector<double>& spectrum, const Tolerances& tol) {
  double s = 0.0;
  for (double lambda : spectrum) {
    if (lambda < -tol.psd) {
      throw NotAStateError("von_neumann_entropy: negative eigenvalue " + std::to_string(lambda));
    }
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  if (rho.is_factored() && static_cast<std::size_t>(rho.factor()->cols()) < rho.dim()) {
    // A†A shares the nonzero spectrum of A A†.
    const ComplexMatrix& a = *rho.factor();
    const ComplexMatrix gram = a.adjoint() * a;
    return entropy_of_spectrum(eigenvalues_hermitian(0.5 * (gram + gram.adjoint()), tol), tol);
  }
  return entropy_of_spectrum(eigenvalues_hermitian(rho.matrix(), tol), tol);
}

RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) {
    throw ArgumentError("relative_entropy: dimension mismatch (" + std::to_string(rho.dim()) + " vs " +
                        std::to_string(sigma.dim()) + ")");
  }
  const ComplexMatrix& s = sigma.matrix();
  const double herm = (s - s.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.herm) {
    throw ContractViolation("relative_entropy: sigma is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  if (es.info() != Eigen::Success) {
    throw ContractViolation("relative_entropy: eigensolver did not converge");
  }
  const auto& mu = es.eigenvalues();
  const auto& v = es.eigenvectors();
  // Populations of rho in sigma's eigenbasis.
  const Eigen::VectorXd pop = (v.adjoint() * rho.matrix() * v).diagonal().real();

  double leak = 0.0;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k) > tol.supp) {
      cross += pop(k) * std::log(mu(k));
    } else {
      leak += pop(k);
    }
  }
  if (leak > tol.supp) {
    return RelativeEntropy{true, std::numeric_limits<double>::infinity()};
  }
  return RelativeEntropy{false, -von_neumann_entropy(rho, tol) - cross};
}

double mutual_information(const DensityMatrix& rho, const Partition& partition, const Tolerances& tol) {
  const std::size_t factors = rho.shape().size();
  std::vector<bool> covered(factors, false);
  for (const auto& block : partition) {
    if (block.empty()) throw ArgumentError("mutual_information: empty block");
    for (std::size_t k : block) {
      if (k >= factors) {
        throw ArgumentError("mutual_information: index " + std::to_string(k) + " out of range");
      }
      if (covered[k]) {
        throw ArgumentError("mutual_information: index " + std::to_string(k) + " in more than one block");
      }
      covered[k] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw ArgumentError("mutual_information: blocks do not cover the shape");
  }
  double sum = 0.0;
  for (const auto& block : partition) {
    sum += von_neumann_entropy(partial_trace(rho, block), tol);
  }
  return sum - von_neumann_entropy(rho, tol);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("trace_distance: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                        std::to_string(b.rows()) + ")");
  }
  const auto spectrum = eigenvalues_hermitian(a - b, tol);
  double norm = 0.0;
  for (double x : spectrum) norm += std::abs(x);
  return 0.5 * norm;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("trace_distance: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
  }
  if (a.is_factored() && b.is_factored()) {
    const ComplexMatrix& fa = *a.factor();
    const ComplexMatrix& fb = *b.factor();
    const Eigen::Index joint = fa.cols() + fb.cols();
    if (static_cast<std::size_t>(joint) < a.dim()) {
      // a - b is supported on span[A B]; restrict it to an orthonormal basis Q of that span.
      ComplexMatrix x(fa.rows(), joint);
      x << fa, fb;
      Eigen::HouseholderQR<ComplexMatrix> qr(x);
      const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(fa.rows(), joint);
      const ComplexMatrix pa = q.adjoint() * fa;
      const ComplexMatrix pb = q.adjoint() * fb;
      ComplexMatrix diff = pa * pa.adjoint() - pb * pb.adjoint();
      diff = 0.5 * (diff + diff.adjoint()).eval();
      const auto spectrum = eigenvalues_hermitian(diff, tol);
      double norm = 0.0;
      for (double v : spectrum) norm += std::abs(v);
      return 0.5 * norm;
    }
  }
  return trace_distance(a.matrix(), b.matrix(), tol);
}

}  // namespace proctensor
