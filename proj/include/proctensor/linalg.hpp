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

#ifndef PROCTENSOR_LINALG_HPP
#define PROCTENSOR_LINALG_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "proctensor/errors.hpp"

// Dense multipartite linear algebra and entropy functionals.
//
// Index convention: the leftmost tensor factor is the slowest-varying
// index (big-endian). For dims (d_0, ..., d_{k-1}) the flat index of the
// digit string (x_0, ..., x_{k-1}) is sum_m x_m * prod_{l>m} d_l.
//
// All entropies are in nats.

namespace proctensor {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct Tolerances {
  double herm = 1e-10;
  double tr = 1e-10;
  double psd = 1e-10;
  double eig = 1e-9;
  double supp = 1e-10;
  double xcheck = 1e-8;
  double causal = 1e-9;
};

/// Largest dense matrix/vector dimension any operation will allocate.
/// Defaults to 2^20; PROCTENSOR_MAX_DIM overrides it at first use.
std::size_t max_dense_dim();
void set_max_dense_dim(std::size_t limit);

/// Throws DimensionError when `dim` exceeds max_dense_dim(). `what` names the caller.
void check_dense_dim(std::size_t dim, const char* what);

class SubsystemShape {
 public:
  SubsystemShape() = default;
  explicit SubsystemShape(std::vector<std::size_t> dims, std::vector<std::string> labels = {});

  static SubsystemShape uniform(std::size_t count, std::size_t d);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t total_dim() const;

  /// Sub-shape over `indices` (validated, kept in the given order).
  SubsystemShape select(const std::vector<std::size_t>& indices) const;
  SubsystemShape concat(const SubsystemShape& other) const;

  bool operator==(const SubsystemShape& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
};

namespace detail {
struct DenseCache;
}  // namespace detail

/// Hermitian, PSD, unit-trace matrix annotated with its tensor factorization.
///
/// A state is stored either densely or as a factor A with ρ = A A† (A is
/// dim × rank). Factored states come from pure vectors and circuit
/// simulations; entropies, marginals and trace distances work on the factor
/// while its rank stays below the dimension. matrix() materializes the dense
/// form on first use. Copies share storage; values never change after
/// construction.
class DensityMatrix {
 public:
  /// Validates shape, hermiticity, trace and positivity; throws NotAStateError.
  static DensityMatrix from_matrix(ComplexMatrix m, SubsystemShape shape, const Tolerances& tol = {});
  /// Checks only that the shape matches the matrix. For results of operations
  /// that preserve the state property.
  static DensityMatrix unchecked(ComplexMatrix m, SubsystemShape shape);
  /// ρ = A A†. Validates finiteness and unit trace.
  static DensityMatrix from_factor(ComplexMatrix a, SubsystemShape shape, const Tolerances& tol = {});
  static DensityMatrix unchecked_factor(ComplexMatrix a, SubsystemShape shape);

  static DensityMatrix maximally_mixed(std::size_t d);
  /// |psi><psi| / <psi|psi>, kept in factored form.
  static DensityMatrix pure(const ComplexVector& psi, SubsystemShape shape);
  /// Normalized maximally entangled state (1/d) sum_ij |ii><jj| on (d, d).
  static DensityMatrix maximally_entangled(std::size_t d);

  const ComplexMatrix& matrix() const;
  const SubsystemShape& shape() const { return shape_; }
  std::size_t dim() const { return dim_; }

  bool is_factored() const { return factor_ != nullptr; }
  /// The factor A of a factored state; nullptr for dense states.
  const ComplexMatrix* factor() const { return factor_.get(); }

 private:
  DensityMatrix(std::shared_ptr<const ComplexMatrix> factor, std::shared_ptr<detail::DenseCache> dense,
                SubsystemShape shape);

  std::shared_ptr<const ComplexMatrix> factor_;
  std::shared_ptr<detail::DenseCache> dense_;
  SubsystemShape shape_;
  std::size_t dim_ = 0;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            const std::vector<std::size_t>& keep);
/// Marginal on `keep`; the result shape lists the kept factors in original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                const std::vector<std::size_t>& subset);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::size_t>& subset);

/// Reorders tensor factors: factor k of the result is factor order[k] of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemShape& shape,
                                 const std::vector<std::size_t>& order);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order);

/// Applies `op` to the factors `targets` of a state vector in place. The first
/// tensor factor of `op` acts on targets[0].
void apply_local(ComplexVector& psi, const SubsystemShape& shape, const std::vector<std::size_t>& targets,
                 const ComplexMatrix& op);

/// SWAP on C^d ⊗ C^d.
ComplexMatrix swap_operator(std::size_t d);

/// Largest absolute entry of U U^† - I.
double unitarity_residual(const ComplexMatrix& u);

/// Ascending real spectrum. Throws ContractViolation if m is not Hermitian within tol.herm.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m, const Tolerances& tol = {});

/// -sum λ ln λ over a spectrum; entries in (-tol.psd, 0] count as zero.
double entropy_of_spectrum(const std::vector<double>& spectrum, const Tolerances& tol = {});
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});

/// Either a finite value in nats or +infinity (support of rho not inside support of sigma).
struct RelativeEntropy {
  bool infinite = false;
  double nats = 0.0;
};

RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});

/// Disjoint blocks of shape indices covering the whole shape.
using Partition = std::vector<std::vector<std::size_t>>;

/// sum_blocks S(marginal) - S(rho).
double mutual_information(const DensityMatrix& rho, const Partition& partition, const Tolerances& tol = {});

/// (1/2) ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol = {});
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

}  // namespace proctensor

#endif  // PROCTENSOR_LINALG_HPP
