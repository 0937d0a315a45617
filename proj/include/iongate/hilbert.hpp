#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "iongate/constants.hpp"

namespace iongate::hilbert {

using cxd = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

// Tensor-product space of N ions (2 or 3 levels each) followed by M truncated
// bosonic modes. Basis enumeration is row-major over subsystems in declared
// order, first-declared fastest-varying; the order is fixed so that emitted
// state vectors and golden files are stable.
//
// Ion level labels: 0 = |0>, 1 = |1c>, 2 = |1z> (3-level ions only).
class SpaceDescriptor {
 public:
  SpaceDescriptor() = default;

  SpaceDescriptor(std::vector<int> ion_levels, std::vector<int> mode_truncations)
      : ion_levels_(std::move(ion_levels)), mode_truncations_(std::move(mode_truncations)) {
    if (ion_levels_.empty()) throw std::invalid_argument("SpaceDescriptor: empty ion list");
    for (int l : ion_levels_)
      if (l != 2 && l != 3) throw std::invalid_argument("SpaceDescriptor: ion level count must be 2 or 3");
    for (int t : mode_truncations_)
      if (t < 1) throw std::invalid_argument("SpaceDescriptor: mode truncation must be >= 1");
    dims_.reserve(ion_levels_.size() + mode_truncations_.size());
    for (int l : ion_levels_) dims_.push_back(l);
    for (int t : mode_truncations_) dims_.push_back(t);
    strides_.resize(dims_.size());
    long stride = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      strides_[k] = stride;
      stride *= dims_[k];
    }
    dimension_ = stride;
    if (dimension_ < 4) throw std::invalid_argument("SpaceDescriptor: total dimension must be >= 4");
  }

  long dimension() const { return dimension_; }
  std::size_t n_ions() const { return ion_levels_.size(); }
  std::size_t n_modes() const { return mode_truncations_.size(); }
  std::size_t n_subsystems() const { return dims_.size(); }
  int ion_levels(std::size_t ion) const { return ion_levels_.at(ion); }
  int mode_truncation(std::size_t mode) const { return mode_truncations_.at(mode); }
  int subsystem_dim(std::size_t k) const { return dims_.at(k); }
  long subsystem_stride(std::size_t k) const { return strides_.at(k); }
  std::size_t mode_subsystem(std::size_t mode) const { return ion_levels_.size() + mode; }

  // Product of ion dimensions; since ions are declared first and fastest,
  // a state vector reshapes to (spin_dimension x motional_dimension) column-major.
  long spin_dimension() const {
    long d = 1;
    for (int l : ion_levels_) d *= l;
    return d;
  }
  long motional_dimension() const { return dimension_ / spin_dimension(); }

  long index_of(const std::vector<int>& labels) const {
    if (labels.size() != dims_.size()) throw std::invalid_argument("index_of: label count mismatch");
    long idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (labels[k] < 0 || labels[k] >= dims_[k]) throw std::out_of_range("index_of: label out of range");
      idx += labels[k] * strides_[k];
    }
    return idx;
  }

  std::vector<int> labels_of(long index) const {
    if (index < 0 || index >= dimension_) throw std::out_of_range("labels_of: index out of range");
    std::vector<int> labels(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      labels[k] = static_cast<int>((index / strides_[k]) % dims_[k]);
    }
    return labels;
  }

  bool operator==(const SpaceDescriptor& o) const {
    return ion_levels_ == o.ion_levels_ && mode_truncations_ == o.mode_truncations_;
  }

 private:
  std::vector<int> ion_levels_;
  std::vector<int> mode_truncations_;
  std::vector<int> dims_;
  std::vector<long> strides_;
  long dimension_ = 0;
};

inline SpaceDescriptor build_space(std::vector<int> ion_levels, std::vector<int> mode_truncations) {
  return SpaceDescriptor(std::move(ion_levels), std::move(mode_truncations));
}

struct QuantumState {
  SpaceDescriptor space;
  VectorXc amplitudes;

  QuantumState() = default;
  QuantumState(SpaceDescriptor s, VectorXc amp) : space(std::move(s)), amplitudes(std::move(amp)) {
    if (amplitudes.size() != space.dimension())
      throw std::invalid_argument("QuantumState: amplitude length != space dimension");
  }

  double norm() const { return amplitudes.norm(); }
};

// |labels> product basis state.
inline QuantumState basis_state(const SpaceDescriptor& space, const std::vector<int>& labels) {
  VectorXc amp = VectorXc::Zero(space.dimension());
  amp(space.index_of(labels)) = 1.0;
  return QuantumState(space, std::move(amp));
}

class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(SpaceDescriptor space, MatrixXc matrix, bool hermitian = false)
      : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian) {
    if (matrix_.rows() != space_.dimension() || matrix_.cols() != space_.dimension())
      throw std::invalid_argument("LinearOperator: matrix shape != space dimension");
    if (hermitian_) {
      double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
      if (dev >= 1e-12) throw std::invalid_argument("LinearOperator: hermitian flag set but ||A - A^dag||maxCoeff = " + std::to_string(dev));
    }
  }

  const SpaceDescriptor& space() const { return space_; }
  const MatrixXc& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

  LinearOperator adjoint() const { return LinearOperator(space_, matrix_.adjoint(), hermitian_); }

  LinearOperator operator*(const LinearOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw std::invalid_argument("operator*: space mismatch");
    return LinearOperator(space_, matrix_ * rhs.matrix_);
  }
  LinearOperator operator+(const LinearOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw std::invalid_argument("operator+: space mismatch");
    return LinearOperator(space_, matrix_ + rhs.matrix_, hermitian_ && rhs.hermitian_);
  }
  LinearOperator operator-(const LinearOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw std::invalid_argument("operator-: space mismatch");
    return LinearOperator(space_, matrix_ - rhs.matrix_, hermitian_ && rhs.hermitian_);
  }
  friend LinearOperator operator*(double s, const LinearOperator& op) {
    return LinearOperator(op.space_, s * op.matrix_, op.hermitian_);
  }

  VectorXc apply(const VectorXc& v) const { return matrix_ * v; }

 private:
  SpaceDescriptor space_;
  MatrixXc matrix_;
  bool hermitian_ = false;
};

namespace detail {

// Embed a single-subsystem dense matrix by identity on all other subsystems.
inline MatrixXc embed_single(const SpaceDescriptor& space, std::size_t subsystem, const MatrixXc& small) {
  const int d = space.subsystem_dim(subsystem);
  if (small.rows() != d || small.cols() != d)
    throw std::invalid_argument("embed_single: subsystem dimension mismatch");
  const long stride = space.subsystem_stride(subsystem);
  const long dim = space.dimension();
  const long outer = dim / (stride * d);  // slower-varying block count
  MatrixXc full = MatrixXc::Zero(dim, dim);
  for (long o = 0; o < outer; ++o) {
    const long base = o * stride * d;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const cxd v = small(i, j);
        if (v == cxd(0.0)) continue;
        for (long s = 0; s < stride; ++s) full(base + i * stride + s, base + j * stride + s) = v;
      }
  }
  return full;
}

inline MatrixXc mode_annihilation_matrix(int n_max) {
  MatrixXc a = MatrixXc::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Pauli-z on the qubit pair of one ion. Convention: |0> -> -1 and the "1"
// states (|1c>, |1z> for 3-level ions) -> +1; only differences and squares of
// collective combinations enter any observable here.
inline MatrixXc ion_sigma_z_matrix(int levels) {
  MatrixXc sz = MatrixXc::Identity(levels, levels);
  sz(0, 0) = -1.0;
  return sz;
}

// exp(alpha a^dag - alpha* a) on an n_max-truncated mode, computed by
// diagonalizing the Hermitian generator; exactly unitary on the truncated space.
inline MatrixXc mode_displacement_matrix(int n_max, cxd alpha) {
  MatrixXc a = mode_annihilation_matrix(n_max);
  MatrixXc gen_h = cxd(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);  // Hermitian
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(gen_h);
  Eigen::VectorXcd phases = (cxd(0, 1) * es.eigenvalues().cast<cxd>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

inline LinearOperator identity(const SpaceDescriptor& space) {
  return LinearOperator(space, MatrixXc::Identity(space.dimension(), space.dimension()), true);
}

inline LinearOperator annihilation(const SpaceDescriptor& space, std::size_t mode_index) {
  if (mode_index >= space.n_modes()) throw std::out_of_range("annihilation: invalid mode index");
  const int n_max = space.mode_truncation(mode_index);
  return LinearOperator(space, detail::embed_single(space, space.mode_subsystem(mode_index),
                                                    detail::mode_annihilation_matrix(n_max)));
}

inline LinearOperator creation(const SpaceDescriptor& space, std::size_t mode_index) {
  return annihilation(space, mode_index).adjoint();
}

inline LinearOperator number_operator(const SpaceDescriptor& space, std::size_t mode_index) {
  if (mode_index >= space.n_modes()) throw std::out_of_range("number_operator: invalid mode index");
  const int n_max = space.mode_truncation(mode_index);
  MatrixXc n = MatrixXc::Zero(n_max, n_max);
  for (int k = 0; k < n_max; ++k) n(k, k) = k;
  return LinearOperator(space, detail::embed_single(space, space.mode_subsystem(mode_index), n), true);
}

inline LinearOperator sigma_z(const SpaceDescriptor& space, std::size_t ion) {
  if (ion >= space.n_ions()) throw std::out_of_range("sigma_z: invalid ion index");
  return LinearOperator(
      space, detail::embed_single(space, ion, detail::ion_sigma_z_matrix(space.ion_levels(ion))), true);
}

// S_z = sum_k b_k sigma_z,k with one coefficient per ion.
inline LinearOperator collective_pauli_z(const SpaceDescriptor& space, const std::vector<double>& b) {
  if (b.size() != space.n_ions()) throw std::invalid_argument("collective_pauli_z: coefficient count mismatch");
  MatrixXc m = MatrixXc::Zero(space.dimension(), space.dimension());
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0.0) continue;
    m += b[k] * detail::embed_single(space, k, detail::ion_sigma_z_matrix(space.ion_levels(k)));
  }
  return LinearOperator(space, std::move(m), true);
}

// P_z = |1z>_1<1z| - |1z>_2<1z|, the collective Zeeman-state projector for a
// two-ion crystal coupled through its stretch mode.
inline LinearOperator zeeman_projector_collective(const SpaceDescriptor& space) {
  if (space.n_ions() != 2) throw std::invalid_argument("zeeman_projector_collective: needs exactly 2 ions");
  for (std::size_t k = 0; k < 2; ++k)
    if (space.ion_levels(k) != 3)
      throw std::invalid_argument("zeeman_projector_collective: both ions must be 3-level");
  MatrixXc p = MatrixXc::Zero(3, 3);
  p(2, 2) = 1.0;
  MatrixXc m = detail::embed_single(space, 0, p) - detail::embed_single(space, 1, p);
  return LinearOperator(space, std::move(m), true);
}

struct CollectiveCz {
  LinearOperator sx;
  LinearOperator sy;
  LinearOperator sz;
};

// Collective Pauli operators on the {|1c>, |1z>} pair of each ion,
// identity-extended; |0> is untouched. Sign convention: sz |1c> = +|1c>.
inline CollectiveCz collective_cz_operators(const SpaceDescriptor& space) {
  for (std::size_t k = 0; k < space.n_ions(); ++k)
    if (space.ion_levels(k) != 3)
      throw std::invalid_argument("collective_cz_operators: all ions must be 3-level");
  MatrixXc sx1 = MatrixXc::Zero(3, 3), sy1 = MatrixXc::Zero(3, 3), sz1 = MatrixXc::Zero(3, 3);
  sx1(2, 1) = 1.0;  // |1z><1c|
  sx1(1, 2) = 1.0;
  sy1(2, 1) = cxd(0, 1);
  sy1(1, 2) = cxd(0, -1);
  sz1(1, 1) = 1.0;
  sz1(2, 2) = -1.0;
  const long dim = space.dimension();
  MatrixXc mx = MatrixXc::Zero(dim, dim), my = MatrixXc::Zero(dim, dim), mz = MatrixXc::Zero(dim, dim);
  for (std::size_t k = 0; k < space.n_ions(); ++k) {
    mx += detail::embed_single(space, k, sx1);
    my += detail::embed_single(space, k, sy1);
    mz += detail::embed_single(space, k, sz1);
  }
  return {LinearOperator(space, std::move(mx), true), LinearOperator(space, std::move(my), true),
          LinearOperator(space, std::move(mz), true)};
}

// exp(alpha a^dag - alpha* a) on one mode, identity on everything else.
inline LinearOperator displacement_operator(const SpaceDescriptor& space, std::size_t mode_index, cxd alpha) {
  if (mode_index >= space.n_modes()) throw std::out_of_range("displacement_operator: invalid mode index");
  const int n_max = space.mode_truncation(mode_index);
  return LinearOperator(space, detail::embed_single(space, space.mode_subsystem(mode_index),
                                                    detail::mode_displacement_matrix(n_max, alpha)));
}

// Total population in the top_k highest Fock levels of each mode, summed over
// modes. This is the truncation monitor: it must stay small for a run to be
// trusted.
inline double leakage(const QuantumState& state, int top_k) {
  if (top_k < 1) throw std::invalid_argument("leakage: top_k must be >= 1");
  const auto& space = state.space;
  double total = 0.0;
  const long dim = space.dimension();
  for (std::size_t m = 0; m < space.n_modes(); ++m) {
    const std::size_t sub = space.mode_subsystem(m);
    const int d = space.subsystem_dim(sub);
    const long stride = space.subsystem_stride(sub);
    const int lo = std::max(0, d - top_k);
    double pop = 0.0;
    for (long idx = 0; idx < dim; ++idx) {
      const int level = static_cast<int>((idx / stride) % d);
      if (level >= lo) pop += std::norm(state.amplitudes(idx));
    }
    total += pop;
  }
  return total;
}

// Leakage for a bare single-mode amplitude vector (used by the factorized
// per-mode integrators).
inline double mode_leakage(const VectorXc& amps, int top_k) {
  const long n = amps.size();
  double pop = 0.0;
  for (long k = std::max<long>(0, n - top_k); k < n; ++k) pop += std::norm(amps(k));
  return pop;
}

}  // namespace iongate::hilbert
