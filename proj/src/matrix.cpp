#include "qclone/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qclone/errors.hpp"
#include "qclone/kernels.hpp"

namespace qclone {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw DimensionError("entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("matrix entries must be finite");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols, std::vector<cplx>(entries)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> x,
                                   std::span<const cplx> y) {
  ComplexMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
  }
  return m;
}

std::vector<cplx> ComplexMatrix::column_vector(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions " +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data().data(),
                         b.data().data(), c.data().data());
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const cplx s = a(i1, j1);
      for (std::size_t i2 = 0; i2 < rb; ++i2) {
        for (std::size_t j2 = 0; j2 < cb; ++j2) {
          out(i1 * rb + i2, j1 * cb + j2) = s * b(i2, j2);
        }
      }
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

cplx trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    }
  }
  return true;
}

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("layout needs at least one factor");
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("layout factor dimensions must be positive");
  }
}

SubsystemLayout::SubsystemLayout(std::initializer_list<std::size_t> dims)
    : SubsystemLayout(std::vector<std::size_t>(dims)) {}

std::size_t SubsystemLayout::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::vector<std::size_t> keep) {
  if (!m.is_square()) throw DimensionError("partial trace of a non-square matrix");
  if (layout.total() != m.rows()) {
    throw DimensionError("layout dimension " + std::to_string(layout.total()) +
                         " does not match matrix dimension " +
                         std::to_string(m.rows()));
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw DimensionError("partial trace must keep some factor");
  if (keep.back() >= layout.factors()) {
    throw DimensionError("kept factor index " + std::to_string(keep.back()) +
                         " out of range");
  }

  const auto& dims = layout.dims();
  const std::size_t n = m.rows();
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t f : keep) kept[f] = true;

  // For every full index: its coordinate in the kept space and in the traced
  // space (both mixed-radix, outermost factor most significant).
  std::vector<std::size_t> kept_index(n), traced_index(n);
  std::size_t kept_dim = 1;
  for (std::size_t f : keep) kept_dim *= dims[f];
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rem = idx;
    std::size_t k_idx = 0, k_stride = 1;
    std::size_t t_idx = 0, t_stride = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const std::size_t digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        k_idx += digit * k_stride;
        k_stride *= dims[f];
      } else {
        t_idx += digit * t_stride;
        t_stride *= dims[f];
      }
    }
    kept_index[idx] = k_idx;
    traced_index[idx] = t_idx;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (traced_index[r] == traced_index[c]) {
        out(kept_index[r], kept_index[c]) += m(r, c);
      }
    }
  }
  return out;
}

bool is_isometry(const ComplexMatrix& v, double tol) {
  if (v.rows() < v.cols()) return false;
  const ComplexMatrix gram = dagger(v) * v;
  return max_abs_diff(gram, ComplexMatrix::identity(v.cols())) <= tol;
}

HermitianEigen eigh(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigh of a non-square matrix");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw DomainError("Hermitian eigensolver did not converge");
  }
  HermitianEigen out{std::vector<double>(a.rows()), ComplexMatrix(a.rows(), a.rows())};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
          solver.eigenvectors()(i, k);
    }
  }
  return out;
}

GramMatrix::GramMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (!entries_.is_square()) throw DimensionError("Gram matrix must be square");
  if (!is_hermitian(entries_, 1e-12)) {
    throw DimensionError("Gram matrix must be Hermitian");
  }
}

ComplexMatrix gram_of(std::span<const std::vector<cplx>> vectors) {
  if (vectors.empty()) throw DimensionError("Gram matrix of no vectors");
  const std::size_t len = vectors.front().size();
  ComplexMatrix g(vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != len) {
      throw DimensionError("Gram vectors must share one length");
    }
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      g(i, j) = kernels::dot(vectors[i], vectors[j]);
    }
  }
  return g;
}

std::vector<std::vector<cplx>> gram_vectors(const GramMatrix& g, double tol) {
  const HermitianEigen eig = eigh(g.entries());
  const std::size_t n = g.size();
  if (eig.values.front() < -tol) {
    throw NotRealizable("Gram matrix has eigenvalue " +
                        std::to_string(eig.values.front()) +
                        " below -tol; no vectors have these inner products");
  }
  std::vector<std::size_t> retained;
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] > tol) retained.push_back(k);
  }
  // Entirely zero Gram: realize every vector as the zero vector of length 1.
  const std::size_t rank = std::max<std::size_t>(retained.size(), 1);
  std::vector<std::vector<cplx>> out(n, std::vector<cplx>(rank));
  // v_i[k] = sqrt(w_k) conj(U_ik)  gives  <v_i|v_j> = sum_k w_k U_ik conj(U_jk).
  for (std::size_t slot = 0; slot < retained.size(); ++slot) {
    const std::size_t k = retained[slot];
    const double scale = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      out[i][slot] = scale * std::conj(eig.vectors(i, k));
    }
  }
  return out;
}

}  // namespace qclone
