#pragma once

// Dense complex linear algebra for the small operators used throughout the
// library: states, density operators, cloning isometries.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qclone {

using cplx = std::complex<double>;

/// Row-major dense complex matrix. Dimensions are at least 1x1 and every
/// entry is finite when constructed from data.
class ComplexMatrix {
 public:
  /// rows x cols zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::span<const cplx> v);
  /// |x><y|
  static ComplexMatrix outer(std::span<const cplx> x, std::span<const cplx> y);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> row(std::size_t i) const {
    return std::span<const cplx>(data_).subspan(i * cols_, cols_);
  }
  std::vector<cplx> column_vector(std::size_t j) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);
/// max_ij |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Factor dimensions of a tensor-product space, outermost first.
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<std::size_t> dims);
  SubsystemLayout(std::initializer_list<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t factors() const { return dims_.size(); }
  std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
  std::size_t total() const;

  friend bool operator==(const SubsystemLayout&,
                         const SubsystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Reduced operator on the factors listed in `keep` (any order, duplicates
/// ignored). The kept factors stay in layout order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::vector<std::size_t> keep);

/// max |V^dagger V - I| <= tol. Requires rows >= cols.
bool is_isometry(const ComplexMatrix& v, double tol);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Eigendecomposition of a Hermitian matrix (only the lower triangle is read).
HermitianEigen eigh(const ComplexMatrix& a);

/// Matrix of pairwise inner products, entry (i, j) = <v_i|v_j>.
class GramMatrix {
 public:
  /// Throws DimensionError unless square and Hermitian within 1e-12.
  explicit GramMatrix(ComplexMatrix entries);

  std::size_t size() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }

 private:
  ComplexMatrix entries_;
};

/// Pairwise inner products of equal-length vectors.
ComplexMatrix gram_of(std::span<const std::vector<cplx>> vectors);

/// Vectors v_0..v_{n-1} with <v_i|v_j> = g_ij, of dimension equal to the
/// number of eigenvalues above tol. Throws NotRealizable if any eigenvalue is
/// below -tol.
std::vector<std::vector<cplx>> gram_vectors(const GramMatrix& g,
                                            double tol = 1e-10);

}  // namespace qclone
