#pragma once

// Exact integer linear algebra over arbitrary-precision integers:
// Smith normal form with unimodular cofactors, saturated integer kernels
// and cokernels presented as finitely generated abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricsym {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;

  bool operator==(const IntMatrix& rhs) const;
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }
  // Row-major lexicographic order; shapes compared first.
  bool operator<(const IntMatrix& rhs) const;

  bool is_zero() const;
  bool is_identity() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += k * row j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  // col i += k * col j
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// A = U * S * V with U, V unimodular and S diagonal in Smith normal form.
// U_inv and V_inv are carried along so that kernels and cokernels can be
// read off without inverting.
struct SNFResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;

  std::size_t rank() const;
  // Diagonal entries d_0 | d_1 | ... (length min(rows, cols)).
  std::vector<Integer> diagonal() const;
  // Nonzero diagonal entries.
  std::vector<Integer> invariant_factors() const;
};

SNFResult smith_normal_form(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
Integer determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

// Saturated basis of {x in Z^cols : A x = 0}, in Hermite row form
// (leading entry positive, entries above each pivot reduced).
std::vector<IntVector> kernel_basis(const IntMatrix& a);

// Echelon form of the lattice spanned by the given rows; canonical for the
// lattice. Zero rows are dropped.
std::vector<IntVector> hermite_rows(std::vector<IntVector> rows, std::size_t cols);

// Finitely generated abelian group Z^free_rank (+) Z/t_0 (+) ... with
// t_0 | t_1 | ... and every t_i > 1.
struct FGAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const FGAbelianGroup&) const = default;
  std::string to_string() const;
};

// Coordinates of an element of a cokernel: torsion residues first (each in
// [0, t_i)), then free coordinates.
using ClassCoords = std::vector<Integer>;

// Z^rows -> coker(A), x |-> canonical coordinates.
class CokernelProjection {
public:
  CokernelProjection() = default;
  CokernelProjection(IntMatrix selector, std::vector<Integer> moduli);

  ClassCoords operator()(const IntVector& x) const;
  const std::vector<Integer>& moduli() const { return moduli_; }

private:
  IntMatrix selector_;
  // 0 marks a free coordinate.
  std::vector<Integer> moduli_;
};

struct Cokernel {
  FGAbelianGroup group;
  CokernelProjection projection;
};

Cokernel cokernel_group(const IntMatrix& a);

// Integral solution x of A x = b, if one exists. When A has a nontrivial
// kernel the returned solution is one particular solution.
std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b);

Integer gcd_of(const IntVector& v);
// Divides out the content; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
bool is_primitive(const IntVector& v);
bool is_zero(const IntVector& v);
IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector scaled(const IntVector& v, const Integer& k);
Integer dot(const IntVector& a, const IntVector& b);
std::string to_string(const IntVector& v);
IntVector make_vector(std::initializer_list<long> xs);

}  // namespace toricsym
