#include "toricsym/intlin.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace toricsym {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(k, j);
    }
  return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: shape mismatch in matrix-vector product");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("IntMatrix: shape mismatch in difference");
  IntMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] - rhs.data_[i];
  return d;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = -data_[i];
  return d;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool IntMatrix::operator<(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) return rows_ < rhs.rows_;
  if (cols_ != rhs.cols_) return cols_ < rhs.cols_;
  return std::lexicographical_compare(data_.begin(), data_.end(), rhs.data_.begin(), rhs.data_.end());
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << (*this)(i, j);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

namespace {

// Elementary operations applied to the working matrix W while keeping
// A = U W V and W = U_inv A V_inv.
struct SnfState {
  IntMatrix W, U, V, U_inv, V_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    W.swap_rows(i, j);
    U.swap_cols(i, j);
    U_inv.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    W.swap_cols(i, j);
    V.swap_rows(i, j);
    V_inv.swap_cols(i, j);
  }
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    W.add_row_multiple(i, j, k);
    U.add_col_multiple(j, i, -k);
    U_inv.add_row_multiple(i, j, k);
  }
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    W.add_col_multiple(i, j, k);
    V.add_row_multiple(j, i, -k);
    V_inv.add_col_multiple(i, j, k);
  }
  void negate_row(std::size_t i) {
    W.negate_row(i);
    U.negate_col(i);
    U_inv.negate_row(i);
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState st{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
              IntMatrix::identity(n)};
  IntMatrix& W = st.W;
  const std::size_t diag = std::min(m, n);

  for (std::size_t t = 0; t < diag; ++t) {
    bool exhausted = false;
    for (;;) {
      // Pivot: least |entry| in the trailing block, ties by (row, col).
      std::size_t pr = m, pc = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = W(i, j);
          if (x == 0) continue;
          Integer ax = abs(x);
          if (pr == m || ax < best) {
            best = ax;
            pr = i;
            pc = j;
          }
        }
      if (pr == m) {
        exhausted = true;
        break;
      }
      st.swap_rows(t, pr);
      st.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (W(i, t) == 0) continue;
        Integer q = W(i, t) / W(t, t);  // truncating
        st.add_row(i, t, -q);
        if (W(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (W(t, j) == 0) continue;
        Integer q = W(t, j) / W(t, t);
        st.add_col(j, t, -q);
        if (W(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (W(i, j) % W(t, t) != 0) {
            st.add_row(t, i, Integer(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (exhausted) break;
    if (W(t, t) < 0) st.negate_row(t);
  }
  return SNFResult{std::move(st.U), std::move(st.W), std::move(st.V), std::move(st.U_inv),
                   std::move(st.V_inv)};
}

std::vector<Integer> SNFResult::diagonal() const {
  std::vector<Integer> d;
  const std::size_t k = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < k; ++i) d.push_back(S(i, i));
  return d;
}

std::vector<Integer> SNFResult::invariant_factors() const {
  std::vector<Integer> d;
  for (auto& x : diagonal())
    if (x != 0) d.push_back(x);
  return d;
}

std::size_t SNFResult::rank() const { return invariant_factors().size(); }

std::size_t rank(const IntMatrix& a) {
  // Fraction-free elimination on a copy.
  IntMatrix w = a;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t p = r;
    while (p < w.rows() && w(p, c) == 0) ++p;
    if (p == w.rows()) continue;
    w.swap_rows(r, p);
    for (std::size_t i = r + 1; i < w.rows(); ++i) {
      for (std::size_t j = c + 1; j < w.cols(); ++j)
        w(i, j) = (w(r, c) * w(i, j) - w(i, c) * w(r, j)) / prev;
      w(i, c) = 0;
    }
    prev = w(r, c);
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  IntMatrix w = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      w.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) = (w(k, k) * w(i, j) - w(i, k) * w(k, j)) / prev;
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  Integer d = determinant(a);
  return d == 1 || d == -1;
}

std::vector<IntVector> hermite_rows(std::vector<IntVector> rows, std::size_t cols) {
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols && p < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = p; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[p], rows[best]);
      bool done = true;
      for (std::size_t i = p + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[p][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[p][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (p >= rows.size() || rows[p][c] == 0) continue;
    if (rows[p][c] < 0)
      for (auto& x : rows[p]) x = -x;
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[p][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[p][j];
    }
    ++p;
  }
  rows.resize(p);
  return rows;
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  SNFResult snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < a.cols(); ++j) basis.push_back(snf.V_inv.column(j));
  return hermite_rows(std::move(basis), a.cols());
}

std::string FGAbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

CokernelProjection::CokernelProjection(IntMatrix selector, std::vector<Integer> moduli)
    : selector_(std::move(selector)), moduli_(std::move(moduli)) {}

ClassCoords CokernelProjection::operator()(const IntVector& x) const {
  ClassCoords y = selector_ * x;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (moduli_[i] != 0) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), moduli_[i].get_mpz_t());
  return y;
}

Cokernel cokernel_group(const IntMatrix& a) {
  SNFResult snf = smith_normal_form(a);
  const std::size_t m = a.rows();
  const auto d = snf.diagonal();
  std::vector<std::size_t> picked;
  std::vector<Integer> moduli;
  FGAbelianGroup g;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 1) {
      picked.push_back(i);
      moduli.push_back(d[i]);
      g.torsion.push_back(d[i]);
    }
  const std::size_t r = snf.rank();
  for (std::size_t i = r; i < m; ++i) {
    picked.push_back(i);
    moduli.push_back(0);
  }
  g.free_rank = m - r;
  IntMatrix selector(picked.size(), m);
  for (std::size_t k = 0; k < picked.size(); ++k)
    for (std::size_t j = 0; j < m; ++j) selector(k, j) = snf.U_inv(picked[k], j);
  return Cokernel{g, CokernelProjection(std::move(selector), std::move(moduli))};
}

std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integral: shape mismatch");
  SNFResult snf = smith_normal_form(a);
  IntVector c = snf.U_inv * b;
  const auto d = snf.diagonal();
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer di = i < d.size() ? d[i] : Integer(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % di != 0) return std::nullopt;
    y[i] = c[i] / di;
  }
  return snf.V_inv * y;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
  IntVector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

IntVector operator-(const IntVector& a) {
  IntVector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = -a[i];
  return s;
}

IntVector scaled(const IntVector& v, const Integer& k) {
  IntVector s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = k * v[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

IntVector make_vector(std::initializer_list<long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace toricsym
