#include "poslp/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "poslp/error.hpp"

namespace poslp {

namespace {

void require_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector length mismatch");
  }
}

void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "matrix shape mismatch: " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

double Vec::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double Vec::max() const {
  if (data_.empty()) return -std::numeric_limits<double>::infinity();
  return *std::max_element(data_.begin(), data_.end());
}

double Vec::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Vec::dot(const Vec& other) const {
  require_same_size(*this, other);
  double s = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) s += data_[i] * other.data_[i];
  return s;
}

Vec& Vec::operator+=(const Vec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator*(double s, Vec a) { return a *= s; }

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("matrix data length does not match its shape");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw ValidationError("matrix entry is not finite");
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(const Vec& v) {
  Mat m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Mat Mat::row(const Vec& v) {
  Mat m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

Vec Mat::row_vec(std::size_t i) const {
  auto r = row_span(i);
  return Vec(std::vector<double>(r.begin(), r.end()));
}

Vec Mat::col_vec(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row_sums() const {
  Vec s(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
  }
  return s;
}

Vec Mat::col_sums() const {
  Vec s(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
  }
  return s;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Mat::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw DimensionError("set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

Mat& Mat::operator+=(const Mat& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vec operator*(const Mat& a, const Vec& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vec left_multiply(const Vec& x, const Mat& a) {
  if (a.rows() != x.size()) throw DimensionError("vector-matrix shape mismatch");
  Vec y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a(i, j);
  }
  return y;
}

Mat hcat(std::initializer_list<Mat> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool first = true;
  for (const Mat& b : blocks) {
    if (first) {
      rows = b.rows();
      first = false;
    } else if (b.rows() != rows) {
      throw DimensionError("hcat: row count mismatch");
    }
    cols += b.cols();
  }
  Mat out(rows, cols);
  std::size_t c = 0;
  for (const Mat& b : blocks) {
    out.set_block(0, c, b);
    c += b.cols();
  }
  return out;
}

Mat vcat(std::initializer_list<Mat> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool first = true;
  for (const Mat& b : blocks) {
    if (first) {
      cols = b.cols();
      first = false;
    } else if (b.cols() != cols) {
      throw DimensionError("vcat: column count mismatch");
    }
    rows += b.rows();
  }
  Mat out(rows, cols);
  std::size_t r = 0;
  for (const Mat& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  return (a - b).max_abs();
}

double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).max_abs(); }

LuDecomposition::LuDecomposition(const Mat& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw DimensionError("LU of a non-square matrix");
  factor();
  if (n_ == 0) return;
  const double anorm = a.norm1();
  if (singular_ || anorm == 0.0) {
    throw SingularityError("matrix is singular",
                           std::numeric_limits<double>::infinity());
  }

  // Hager's 1-norm estimate of the inverse.
  Vec x(n_, 1.0 / static_cast<double>(n_));
  double inv_norm = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    Vec y = solve(x);
    double ynorm = 0.0;
    for (double v : y) ynorm += std::abs(v);
    inv_norm = std::max(inv_norm, ynorm);
    Vec xi(n_);
    for (std::size_t i = 0; i < n_; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    Vec z = solve_transposed(xi);
    std::size_t jmax = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      if (std::abs(z[i]) > std::abs(z[jmax])) jmax = i;
    }
    if (std::abs(z[jmax]) <= z.dot(x)) break;
    x = Vec(n_);
    x[jmax] = 1.0;
  }
  condition_ = anorm * inv_norm;
  if (!std::isfinite(condition_) || 1.0 / condition_ < kMinReciprocalCondition) {
    std::ostringstream os;
    os << "matrix is ill-conditioned (kappa_1 ~ " << condition_ << ")";
    throw SingularityError(os.str(), condition_);
  }
}

void LuDecomposition::factor() {
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      singular_ = true;
      return;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Vec LuDecomposition::solve(const Vec& b) const {
  if (b.size() != n_) throw DimensionError("LU solve: rhs length mismatch");
  Vec y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_(ii, j) * y[j];
    y[ii] = s / lu_(ii, ii);
  }
  return y;
}

Vec LuDecomposition::solve_transposed(const Vec& b) const {
  if (b.size() != n_) throw DimensionError("LU solve: rhs length mismatch");
  // a = P^T L U, so a^T x = U^T L^T P x = b.
  Vec z(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * z[j];
    z[i] = s / lu_(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_(j, ii) * z[j];
    z[ii] = s;
  }
  Vec x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = z[i];
  return x;
}

Mat LuDecomposition::solve(const Mat& b) const {
  if (b.rows() != n_) throw DimensionError("LU solve: rhs row count mismatch");
  Mat x(n_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    Vec col = solve(b.col_vec(j));
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = col[i];
  }
  return x;
}

Mat LuDecomposition::inverse() const { return solve(Mat::identity(n_)); }

Mat solve(const Mat& a, const Mat& b) {
  if (!a.is_square()) throw DimensionError("solve: coefficient matrix not square");
  if (a.rows() != b.rows()) throw DimensionError("solve: rhs row count mismatch");
  return LuDecomposition(a).solve(b);
}

Vec solve(const Mat& a, const Vec& b) {
  if (!a.is_square()) throw DimensionError("solve: coefficient matrix not square");
  return LuDecomposition(a).solve(b);
}

bool is_metzler(const Mat& m, double tol) {
  if (!m.is_square()) throw DimensionError("is_metzler: matrix not square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) < -tol) return false;
    }
  }
  return true;
}

bool is_nonnegative(const Mat& m, double tol) {
  for (double v : m.data()) {
    if (v < -tol) return false;
  }
  return true;
}

}  // namespace poslp
