#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace poslp {

/// Dense real vector.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  Vec(std::initializer_list<double> values) : data_(values) {}
  explicit Vec(std::vector<double> values) : data_(std::move(values)) {}

  static Vec ones(std::size_t n) { return Vec(n, 1.0); }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<const double> span() const { return data_; }
  std::span<double> span() { return data_; }
  const std::vector<double>& values() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }

  double sum() const;
  double max() const;
  double max_abs() const;
  double dot(const Vec& other) const;

  Vec& operator+=(const Vec& other);
  Vec& operator-=(const Vec& other);
  Vec& operator*=(double s);

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> data_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);

/// Dense real matrix, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Row-major literal; all rows must have the same length.
  Mat(std::initializer_list<std::initializer_list<double>> rows);
  /// Throws ValidationError if `data` has the wrong size or non-finite entries.
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Mat identity(std::size_t n);
  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat diag(const Vec& d);
  static Mat column(const Vec& v);
  static Mat row(const Vec& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const { return data_; }
  std::span<const double> row_span(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  Vec row_vec(std::size_t i) const;
  Vec col_vec(std::size_t j) const;
  Vec row_sums() const;
  Vec col_sums() const;
  double max_abs() const;
  double norm1() const;  // max column abs sum

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);
/// x^T a as a vector.
Vec left_multiply(const Vec& x, const Mat& a);

Mat hcat(std::initializer_list<Mat> blocks);
Mat vcat(std::initializer_list<Mat> blocks);

/// Largest absolute entrywise difference; shapes must agree.
double max_abs_diff(const Mat& a, const Mat& b);
double max_abs_diff(const Vec& a, const Vec& b);

/// LU factorization with partial pivoting and a 1-norm condition estimate.
class LuDecomposition {
 public:
  /// Throws SingularityError when 1/kappa_1 < kMinReciprocalCondition.
  explicit LuDecomposition(const Mat& a);

  static constexpr double kMinReciprocalCondition = 1e-12;

  std::size_t size() const { return n_; }
  double condition_estimate() const { return condition_; }

  Vec solve(const Vec& b) const;
  Mat solve(const Mat& b) const;
  /// Solves a^T x = b.
  Vec solve_transposed(const Vec& b) const;
  Mat inverse() const;

 private:
  void factor();
  std::size_t n_;
  Mat lu_;
  std::vector<std::size_t> perm_;
  double condition_ = 1.0;
  bool singular_ = false;
};

/// Returns X with a X = b. Throws DimensionError / SingularityError.
Mat solve(const Mat& a, const Mat& b);
Vec solve(const Mat& a, const Vec& b);

/// Every off-diagonal entry >= -tol. Throws DimensionError for non-square m.
bool is_metzler(const Mat& m, double tol = 0.0);
/// Every entry >= -tol.
bool is_nonnegative(const Mat& m, double tol = 0.0);

}  // namespace poslp
