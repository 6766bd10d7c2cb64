#pragma once
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/scalar.hpp"

namespace hopfalg {

using Vec = std::vector<Scalar>;

/// @brief Dense row-major matrix over the current exact field.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static Mat identity(int n);
  /// @brief Matrix whose columns are the given vectors (all of length rows).
  static Mat from_columns(int rows, const std::vector<Vec>& cols);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec column(int j) const;
  Vec row(int i) const;
  Vec apply(const Vec& v) const;
  Mat transpose() const;
  bool is_zero() const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Scalar& s);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(Mat a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

/// @brief Kronecker product with the first factor as the slow index.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);
Vec zero_vec(int n);
Vec unit_vec(int n, int i);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Scalar& s);
void axpy(Vec& y, const Scalar& s, const Vec& x);

/// @brief Row space of a set of vectors kept in reduced row echelon form.
///
/// Pivots are the leftmost nonzero coordinate of each row, so the complement spanned by the
/// non-pivot unit vectors is the lexicographically least echelon complement.
class Subspace {
 public:
  explicit Subspace(int ambient) : n_(ambient) {}
  /// @brief Add a vector; returns true when it enlarged the space.
  bool add(const Vec& v);
  /// @brief Remainder of v after eliminating every pivot coordinate.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return n_; }
  const std::vector<int>& pivots() const { return piv_; }
  const std::vector<Vec>& rows() const { return rows_; }
  /// @brief Coordinates that are not pivots, ascending.
  std::vector<int> free_coordinates() const;

 private:
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

/// @brief Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m);
int rank(Mat m);
/// @brief Basis of {x : m x = 0}, one vector per free column with that coordinate set to 1.
std::vector<Vec> nullspace(const Mat& m);
/// @brief Solution of m x = b with free coordinates set to zero, or nullopt.
std::optional<Vec> solve(const Mat& m, const Vec& b);
std::optional<Mat> inverse(const Mat& m);

}  // namespace hopfalg
