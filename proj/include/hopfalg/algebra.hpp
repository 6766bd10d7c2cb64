#pragma once
#include <memory>
#include <string>
#include <vector>

#include "hopfalg/linalg.hpp"

namespace hopfalg {

/// @brief Finite-dimensional unital associative algebra given by structure constants.
class FiniteAlgebra {
 public:
  /// @brief Build from c[i][j] = coefficient column of e_i e_j; validates associativity and unit.
  FiniteAlgebra(std::vector<std::string> labels, std::vector<std::vector<Vec>> c, Vec unit);

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& product(int i, int j) const { return c_[i][j]; }
  const Vec& unit() const { return unit_; }
  bool commutative() const { return commutative_; }
  Vec mul(const Vec& a, const Vec& b) const;
  /// @brief Matrix of x -> e_i x.
  const Mat& left_mult(int i) const { return lm_[i]; }
  /// @brief Matrix of x -> x e_i.
  const Mat& right_mult(int i) const { return rm_[i]; }
  Mat left_mult(const Vec& a) const;
  Mat right_mult(const Vec& a) const;
  Vec basis(int i) const { return unit_vec(dim(), i); }
  int index_of(const std::string& label) const;
  /// @brief Opposite algebra: transposed structure constants, labels suffixed "^op".
  FiniteAlgebra opposite() const;
  std::string format(const Vec& a) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> c_;
  Vec unit_;
  bool commutative_ = false;
  std::vector<Mat> lm_, rm_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// @brief Functions on a finite set: f_p f_q = delta_{pq} f_q.
AlgebraPtr new_function_algebra(const std::vector<std::string>& labels);
/// @brief n-by-n matrices with basis E_ij (labels "E11", ...), row-major index (i-1)*n+(j-1).
AlgebraPtr new_matrix_algebra(int n);
/// @brief Group algebra from a multiplication table of element indices.
AlgebraPtr new_group_algebra(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table);
/// @brief A tensor A^op with basis index i*dim+j for e_i (x) bar(e_j).
AlgebraPtr enveloping(const FiniteAlgebra& a);

/// @brief Dihedral group of order 6 as elements e,a,a2,b,ab,a2b with a^3=b^2=1 and a^2 b = b a.
struct GroupData {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;
  int identity = 0;
  int inverse(int g) const;
};
GroupData dihedral6();

}  // namespace hopfalg
