#pragma once
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfalg/algebra.hpp"

namespace hopfalg {

/// @brief Finite-dimensional A-bimodule given by the matrices of the basis actions.
struct Bimodule {
  AlgebraPtr base;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Mat> left;   ///< left[a] : m -> e_a m
  std::vector<Mat> right;  ///< right[a] : m -> m e_a

  Vec act_left(const Vec& a, const Vec& m) const;
  Vec act_right(const Vec& m, const Vec& a) const;
  Mat left_matrix(const Vec& a) const;
  Mat right_matrix(const Vec& a) const;
  /// @brief Throws NotABimodule unless both actions are unital, associative and commute.
  void validate() const;
  std::string format(const Vec& m) const;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

/// @brief A as a bimodule over itself.
BimodulePtr regular_bimodule(const AlgebraPtr& a);
/// @brief The zero bimodule.
BimodulePtr zero_bimodule(const AlgebraPtr& a);

/// @brief Quotient of M (x)_k N by span{ma (x) n - m (x) an} with its induced bimodule structure.
struct TensorSpace {
  BimodulePtr first, second;
  BimodulePtr result;
  Mat proj;     ///< dim(result) x (dim M * dim N)
  Mat section;  ///< (dim M * dim N) x dim(result), non-pivot unit vectors
  Vec tensor(const Vec& m, const Vec& n) const { return proj.apply(kron(m, n)); }
};

TensorSpace tensor_over_A(const BimodulePtr& m, const BimodulePtr& n);

/// @brief True when f : M -> N commutes with both actions on basis elements.
bool is_bimodule_map(const Mat& f, const Bimodule& m, const Bimodule& n);
/// @brief True when a linear map on the k-tensor M (x)_k N vanishes on the middle relations.
bool is_balanced(const Mat& f, const Bimodule& m, const Bimodule& n);

/// @brief Pair of dual bimodules with evaluations and coevaluations on both sides.
///
/// ev is stored on the k-tensor basis of X (x)_k Omega (index x*dimOmega+w); under_ev on
/// Omega (x)_k X. The coevaluation elements are explicit finite lists of pairs.
struct DualityData {
  BimodulePtr omega;
  BimodulePtr dual;
  std::vector<std::pair<Vec, Vec>> coev;        ///< (omega_i, x_i)
  Mat ev;                                       ///< dim A x (dim X * dim Omega)
  std::vector<std::pair<Vec, Vec>> under_coev;  ///< (y_j, rho_j)
  Mat under_ev;                                 ///< dim A x (dim Omega * dim X)

  Vec eval(const Vec& x, const Vec& w) const { return ev.apply(kron(x, w)); }
  Vec under_eval(const Vec& w, const Vec& x) const { return under_ev.apply(kron(w, x)); }
};

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DualityReport {
  std::vector<CheckLine> lines;
  bool all_pass() const;
};

DualityReport validate_duality(const DualityData& d);

/// @brief Intertwiner space Hom(M, N) of right-module or left-module maps with its bimodule structure.
struct HomSpace {
  std::vector<Mat> basis;
  BimodulePtr bimodule;
  /// @brief Coordinates of a map in the basis; throws if not in the space.
  Vec coordinates(const Mat& f) const;
  Mat map_of(const Vec& coords) const;
};

enum class HomSide { Right, Left };
HomSpace hom_space(const BimodulePtr& m, const BimodulePtr& n, HomSide side);

}  // namespace hopfalg

namespace hopfalg {

/// @brief Chosen bimodule generators with canonical expansions of every basis vector.
///
/// Coefficient vectors are indexed slot*G+k where slot 0 stands for the unit and slot a+1 for
/// the basis element e_a: left_coeffs[v] gives v = sum c s g_k and right_coeffs[v] gives
/// v = sum c g_k s. Unit slots come first, so a generator expands to itself.
struct GeneratorSet {
  std::vector<Vec> gens;
  std::vector<std::string> labels;
  std::vector<Vec> left_coeffs;
  std::vector<Vec> right_coeffs;
  int size() const { return static_cast<int>(gens.size()); }
  /// @brief Expansion of an arbitrary vector, summed over basis coordinates.
  Vec left_expand(const Vec& v) const;
  Vec right_expand(const Vec& v) const;
};

/// @brief Throws NotGenerating if the vectors fail to generate M from either side.
GeneratorSet make_generator_set(const Bimodule& m, std::vector<Vec> gens, std::vector<std::string> labels);
/// @brief All basis vectors as generators.
GeneratorSet basis_generator_set(const Bimodule& m);

}  // namespace hopfalg
