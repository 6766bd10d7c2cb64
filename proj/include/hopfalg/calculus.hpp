#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/bimodule.hpp"

namespace hopfalg {

struct QuiverEdge {
  std::string label;
  int source = 0;
  int target = 0;
};

struct QuiverData {
  std::vector<std::string> vertices;
  std::vector<QuiverEdge> edges;
};

/// @brief Group data together with a representation Lambda (matrices per element) and theta.
struct GroupCocycleData {
  GroupData group;
  std::vector<std::string> lambda_labels;
  std::vector<Mat> rep;  ///< rep[g] acting on Lambda
  std::vector<Vec> zeta;  ///< zeta[g] in Lambda
};

/// @brief First-order calculus with two-sided pivotal duality and chosen generators.
struct Calculus1 {
  std::string name;
  std::string kind;  ///< quiver | derivation | inner | group
  AlgebraPtr base;
  BimodulePtr omega;
  Mat d0;  ///< dim Omega x dim A
  DualityData duality;
  std::optional<Vec> inner_theta;
  bool surjective = false;
  GeneratorSet dual_gens;
  GeneratorSet omega_gens;
  std::optional<QuiverData> quiver;
  std::optional<GroupCocycleData> cocycle;

  Vec d(const Vec& a) const { return d0.apply(a); }
  const BimodulePtr& dual() const { return duality.dual; }
};

/// @brief Second-order data: Omega^2, wedge, d on 1-forms and the pivotal duality of Omega^2.
struct Calculus2 {
  Calculus1 calc1;
  BimodulePtr omega2;
  TensorSpace omega_omega;  ///< Omega (x)_A Omega
  Mat wedge;                ///< dim Omega2 x dim(Omega (x)_A Omega)
  Mat d1;                   ///< dim Omega2 x dim Omega
  DualityData duality2;
  GeneratorSet dual2_gens;
  GeneratorSet omega2_gens;
  std::vector<std::pair<int, int>> unnominated_pairs;  ///< vertex pairs without any 2-step
  /// @brief Quiver only: the edge pair (e1, e2) behind each basis vector of Omega^2.
  std::vector<std::pair<int, int>> two_steps;
  /// @brief Quiver only: the nominated edge pair (a, b) for each vertex pair (p, q).
  std::map<std::pair<int, int>, std::pair<int, int>> nominated;

  Vec wedge_of(const Vec& w1, const Vec& w2) const { return wedge.apply(omega_omega.tensor(w1, w2)); }
};

struct CalculusReport {
  std::vector<CheckLine> lines;
  bool all_pass() const;
};

Calculus1 build_quiver_calculus(const QuiverData& q, const std::string& name = "quiver");
Calculus1 build_derivation_calculus(const AlgebraPtr& a, const Mat& d, const std::string& name = "derivation");
/// @brief Inner calculus d a = theta a - a theta on a bimodule that is free on both sides over
/// the given central-compatible basis.
Calculus1 build_inner_calculus(const AlgebraPtr& a, const BimodulePtr& omega, const Vec& theta,
                               const std::vector<Vec>& free_basis, const std::vector<std::string>& basis_labels,
                               const std::string& name = "inner");
Calculus1 build_group_cocycle_calculus(const GroupCocycleData& g, const std::string& name = "group");
/// @brief n x n matrices with Omega^1 = M_n (+) M_n and theta = E12 (+) E21 (n = 2 by default).
Calculus1 build_m2_calculus();
/// @brief Dihedral group D6 with its 2-dimensional irreducible representation and theta = xi + tau.
///
/// The generator a acts by rotation through 120 degrees and b by diag(1, -1).
GroupCocycleData d6_cocycle_data();
/// @brief The rotation through 60 degrees, which has order 6 and so does not represent a of D6.
Mat d6_sixty_degree_matrix();
/// @brief Extend a representation given on generators to the whole group; checks homomorphism.
std::vector<Mat> extend_representation(const GroupData& g, const std::map<int, Mat>& gens);

/// @brief Dual data for a bimodule free on both sides over the same basis s_i.
///
/// X has basis e_k f_i (index i*dimA+k), ev(f_i (x) s_j a) = delta_ij a and
/// under_ev(a s_j (x) f_i) = delta_ij a.
DualityData free_duality(const BimodulePtr& omega, const std::vector<Vec>& basis,
                         const std::vector<std::string>& basis_labels, const std::string& dual_prefix);

CalculusReport validate_calculus(const Calculus1& c);

Calculus2 build_quiver_omega2(const Calculus1& c, const std::map<std::pair<int, int>, std::pair<int, int>>& nomination = {});
Calculus2 build_exterior_square_omega2(const Calculus1& c);
CalculusReport validate_calculus2(const Calculus2& c2);
/// @brief Pivotal wedge identity on every basis element of the dual of Omega^2.
bool pivotal_wedge_holds(const Calculus2& c2);

}  // namespace hopfalg
