#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/algebroid.hpp"
#include "hopfalg/errors.hpp"

namespace hopfalg {

/// @brief Raised when a defining relation does not act as zero on a module.
class RelationViolated : public Error {
 public:
  RelationViolated(int relation, std::string name, Mat defect)
      : Error("RelationViolated", "relation " + std::to_string(relation) + " (" + name + ") has a nonzero defect"),
        relation_(relation), name_(std::move(name)), defect_(std::move(defect)) {}
  int relation() const { return relation_; }
  const std::string& relation_name() const { return name_; }
  const Mat& defect() const { return defect_; }

 private:
  int relation_;
  std::string name_;
  Mat defect_;
};

/// @brief Carrier dimension and one action matrix per generator symbol id.
struct ModuleRepSpec {
  int dim = 0;
  std::map<int, Mat> matrices;
};

/// @brief A finite-dimensional module on which every defining relation acts as zero.
struct ModuleRep {
  Level level = Level::TX;
  int dim = 0;
  std::vector<Mat> mats;  ///< indexed by symbol id
  std::vector<Mat> left;  ///< left A-action from the A letters
  std::vector<Mat> right; ///< right A-action from the Abar letters (empty at TX)

  /// @brief Action matrix of an element; the word s1 s2 ... acts as M(s1) M(s2) ...
  Mat eval(const FreeElem& e) const;
  ModuleRepSpec spec() const;
};

/// @brief Checks shapes and evaluates every relation; throws ShapeMismatch or RelationViolated.
ModuleRep validate_module(const ModuleRepSpec& spec, const Presentation& p);

/// @brief A as a module: a by left and abar by right multiplication, the other letters by the counit formulas.
ModuleRepSpec unit_module_spec(const Algebroid& alg);

/// @brief The underlying bimodule of a module at a level with Abar letters.
BimodulePtr module_bimodule(const ModuleRep& m, const AlgebraPtr& base);

/// @brief Connection data induced by a module, with the identities that were checked.
struct ConnectionData {
  TensorSpace m_omega;  ///< M (x)_A Omega
  TensorSpace omega_m;  ///< Omega (x)_A M
  std::optional<Mat> sigma;      ///< M (x)_A Omega -> Omega (x)_A M
  std::optional<Mat> sigma_inv;  ///< Omega (x)_A M -> M (x)_A Omega
  std::optional<Mat> nabla;      ///< M -> Omega (x)_A M
  std::optional<Mat> sigma_x;      ///< X (x)_A M -> M (x)_A X
  std::optional<Mat> sigma_x_inv;  ///< M (x)_A X -> X (x)_A M
  std::optional<Mat> sigma2;     ///< M (x)_A Omega2 -> Omega2 (x)_A M
  std::optional<Mat> curvature;  ///< M -> Omega2 (x)_A M
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

/// @brief sigma from the XO letters, nabla from the X letters, sigma inverse from the OX letters and,
/// at Hopf levels, the two intertwinings with X; every identity is asserted as an exact check.
///
/// Throws LevelTooLow at TX.
ConnectionData induced_connection(const ModuleRep& rep, const Algebroid& alg);

/// @brief Tensor product module with the cross-checks of its connection data.
struct TensorModule {
  ModuleRep rep;
  TensorSpace space;
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

/// @brief Action on M (x)_A N through the coproduct; checks the induced nabla and sigma against the
/// product formulas nabla_M (x) id + (sigma_M (x) id)(id (x) nabla_N) and (sigma_M (x) id)(id (x) sigma_N).
///
/// Throws MismatchedPresentation when the modules sit at different levels.
TensorModule tensor_modules(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg);

/// @brief The two inner homs as modules together with the adjunction and antipode checks.
struct HomModules {
  HomSpace right_hom;  ///< Hom_A(M, N), right module maps
  HomSpace left_hom;   ///< AHom(M, N), left module maps
  ModuleRep right_rep;
  ModuleRep left_rep;
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

/// @brief Actions of the generators on both inner homs, validated against every relation.
///
/// The adjunction maps n -> (m -> n (x) m), f (x) m -> f(m), n -> (m -> m (x) n) and m (x) g -> g(m)
/// are checked to be module maps, and the actions are compared with the ones obtained from the
/// antipode. Throws LevelTooLow below HOmega.
HomModules hom_modules(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg);

/// @brief Curvature and the second-order identities of a module.
struct CurvatureReport {
  Mat curvature;  ///< M -> Omega2 (x)_A M
  bool flat = false;
  std::optional<bool> extendable;        ///< present when X2O2 letters act
  std::optional<bool> flat_extension;    ///< present when X2O2 letters act
  std::vector<CheckLine> checks;
};

/// @brief R = (d (x) id - id ^ nabla) nabla, and at DX the extension identities of sigma2.
///
/// The second-order calculus of alg is used when c2 is null. Throws MissingSecondOrder without
/// either and LevelTooLow without X letters.
CurvatureReport curvature_and_flatness(const ModuleRep& rep, const Algebroid& alg, const Calculus2* c2 = nullptr);

/// @brief Representation of the path algebra of a quiver: a space per vertex and a map per arrow.
struct QuiverRep {
  std::vector<int> dims;    ///< per vertex
  std::vector<Mat> arrows;  ///< per edge, dims[target] x dims[source]
};

/// @brief TX action of a quiver representation: f_p projects, the X letter of e acts as its arrow plus
/// the projection onto the target vertex. Keys follow the alphabet of alg, which must have X letters.
/// Throws ShapeMismatch.
ModuleRepSpec quiver_rep_bridge(const QuiverRep& rep, const Algebroid& alg);
/// @brief Inverse of the bridge on a TX action.
QuiverRep quiver_rep_from_module(const ModuleRepSpec& spec, const Algebroid& alg);

/// @brief Re-keys an action by generator symbol between two alphabets; letters absent from the target are dropped.
ModuleRepSpec translate_spec(const ModuleRepSpec& spec, const Alphabet& from, const Alphabet& to);

/// @brief Extends an action to the level of alg.
///
/// Abar letters default to the action of the matching A letters when missing. Missing XO letters are
/// solved from the relations, which are affine in them up to level BX. Missing OX letters are read
/// off the inverse of sigma, and missing second-order letters off the composite of sigma with the
/// wedge product. The result is validated; throws NoCompatibleExtension when the linear system has no
/// solution or sigma is not invertible.
ModuleRep extend_module(const ModuleRepSpec& spec, const Algebroid& alg);

/// @brief Restricts a module to a lower level by dropping the letters it lacks, then validates.
ModuleRep restrict_module(const ModuleRep& m, const Algebroid& from, const Algebroid& to);

}  // namespace hopfalg
