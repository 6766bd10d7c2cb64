#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/calculus.hpp"
#include "hopfalg/presentation.hpp"

namespace hopfalg {

/// @brief Coproduct and counit tables on generator symbols.
struct CoringData {
  bool present = false;
  std::map<int, TensorElem> delta;  ///< symbol id -> element of Free (x) Free
  std::map<int, Mat> epsilon;       ///< symbol id -> action matrix on A
};

/// @brief Antipode tables and the map Upsilon : X -> A.
struct HopfData {
  bool present = false;
  std::map<int, FreeElem> s;
  std::map<int, FreeElem> s_inv;
  std::optional<Mat> upsilon;  ///< dim A x dim X
  int upsilon_solution_dim = -1;
  std::string upsilon_note;
};

/// @brief A presented level of the tower together with its calculus data and structure tables.
struct Algebroid {
  Presentation pres;
  CoringData coring;
  HopfData hopf;
  std::shared_ptr<const Calculus1> calc;
  std::shared_ptr<const Calculus2> calc2;

  int sym_a(int i) const { return pres.alphabet.find({Family::A, i, 0}); }
  int sym_abar(int i) const { return pres.alphabet.find({Family::Abar, i, 0}); }
  int sym_x(int g) const { return pres.alphabet.find({Family::X, g, 0}); }
  int sym_xo(int g, int h) const { return pres.alphabet.find({Family::XO, g, h}); }
  int sym_ox(int h, int g) const { return pres.alphabet.find({Family::OX, h, g}); }
  int sym_x2o2(int g, int h) const { return pres.alphabet.find({Family::X2O2, g, h}); }
  int sym_o2x2(int h, int g) const { return pres.alphabet.find({Family::O2X2, h, g}); }

  /// @brief Element of A written with A letters, or with Abar letters.
  FreeElem a_expr(const Vec& a) const;
  FreeElem abar_expr(const Vec& a) const;
  /// @brief Vector field x written via the left generator expansion.
  FreeElem x_expr(const Vec& x) const;
  /// @brief (x, omega) for arbitrary x in X and omega in Omega.
  FreeElem xo_expr(const Vec& x, const Vec& w) const;
  /// @brief (omega, y) for arbitrary omega in Omega and y in X.
  FreeElem ox_expr(const Vec& w, const Vec& y) const;
  FreeElem x2o2_expr(const Vec& x2, const Vec& w2) const;
  FreeElem o2x2_expr(const Vec& w2, const Vec& y2) const;

  /// @brief Coproduct of an element, extended multiplicatively from the table.
  TensorElem delta(const FreeElem& e) const;
  /// @brief Counit action matrix of an element on A.
  Mat epsilon_action(const FreeElem& e) const;
  /// @brief Counit of an element: its action on the unit of A.
  Vec epsilon(const FreeElem& e) const;
  /// @brief Antipode or its inverse, extended anti-multiplicatively.
  FreeElem antipode(const FreeElem& e, bool inverse = false) const;
};

/// @brief Builds the presentation of a level with its coproduct, counit and antipode tables.
///
/// Throws MissingSecondOrder when level DX lacks c2, NotPivotal when the duality fails,
/// PivotalWedgeFails when the wedge is not pivotal.
Algebroid present(Level level, const Calculus1& c1, const Calculus2* c2 = nullptr,
                  const CompletionOptions& opts = {});

/// @brief Result of solving the compatibility equations for Upsilon.
struct UpsilonSolution {
  bool found = false;
  Mat particular;      ///< dim A x dim X
  int solution_dim = 0;  ///< dimension of the affine solution space
  bool documented_form = false;  ///< particular solution equals the closed-form candidate
  bool flat_conditions = true;   ///< extra conditions at DX hold for the particular solution
  std::string note;
};

/// @brief The closed-form candidate: f_s - f_t on quiver arrows, under_ev(d a_i (x) f_i) on free calculi.
std::optional<Mat> documented_upsilon(const Calculus1& c);
/// @brief Solves Upsilon(xa) = Upsilon(x)a + ev(x (x) da) and Upsilon(ax) = a Upsilon(x) + under_ev(da (x) x).
UpsilonSolution solve_upsilon(const Calculus1& c, const Calculus2* c2 = nullptr);
/// @brief Installs the solution into the antipode tables of an algebroid at level HX or DX.
void attach_upsilon(Algebroid& alg, const Mat& upsilon);

/// @brief Adds a = abar, (x, w) = ev(x (x) w) and (w, x) = under_ev(w (x) x); throws NotCommutative.
Presentation symmetric_quotient(const Algebroid& alg);

/// @brief Membership-checked relation images of a map between presentations.
struct EmbeddingReport {
  std::map<std::string, FreeElem> images;
  std::vector<std::pair<std::string, bool>> checks;
  bool all_pass() const;
};

/// @brief Images y -> sum (omega_i, y) x_i and abar -> abar with checks of the two Y relations.
EmbeddingReport ty_embedding(const Algebroid& alg, int bound);

/// @brief Path algebra of a quiver: idempotents and arrows with the standard relations.
struct PathAlgebraBridge {
  Presentation path;  ///< generators f_p and arrows, relations of the path algebra
  std::map<int, FreeElem> forward;   ///< path algebra symbol -> TX element
  std::map<int, FreeElem> backward;  ///< TX symbol -> path algebra element
  std::vector<std::pair<std::string, bool>> checks;
  bool all_pass() const;
};

/// @brief Isomorphism between the path algebra and the TX level of a quiver calculus.
PathAlgebraBridge path_algebra_bridge(const Calculus1& c, int bound = 3);

/// @brief Substitutes each symbol by its image; throws MissingImage for unmapped symbols.
FreeElem substitute(const FreeElem& e, const std::map<int, FreeElem>& images);

}  // namespace hopfalg
