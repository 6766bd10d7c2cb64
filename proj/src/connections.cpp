#include "hopfalg/connections.hpp"

#include <algorithm>
#include <unordered_map>

namespace hopfalg {

namespace {

CheckLine line(std::string name, bool pass, std::string detail = "") {
  return CheckLine{std::move(name), pass, pass ? std::string() : std::move(detail)};
}

bool lines_pass(const std::vector<CheckLine>& ls) {
  for (const auto& l : ls)
    if (!l.pass) return false;
  return true;
}

/// @brief (a (x) b) v for v indexed i * b.cols() + j, without forming the Kronecker product.
Vec kron_apply(const Mat& a, const Mat& b, const Vec& v) {
  const int ai = a.cols(), bi = b.cols(), bo = b.rows();
  Vec out(static_cast<std::size_t>(a.rows()) * bo);
  for (int p = 0; p < ai; ++p)
    for (int q = 0; q < bi; ++q) {
      const Scalar& c = v[static_cast<std::size_t>(p) * bi + q];
      if (c.is_zero()) continue;
      for (int i = 0; i < a.rows(); ++i) {
        if (a(i, p).is_zero()) continue;
        const Scalar ca = c * a(i, p);
        for (int j = 0; j < bo; ++j)
          if (!b(j, q).is_zero()) out[static_cast<std::size_t>(i) * bo + j] += ca * b(j, q);
      }
    }
  return out;
}

/// @brief Matrix of a linear map given on basis vectors.
template <class F>
Mat matrix_of(int rows, int cols, F&& f) {
  Mat m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    const Vec v = f(c);
    for (int r = 0; r < rows; ++r) m(r, c) = v[r];
  }
  return m;
}

int symbol_count(const Presentation& p) { return p.alphabet.size(); }

/// @brief Per-module cache of evaluated words.
class Evaluator {
 public:
  explicit Evaluator(const ModuleRep& m) : m_(m) {}
  const Mat& word(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    Mat acc = Mat::identity(m_.dim);
    for (char16_t s : w) acc = acc * m_.mats[s];
    return cache_.emplace(w, std::move(acc)).first->second;
  }
  Mat elem(const FreeElem& e) {
    Mat out(m_.dim, m_.dim);
    for (const auto& [w, c] : e) out += word(w) * c;
    return out;
  }

 private:
  const ModuleRep& m_;
  std::unordered_map<Word, Mat> cache_;
};

Level require_level(const ModuleRep& rep, const Algebroid& alg) {
  if (rep.level != alg.pres.level)
    throw Error("MismatchedPresentation", std::string("module at ") + level_name(rep.level) + ", algebroid at " +
                                              level_name(alg.pres.level));
  return rep.level;
}

/// @brief Structure maps of one module on k-tensor representatives.
///
/// Conventions: M (x) Omega is indexed m * dimOmega + w and Omega (x) M is indexed w * dimM + m.
struct KMaps {
  const Algebroid& alg;
  const ModuleRep& rep;
  Evaluator ev;
  int dm, dw, dx;
  std::vector<std::vector<Mat>> xo_coev;  ///< [i][l] = (x_i, e_l) for the coevaluation pairs
  std::vector<Mat> x_coev;                ///< [i] = x_i

  KMaps(const ModuleRep& r, const Algebroid& a)
      : alg(a), rep(r), ev(r), dm(r.dim), dw(a.calc->omega->dim), dx(a.calc->dual()->dim) {
    const DualityData& d = alg.calc->duality;
    if (alg.pres.alphabet.has_family(Family::XO)) {
      for (const auto& [wi, xi] : d.coev) {
        std::vector<Mat> row;
        for (int l = 0; l < dw; ++l) row.push_back(ev.elem(alg.xo_expr(xi, unit_vec(dw, l))));
        xo_coev.push_back(std::move(row));
      }
    }
    if (alg.pres.alphabet.has_family(Family::X))
      for (const auto& [wi, xi] : d.coev) x_coev.push_back(ev.elem(alg.x_expr(xi)));
  }

  /// @brief m (x) w -> sum_i w_i (x) (x_i, w) m.
  Mat sigma_k() {
    const auto& coev = alg.calc->duality.coev;
    return matrix_of(dw * dm, dm * dw, [&](int c) {
      const int a = c / dw, l = c % dw;
      Vec out(static_cast<std::size_t>(dw) * dm);
      for (std::size_t i = 0; i < coev.size(); ++i) axpy(out, Scalar(1), kron(coev[i].first, xo_coev[i][l].column(a)));
      return out;
    });
  }

  /// @brief m -> sum_i w_i (x) x_i m.
  Mat nabla_k() {
    const auto& coev = alg.calc->duality.coev;
    return matrix_of(dw * dm, dm, [&](int a) {
      Vec out(static_cast<std::size_t>(dw) * dm);
      for (std::size_t i = 0; i < coev.size(); ++i) axpy(out, Scalar(1), kron(coev[i].first, x_coev[i].column(a)));
      return out;
    });
  }

  /// @brief w (x) m -> sum_j (w, y_j) m (x) rho_j.
  Mat tau_k() {
    const auto& uc = alg.calc->duality.under_coev;
    std::vector<std::vector<Mat>> ox(dw);
    for (int l = 0; l < dw; ++l)
      for (const auto& [yj, rj] : uc) ox[l].push_back(ev.elem(alg.ox_expr(unit_vec(dw, l), yj)));
    return matrix_of(dm * dw, dw * dm, [&](int c) {
      const int l = c / dm, a = c % dm;
      Vec out(static_cast<std::size_t>(dm) * dw);
      for (std::size_t j = 0; j < uc.size(); ++j) axpy(out, Scalar(1), kron(ox[l][j].column(a), uc[j].second));
      return out;
    });
  }

  /// @brief x (x) m -> sum_i (x, w_i) m (x) x_i, from X (x) M to M (x) X.
  Mat sigma_x_k() {
    const auto& coev = alg.calc->duality.coev;
    std::vector<std::vector<Mat>> xo(dx);
    for (int l = 0; l < dx; ++l)
      for (const auto& [wi, xi] : coev) xo[l].push_back(ev.elem(alg.xo_expr(unit_vec(dx, l), wi)));
    return matrix_of(dm * dx, dx * dm, [&](int c) {
      const int l = c / dm, a = c % dm;
      Vec out(static_cast<std::size_t>(dm) * dx);
      for (std::size_t i = 0; i < coev.size(); ++i) axpy(out, Scalar(1), kron(xo[l][i].column(a), coev[i].second));
      return out;
    });
  }

  /// @brief m (x) x -> sum_j y_j (x) (rho_j, x) m, from M (x) X to X (x) M.
  Mat tau_x_k() {
    const auto& uc = alg.calc->duality.under_coev;
    std::vector<std::vector<Mat>> ox(dx);
    for (int l = 0; l < dx; ++l)
      for (const auto& [yj, rj] : uc) ox[l].push_back(ev.elem(alg.ox_expr(rj, unit_vec(dx, l))));
    return matrix_of(dx * dm, dm * dx, [&](int c) {
      const int a = c / dx, l = c % dx;
      Vec out(static_cast<std::size_t>(dx) * dm);
      for (std::size_t j = 0; j < uc.size(); ++j) axpy(out, Scalar(1), kron(uc[j].first, ox[l][j].column(a)));
      return out;
    });
  }

  /// @brief m (x) w (x) w' -> sum_ij (w_i ^ w_j) (x) (x_j, w') (x_i, w) m on k-tensor representatives.
  Vec double_sigma(const Calculus2& c2, int a, const Vec& ww) {
    const auto& coev = alg.calc->duality.coev;
    const int d2 = c2.omega2->dim;
    Vec out(static_cast<std::size_t>(d2) * dm);
    for (int l = 0; l < dw; ++l)
      for (int r = 0; r < dw; ++r) {
        const Scalar& c = ww[static_cast<std::size_t>(l) * dw + r];
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < coev.size(); ++i) {
          const Vec mi = xo_coev[i][l].column(a);
          for (std::size_t j = 0; j < coev.size(); ++j) {
            const Vec mij = xo_coev[j][r].apply(mi);
            if (is_zero(mij)) continue;
            axpy(out, c, kron(c2.wedge_of(coev[i].first, coev[j].first), mij));
          }
        }
      }
    return out;
  }
};

BimodulePtr module_bimodule_checked(const ModuleRep& m, const AlgebraPtr& base) {
  if (m.right.empty() && base->dim() > 0) throw Error("LevelTooLow", "no right action at TX");
  return module_bimodule(m, base);
}

}  // namespace

Mat ModuleRep::eval(const FreeElem& e) const {
  Mat out(dim, dim);
  for (const auto& [w, c] : e) {
    Mat acc = Mat::identity(dim);
    for (char16_t s : w) acc = acc * mats[s];
    out += acc * c;
  }
  return out;
}

ModuleRepSpec ModuleRep::spec() const {
  ModuleRepSpec s;
  s.dim = dim;
  for (std::size_t i = 0; i < mats.size(); ++i) s.matrices[static_cast<int>(i)] = mats[i];
  return s;
}

ModuleRep validate_module(const ModuleRepSpec& spec, const Presentation& p) {
  ModuleRep rep;
  rep.level = p.level;
  rep.dim = spec.dim;
  if (spec.dim < 0) throw Error("ShapeMismatch", "negative carrier dimension");
  const int n = symbol_count(p);
  for (const auto& [id, m] : spec.matrices)
    if (id < 0 || id >= n) throw Error("ShapeMismatch", "symbol id " + std::to_string(id) + " outside the alphabet");
  for (int id = 0; id < n; ++id) {
    auto it = spec.matrices.find(id);
    if (it == spec.matrices.end()) throw Error("ShapeMismatch", "no action for " + p.alphabet.label(id));
    if (it->second.rows() != spec.dim || it->second.cols() != spec.dim)
      throw Error("ShapeMismatch", "action of " + p.alphabet.label(id) + " is " + std::to_string(it->second.rows()) +
                                       "x" + std::to_string(it->second.cols()));
    rep.mats.push_back(it->second);
  }
  for (int s : p.a_symbol) rep.left.push_back(rep.mats[s]);
  if (level_has_abar(p.level))
    for (int s : p.abar_symbol) rep.right.push_back(rep.mats[s]);
  Evaluator ev(rep);
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    Mat defect = ev.elem(p.relations[r]);
    if (!defect.is_zero()) throw RelationViolated(static_cast<int>(r), p.relation_names[r], std::move(defect));
  }
  return rep;
}

ModuleRepSpec unit_module_spec(const Algebroid& alg) {
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  ModuleRepSpec s;
  s.dim = A.dim();
  if (alg.coring.present) {
    for (const auto& [id, m] : alg.coring.epsilon) s.matrices[id] = m;
    return s;
  }
  for (int i = 0; i < A.dim(); ++i) s.matrices[alg.sym_a(i)] = A.left_mult(i);
  const GeneratorSet& g = c.dual_gens;
  for (int k = 0; k < g.size(); ++k) {
    const int sym = alg.sym_x(k);
    if (sym < 0) continue;
    s.matrices[sym] = matrix_of(A.dim(), A.dim(), [&](int a) { return c.duality.eval(g.gens[k], c.d(unit_vec(A.dim(), a))); });
  }
  return s;
}

BimodulePtr module_bimodule(const ModuleRep& m, const AlgebraPtr& base) {
  auto b = std::make_shared<Bimodule>();
  b->base = base;
  b->dim = m.dim;
  for (int i = 0; i < m.dim; ++i) b->labels.push_back("m" + std::to_string(i));
  b->left = m.left;
  b->right = m.right;
  if (b->right.empty())
    for (int a = 0; a < base->dim(); ++a) b->right.push_back(Mat(m.dim, m.dim));
  return b;
}

bool ConnectionData::all_pass() const { return lines_pass(checks); }
bool TensorModule::all_pass() const { return lines_pass(checks); }
bool HomModules::all_pass() const { return lines_pass(checks); }

ConnectionData induced_connection(const ModuleRep& rep, const Algebroid& alg) {
  const Level level = require_level(rep, alg);
  if (level == Level::TX) throw Error("LevelTooLow", "sigma needs the XO letters");
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  const BimodulePtr M = module_bimodule_checked(rep, c.base);
  ConnectionData cd;
  cd.m_omega = tensor_over_A(M, c.omega);
  cd.omega_m = tensor_over_A(c.omega, M);
  KMaps km(rep, alg);

  const Mat sk = km.sigma_k();
  const Mat s_proj = cd.omega_m.proj * sk;
  cd.checks.push_back(line("sigma_balanced", is_balanced(s_proj, *M, *c.omega), "sigma does not descend to M (x)_A Omega"));
  cd.sigma = s_proj * cd.m_omega.section;
  cd.checks.push_back(line("sigma_bimodule_map", is_bimodule_map(*cd.sigma, *cd.m_omega.result, *cd.omega_m.result),
                           "sigma is not a bimodule map"));

  if (level_has_x(level)) {
    cd.nabla = cd.omega_m.proj * km.nabla_k();
    bool left_ok = true, right_ok = true;
    for (int a = 0; a < A.dim(); ++a) {
      const Vec da = c.d(unit_vec(A.dim(), a));
      for (int m = 0; m < rep.dim; ++m) {
        const Vec em = unit_vec(rep.dim, m);
        const Vec left = sub(sub(cd.nabla->apply(rep.left[a].apply(em)), cd.omega_m.result->left[a].apply(cd.nabla->apply(em))),
                             cd.omega_m.tensor(da, em));
        if (!is_zero(left)) left_ok = false;
        const Vec right = sub(sub(cd.nabla->apply(rep.right[a].apply(em)), cd.omega_m.result->right[a].apply(cd.nabla->apply(em))),
                              cd.sigma->apply(cd.m_omega.tensor(em, da)));
        if (!is_zero(right)) right_ok = false;
      }
    }
    cd.checks.push_back(line("leibniz_left", left_ok, "nabla(am) differs from a nabla(m) + da (x) m"));
    cd.checks.push_back(line("leibniz_right", right_ok, "nabla(ma) differs from nabla(m) a + sigma(m (x) da)"));
  }

  if (level_has_ox(level)) {
    const Mat tk = km.tau_k();
    const Mat t_proj = cd.m_omega.proj * tk;
    cd.checks.push_back(line("sigma_inv_balanced", is_balanced(t_proj, *c.omega, *M), "sigma inverse does not descend"));
    cd.sigma_inv = t_proj * cd.omega_m.section;
    cd.checks.push_back(line("sigma_inv_sigma", *cd.sigma_inv * *cd.sigma == Mat::identity(cd.m_omega.result->dim),
                             "sigma inverse after sigma is not the identity"));
    cd.checks.push_back(line("sigma_sigma_inv", *cd.sigma * *cd.sigma_inv == Mat::identity(cd.omega_m.result->dim),
                             "sigma after sigma inverse is not the identity"));
  }

  if (level_is_hopf(level)) {
    const TensorSpace xm = tensor_over_A(c.dual(), M);
    const TensorSpace mx = tensor_over_A(M, c.dual());
    const Mat sx_proj = mx.proj * km.sigma_x_k();
    const Mat tx_proj = xm.proj * km.tau_x_k();
    cd.checks.push_back(line("sigma_x_balanced", is_balanced(sx_proj, *c.dual(), *M) && is_balanced(tx_proj, *M, *c.dual()),
                             "an X intertwining does not descend"));
    cd.sigma_x = sx_proj * xm.section;
    cd.sigma_x_inv = tx_proj * mx.section;
    cd.checks.push_back(line("sigma_x_inverse",
                             *cd.sigma_x_inv * *cd.sigma_x == Mat::identity(xm.result->dim) &&
                                 *cd.sigma_x * *cd.sigma_x_inv == Mat::identity(mx.result->dim),
                             "the X intertwinings are not mutually inverse"));
  }
  return cd;
}


namespace {

/// @brief Action of each symbol on the tensor carrier through the coproduct table.
ModuleRepSpec coproduct_action(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg, const TensorSpace& t,
                               bool& balanced) {
  Evaluator em(m), en(n);
  ModuleRepSpec spec;
  spec.dim = t.result->dim;
  balanced = true;
  const BimodulePtr& bm = t.first;
  const BimodulePtr& bn = t.second;
  for (int s = 0; s < alg.pres.alphabet.size(); ++s) {
    auto it = alg.coring.delta.find(s);
    if (it == alg.coring.delta.end()) throw Error("MissingData", "no coproduct for " + alg.pres.alphabet.label(s));
    Mat k(m.dim * n.dim, m.dim * n.dim);
    for (const auto& [ws, c] : it->second) k += kron(em.word(ws[0]), en.word(ws[1])) * c;
    const Mat pk = t.proj * k;
    if (!is_balanced(pk, *bm, *bn)) balanced = false;
    spec.matrices[s] = pk * t.section;
  }
  return spec;
}

}  // namespace

TensorModule tensor_modules(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg) {
  if (m.level != n.level) throw Error("MismatchedPresentation", "tensor factors at different levels");
  const Level level = require_level(m, alg);
  if (!alg.coring.present) throw Error("LevelTooLow", "the tensor action needs the coproduct");
  const Calculus1& c = *alg.calc;
  TensorModule tm;
  const BimodulePtr bm = module_bimodule_checked(m, c.base);
  const BimodulePtr bn = module_bimodule_checked(n, c.base);
  tm.space = tensor_over_A(bm, bn);
  bool balanced = true;
  const ModuleRepSpec spec = coproduct_action(m, n, alg, tm.space, balanced);
  tm.checks.push_back(line("delta_action_balanced", balanced, "the coproduct action does not descend to M (x)_A N"));
  try {
    tm.rep = validate_module(spec, alg.pres);
  } catch (const RelationViolated& e) {
    tm.checks.push_back(line("tensor_relations", false, e.what()));
    return tm;
  }
  tm.checks.push_back(line("tensor_relations", true));
  tm.checks.push_back(line("tensor_bimodule",
                           module_bimodule(tm.rep, c.base)->left == tm.space.result->left &&
                               module_bimodule(tm.rep, c.base)->right == tm.space.result->right,
                           "the coproduct action does not restrict to the tensor bimodule"));

  const ConnectionData ct = induced_connection(tm.rep, alg);
  KMaps kmm(m, alg), kmn(n, alg);
  const Mat sm = kmm.sigma_k(), sn = kmn.sigma_k();
  const int dw = c.omega->dim;
  const Mat iw = Mat::identity(dw), im = Mat::identity(m.dim), in = Mat::identity(n.dim);
  const TensorSpace& mn = tm.space;
  const Mat imn_proj = mn.proj;
  // Omega (x) M (x) N -> Omega (x)_A (M (x)_A N)
  auto project_wmn = [&](const Vec& v) { return ct.omega_m.proj.apply(kron_apply(iw, imn_proj, v)); };

  bool sigma_ok = true;
  for (int q = 0; q < ct.m_omega.result->dim; ++q) {
    const Vec rep_qw = ct.m_omega.section.column(q);
    const Vec mnw = kron_apply(mn.section, iw, rep_qw);
    const Vec mwn = kron_apply(im, sn, mnw);
    const Vec wmn = kron_apply(sm, in, mwn);
    if (project_wmn(wmn) != ct.sigma->column(q)) sigma_ok = false;
  }
  tm.checks.push_back(line("tensor_sigma", sigma_ok, "sigma of the tensor differs from (sigma_M (x) id)(id (x) sigma_N)"));

  if (level_has_x(level)) {
    const Mat nm = kmm.nabla_k(), nn = kmn.nabla_k();
    bool nabla_ok = true;
    for (int q = 0; q < mn.result->dim; ++q) {
      const Vec v = mn.section.column(q);
      Vec wmn = kron_apply(nm, in, v);
      axpy(wmn, Scalar(1), kron_apply(sm, in, kron_apply(im, nn, v)));
      if (project_wmn(wmn) != ct.nabla->column(q)) nabla_ok = false;
    }
    tm.checks.push_back(line("tensor_nabla", nabla_ok,
                             "nabla of the tensor differs from nabla_M (x) id + (sigma_M (x) id)(id (x) nabla_N)"));
  }
  for (const auto& l : ct.checks) tm.checks.push_back(line("tensor_connection." + l.name, l.pass, l.detail));
  return tm;
}

namespace {

/// @brief Coordinates of many maps against one hom basis, with the linear system factored once.
class HomCoordinates {
 public:
  explicit HomCoordinates(const HomSpace& h) : h_(h) {
    if (h.basis.empty()) return;
    rows_ = h.basis[0].rows();
    cols_ = h.basis[0].cols();
    std::vector<Vec> cs;
    for (const auto& b : h.basis) cs.push_back(flat(b));
    const int n = rows_ * cols_;
    const int k = static_cast<int>(cs.size());
    // Row reduce [B | I] to read off a left inverse on the image of B.
    Mat aug(n, k + n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) aug(i, j) = cs[j][i];
      aug(i, k + i) = Scalar(1);
    }
    piv_ = rref(aug);
    k_ = k;
    red_ = aug;
  }
  Vec operator()(const Mat& f) const {
    if (h_.basis.empty()) {
      if (!f.is_zero()) throw Error("NotInSpace", "map outside the hom space");
      return {};
    }
    const Vec v = flat(f);
    const int n = rows_ * cols_;
    Vec out(k_);
    // Transformed right-hand side E v where E is the recorded elimination.
    Vec t(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!red_(i, k_ + j).is_zero() && !v[j].is_zero()) t[i] += red_(i, k_ + j) * v[j];
    for (std::size_t r = 0; r < piv_.size() && piv_[r] < k_; ++r) out[piv_[r]] = t[r];
    for (int r = static_cast<int>(std::count_if(piv_.begin(), piv_.end(), [&](int p) { return p < k_; })); r < n; ++r)
      if (!t[r].is_zero()) throw Error("NotInSpace", "map outside the hom space");
    return out;
  }

 private:
  static Vec flat(const Mat& m) {
    Vec v(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(i) * m.cols() + j] = m(i, j);
    return v;
  }
  const HomSpace& h_;
  int rows_ = 0, cols_ = 0, k_ = 0;
  std::vector<int> piv_;
  Mat red_;
};

/// @brief Generator actions on an inner hom, on maps rather than coordinates.
struct HomAction {
  const Algebroid& alg;
  Evaluator em, en;
  HomSide side;
  HomAction(const ModuleRep& m, const ModuleRep& n, const Algebroid& a, HomSide s) : alg(a), em(m), en(n), side(s) {}

  Mat apply(int sym, const Mat& f) {
    const Calculus1& c = *alg.calc;
    const DualityData& d = c.duality;
    const GenSymbol& g = alg.pres.alphabet.symbol(sym);
    const GeneratorSet& xs = c.dual_gens;
    const GeneratorSet& ws = c.omega_gens;
    const Word w = letter(sym);
    switch (g.family) {
      case Family::A:
        return side == HomSide::Right ? en.word(w) * f : f * em.word(letter(alg.sym_abar(g.i)));
      case Family::Abar:
        return side == HomSide::Right ? f * em.word(letter(alg.sym_a(g.i))) : en.word(w) * f;
      case Family::XO: {
        const Vec& x = xs.gens[g.i];
        const Vec& om = ws.gens[g.j];
        Mat out(f.rows(), f.cols());
        for (const auto& [yj, rj] : d.under_coev) {
          if (side == HomSide::Right)
            out += en.elem(alg.xo_expr(x, rj)) * f * em.elem(alg.ox_expr(om, yj));
          else
            out += en.elem(alg.xo_expr(yj, om)) * f * em.elem(alg.ox_expr(rj, x));
        }
        return out;
      }
      case Family::OX: {
        const Vec& rho = ws.gens[g.i];
        const Vec& y = xs.gens[g.j];
        Mat out(f.rows(), f.cols());
        for (const auto& [wi, xi] : d.coev) {
          if (side == HomSide::Right)
            out += en.elem(alg.ox_expr(rho, xi)) * f * em.elem(alg.xo_expr(y, wi));
          else
            out += en.elem(alg.ox_expr(wi, y)) * f * em.elem(alg.xo_expr(xi, rho));
        }
        return out;
      }
      case Family::X: {
        const Vec& x = xs.gens[g.i];
        if (side == HomSide::Right) {
          Mat out = en.word(w) * f;
          for (const auto& [wi, xi] : d.coev) {
            const Mat xim = em.elem(alg.x_expr(xi));
            for (const auto& [yj, rj] : d.under_coev)
              out -= en.elem(alg.xo_expr(x, rj)) * f * em.elem(alg.ox_expr(wi, yj)) * xim;
          }
          return out;
        }
        Mat out(f.rows(), f.cols());
        for (const auto& [yj, rj] : d.under_coev) {
          const Mat orx = em.elem(alg.ox_expr(rj, x));
          out += en.elem(alg.x_expr(yj)) * f * orx;
          out -= f * em.elem(alg.x_expr(yj)) * orx;
        }
        return out;
      }
      default:
        throw Error("LevelTooLow", "no inner hom action for " + alg.pres.alphabet.label(sym));
    }
  }
};

ModuleRepSpec hom_action_spec(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg, const HomSpace& h,
                              HomSide side) {
  HomAction act(m, n, alg, side);
  HomCoordinates coords(h);
  ModuleRepSpec spec;
  spec.dim = static_cast<int>(h.basis.size());
  for (int s = 0; s < alg.pres.alphabet.size(); ++s)
    spec.matrices[s] = matrix_of(spec.dim, spec.dim, [&](int b) { return coords(act.apply(s, h.basis[b])); });
  return spec;
}

/// @brief Validated hom module or a failing check line.
std::optional<ModuleRep> hom_rep(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg, const HomSpace& h,
                                 HomSide side, const std::string& tag, std::vector<CheckLine>& checks) {
  ModuleRepSpec spec;
  try {
    spec = hom_action_spec(m, n, alg, h, side);
  } catch (const Error& e) {
    checks.push_back(line(tag + "_closed", false, e.what()));
    return std::nullopt;
  }
  checks.push_back(line(tag + "_closed", true));
  try {
    ModuleRep r = validate_module(spec, alg.pres);
    checks.push_back(line(tag + "_relations", true));
    return r;
  } catch (const RelationViolated& e) {
    checks.push_back(line(tag + "_relations", false, e.what()));
    return std::nullopt;
  }
}

bool is_module_map(const Mat& f, const ModuleRep& from, const ModuleRep& to) {
  for (std::size_t s = 0; s < from.mats.size(); ++s)
    if (f * from.mats[s] != to.mats[s] * f) return false;
  return true;
}

}  // namespace

HomModules hom_modules(const ModuleRep& m, const ModuleRep& n, const Algebroid& alg) {
  if (m.level != n.level) throw Error("MismatchedPresentation", "hom arguments at different levels");
  const Level level = require_level(m, alg);
  if (level != Level::HOmega && level != Level::HX)
    throw Error("LevelTooLow", std::string("inner hom actions are given at HOmega and HX, not ") + level_name(level));
  const Calculus1& c = *alg.calc;
  const BimodulePtr bm = module_bimodule(m, c.base);
  const BimodulePtr bn = module_bimodule(n, c.base);
  HomModules hm;
  hm.right_hom = hom_space(bm, bn, HomSide::Right);
  hm.left_hom = hom_space(bm, bn, HomSide::Left);
  auto rr = hom_rep(m, n, alg, hm.right_hom, HomSide::Right, "right_hom", hm.checks);
  auto lr = hom_rep(m, n, alg, hm.left_hom, HomSide::Left, "left_hom", hm.checks);
  if (!rr || !lr) return hm;
  hm.right_rep = *rr;
  hm.left_rep = *lr;
  hm.checks.push_back(line("right_hom_bimodule", module_bimodule(hm.right_rep, c.base)->left == hm.right_hom.bimodule->left &&
                                                    module_bimodule(hm.right_rep, c.base)->right == hm.right_hom.bimodule->right,
                           "A letters do not act as the hom bimodule structure"));
  hm.checks.push_back(line("left_hom_bimodule", module_bimodule(hm.left_rep, c.base)->left == hm.left_hom.bimodule->left &&
                                                   module_bimodule(hm.left_rep, c.base)->right == hm.left_hom.bimodule->right,
                           "A letters do not act as the hom bimodule structure"));

  // n -> (m -> n (x) m) into Hom_A(M, N (x)_A M).
  {
    const TensorModule nm = tensor_modules(n, m, alg);
    const HomSpace h = hom_space(bm, nm.space.result, HomSide::Right);
    auto hr = nm.all_pass() ? hom_rep(m, nm.rep, alg, h, HomSide::Right, "unit_right_target", hm.checks) : std::nullopt;
    bool ok = false;
    if (hr) {
      HomCoordinates co(h);
      const Mat unit = matrix_of(hr->dim, n.dim, [&](int b) {
        return co(matrix_of(nm.rep.dim, m.dim, [&](int a) { return nm.space.tensor(unit_vec(n.dim, b), unit_vec(m.dim, a)); }));
      });
      ok = is_module_map(unit, n, *hr);
    }
    hm.checks.push_back(line("adjunction_unit_right", ok, "n -> (m -> n (x) m) is not a module map"));
  }
  // f (x) m -> f(m) from Hom_A(M, N) (x)_A M.
  {
    const TensorModule fm = tensor_modules(hm.right_rep, m, alg);
    bool ok = false;
    if (fm.all_pass()) {
      const Mat counit = matrix_of(n.dim, fm.rep.dim, [&](int q) {
        const Vec v = fm.space.section.column(q);
        Vec out(n.dim);
        for (int h = 0; h < hm.right_rep.dim; ++h)
          for (int a = 0; a < m.dim; ++a) {
            const Scalar& cf = v[static_cast<std::size_t>(h) * m.dim + a];
            if (!cf.is_zero()) axpy(out, cf, hm.right_hom.basis[h].column(a));
          }
        return out;
      });
      ok = is_module_map(counit, fm.rep, n);
    }
    hm.checks.push_back(line("adjunction_counit_right", ok, "f (x) m -> f(m) is not a module map"));
  }
  // n -> (m -> m (x) n) into AHom(M, M (x)_A N).
  {
    const TensorModule mn = tensor_modules(m, n, alg);
    const HomSpace h = hom_space(bm, mn.space.result, HomSide::Left);
    auto hr = mn.all_pass() ? hom_rep(m, mn.rep, alg, h, HomSide::Left, "unit_left_target", hm.checks) : std::nullopt;
    bool ok = false;
    if (hr) {
      HomCoordinates co(h);
      const Mat unit = matrix_of(hr->dim, n.dim, [&](int b) {
        return co(matrix_of(mn.rep.dim, m.dim, [&](int a) { return mn.space.tensor(unit_vec(m.dim, a), unit_vec(n.dim, b)); }));
      });
      ok = is_module_map(unit, n, *hr);
    }
    hm.checks.push_back(line("adjunction_unit_left", ok, "n -> (m -> m (x) n) is not a module map"));
  }
  // m (x) g -> g(m) from M (x)_A AHom(M, N).
  {
    const TensorModule mg = tensor_modules(m, hm.left_rep, alg);
    bool ok = false;
    if (mg.all_pass()) {
      const int dg = hm.left_rep.dim;
      const Mat counit = matrix_of(n.dim, mg.rep.dim, [&](int q) {
        const Vec v = mg.space.section.column(q);
        Vec out(n.dim);
        for (int a = 0; a < m.dim; ++a)
          for (int h = 0; h < dg; ++h) {
            const Scalar& cf = v[static_cast<std::size_t>(a) * dg + h];
            if (!cf.is_zero()) axpy(out, cf, hm.left_hom.basis[h].column(a));
          }
        return out;
      });
      ok = is_module_map(counit, mg.rep, n);
    }
    hm.checks.push_back(line("adjunction_counit_left", ok, "m (x) g -> g(m) is not a module map"));
  }

  // The same actions through the antipode: b f = S^-1(S(b)_(2)) f(S(b)_(1) -) and
  // b g = S(S^-1(b)_(1)) g(S^-1(b)_(2) -).
  bool has_antipode = alg.hopf.present;
  for (int s = 0; s < alg.pres.alphabet.size() && has_antipode; ++s)
    if (!alg.hopf.s.count(s) || !alg.hopf.s_inv.count(s)) has_antipode = false;
  if (has_antipode) {
    Evaluator em(m), en(n);
    HomAction ra(m, n, alg, HomSide::Right), la(m, n, alg, HomSide::Left);
    bool ok = true;
    for (int s = 0; s < alg.pres.alphabet.size(); ++s) {
      const FreeElem b = word_elem(letter(s));
      const TensorElem ds = alg.delta(alg.antipode(b));
      const TensorElem dsi = alg.delta(alg.antipode(b, true));
      for (const auto& f : hm.right_hom.basis) {
        Mat out(f.rows(), f.cols());
        for (const auto& [ws, cf] : ds) out += en.elem(alg.antipode(word_elem(ws[1]), true)) * f * em.word(ws[0]) * cf;
        if (out != ra.apply(s, f)) ok = false;
      }
      for (const auto& g : hm.left_hom.basis) {
        Mat out(g.rows(), g.cols());
        for (const auto& [ws, cf] : dsi) out += en.elem(alg.antipode(word_elem(ws[0]))) * g * em.word(ws[1]) * cf;
        if (out != la.apply(s, g)) ok = false;
      }
    }
    hm.checks.push_back(line("antipode_route", ok, "the antipode actions differ from the direct tables"));
  }
  return hm;
}

CurvatureReport curvature_and_flatness(const ModuleRep& rep, const Algebroid& alg, const Calculus2* c2) {
  require_level(rep, alg);
  if (!c2) c2 = alg.calc2.get();
  if (!c2) throw Error("MissingSecondOrder", "curvature needs Omega2");
  if (!level_has_x(rep.level)) throw Error("LevelTooLow", "curvature needs the X letters");
  const Calculus1& c = *alg.calc;
  const BimodulePtr M = module_bimodule_checked(rep, c.base);
  const TensorSpace w2m = tensor_over_A(c2->omega2, M);
  const auto& coev = c.duality.coev;
  KMaps km(rep, alg);
  const int dm = rep.dim, d2 = c2->omega2->dim;
  CurvatureReport cr;
  cr.curvature = matrix_of(w2m.result->dim, dm, [&](int a) {
    Vec out(static_cast<std::size_t>(d2) * dm);
    for (std::size_t i = 0; i < coev.size(); ++i) {
      const Vec xm = km.x_coev[i].column(a);
      axpy(out, Scalar(1), kron(c2->d1.apply(coev[i].first), xm));
      for (std::size_t j = 0; j < coev.size(); ++j)
        axpy(out, Scalar(-1), kron(c2->wedge_of(coev[i].first, coev[j].first), km.x_coev[j].apply(xm)));
    }
    return w2m.proj.apply(out);
  });
  cr.flat = cr.curvature.is_zero();
  cr.checks.push_back(line("flat", cr.flat, "the curvature is nonzero"));

  if (!alg.pres.alphabet.has_family(Family::X2O2) || rep.level != Level::DX || c2 != alg.calc2.get()) return cr;
  const int dw = c.omega->dim;
  Evaluator ev(rep);
  const auto& coev2 = c2->duality2.coev;
  std::vector<std::vector<Mat>> x2o2(coev2.size());
  for (std::size_t i = 0; i < coev2.size(); ++i)
    for (int p = 0; p < d2; ++p) x2o2[i].push_back(ev.elem(alg.x2o2_expr(coev2[i].second, unit_vec(d2, p))));
  // sigma2 on k-tensor representatives: m (x) u -> sum_i u_i (x) (x2_i, u) m.
  auto sigma2_k = [&](const Vec& m, const Vec& u) {
    Vec out(static_cast<std::size_t>(d2) * dm);
    for (std::size_t i = 0; i < coev2.size(); ++i) {
      Vec mm(dm);
      for (int p = 0; p < d2; ++p)
        if (!u[p].is_zero()) axpy(mm, u[p], x2o2[i][p].apply(m));
      if (!is_zero(mm)) axpy(out, Scalar(1), kron(coev2[i].first, mm));
    }
    return out;
  };

  bool ext_ok = true, flat_ext_ok = true;
  for (int a = 0; a < dm; ++a) {
    const Vec em = unit_vec(dm, a);
    for (int l = 0; l < dw; ++l)
      for (int r = 0; r < dw; ++r) {
        const Vec ww = kron(unit_vec(dw, l), unit_vec(dw, r));
        const Vec lhs = w2m.proj.apply(km.double_sigma(*c2, a, ww));
        const Vec rhs = w2m.proj.apply(sigma2_k(em, c2->wedge_of(unit_vec(dw, l), unit_vec(dw, r))));
        if (lhs != rhs) ext_ok = false;
      }
    // (^ (x) id)[(id (x) sigma)(nabla (x) id) + (id (x) nabla) sigma] = (d (x) id) sigma - sigma2 (id (x) d)
    for (int l = 0; l < dw; ++l) {
      Vec lhs(static_cast<std::size_t>(d2) * dm), rhs(static_cast<std::size_t>(d2) * dm);
      for (std::size_t i = 0; i < coev.size(); ++i) {
        const Vec xim = km.x_coev[i].column(a);
        const Vec sig_i = km.xo_coev[i][l].column(a);
        axpy(rhs, Scalar(1), kron(c2->d1.apply(coev[i].first), sig_i));
        for (std::size_t j = 0; j < coev.size(); ++j) {
          const Vec wij = c2->wedge_of(coev[i].first, coev[j].first);
          axpy(lhs, Scalar(1), kron(wij, km.xo_coev[j][l].apply(xim)));
          axpy(lhs, Scalar(1), kron(c2->wedge_of(coev[j].first, coev[i].first), km.x_coev[i].apply(sig_i)));
        }
      }
      axpy(rhs, Scalar(-1), sigma2_k(em, c2->d1.apply(unit_vec(dw, l))));
      if (w2m.proj.apply(lhs) != w2m.proj.apply(rhs)) flat_ext_ok = false;
    }
  }
  cr.extendable = ext_ok;
  cr.flat_extension = flat_ext_ok;
  cr.checks.push_back(line("extendable", ext_ok, "sigma2 (id (x) ^) differs from (^ (x) id)(id (x) sigma)(sigma (x) id)"));
  cr.checks.push_back(line("flat_extension", flat_ext_ok, "the flat extension identity fails"));
  return cr;
}

ModuleRepSpec quiver_rep_bridge(const QuiverRep& qr, const Algebroid& tx) {
  if (!level_has_x(tx.pres.level)) throw Error("LevelTooLow", "the bridge needs the X letters");
  const Calculus1& c = *tx.calc;
  if (!c.quiver) throw Error("NotAQuiverCalculus", c.name);
  const QuiverData& q = *c.quiver;
  const int nv = static_cast<int>(q.vertices.size());
  const int ne = static_cast<int>(q.edges.size());
  if (static_cast<int>(qr.dims.size()) != nv || static_cast<int>(qr.arrows.size()) != ne)
    throw Error("ShapeMismatch", "representation does not match the quiver");
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) {
    if (qr.dims[v] < 0) throw Error("ShapeMismatch", "negative vertex dimension");
    off[v + 1] = off[v] + qr.dims[v];
  }
  const int dim = off[nv];
  auto proj = [&](int v) {
    Mat p(dim, dim);
    for (int i = off[v]; i < off[v + 1]; ++i) p(i, i) = Scalar(1);
    return p;
  };
  ModuleRepSpec spec;
  spec.dim = dim;
  for (int v = 0; v < nv; ++v) spec.matrices[tx.sym_a(v)] = proj(v);
  for (int e = 0; e < ne; ++e) {
    const int s = q.edges[e].source, t = q.edges[e].target;
    const Mat& a = qr.arrows[e];
    if (a.rows() != qr.dims[t] || a.cols() != qr.dims[s])
      throw Error("ShapeMismatch", "arrow " + q.edges[e].label + " has the wrong shape");
    Mat x = proj(t);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) x(off[t] + i, off[s] + j) += a(i, j);
    spec.matrices[tx.sym_x(e)] = x;
  }
  return spec;
}

QuiverRep quiver_rep_from_module(const ModuleRepSpec& spec, const Algebroid& tx) {
  const Calculus1& c = *tx.calc;
  if (!c.quiver) throw Error("NotAQuiverCalculus", c.name);
  const QuiverData& q = *c.quiver;
  const int nv = static_cast<int>(q.vertices.size());
  QuiverRep qr;
  std::vector<std::vector<int>> idx(nv);
  for (int v = 0; v < nv; ++v) {
    const Mat& p = spec.matrices.at(tx.sym_a(v));
    for (int i = 0; i < spec.dim; ++i)
      if (!p(i, i).is_zero()) idx[v].push_back(i);
    qr.dims.push_back(static_cast<int>(idx[v].size()));
  }
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    const int s = q.edges[e].source, t = q.edges[e].target;
    const Mat& x = spec.matrices.at(tx.sym_x(static_cast<int>(e)));
    Mat a(qr.dims[t], qr.dims[s]);
    for (int i = 0; i < qr.dims[t]; ++i)
      for (int j = 0; j < qr.dims[s]; ++j)
        a(i, j) = x(idx[t][i], idx[s][j]) - (idx[t][i] == idx[s][j] ? Scalar(1) : Scalar(0));
    qr.arrows.push_back(a);
  }
  return qr;
}

ModuleRepSpec translate_spec(const ModuleRepSpec& spec, const Alphabet& from, const Alphabet& to) {
  ModuleRepSpec out;
  out.dim = spec.dim;
  for (const auto& [s, m] : spec.matrices) {
    if (s < 0 || s >= from.size()) throw Error("ShapeMismatch", "symbol id outside the alphabet");
    const int t = to.find(from.symbol(s));
    if (t >= 0) out.matrices[t] = m;
  }
  return out;
}

namespace {

/// @brief Solves the relations that are affine in the missing XO letters.
void solve_xo(ModuleRepSpec& spec, const Algebroid& alg) {
  const Presentation& p = alg.pres;
  const int n = spec.dim;
  std::map<int, int> unknown;  // symbol -> block
  for (int s = 0; s < p.alphabet.size(); ++s)
    if (p.alphabet.symbol(s).family == Family::XO && !spec.matrices.count(s)) {
      const int b = static_cast<int>(unknown.size());
      unknown[s] = b;
    }
  if (unknown.empty()) return;
  const int nu = static_cast<int>(unknown.size()) * n * n;
  ModuleRep known;
  known.dim = n;
  known.mats.resize(p.alphabet.size(), Mat(n, n));
  for (const auto& [s, m] : spec.matrices) known.mats[s] = m;
  Evaluator ev(known);
  Subspace sys(nu + 1);
  for (const auto& rel : p.relations) {
    bool usable = true;
    for (const auto& [w, c] : rel) {
      int cnt = 0;
      for (char16_t s : w) {
        if (unknown.count(s)) ++cnt;
        else if (!spec.matrices.count(s)) usable = false;
      }
      if (cnt > 1) usable = false;
    }
    if (!usable) continue;
    std::vector<Vec> rows(static_cast<std::size_t>(n) * n, Vec(nu + 1));
    for (const auto& [w, c] : rel) {
      std::size_t pos = w.size();
      for (std::size_t k = 0; k < w.size(); ++k)
        if (unknown.count(w[k])) pos = k;
      if (pos == w.size()) {
        const Mat m = ev.word(w);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) rows[i * n + j][nu] -= c * m(i, j);
        continue;
      }
      const Mat& u = ev.word(w.substr(0, pos));
      const Mat& v = ev.word(w.substr(pos + 1));
      const int base = unknown.at(w[pos]) * n * n;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          if (u(i, k).is_zero()) continue;
          for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
              if (!v(l, j).is_zero()) rows[i * n + j][base + k * n + l] += c * u(i, k) * v(l, j);
        }
    }
    for (const auto& r : rows)
      if (!is_zero(r)) sys.add(r);
  }
  Vec x(nu);
  for (int r = 0; r < sys.dim(); ++r) {
    const int pv = sys.pivots()[r];
    if (pv == nu) throw Error("NoCompatibleExtension", "the XO letters cannot be solved from the relations");
    x[pv] = sys.rows()[r][nu];
  }
  for (const auto& [s, b] : unknown) {
    Mat m(n, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) m(k, l) = x[static_cast<std::size_t>(b) * n * n + k * n + l];
    spec.matrices[s] = m;
  }
}

/// @brief Reads the letters (w, y) off the inverse of an intertwining: (w, y) m = sum_j m_j uev(rho_j, y)
/// where inv(w (x) m) = sum_j m_j (x) rho_j.
Mat read_off_inverse(const Mat& inv, const TensorSpace& wm, const TensorSpace& mw, const Vec& w, const Vec& y,
                     const Mat& under_ev, const Bimodule& M) {
  const int dm = M.dim;
  const int dw = static_cast<int>(w.size());
  return matrix_of(dm, dm, [&](int a) {
    const Vec v = mw.section.apply(inv.apply(wm.tensor(w, unit_vec(dm, a))));
    Vec out(dm);
    for (int b = 0; b < dm; ++b)
      for (int r = 0; r < dw; ++r) {
        const Scalar& c = v[static_cast<std::size_t>(b) * dw + r];
        if (c.is_zero()) continue;
        axpy(out, c, M.right_matrix(under_ev.apply(kron(unit_vec(dw, r), y))).column(b));
      }
    return out;
  });
}

}  // namespace

ModuleRep extend_module(const ModuleRepSpec& in, const Algebroid& alg) {
  const Presentation& p = alg.pres;
  const Calculus1& c = *alg.calc;
  const int n = in.dim;
  ModuleRepSpec spec;
  spec.dim = n;
  for (const auto& [s, m] : in.matrices)
    if (s >= 0 && s < p.alphabet.size()) spec.matrices[s] = m;
  if (level_has_abar(p.level))
    for (int i = 0; i < c.base->dim(); ++i)
      if (!spec.matrices.count(alg.sym_abar(i)) && spec.matrices.count(alg.sym_a(i)))
        spec.matrices[alg.sym_abar(i)] = spec.matrices.at(alg.sym_a(i));
  solve_xo(spec, alg);

  auto partial_rep = [&](Level level) {
    ModuleRep r;
    r.level = level;
    r.dim = n;
    r.mats.assign(p.alphabet.size(), Mat(n, n));
    for (const auto& [s, m] : spec.matrices) r.mats[s] = m;
    for (int s : p.a_symbol) r.left.push_back(r.mats[s]);
    if (level_has_abar(level))
      for (int s : p.abar_symbol) r.right.push_back(r.mats[s]);
    return r;
  };

  bool missing_ox = false;
  for (int s = 0; s < p.alphabet.size(); ++s)
    if (p.alphabet.symbol(s).family == Family::OX && !spec.matrices.count(s)) missing_ox = true;
  if (missing_ox) {
    const ModuleRep r = partial_rep(p.level);
    const BimodulePtr M = module_bimodule(r, c.base);
    const TensorSpace mw = tensor_over_A(M, c.omega), wm = tensor_over_A(c.omega, M);
    KMaps km(r, alg);
    const Mat sigma = wm.proj * km.sigma_k() * mw.section;
    const auto inv = inverse(sigma);
    if (!inv) throw Error("NoCompatibleExtension", "sigma is not invertible");
    for (int s = 0; s < p.alphabet.size(); ++s) {
      const GenSymbol& g = p.alphabet.symbol(s);
      if (g.family != Family::OX || spec.matrices.count(s)) continue;
      spec.matrices[s] = read_off_inverse(*inv, wm, mw, c.omega_gens.gens[g.i], c.dual_gens.gens[g.j], c.duality.under_ev, *M);
    }
  }

  bool missing_second = false;
  for (int s = 0; s < p.alphabet.size(); ++s) {
    const Family f = p.alphabet.symbol(s).family;
    if ((f == Family::X2O2 || f == Family::O2X2) && !spec.matrices.count(s)) missing_second = true;
  }
  if (missing_second) {
    const Calculus2& c2 = *alg.calc2;
    const ModuleRep r = partial_rep(p.level);
    const BimodulePtr M = module_bimodule(r, c.base);
    KMaps km(r, alg);
    const int d2 = c2.omega2->dim;
    const TensorSpace mw2 = tensor_over_A(M, c2.omega2), w2m = tensor_over_A(c2.omega2, M);
    // sigma2(m (x) u) for u = wedge(t): the composite of sigma twice on a preimage t.
    std::vector<Vec> lifts;
    for (int q = 0; q < d2; ++q) {
      const auto t = solve(c2.wedge, unit_vec(d2, q));
      if (!t) throw Error("NoCompatibleExtension", "the wedge product is not surjective");
      lifts.push_back(c2.omega_omega.section.apply(*t));
    }
    const Mat s2k = matrix_of(d2 * n, n * d2, [&](int col) { return km.double_sigma(c2, col / d2, lifts[col % d2]); });
    const DualityData& dd = c2.duality2;
    for (int s = 0; s < p.alphabet.size(); ++s) {
      const GenSymbol& g = p.alphabet.symbol(s);
      if (g.family != Family::X2O2 || spec.matrices.count(s)) continue;
      const Vec& x2 = c2.dual2_gens.gens[g.i];
      const Vec& w2 = c2.omega2_gens.gens[g.j];
      // (x2, w2) m = sum_i ev2(x2, u_i) m_i where sigma2(m (x) w2) = sum_i u_i (x) m_i.
      spec.matrices[s] = matrix_of(n, n, [&](int a) {
        Vec v(static_cast<std::size_t>(d2) * n);
        for (int q = 0; q < d2; ++q)
          if (!w2[q].is_zero()) axpy(v, w2[q], s2k.column(a * d2 + q));
        Vec out(n);
        for (int q = 0; q < d2; ++q)
          for (int b = 0; b < n; ++b) {
            const Scalar& cf = v[static_cast<std::size_t>(q) * n + b];
            if (cf.is_zero()) continue;
            axpy(out, cf, M->left_matrix(dd.eval(x2, unit_vec(d2, q))).column(b));
          }
        return out;
      });
    }
    const Mat s2 = w2m.proj * s2k * mw2.section;
    bool need_o2x2 = false;
    for (int s = 0; s < p.alphabet.size(); ++s)
      if (p.alphabet.symbol(s).family == Family::O2X2 && !spec.matrices.count(s)) need_o2x2 = true;
    if (need_o2x2) {
      const auto inv = inverse(s2);
      if (!inv) throw Error("NoCompatibleExtension", "sigma2 is not invertible");
      for (int s = 0; s < p.alphabet.size(); ++s) {
        const GenSymbol& g = p.alphabet.symbol(s);
        if (g.family != Family::O2X2 || spec.matrices.count(s)) continue;
        spec.matrices[s] = read_off_inverse(*inv, w2m, mw2, c2.omega2_gens.gens[g.i], c2.dual2_gens.gens[g.j], dd.under_ev, *M);
      }
    }
  }
  return validate_module(spec, p);
}

ModuleRep restrict_module(const ModuleRep& m, const Algebroid& from, const Algebroid& to) {
  return validate_module(translate_spec(m.spec(), from.pres.alphabet, to.pres.alphabet), to.pres);
}

}  // namespace hopfalg
