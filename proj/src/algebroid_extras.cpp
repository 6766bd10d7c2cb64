#include <functional>

#include "hopfalg/algebroid.hpp"
#include "hopfalg/membership.hpp"

namespace hopfalg {

namespace {

/// @brief Linear system M vec(U) = b for Upsilon with vec index r*m + j.
void upsilon_system(const Calculus1& c, Mat& M, Vec& b) {
  const FiniteAlgebra& A = *c.base;
  const BimodulePtr& X = c.dual();
  const int n = A.dim();
  const int m = X->dim;
  const int eqs = 2 * m * n * n;
  M = Mat(eqs, n * m);
  b = zero_vec(eqs);
  int row = 0;
  for (int j = 0; j < m; ++j) {
    const Vec x = unit_vec(m, j);
    for (int a = 0; a < n; ++a) {
      const Vec ea = A.basis(a);
      const Vec xa = X->act_right(x, ea);
      const Vec ax = X->act_left(ea, x);
      const Vec rhs1 = c.duality.eval(x, c.d(ea));
      const Vec rhs2 = c.duality.under_eval(c.d(ea), x);
      const Mat& R = A.right_mult(a);
      const Mat& L = A.left_mult(a);
      for (int i = 0; i < n; ++i, ++row) {
        // Upsilon(x a)_i - sum_r R(i, r) Upsilon(x)_r
        for (int jj = 0; jj < m; ++jj)
          if (!xa[jj].is_zero()) M(row, i * m + jj) += xa[jj];
        for (int r = 0; r < n; ++r)
          if (!R(i, r).is_zero()) M(row, r * m + j) -= R(i, r);
        b[row] = rhs1[i];
      }
      for (int i = 0; i < n; ++i, ++row) {
        for (int jj = 0; jj < m; ++jj)
          if (!ax[jj].is_zero()) M(row, i * m + jj) += ax[jj];
        for (int r = 0; r < n; ++r)
          if (!L(i, r).is_zero()) M(row, r * m + j) -= L(i, r);
        b[row] = rhs2[i];
      }
    }
  }
}

Vec vectorize(const Mat& U) {
  Vec v(static_cast<std::size_t>(U.rows()) * U.cols());
  for (int r = 0; r < U.rows(); ++r)
    for (int j = 0; j < U.cols(); ++j) v[static_cast<std::size_t>(r) * U.cols() + j] = U(r, j);
  return v;
}

Mat unvectorize(const Vec& v, int n, int m) {
  Mat U(n, m);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < m; ++j) U(r, j) = v[static_cast<std::size_t>(r) * m + j];
  return U;
}

/// @brief Checks the two extra conditions on Upsilon required at the flat level.
bool flat_upsilon_conditions(const Calculus1& c, const Calculus2& c2, const Mat& U) {
  const DualityData& d = c.duality;
  const DualityData& d2 = c2.duality2;
  const BimodulePtr& X = c.dual();
  const FiniteAlgebra& A = *c.base;
  const int n2 = d2.dual->dim;
  const int nw = c.omega->dim;
  for (int x = 0; x < n2; ++x) {
    const Vec x2 = unit_vec(n2, x);
    Vec lhs = zero_vec(A.dim());
    for (const auto& [wi, xi] : d.coev) lhs = add(lhs, U.apply(X->act_left(d2.eval(x2, c2.d1.apply(wi)), xi)));
    // inner(j) = sum_k ev2(x2 (x) w_j ^ w_k) x_k
    std::vector<Vec> inner;
    for (const auto& [wj, xj] : d.coev) {
      Vec acc = zero_vec(X->dim);
      for (const auto& [wk, xk] : d.coev) acc = add(acc, X->act_left(d2.eval(x2, c2.wedge_of(wj, wk)), xk));
      inner.push_back(acc);
    }
    for (std::size_t j = 0; j < d.coev.size(); ++j)
      lhs = add(lhs, U.apply(X->act_left(U.apply(inner[j]), d.coev[j].second)));
    if (!is_zero(lhs)) return false;
    for (int w = 0; w < nw; ++w) {
      const Vec wv = unit_vec(nw, w);
      Vec l = d2.under_eval(c2.d1.apply(wv), x2);
      Vec tmp = zero_vec(X->dim);
      for (const auto& [wl, xl] : d.coev) tmp = add(tmp, X->act_left(d2.eval(x2, c2.d1.apply(wl)), xl));
      l = sub(l, d.under_eval(wv, tmp));
      Vec r = zero_vec(A.dim());
      for (std::size_t j = 0; j < d.coev.size(); ++j) {
        const Vec& xj = d.coev[j].second;
        // The pairing of omega (on the left) with inner[j] is the underlined evaluation.
        l = sub(l, d.under_eval(c.d(d.under_eval(wv, inner[j])), xj));
        const Vec term = add(X->act_left(U.apply(inner[j]), xj), X->act_right(inner[j], U.apply(xj)));
        r = add(r, d.under_eval(wv, term));
      }
      if (l != r) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Mat> documented_upsilon(const Calculus1& c) {
  const int n = c.base->dim();
  const int m = c.dual()->dim;
  Mat U(n, m);
  if (c.quiver) {
    // The dual basis of the quiver calculus is indexed by arrows in order.
    for (int e = 0; e < static_cast<int>(c.quiver->edges.size()); ++e) {
      U(c.quiver->edges[e].source, e) += 1;
      U(c.quiver->edges[e].target, e) -= 1;
    }
    return U;
  }
  const GeneratorSet& g = c.dual_gens;
  for (int j = 0; j < m; ++j) {
    const Vec le = g.left_expand(unit_vec(m, j));
    Vec acc = zero_vec(n);
    for (std::size_t p = 0; p < le.size(); ++p) {
      if (le[p].is_zero()) continue;
      const int s = static_cast<int>(p) / g.size();
      const int k = static_cast<int>(p) % g.size();
      if (s == 0) continue;  // d(1) = 0
      acc = add(acc, scale(c.duality.under_eval(c.d(c.base->basis(s - 1)), g.gens[k]), le[p]));
    }
    for (int i = 0; i < n; ++i) U(i, j) = acc[i];
  }
  return U;
}

UpsilonSolution solve_upsilon(const Calculus1& c, const Calculus2* c2) {
  UpsilonSolution sol;
  Mat M;
  Vec b;
  upsilon_system(c, M, b);
  const int n = c.base->dim();
  const int m = c.dual()->dim;
  sol.solution_dim = static_cast<int>(nullspace(M).size());
  std::optional<Mat> doc = documented_upsilon(c);
  if (doc && M.apply(vectorize(*doc)) == b) {
    sol.found = true;
    sol.documented_form = true;
    sol.particular = *doc;
    sol.note = c.quiver ? "closed form f_s - f_t on arrows" : "closed form under_ev(d a_i (x) f_i)";
  } else if (auto v = solve(M, b)) {
    sol.found = true;
    sol.particular = unvectorize(*v, n, m);
    sol.note = "particular solution of the linear system";
  } else {
    sol.note = "NotFound: compatibility equations are inconsistent";
    return sol;
  }
  if (c2) {
    sol.flat_conditions = flat_upsilon_conditions(c, *c2, sol.particular);
    if (!sol.flat_conditions) sol.note += "; flat-level conditions fail for this particular solution";
  }
  return sol;
}

Presentation symmetric_quotient(const Algebroid& alg) {
  const Calculus1& c = *alg.calc;
  if (!c.base->commutative()) throw Error("NotCommutative", c.name);
  Presentation p = alg.pres;
  p.name += "/sym";
  p.hard_cache.reset();
  const int n = c.base->dim();
  for (int i = 0; i < n; ++i)
    if (alg.sym_abar(i) >= 0)
      p.add_relation(word_elem(letter(alg.sym_abar(i))) - word_elem(letter(alg.sym_a(i))),
                     "sym.abar(" + std::to_string(i) + ")", false);
  const GeneratorSet& g = c.dual_gens;
  const GeneratorSet& h = c.omega_gens;
  for (int k = 0; k < g.size(); ++k)
    for (int l = 0; l < h.size(); ++l) {
      if (alg.sym_xo(k, l) >= 0)
        p.add_relation(word_elem(letter(alg.sym_xo(k, l))) - alg.a_expr(c.duality.eval(g.gens[k], h.gens[l])),
                       "sym.xo(" + std::to_string(k) + "," + std::to_string(l) + ")", false);
      if (alg.sym_ox(l, k) >= 0)
        p.add_relation(word_elem(letter(alg.sym_ox(l, k))) - alg.a_expr(c.duality.under_eval(h.gens[l], g.gens[k])),
                       "sym.ox(" + std::to_string(l) + "," + std::to_string(k) + ")", false);
    }
  p.finalize();
  return p;
}

bool EmbeddingReport::all_pass() const {
  for (const auto& [n, ok] : checks)
    if (!ok) return false;
  return true;
}

EmbeddingReport ty_embedding(const Algebroid& alg, int bound) {
  if (!level_has_ox(alg.pres.level) || !level_has_x(alg.pres.level))
    throw Error("LevelTooLow", "the Y embedding needs level IBX or above");
  const Calculus1& c = *alg.calc;
  const DualityData& d = c.duality;
  const BimodulePtr& X = c.dual();
  const FiniteAlgebra& A = *c.base;
  auto Y = [&](const Vec& y) {
    FreeElem out;
    for (const auto& [wi, xi] : d.coev) out += alg.ox_expr(wi, y) * alg.x_expr(xi);
    return out;
  };
  EmbeddingReport rep;
  const GeneratorSet& g = c.dual_gens;
  for (int k = 0; k < g.size(); ++k) rep.images["Y[" + g.labels[k] + "]"] = Y(g.gens[k]);
  for (int a = 0; a < A.dim(); ++a) rep.images["Abar[" + A.labels()[a] + "]"] = word_elem(letter(alg.sym_abar(a)));
  for (int k = 0; k < g.size(); ++k)
    for (int a = 0; a < A.dim(); ++a) {
      const Vec ea = A.basis(a);
      const FreeElem ab = word_elem(letter(alg.sym_abar(a)));
      const FreeElem r1 = ab * Y(g.gens[k]) - Y(X->act_right(g.gens[k], ea));
      const FreeElem r2 = Y(g.gens[k]) * ab - Y(X->act_left(ea, g.gens[k])) - alg.abar_expr(d.under_eval(c.d(ea), g.gens[k]));
      const std::string idx = "(" + g.labels[k] + "," + A.labels()[a] + ")";
      rep.checks.emplace_back("abar.y" + idx, ideal_membership(r1, alg.pres, bound).member());
      rep.checks.emplace_back("y.abar" + idx, ideal_membership(r2, alg.pres, bound).member());
    }
  return rep;
}

FreeElem substitute(const FreeElem& e, const std::map<int, FreeElem>& images) {
  FreeElem out;
  for (const auto& [w, c] : e) {
    FreeElem acc = word_elem(Word(), c);
    for (char16_t s : w) {
      auto it = images.find(s);
      if (it == images.end()) throw Error("MissingImage", "symbol " + std::to_string(s));
      acc = acc * it->second;
    }
    out += acc;
  }
  return out;
}

bool PathAlgebraBridge::all_pass() const {
  for (const auto& [n, ok] : checks)
    if (!ok) return false;
  return true;
}

PathAlgebraBridge path_algebra_bridge(const Calculus1& c, int bound) {
  if (!c.quiver) throw Error("NotAQuiverCalculus", c.name);
  const QuiverData& q = *c.quiver;
  const Algebroid tx = present(Level::TX, c);
  PathAlgebraBridge br;
  Presentation& p = br.path;
  p.level = Level::TX;
  p.name = c.name + "/path";
  const int nv = static_cast<int>(q.vertices.size());
  const int ne = static_cast<int>(q.edges.size());
  for (int v = 0; v < nv; ++v) p.alphabet.add({Family::A, v, 0}, "f[" + q.vertices[v] + "]");
  for (int e = 0; e < ne; ++e) p.alphabet.add({Family::X, e, 0}, "E[" + q.edges[e].label + "]");
  p.a_symbol.resize(nv);
  p.abar_symbol.assign(nv, -1);
  for (int v = 0; v < nv; ++v) p.a_symbol[v] = v;
  p.unit = c.base->unit();
  auto F = [&](int v) { return word_elem(letter(v)); };
  auto E = [&](int e) { return word_elem(letter(nv + e)); };
  FreeElem unit_rel = -Scalar(1) * word_elem(Word());
  for (int v = 0; v < nv; ++v) unit_rel += F(v);
  p.add_relation(unit_rel, "unit", true);
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) p.add_relation(F(u) * F(v) - (u == v ? F(u) : FreeElem()), "idem", true);
  for (int e = 0; e < ne; ++e)
    for (int v = 0; v < nv; ++v) {
      p.add_relation(F(v) * E(e) - (v == q.edges[e].target ? E(e) : FreeElem()), "target", true);
      p.add_relation(E(e) * F(v) - (v == q.edges[e].source ? E(e) : FreeElem()), "source", true);
    }
  p.finalize();
  // The TX dual basis is indexed by arrows, and its generator set is the full basis.
  for (int v = 0; v < nv; ++v) {
    br.forward[v] = word_elem(letter(tx.sym_a(v)));
    br.backward[tx.sym_a(v)] = F(v);
  }
  for (int e = 0; e < ne; ++e) {
    const int t = q.edges[e].target;
    br.forward[nv + e] = word_elem(letter(tx.sym_x(e))) - word_elem(letter(tx.sym_a(t)));
    br.backward[tx.sym_x(e)] = E(e) + F(t);
  }
  bool fwd_ok = true;
  for (std::size_t r = 0; r < p.relations.size(); ++r)
    if (!ideal_membership(substitute(p.relations[r], br.forward), tx.pres, bound).member()) fwd_ok = false;
  br.checks.emplace_back("path relations map into the TX ideal", fwd_ok);
  bool bwd_ok = true;
  for (std::size_t r = 0; r < tx.pres.relations.size(); ++r) {
    const FreeElem img = substitute(tx.pres.relations[r], br.backward);
    if (!ideal_membership(img, p, std::max(bound, max_length(img))).member()) bwd_ok = false;
  }
  br.checks.emplace_back("TX relations map into the path ideal", bwd_ok);
  bool round = true;
  for (const auto& [s, img] : br.forward) {
    const FreeElem back = substitute(img, br.backward);
    if (!p.rewriting->reduce(back - word_elem(letter(s))).empty()) round = false;
  }
  for (const auto& [s, img] : br.backward) {
    const FreeElem there = substitute(img, br.forward);
    if (!tx.pres.rewriting->reduce(there - word_elem(letter(s))).empty()) round = false;
  }
  br.checks.emplace_back("round trip is the identity on generators", round);
  return br;
}

}  // namespace hopfalg
