#include "hopfalg/algebroid.hpp"

#include <functional>

namespace hopfalg {

namespace {

/// @brief Word made of an optional A letter, an optional Abar letter and a final symbol.
Word prefixed(const Algebroid& alg, int a_slot, int abar_slot, int sym) {
  Word w;
  if (a_slot > 0) w.push_back(static_cast<char16_t>(alg.sym_a(a_slot - 1)));
  if (abar_slot > 0) {
    const int s = alg.sym_abar(abar_slot - 1);
    if (s < 0) throw Error("MissingFamily", "Abar letters are not part of this level");
    w.push_back(static_cast<char16_t>(s));
  }
  w.push_back(static_cast<char16_t>(sym));
  return w;
}

/// @brief Pairs a left expansion of the first argument with a right expansion of the second.
template <class SymFn>
FreeElem pair_expr(const Algebroid& alg, const GeneratorSet& left_set, const Vec& left_vec,
                   const GeneratorSet& right_set, const Vec& right_vec, SymFn sym) {
  FreeElem out;
  const Vec le = left_set.left_expand(left_vec);
  const Vec re = right_set.right_expand(right_vec);
  const int gl = left_set.size();
  const int gr = right_set.size();
  for (std::size_t p = 0; p < le.size(); ++p) {
    if (le[p].is_zero()) continue;
    const int s = static_cast<int>(p) / gl;
    const int k = static_cast<int>(p) % gl;
    for (std::size_t q = 0; q < re.size(); ++q) {
      if (re[q].is_zero()) continue;
      const int t = static_cast<int>(q) / gr;
      const int l = static_cast<int>(q) % gr;
      add_term(out, prefixed(alg, s, t, sym(k, l)), le[p] * re[q]);
    }
  }
  return out;
}

}  // namespace

FreeElem Algebroid::a_expr(const Vec& a) const { return pres.a_elem(a); }

FreeElem Algebroid::abar_expr(const Vec& a) const { return pres.abar_elem(a); }

FreeElem Algebroid::x_expr(const Vec& x) const {
  const GeneratorSet& g = calc->dual_gens;
  const Vec le = g.left_expand(x);
  FreeElem out;
  for (std::size_t p = 0; p < le.size(); ++p) {
    if (le[p].is_zero()) continue;
    const int s = static_cast<int>(p) / g.size();
    const int k = static_cast<int>(p) % g.size();
    Word w;
    if (s > 0) w.push_back(static_cast<char16_t>(sym_a(s - 1)));
    const int xs = sym_x(k);
    if (xs < 0) throw Error("MissingFamily", "X letters are not part of this level");
    w.push_back(static_cast<char16_t>(xs));
    add_term(out, w, le[p]);
  }
  return out;
}

FreeElem Algebroid::xo_expr(const Vec& x, const Vec& w) const {
  return pair_expr(*this, calc->dual_gens, x, calc->omega_gens, w, [&](int k, int l) {
    const int s = sym_xo(k, l);
    if (s < 0) throw Error("MissingFamily", "XO letters are not part of this level");
    return s;
  });
}

FreeElem Algebroid::ox_expr(const Vec& w, const Vec& y) const {
  return pair_expr(*this, calc->omega_gens, w, calc->dual_gens, y, [&](int k, int l) {
    const int s = sym_ox(k, l);
    if (s < 0) throw Error("MissingFamily", "OX letters are not part of this level");
    return s;
  });
}

FreeElem Algebroid::x2o2_expr(const Vec& x2, const Vec& w2) const {
  return pair_expr(*this, calc2->dual2_gens, x2, calc2->omega2_gens, w2, [&](int k, int l) { return sym_x2o2(k, l); });
}

FreeElem Algebroid::o2x2_expr(const Vec& w2, const Vec& y2) const {
  return pair_expr(*this, calc2->omega2_gens, w2, calc2->dual2_gens, y2, [&](int k, int l) { return sym_o2x2(k, l); });
}

TensorElem Algebroid::delta(const FreeElem& e) const {
  if (!coring.present) throw Error("MissingData", "no coproduct at this level");
  TensorElem out;
  for (const auto& [w, c] : e) {
    TensorElem acc;
    acc[{Word(), Word()}] = c;
    for (char16_t s : w) acc = acc * coring.delta.at(s);
    out += acc;
  }
  return out;
}

Mat Algebroid::epsilon_action(const FreeElem& e) const {
  if (!coring.present) throw Error("MissingData", "no counit at this level");
  const int n = calc->base->dim();
  Mat out(n, n);
  for (const auto& [w, c] : e) {
    Mat acc = Mat::identity(n);
    for (char16_t s : w) acc = acc * coring.epsilon.at(s);
    out += acc * c;
  }
  return out;
}

Vec Algebroid::epsilon(const FreeElem& e) const { return epsilon_action(e).apply(calc->base->unit()); }

FreeElem Algebroid::antipode(const FreeElem& e, bool inverse) const {
  if (!hopf.present) throw Error("MissingData", "no antipode at this level");
  const auto& table = inverse ? hopf.s_inv : hopf.s;
  FreeElem out;
  for (const auto& [w, c] : e) {
    FreeElem acc = word_elem(Word(), c);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto t = table.find(*it);
      if (t == table.end()) throw Error("MissingData", "antipode of " + pres.alphabet.label(*it));
      acc = acc * t->second;
    }
    out += acc;
  }
  return out;
}

namespace {

void build_alphabet(Algebroid& alg, Level level) {
  const Calculus1& c = *alg.calc;
  const auto& labels = c.base->labels();
  const int n = c.base->dim();
  Alphabet& ab = alg.pres.alphabet;
  for (int i = 0; i < n; ++i) ab.add({Family::A, i, 0}, "A[" + labels[i] + "]");
  if (level_has_abar(level))
    for (int i = 0; i < n; ++i) ab.add({Family::Abar, i, 0}, "Abar[" + labels[i] + "]");
  const GeneratorSet& g = c.dual_gens;
  const GeneratorSet& h = c.omega_gens;
  if (level_has_x(level))
    for (int k = 0; k < g.size(); ++k) ab.add({Family::X, k, 0}, "X[" + g.labels[k] + "]");
  if (level != Level::TX)
    for (int k = 0; k < g.size(); ++k)
      for (int l = 0; l < h.size(); ++l) ab.add({Family::XO, k, l}, "XO[" + g.labels[k] + "," + h.labels[l] + "]");
  if (level_has_ox(level))
    for (int l = 0; l < h.size(); ++l)
      for (int k = 0; k < g.size(); ++k) ab.add({Family::OX, l, k}, "OX[" + h.labels[l] + "," + g.labels[k] + "]");
  if (level == Level::DX) {
    const GeneratorSet& g2 = alg.calc2->dual2_gens;
    const GeneratorSet& h2 = alg.calc2->omega2_gens;
    for (int k = 0; k < g2.size(); ++k)
      for (int l = 0; l < h2.size(); ++l)
        ab.add({Family::X2O2, k, l}, "X2O2[" + g2.labels[k] + "," + h2.labels[l] + "]");
    for (int l = 0; l < h2.size(); ++l)
      for (int k = 0; k < g2.size(); ++k)
        ab.add({Family::O2X2, l, k}, "O2X2[" + h2.labels[l] + "," + g2.labels[k] + "]");
  }
  alg.pres.a_symbol.assign(n, -1);
  alg.pres.abar_symbol.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    alg.pres.a_symbol[i] = alg.sym_a(i);
    alg.pres.abar_symbol[i] = alg.sym_abar(i);
  }
  alg.pres.unit = c.base->unit();
}

FreeElem letter_elem(int s) { return word_elem(letter(s)); }

/// @brief Relations making a pair family (g, h) an A^e-bimodule-compatible family.
///
/// act(slot, a) returns the relation's right side for the four products A(a) P, P A(a),
/// Abar(a) P and P Abar(a) in that order.
template <class RhsFn>
void pair_family_relations(Algebroid& alg, const std::string& tag, int gn, int hn, const std::function<int(int, int)>& sym,
                           RhsFn rhs) {
  const int n = alg.calc->base->dim();
  Presentation& p = alg.pres;
  for (int k = 0; k < gn; ++k)
    for (int l = 0; l < hn; ++l) {
      const FreeElem P = letter_elem(sym(k, l));
      for (int a = 0; a < n; ++a) {
        const FreeElem A = letter_elem(alg.sym_a(a));
        const FreeElem B = letter_elem(alg.sym_abar(a));
        const std::string idx = "(" + std::to_string(k) + "," + std::to_string(l) + ";" + std::to_string(a) + ")";
        p.add_relation(A * P - rhs(0, k, l, a), tag + ".left_a" + idx, true);
        p.add_relation(P * A - rhs(1, k, l, a), tag + ".right_a" + idx, true);
        p.add_relation(B * P - rhs(2, k, l, a), tag + ".left_abar" + idx, true);
        p.add_relation(P * B - rhs(3, k, l, a), tag + ".right_abar" + idx, true);
      }
    }
}

void ring_relations(Algebroid& alg, Level level) {
  const FiniteAlgebra& A = *alg.calc->base;
  const int n = A.dim();
  Presentation& p = alg.pres;
  p.add_relation(alg.a_expr(A.unit()) - word_elem(Word()), "A.unit", true);
  if (level_has_abar(level)) p.add_relation(alg.abar_expr(A.unit()) - word_elem(Word()), "Abar.unit", true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p.add_relation(letter_elem(alg.sym_a(i)) * letter_elem(alg.sym_a(j)) - alg.a_expr(A.product(i, j)),
                     "A.mul(" + std::to_string(i) + "," + std::to_string(j) + ")", true);
  if (!level_has_abar(level)) return;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p.add_relation(letter_elem(alg.sym_abar(i)) * letter_elem(alg.sym_abar(j)) - alg.abar_expr(A.product(j, i)),
                     "Abar.mul(" + std::to_string(i) + "," + std::to_string(j) + ")", true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p.add_relation(letter_elem(alg.sym_abar(j)) * letter_elem(alg.sym_a(i)) -
                         letter_elem(alg.sym_a(i)) * letter_elem(alg.sym_abar(j)),
                     "Ae.commute(" + std::to_string(i) + "," + std::to_string(j) + ")", true);
}

void x_relations(Algebroid& alg, Level level) {
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  const GeneratorSet& g = c.dual_gens;
  const BimodulePtr& X = c.dual();
  Presentation& p = alg.pres;
  for (int k = 0; k < g.size(); ++k) {
    const FreeElem xk = letter_elem(alg.sym_x(k));
    for (int a = 0; a < A.dim(); ++a) {
      const Vec ea = A.basis(a);
      const FreeElem la = letter_elem(alg.sym_a(a));
      const std::string idx = "(" + std::to_string(k) + ";" + std::to_string(a) + ")";
      p.add_relation(la * xk - alg.x_expr(X->act_left(ea, g.gens[k])), "X.left_a" + idx, true);
      p.add_relation(xk * la - alg.x_expr(X->act_right(g.gens[k], ea)) - alg.a_expr(c.duality.eval(g.gens[k], c.d(ea))),
                     "X.right_a" + idx, true);
      if (level_has_abar(level)) {
        const FreeElem lb = letter_elem(alg.sym_abar(a));
        p.add_relation(xk * lb - lb * xk - alg.xo_expr(g.gens[k], c.d(ea)), "X.right_abar" + idx, true);
      }
    }
  }
}

void xo_relations(Algebroid& alg) {
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  const GeneratorSet& g = c.dual_gens;
  const GeneratorSet& h = c.omega_gens;
  const BimodulePtr& X = c.dual();
  const BimodulePtr& O = c.omega;
  pair_family_relations(alg, "XO", g.size(), h.size(), [&](int k, int l) { return alg.sym_xo(k, l); },
                        [&](int slot, int k, int l, int a) {
                          const Vec ea = A.basis(a);
                          switch (slot) {
                            case 0: return alg.xo_expr(X->act_left(ea, g.gens[k]), h.gens[l]);
                            case 1: return alg.xo_expr(X->act_right(g.gens[k], ea), h.gens[l]);
                            case 2: return alg.xo_expr(g.gens[k], O->act_right(h.gens[l], ea));
                            default: return alg.xo_expr(g.gens[k], O->act_left(ea, h.gens[l]));
                          }
                        });
}

void ox_relations(Algebroid& alg) {
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  const GeneratorSet& g = c.dual_gens;
  const GeneratorSet& h = c.omega_gens;
  const BimodulePtr& X = c.dual();
  const BimodulePtr& O = c.omega;
  pair_family_relations(alg, "OX", h.size(), g.size(), [&](int l, int k) { return alg.sym_ox(l, k); },
                        [&](int slot, int l, int k, int a) {
                          const Vec ea = A.basis(a);
                          switch (slot) {
                            case 0: return alg.ox_expr(O->act_left(ea, h.gens[l]), g.gens[k]);
                            case 1: return alg.ox_expr(O->act_right(h.gens[l], ea), g.gens[k]);
                            case 2: return alg.ox_expr(h.gens[l], X->act_right(g.gens[k], ea));
                            default: return alg.ox_expr(h.gens[l], X->act_left(ea, g.gens[k]));
                          }
                        });
}

void second_order_pair_relations(Algebroid& alg) {
  const Calculus2& c2 = *alg.calc2;
  const FiniteAlgebra& A = *alg.calc->base;
  const GeneratorSet& g = c2.dual2_gens;
  const GeneratorSet& h = c2.omega2_gens;
  const BimodulePtr& X = c2.duality2.dual;
  const BimodulePtr& O = c2.omega2;
  pair_family_relations(alg, "X2O2", g.size(), h.size(), [&](int k, int l) { return alg.sym_x2o2(k, l); },
                        [&](int slot, int k, int l, int a) {
                          const Vec ea = A.basis(a);
                          switch (slot) {
                            case 0: return alg.x2o2_expr(X->act_left(ea, g.gens[k]), h.gens[l]);
                            case 1: return alg.x2o2_expr(X->act_right(g.gens[k], ea), h.gens[l]);
                            case 2: return alg.x2o2_expr(g.gens[k], O->act_right(h.gens[l], ea));
                            default: return alg.x2o2_expr(g.gens[k], O->act_left(ea, h.gens[l]));
                          }
                        });
  pair_family_relations(alg, "O2X2", h.size(), g.size(), [&](int l, int k) { return alg.sym_o2x2(l, k); },
                        [&](int slot, int l, int k, int a) {
                          const Vec ea = A.basis(a);
                          switch (slot) {
                            case 0: return alg.o2x2_expr(O->act_left(ea, h.gens[l]), g.gens[k]);
                            case 1: return alg.o2x2_expr(O->act_right(h.gens[l], ea), g.gens[k]);
                            case 2: return alg.o2x2_expr(h.gens[l], X->act_right(g.gens[k], ea));
                            default: return alg.o2x2_expr(h.gens[l], X->act_left(ea, g.gens[k]));
                          }
                        });
}

/// @brief The two inverse relations and, when hpf is set, the two Hopf relations for one duality.
///
/// xo(x, w) and ox(w, y) build the pair generators; the relations are instantiated on the full
/// k-bases of the dual and of Omega.
template <class XoFn, class OxFn>
void inverse_relations(Algebroid& alg, const std::string& tag, const DualityData& d, bool hpf, XoFn xo, OxFn ox) {
  Presentation& p = alg.pres;
  const int nx = d.dual->dim;
  const int nw = d.omega->dim;
  for (int y = 0; y < nx; ++y)
    for (int w = 0; w < nw; ++w) {
      const Vec yv = unit_vec(nx, y);
      const Vec wv = unit_vec(nw, w);
      const std::string idx = "(" + std::to_string(y) + "," + std::to_string(w) + ")";
      FreeElem inv1 = -Scalar(1) * alg.abar_expr(d.under_eval(wv, yv));
      for (const auto& [wi, xi] : d.coev) inv1 += ox(wi, yv) * xo(xi, wv);
      p.add_relation(std::move(inv1), tag + ".inv1" + idx, false);
      FreeElem inv2 = -Scalar(1) * alg.a_expr(d.eval(yv, wv));
      for (const auto& [yj, rj] : d.under_coev) inv2 += xo(yv, rj) * ox(wv, yj);
      p.add_relation(std::move(inv2), tag + ".inv2" + idx, false);
      if (!hpf) continue;
      FreeElem hpf1 = -Scalar(1) * alg.abar_expr(d.eval(yv, wv));
      for (const auto& [yj, rj] : d.under_coev) hpf1 += xo(yj, wv) * ox(rj, yv);
      p.add_relation(std::move(hpf1), tag + ".hpf1" + idx, false);
      FreeElem hpf2 = -Scalar(1) * alg.a_expr(d.under_eval(wv, yv));
      for (const auto& [wi, xi] : d.coev) hpf2 += ox(wv, xi) * xo(yv, wi);
      p.add_relation(std::move(hpf2), tag + ".hpf2" + idx, false);
    }
}

void flat_relations(Algebroid& alg) {
  const Calculus1& c = *alg.calc;
  const Calculus2& c2 = *alg.calc2;
  const DualityData& d = c.duality;
  const DualityData& d2 = c2.duality2;
  Presentation& p = alg.pres;
  const int n2 = d2.dual->dim;
  const int nw = c.omega->dim;
  // ev2(x2 (x) w_i ^ w_j) for all pairs of coevaluation indices.
  for (int x = 0; x < n2; ++x) {
    const Vec x2 = unit_vec(n2, x);
    const std::string xs = std::to_string(x);
    FreeElem flat;
    for (const auto& [wi, xi] : d.coev) flat += alg.a_expr(d2.eval(x2, c2.d1.apply(wi))) * alg.x_expr(xi);
    for (const auto& [wj, xj] : d.coev)
      for (const auto& [wk, xk] : d.coev)
        flat -= alg.a_expr(d2.eval(x2, c2.wedge_of(wj, wk))) * alg.x_expr(xk) * alg.x_expr(xj);
    p.add_relation(std::move(flat), "flat(" + xs + ")", false);
    for (int w = 0; w < nw; ++w) {
      const Vec wv = unit_vec(nw, w);
      FreeElem fe = alg.x2o2_expr(x2, c2.d1.apply(wv));
      for (const auto& [wi, xi] : d.coev) {
        fe -= alg.a_expr(d2.eval(x2, c2.d1.apply(wi))) * alg.xo_expr(xi, wv);
        for (const auto& [wj, xj] : d.coev) {
          const FreeElem coef = alg.a_expr(d2.eval(x2, c2.wedge_of(wi, wj)));
          fe += coef * (alg.x_expr(xj) * alg.xo_expr(xi, wv) + alg.xo_expr(xj, wv) * alg.x_expr(xi));
        }
      }
      p.add_relation(std::move(fe), "flat_ext(" + xs + "," + std::to_string(w) + ")", false);
    }
    for (int w = 0; w < nw; ++w)
      for (int r = 0; r < nw; ++r) {
        const Vec wv = unit_vec(nw, w);
        const Vec rv = unit_vec(nw, r);
        const std::string idx = "(" + xs + "," + std::to_string(w) + "," + std::to_string(r) + ")";
        FreeElem e1 = -Scalar(1) * alg.x2o2_expr(x2, c2.wedge_of(wv, rv));
        for (const auto& [wi, xi] : d.coev)
          for (const auto& [wj, xj] : d.coev)
            e1 += alg.a_expr(d2.eval(x2, c2.wedge_of(wi, wj))) * alg.xo_expr(xj, rv) * alg.xo_expr(xi, wv);
        p.add_relation(std::move(e1), "ext1" + idx, false);
        FreeElem e2 = -Scalar(1) * alg.o2x2_expr(c2.wedge_of(wv, rv), x2);
        for (const auto& [yi, ri] : d.under_coev)
          for (const auto& [yj, rj] : d.under_coev)
            e2 += alg.abar_expr(d2.under_eval(c2.wedge_of(ri, rj), x2)) * alg.ox_expr(wv, yi) * alg.ox_expr(rv, yj);
        p.add_relation(std::move(e2), "ext2" + idx, false);
      }
  }
}

Mat action_matrix(int n, const std::function<Vec(const Vec&)>& f) {
  std::vector<Vec> cols;
  for (int c = 0; c < n; ++c) cols.push_back(f(unit_vec(n, c)));
  return Mat::from_columns(n, cols);
}

void build_coring(Algebroid& alg, Level level) {
  const Calculus1& c = *alg.calc;
  const FiniteAlgebra& A = *c.base;
  const int n = A.dim();
  const DualityData& d = c.duality;
  const GeneratorSet& g = c.dual_gens;
  const GeneratorSet& h = c.omega_gens;
  CoringData& cd = alg.coring;
  cd.present = true;
  const FreeElem one = word_elem(Word());
  for (int i = 0; i < n; ++i) {
    cd.delta[alg.sym_a(i)] = tensor_of({letter_elem(alg.sym_a(i)), one});
    cd.delta[alg.sym_abar(i)] = tensor_of({one, letter_elem(alg.sym_abar(i))});
    cd.epsilon[alg.sym_a(i)] = A.left_mult(i);
    cd.epsilon[alg.sym_abar(i)] = A.right_mult(i);
  }
  for (int k = 0; k < g.size(); ++k)
    for (int l = 0; l < h.size(); ++l) {
      TensorElem t;
      for (const auto& [wi, xi] : d.coev) t += tensor_of({alg.xo_expr(g.gens[k], wi), alg.xo_expr(xi, h.gens[l])});
      cd.delta[alg.sym_xo(k, l)] = t;
      cd.epsilon[alg.sym_xo(k, l)] = action_matrix(n, [&](const Vec& a) {
        return d.eval(c.dual()->act_right(g.gens[k], a), h.gens[l]);
      });
    }
  if (level_has_x(level))
    for (int k = 0; k < g.size(); ++k) {
      TensorElem t = tensor_of({letter_elem(alg.sym_x(k)), one});
      for (const auto& [wi, xi] : d.coev) t += tensor_of({alg.xo_expr(g.gens[k], wi), alg.x_expr(xi)});
      cd.delta[alg.sym_x(k)] = t;
      cd.epsilon[alg.sym_x(k)] = action_matrix(n, [&](const Vec& a) { return d.eval(g.gens[k], c.d(a)); });
    }
  if (level_has_ox(level))
    for (int l = 0; l < h.size(); ++l)
      for (int k = 0; k < g.size(); ++k) {
        TensorElem t;
        for (const auto& [yj, rj] : d.under_coev) t += tensor_of({alg.ox_expr(h.gens[l], yj), alg.ox_expr(rj, g.gens[k])});
        cd.delta[alg.sym_ox(l, k)] = t;
        cd.epsilon[alg.sym_ox(l, k)] = action_matrix(n, [&](const Vec& a) {
          return d.under_eval(c.omega->act_right(h.gens[l], a), g.gens[k]);
        });
      }
  if (level == Level::DX) {
    const Calculus2& c2 = *alg.calc2;
    const DualityData& d2 = c2.duality2;
    const GeneratorSet& g2 = c2.dual2_gens;
    const GeneratorSet& h2 = c2.omega2_gens;
    for (int k = 0; k < g2.size(); ++k)
      for (int l = 0; l < h2.size(); ++l) {
        TensorElem t;
        for (const auto& [wi, xi] : d2.coev) t += tensor_of({alg.x2o2_expr(g2.gens[k], wi), alg.x2o2_expr(xi, h2.gens[l])});
        cd.delta[alg.sym_x2o2(k, l)] = t;
        cd.epsilon[alg.sym_x2o2(k, l)] = action_matrix(n, [&](const Vec& a) {
          return d2.eval(d2.dual->act_right(g2.gens[k], a), h2.gens[l]);
        });
        TensorElem u;
        for (const auto& [yj, rj] : d2.under_coev)
          u += tensor_of({alg.o2x2_expr(h2.gens[l], yj), alg.o2x2_expr(rj, g2.gens[k])});
        cd.delta[alg.sym_o2x2(l, k)] = u;
        cd.epsilon[alg.sym_o2x2(l, k)] = action_matrix(n, [&](const Vec& a) {
          return d2.under_eval(c2.omega2->act_right(h2.gens[l], a), g2.gens[k]);
        });
      }
  }
}

void build_hopf_base(Algebroid& alg, Level level) {
  const Calculus1& c = *alg.calc;
  const int n = c.base->dim();
  HopfData& hd = alg.hopf;
  hd.present = true;
  for (int i = 0; i < n; ++i) {
    hd.s[alg.sym_a(i)] = letter_elem(alg.sym_abar(i));
    hd.s[alg.sym_abar(i)] = letter_elem(alg.sym_a(i));
  }
  for (int k = 0; k < c.dual_gens.size(); ++k)
    for (int l = 0; l < c.omega_gens.size(); ++l) {
      hd.s[alg.sym_xo(k, l)] = letter_elem(alg.sym_ox(l, k));
      hd.s[alg.sym_ox(l, k)] = letter_elem(alg.sym_xo(k, l));
    }
  if (level == Level::DX)
    for (int k = 0; k < alg.calc2->dual2_gens.size(); ++k)
      for (int l = 0; l < alg.calc2->omega2_gens.size(); ++l) {
        hd.s[alg.sym_x2o2(k, l)] = letter_elem(alg.sym_o2x2(l, k));
        hd.s[alg.sym_o2x2(l, k)] = letter_elem(alg.sym_x2o2(k, l));
      }
  hd.s_inv = hd.s;
}

}  // namespace

void attach_upsilon(Algebroid& alg, const Mat& ups) {
  if (!level_has_x(alg.pres.level) || !alg.hopf.present) throw Error("LevelTooLow", "Upsilon needs level HX or DX");
  const Calculus1& c = *alg.calc;
  const DualityData& d = c.duality;
  const GeneratorSet& g = c.dual_gens;
  alg.hopf.upsilon = ups;
  for (int k = 0; k < g.size(); ++k) {
    FreeElem s = -Scalar(1) * alg.abar_expr(ups.apply(g.gens[k]));
    for (const auto& [wi, xi] : d.coev) s -= alg.ox_expr(wi, g.gens[k]) * alg.x_expr(xi);
    alg.hopf.s[alg.sym_x(k)] = s;
    FreeElem si;
    for (const auto& [yj, rj] : d.under_coev)
      si -= (alg.x_expr(yj) + alg.a_expr(ups.apply(yj))) * alg.ox_expr(rj, g.gens[k]);
    alg.hopf.s_inv[alg.sym_x(k)] = si;
  }
}

Algebroid present(Level level, const Calculus1& c1, const Calculus2* c2, const CompletionOptions& opts) {
  if (level == Level::DX && c2 == nullptr) throw Error("MissingSecondOrder", "level DX needs Omega^2");
  Algebroid alg;
  alg.calc = std::make_shared<Calculus1>(c1);
  if (level != Level::TX && !validate_duality(c1.duality).all_pass()) throw Error("NotPivotal", c1.name);
  if (level == Level::DX) {
    if (!validate_duality(c2->duality2).all_pass()) throw Error("NotPivotal", c1.name + " (degree two)");
    if (!pivotal_wedge_holds(*c2)) throw Error("PivotalWedgeFails", c1.name);
    alg.calc2 = std::make_shared<Calculus2>(*c2);
  }
  alg.pres.level = level;
  alg.pres.name = c1.name + "/" + level_name(level);
  build_alphabet(alg, level);
  ring_relations(alg, level);
  if (level_has_x(level)) x_relations(alg, level);
  if (level != Level::TX) xo_relations(alg);
  if (level_has_ox(level)) ox_relations(alg);
  if (level == Level::DX) second_order_pair_relations(alg);
  if (level_has_ox(level)) {
    const bool hpf = level_is_hopf(level);
    inverse_relations(alg, "H1", c1.duality, hpf, [&](const Vec& x, const Vec& w) { return alg.xo_expr(x, w); },
                      [&](const Vec& w, const Vec& y) { return alg.ox_expr(w, y); });
    if (level == Level::DX) {
      inverse_relations(alg, "H2", c2->duality2, true, [&](const Vec& x, const Vec& w) { return alg.x2o2_expr(x, w); },
                        [&](const Vec& w, const Vec& y) { return alg.o2x2_expr(w, y); });
      flat_relations(alg);
    }
  }
  alg.pres.finalize(opts);
  if (level != Level::TX) build_coring(alg, level);
  if (level_is_hopf(level)) {
    build_hopf_base(alg, level);
    if (level_has_x(level)) {
      UpsilonSolution sol = solve_upsilon(c1, level == Level::DX ? c2 : nullptr);
      alg.hopf.upsilon_solution_dim = sol.solution_dim;
      alg.hopf.upsilon_note = sol.note;
      if (sol.found) attach_upsilon(alg, sol.particular);
    }
  }
  return alg;
}

}  // namespace hopfalg
