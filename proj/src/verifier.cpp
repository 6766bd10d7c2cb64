#include "hopfalg/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "hopfalg/errors.hpp"
#include "json.hpp"

namespace hopfalg {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Unknown: return "UNKNOWN";
    case CheckStatus::Fail: return "FAIL";
  }
  return "?";
}

CheckStatus combine(CheckStatus a, CheckStatus b) {
  if (a == CheckStatus::Fail || b == CheckStatus::Fail) return CheckStatus::Fail;
  if (a == CheckStatus::Unknown || b == CheckStatus::Unknown) return CheckStatus::Unknown;
  return CheckStatus::Pass;
}

const std::vector<std::string>& axiom_ids() {
  static const std::vector<std::string> ids{
      "delta_well_defined", "epsilon_well_defined", "s_well_defined",     "s_inv_well_defined",
      "coassoc",            "counit_law",           "delta_rs",           "counit_rs",
      "delta_unit",         "epsilon_unit",         "takeuchi",           "antipode_left",
      "antipode_right",     "s_involutive",         "flatness_consequence", "extendability_consequence",
      "derived_flat_identities", "s_s_inv_inverse"};
  return ids;
}

std::vector<std::string> axioms_for_level(Level level) {
  if (level == Level::TX) return {};
  std::vector<std::string> out{"delta_well_defined", "epsilon_well_defined", "coassoc",  "counit_law",  "delta_rs",
                               "counit_rs",          "delta_unit",           "epsilon_unit", "takeuchi"};
  if (level_is_hopf(level)) {
    for (const char* a : {"s_well_defined", "s_inv_well_defined", "antipode_left", "antipode_right", "s_s_inv_inverse"})
      out.push_back(a);
    if (level == Level::HOmega) out.push_back("s_involutive");
  }
  if (level == Level::DX)
    for (const char* a : {"flatness_consequence", "extendability_consequence", "derived_flat_identities"})
      out.push_back(a);
  std::vector<std::string> ordered;
  for (const auto& id : axiom_ids())
    if (std::find(out.begin(), out.end(), id) != out.end()) ordered.push_back(id);
  return ordered;
}

namespace {

FreeElem one() { return word_elem(Word()); }

int tensor_max_length(const TensorElem& t) {
  int m = 0;
  for (const auto& [ws, c] : t)
    for (const Word& w : ws) m = std::max<int>(m, static_cast<int>(w.size()));
  return m;
}

/// @brief Accumulates item outcomes for one axiom.
struct Recorder {
  AxiomCheck& out;
  const CheckOptions& opts;
  bool stopped = false;

  bool done() const { return stopped; }
  void record(const std::string& name, CheckStatus s, const std::string& note, std::size_t cert) {
    ++out.items;
    out.certificate_size += cert;
    if (s == CheckStatus::Pass) return;
    out.status = combine(out.status, s);
    out.open.push_back({name, s, note});
    if (s == CheckStatus::Unknown && opts.stop_at_first_unknown) stopped = true;
  }
  void ideal(const std::string& name, const FreeElem& e, const Presentation& p, int bound,
             const MembershipOptions& mopts) {
    if (stopped) return;
    try {
      MembershipResult r = ideal_membership(e, p, bound, mopts);
      record(name, r.member() ? CheckStatus::Pass : CheckStatus::Unknown, r.note, r.certificate.size());
    } catch (const Error& err) {
      if (err.code() != "BoundTooSmall") throw;
      record(name, CheckStatus::Unknown, err.what(), 0);
    }
  }
  void tensor(const std::string& name, const TensorElem& e, const Presentation& p, TensorKind kind, int bound) {
    if (stopped) return;
    if (tensor_max_length(e) > bound) {
      record(name, CheckStatus::Unknown, "BoundTooSmall: a tensor factor is longer than the bound", 0);
      return;
    }
    try {
      TensorMembershipResult r = tensor_membership(e, p, kind, bound, opts.membership);
      record(name, r.member() ? CheckStatus::Pass : CheckStatus::Unknown, r.note, r.certificate.size());
    } catch (const Error& err) {
      if (err.code() != "BoundTooSmall") throw;
      record(name, CheckStatus::Unknown, err.what(), 0);
    }
  }
  void exact(const std::string& name, bool holds, const std::string& note) {
    if (stopped) return;
    record(name, holds ? CheckStatus::Pass : CheckStatus::Fail, holds ? "" : note, 0);
  }
};

std::string gen_name(const Algebroid& alg, int g) { return alg.pres.alphabet.label(g); }

/// @brief (Delta (x) id) applied to a tensor of arity two, or (id (x) Delta) when first is false.
TensorElem delta_on_factor(const Algebroid& alg, const TensorElem& t, bool first) {
  TensorElem out;
  for (const auto& [ws, c] : t) {
    const TensorElem d = alg.delta(word_elem(first ? ws[0] : ws[1]));
    for (const auto& [vs, x] : d) {
      std::vector<Word> w3 = first ? std::vector<Word>{vs[0], vs[1], ws[1]} : std::vector<Word>{ws[0], vs[0], vs[1]};
      add_term(out, w3, c * x);
    }
  }
  return out;
}

TensorElem times_right(const TensorElem& t, std::size_t slot, const FreeElem& m) {
  return map_factor(t, slot, [&](const Word& w) { return word_elem(w) * m; });
}

void require_coring(const Algebroid& alg) {
  if (!alg.coring.present) throw Error("MissingData", "coring tables absent at " + std::string(level_name(alg.pres.level)));
}

void require_hopf(const Algebroid& alg) {
  if (!alg.hopf.present) throw Error("MissingData", "antipode tables absent at " + std::string(level_name(alg.pres.level)));
  if (level_has_x(alg.pres.level) && !alg.hopf.upsilon)
    throw Error("MissingData", "no Upsilon attached, so the antipode on X is undefined");
}

void require_flat(const Algebroid& alg) {
  if (alg.pres.level != Level::DX || !alg.calc2) throw Error("MissingData", "flat-level checks need level DX");
}

}  // namespace

TensorElem antipode_left_element(const Algebroid& alg, const FreeElem& b) {
  TensorElem out;
  for (const auto& [ws, c] : alg.delta(b)) {
    const TensorElem ds = alg.delta(alg.antipode(word_elem(ws[0])));
    for (const auto& [vs, x] : ds)
      for (const auto& [w, y] : word_elem(vs[0]) * word_elem(ws[1])) add_term(out, {w, vs[1]}, c * x * y);
  }
  return out - tensor_of({one(), alg.antipode(b)});
}

TensorElem antipode_right_element(const Algebroid& alg, const FreeElem& b) {
  TensorElem out;
  for (const auto& [ws, c] : alg.delta(b)) {
    const TensorElem ds = alg.delta(alg.antipode(word_elem(ws[1]), true));
    for (const auto& [vs, x] : ds)
      for (const auto& [w, y] : word_elem(vs[1]) * word_elem(ws[0])) add_term(out, {vs[0], w}, c * x * y);
  }
  return out - tensor_of({alg.antipode(b, true), one()});
}

std::vector<std::pair<std::string, FreeElem>> flat_level_elements(const Algebroid& alg, const std::string& family) {
  require_flat(alg);
  const Calculus1& c = *alg.calc;
  const Calculus2& c2 = *alg.calc2;
  const DualityData& d = c.duality;
  const DualityData& d2 = c2.duality2;
  const BimodulePtr& X = c.dual();
  const int n2 = d2.dual->dim;
  const int nw = c.omega->dim;
  std::vector<std::pair<std::string, FreeElem>> out;
  if (family == "flatness") {
    if (c.quiver) {
      // Path algebra arrows E(e) correspond to X(e) - f_t(e); the reduction reads E(b)E(a) = E(e2)E(e1).
      const QuiverData& q = *c.quiver;
      const int nv = static_cast<int>(q.vertices.size());
      auto arrow = [&](int e) {
        return alg.x_expr(unit_vec(X->dim, e)) - alg.a_expr(unit_vec(nv, q.edges[e].target));
      };
      for (const auto& [e1, e2] : c2.two_steps) {
        const std::pair<int, int> pq{q.edges[e1].source, q.edges[e2].target};
        const auto [a, b] = c2.nominated.at(pq);
        out.emplace_back("path(" + q.edges[e1].label + "," + q.edges[e2].label + ")",
                         arrow(b) * arrow(a) - arrow(e2) * arrow(e1));
      }
    } else if (c.cocycle) {
      // Exterior square over a group: the flat relation says the free generators commute.
      const GeneratorSet& g = c.dual_gens;
      for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j) {
          const FreeElem xi = alg.x_expr(g.gens[i]);
          const FreeElem xj = alg.x_expr(g.gens[j]);
          out.emplace_back("commute(" + g.labels[i] + "," + g.labels[j] + ")", xi * xj - xj * xi);
        }
    }
    for (std::size_t r = 0; r < alg.pres.relations.size(); ++r)
      if (alg.pres.relation_names[r].rfind("flat(", 0) == 0)
        out.emplace_back(alg.pres.relation_names[r], alg.pres.relations[r]);
    return out;
  }
  if (family == "extendability") {
    for (int x = 0; x < n2; ++x)
      for (int w = 0; w < nw; ++w)
        for (int r = 0; r < nw; ++r) {
          const Vec x2 = unit_vec(n2, x);
          const Vec wv = unit_vec(nw, w);
          const Vec rv = unit_vec(nw, r);
          const std::string idx = "(" + std::to_string(x) + "," + std::to_string(w) + "," + std::to_string(r) + ")";
          FreeElem left = -Scalar(1) * alg.x2o2_expr(x2, c2.wedge_of(wv, rv));
          for (const auto& [yi, ri] : d.under_coev)
            for (const auto& [yj, rj] : d.under_coev) {
              const FreeElem coef = alg.a_expr(d2.under_eval(c2.wedge_of(rj, ri), x2));
              if (!coef.empty()) left += alg.xo_expr(yi, rv) * alg.xo_expr(yj, wv) * coef;
            }
          out.emplace_back("ext_left" + idx, std::move(left));
          FreeElem right = -Scalar(1) * alg.o2x2_expr(c2.wedge_of(wv, rv), x2);
          for (const auto& [wi, xi] : d.coev)
            for (const auto& [wj, xj] : d.coev) {
              const FreeElem coef = alg.abar_expr(d2.eval(x2, c2.wedge_of(wi, wj)));
              if (!coef.empty()) right += alg.ox_expr(wv, xi) * alg.ox_expr(rv, xj) * coef;
            }
          out.emplace_back("ext_right" + idx, std::move(right));
        }
    return out;
  }
  if (family != "derived") throw Error("UnknownFamily", family);
  // sum_k (omega_k, y) x_k for a dual vector y.
  auto ox_x = [&](const Vec& y) {
    FreeElem s;
    for (const auto& [wk, xk] : d.coev) s += alg.ox_expr(wk, y) * alg.x_expr(xk);
    return s;
  };
  for (int x = 0; x < n2; ++x) {
    const Vec x2 = unit_vec(n2, x);
    const std::string xs = std::to_string(x);
    FreeElem first;
    for (const auto& [yj, rj] : d.under_coev) {
      const FreeElem coef = alg.abar_expr(d2.under_eval(c2.d1.apply(rj), x2));
      if (!coef.empty()) first += coef * ox_x(yj);
    }
    for (const auto& [ym, rm] : d.under_coev)
      for (const auto& [yn, rn] : d.under_coev) {
        const FreeElem coef = alg.abar_expr(d2.under_eval(c2.wedge_of(rm, rn), x2));
        if (!coef.empty()) first += coef * ox_x(ym) * ox_x(yn);
      }
    out.emplace_back("curvature_form(" + xs + ")", std::move(first));
    for (int w = 0; w < nw; ++w) {
      const Vec wv = unit_vec(nw, w);
      const std::string idx = "(" + xs + "," + std::to_string(w) + ")";
      FreeElem second = -Scalar(1) * alg.o2x2_expr(c2.d1.apply(wv), x2);
      for (const auto& [yi, ri] : d.under_coev) {
        const FreeElem coef = alg.abar_expr(d2.under_eval(c2.d1.apply(ri), x2));
        if (!coef.empty()) second += coef * alg.ox_expr(wv, yi);
      }
      for (const auto& [ym, rm] : d.under_coev)
        for (const auto& [yn, rn] : d.under_coev) {
          const FreeElem coef = alg.abar_expr(d2.under_eval(c2.wedge_of(rm, rn), x2));
          if (coef.empty()) continue;
          second += coef * (ox_x(ym) * alg.ox_expr(wv, yn) + alg.ox_expr(wv, ym) * ox_x(yn));
        }
      out.emplace_back("derivative_form" + idx, std::move(second));
      FreeElem third;
      for (const auto& [wi, xi] : d.coev) {
        for (const auto& [yt, rt] : d.under_coev)
          for (const auto& [wj, xj] : d.coev) {
            const FreeElem coef = alg.abar_expr(d2.eval(x2, c2.wedge_of(wi, wj)));
            if (!coef.empty()) third += alg.ox_expr(wv, xi) * alg.x_expr(yt) * alg.ox_expr(rt, xj) * coef;
          }
        third += alg.ox_expr(wv, xi) * alg.abar_expr(d2.eval(x2, c2.d1.apply(wi)));
      }
      for (const auto& [y2, r2] : d2.under_coev) {
        const FreeElem o = alg.o2x2_expr(r2, x2);
        Vec lin = zero_vec(X->dim);
        for (const auto& [wl, xl] : d.coev) lin = add(lin, X->act_left(d2.eval(y2, c2.d1.apply(wl)), xl));
        third -= alg.a_expr(d.under_eval(wv, lin)) * o;
        for (const auto& [wj, xj] : d.coev) {
          Vec inner = zero_vec(X->dim);
          for (const auto& [wk, xk] : d.coev) inner = add(inner, X->act_left(d2.eval(y2, c2.wedge_of(wj, wk)), xk));
          third += alg.a_expr(d.under_eval(wv, inner)) * alg.x_expr(xj) * o;
          Vec acc = zero_vec(X->dim);
          for (const auto& [yt, rt] : d.under_coev)
            acc = add(acc, X->act_left(d.eval(yt, c.d(d.under_eval(rt, inner))), xj));
          third -= alg.a_expr(d.under_eval(wv, acc)) * o;
        }
      }
      out.emplace_back("antipode_form" + idx, std::move(third));
    }
  }
  return out;
}

AxiomCheck check(const std::string& id, const Algebroid& alg, int bound, const CheckOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  AxiomCheck out;
  out.axiom_id = id;
  out.level = alg.pres.level;
  out.bound = bound;
  Recorder rec{out, opts};
  const Presentation& p = alg.pres;
  const int ng = p.alphabet.size();
  const int n = alg.calc->base->dim();
  const MembershipOptions& mo = opts.membership;

  if (id == "delta_well_defined") {
    require_coring(alg);
    for (std::size_t r = 0; r < p.relations.size() && !rec.done(); ++r)
      rec.tensor(p.relation_names[r], alg.delta(p.relations[r]), p, TensorKind::Coring, bound);
    out.summary = "Delta of every defining relation lies in the coring tensor ideal";
  } else if (id == "epsilon_well_defined") {
    require_coring(alg);
    for (std::size_t r = 0; r < p.relations.size(); ++r)
      rec.exact(p.relation_names[r], alg.epsilon_action(p.relations[r]).is_zero(), "counit action is a nonzero matrix");
    out.summary = "the counit action of every defining relation is the zero matrix";
  } else if (id == "coassoc") {
    require_coring(alg);
    for (int g = 0; g < ng && !rec.done(); ++g) {
      const TensorElem d = alg.delta(word_elem(letter(g)));
      rec.tensor(gen_name(alg, g), delta_on_factor(alg, d, true) - delta_on_factor(alg, d, false), p,
                 TensorKind::Coring, bound);
    }
    out.summary = "(Delta x id)Delta - (id x Delta)Delta on generators, in the triple coring tensor";
  } else if (id == "counit_law") {
    require_coring(alg);
    for (int g = 0; g < ng && !rec.done(); ++g) {
      const FreeElem b = word_elem(letter(g));
      FreeElem left, right;
      for (const auto& [ws, c] : alg.delta(b)) {
        left += c * (alg.a_expr(alg.epsilon(word_elem(ws[0]))) * word_elem(ws[1]));
        right += c * (alg.abar_expr(alg.epsilon(word_elem(ws[1]))) * word_elem(ws[0]));
      }
      rec.ideal(gen_name(alg, g) + ".left", left - b, p, bound, mo);
      rec.ideal(gen_name(alg, g) + ".right", right - b, p, bound, mo);
    }
    out.summary = "eps(b1) b2 = b = bar(eps(b2)) b1 on generators";
  } else if (id == "delta_rs") {
    require_coring(alg);
    for (int g = 0; g < ng && !rec.done(); ++g)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const FreeElem ar = word_elem(letter(alg.sym_a(r)));
          const FreeElem bs = word_elem(letter(alg.sym_abar(s)));
          const FreeElem b = word_elem(letter(g));
          const TensorElem lhs = alg.delta(b * ar * bs);
          const TensorElem rhs = times_right(times_right(alg.delta(b), 0, ar), 1, bs);
          const TensorElem diff = lhs - rhs;
          const std::string name = gen_name(alg, g) + "(" + std::to_string(r) + "," + std::to_string(s) + ")";
          if (diff.empty())
            rec.record(name, CheckStatus::Pass, "", 0);
          else
            rec.tensor(name, diff, p, TensorKind::Coring, bound);
        }
    out.summary = "Delta(b r sbar) = b1 r (x) b2 sbar on generators and basis elements";
  } else if (id == "counit_rs") {
    require_coring(alg);
    for (int g = 0; g < ng; ++g)
      for (int r = 0; r < n; ++r) {
        const FreeElem b = word_elem(letter(g));
        const Vec e1 = alg.epsilon(b * word_elem(letter(alg.sym_a(r))));
        const Vec e2 = alg.epsilon(b * word_elem(letter(alg.sym_abar(r))));
        rec.exact(gen_name(alg, g) + "(" + std::to_string(r) + ")", e1 == e2, "eps(b r) differs from eps(b rbar)");
      }
    out.summary = "eps(b r) = eps(b rbar) exactly";
  } else if (id == "delta_unit") {
    require_coring(alg);
    rec.exact("unit", alg.delta(one()) == tensor_of({one(), one()}), "Delta(1) differs from 1 (x) 1");
    out.summary = "Delta(1) = 1 (x) 1 exactly";
  } else if (id == "epsilon_unit") {
    require_coring(alg);
    rec.exact("unit", alg.epsilon(one()) == p.unit, "eps(1) differs from the unit of A");
    out.summary = "eps(1) = 1 exactly";
  } else if (id == "takeuchi") {
    require_coring(alg);
    for (int g = 0; g < ng && !rec.done(); ++g)
      for (int a = 0; a < n && !rec.done(); ++a) {
        const TensorElem d = alg.delta(word_elem(letter(g)));
        const TensorElem e = times_right(d, 0, word_elem(letter(alg.sym_abar(a)))) -
                             times_right(d, 1, word_elem(letter(alg.sym_a(a))));
        rec.tensor(gen_name(alg, g) + "(" + std::to_string(a) + ")", e, p, TensorKind::Coring, bound);
      }
    out.summary = "b1 abar (x) b2 = b1 (x) b2 a in the coring tensor, on generators";
  } else if (id == "s_well_defined" || id == "s_inv_well_defined") {
    require_hopf(alg);
    const bool inv = id == "s_inv_well_defined";
    for (std::size_t r = 0; r < p.relations.size() && !rec.done(); ++r)
      rec.ideal(p.relation_names[r], alg.antipode(p.relations[r], inv), p, bound, mo);
    out.summary = inv ? "the inverse antipode maps every relation into the ideal"
                      : "the antipode maps every relation into the ideal";
  } else if (id == "antipode_left" || id == "antipode_right") {
    require_hopf(alg);
    const bool left = id == "antipode_left";
    for (int g = 0; g < ng && !rec.done(); ++g) {
      const FreeElem b = word_elem(letter(g));
      rec.tensor(gen_name(alg, g), left ? antipode_left_element(alg, b) : antipode_right_element(alg, b), p,
                 TensorKind::Diamond, bound);
    }
    out.summary = left ? "S(b1)_(1) b2 (x) S(b1)_(2) = 1 (x) S(b) in the diamond tensor, on generators"
                       : "Sinv(b2)_(1) (x) Sinv(b2)_(2) b1 = Sinv(b) (x) 1 in the diamond tensor, on generators";
  } else if (id == "s_involutive") {
    require_hopf(alg);
    if (p.level != Level::HOmega) throw Error("MissingData", "S is an involution only at HOmega");
    for (int g = 0; g < ng && !rec.done(); ++g) {
      const FreeElem b = word_elem(letter(g));
      rec.ideal(gen_name(alg, g), alg.antipode(alg.antipode(b)) - b, p, bound, mo);
    }
    out.summary = "S(S(g)) = g on generators";
  } else if (id == "s_s_inv_inverse") {
    require_hopf(alg);
    for (int g = 0; g < ng && !rec.done(); ++g) {
      const FreeElem b = word_elem(letter(g));
      rec.ideal(gen_name(alg, g) + ".sinv_s", alg.antipode(alg.antipode(b), true) - b, p, bound, mo);
      rec.ideal(gen_name(alg, g) + ".s_sinv", alg.antipode(alg.antipode(b, true)) - b, p, bound, mo);
    }
    out.summary = "Sinv(S(g)) = g = S(Sinv(g)) on generators";
  } else if (id == "flatness_consequence" || id == "extendability_consequence") {
    const bool flat = id == "flatness_consequence";
    for (const auto& [name, e] : flat_level_elements(alg, flat ? "flatness" : "extendability")) {
      if (rec.done()) break;
      rec.ideal(name, e, p, bound, mo);
    }
    out.summary = flat ? "calculus specific reductions of the flatness relation are members"
                       : "extension relations written through the other duality are members";
  } else if (id == "derived_flat_identities") {
    MembershipOptions capped = mo;
    capped.max_columns = std::min(mo.max_columns, opts.identity_max_columns);
    for (const auto& [name, e] : flat_level_elements(alg, "derived")) {
      if (rec.done()) break;
      rec.ideal(name, e, p, bound, capped);
    }
    out.summary = "the three derived identities of the flat level are members";
  } else {
    throw Error("UnknownAxiom", id);
  }
  if (rec.done()) out.summary += "; stopped at the first UNKNOWN item";
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SuiteReport run_suite(const Calculus1& c1, const Calculus2* c2, const SuiteOptions& opts) {
  SuiteReport rep;
  rep.calculus = c1.name;
  for (const auto& l : validate_calculus(c1).lines) rep.calculus_checks.push_back(l);
  if (c2)
    for (const auto& l : validate_calculus2(*c2).lines) rep.calculus_checks.push_back({"second_order." + l.name, l.pass, l.detail});
  for (const auto& l : rep.calculus_checks)
    if (!l.pass) rep.status = CheckStatus::Fail;
  if (rep.status == CheckStatus::Fail) {
    rep.notes.push_back("calculus validation failed; no level was built");
    return rep;
  }
  for (Level lv : opts.levels) {
    int bound = opts.bound;
    for (const auto& [l, b] : opts.level_bounds)
      if (l == lv) bound = b;
    if (lv == Level::DX && !c2) {
      rep.notes.push_back("DX skipped: no second-order data");
      rep.status = combine(rep.status, CheckStatus::Unknown);
      continue;
    }
    const Algebroid alg = present(lv, c1, lv == Level::DX ? c2 : nullptr, opts.completion);
    if (level_has_rules(lv) && !alg.pres.rewriting->completed())
      rep.notes.push_back(std::string(level_name(lv)) + ": rewriting completion stopped at its limits");
    if (level_is_hopf(lv) && level_has_x(lv))
      rep.notes.push_back(std::string(level_name(lv)) + ": Upsilon " +
                          (alg.hopf.upsilon ? alg.hopf.upsilon_note : std::string("not found")) +
                          ", solution space dimension " + std::to_string(alg.hopf.upsilon_solution_dim));
    for (const auto& id : axioms_for_level(lv)) {
      if (!opts.axioms.empty() && std::find(opts.axioms.begin(), opts.axioms.end(), id) == opts.axioms.end()) continue;
      AxiomCheck ch;
      try {
        ch = check(id, alg, bound, opts.check);
      } catch (const Error& e) {
        if (e.code() != "MissingData") throw;
        ch.axiom_id = id;
        ch.level = lv;
        ch.bound = bound;
        ch.status = CheckStatus::Unknown;
        ch.summary = e.what();
      }
      rep.status = combine(rep.status, ch.status);
      rep.checks.push_back(std::move(ch));
    }
  }
  return rep;
}

std::string SuiteReport::to_text(bool timings) const {
  std::ostringstream os;
  os << "calculus " << calculus << "\n";
  for (const auto& l : calculus_checks)
    os << "  calculus " << l.name << " " << (l.pass ? "PASS" : "FAIL") << (l.pass || l.detail.empty() ? "" : " " + l.detail) << "\n";
  for (const auto& ch : checks) {
    os << level_name(ch.level) << " " << ch.axiom_id << " D=" << ch.bound << " " << status_name(ch.status)
       << " items=" << ch.items << " certificate=" << ch.certificate_size;
    if (timings) os << " seconds=" << ch.seconds;
    os << "\n";
    for (const auto& it : ch.open) os << "    " << status_name(it.status) << " " << it.name << " " << it.note << "\n";
  }
  for (const auto& n : notes) os << "note " << n << "\n";
  os << "overall " << status_name(status) << "\n";
  return os.str();
}

std::string SuiteReport::to_json(bool timings) const {
  nlohmann::ordered_json j;
  j["calculus"] = calculus;
  j["calculus_checks"] = nlohmann::ordered_json::array();
  for (const auto& l : calculus_checks)
    j["calculus_checks"].push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& ch : checks) {
    nlohmann::ordered_json c{{"axiom_id", ch.axiom_id}, {"level", level_name(ch.level)},  {"bound", ch.bound},
                             {"status", status_name(ch.status)}, {"items", ch.items}, {"certificate_size", ch.certificate_size},
                             {"summary", ch.summary}};
    if (timings) c["seconds"] = ch.seconds;
    c["open"] = nlohmann::ordered_json::array();
    for (const auto& it : ch.open) c["open"].push_back({{"name", it.name}, {"status", status_name(it.status)}, {"note", it.note}});
    j["checks"].push_back(std::move(c));
  }
  j["notes"] = notes;
  j["status"] = status_name(status);
  return j.dump(2) + "\n";
}

}  // namespace hopfalg
