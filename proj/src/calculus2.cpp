#include <algorithm>
#include <map>
#include <tuple>

#include "hopfalg/calculus.hpp"

namespace hopfalg {

namespace {

void check_or_throw(const Calculus2& c2) {
  CalculusReport r = validate_calculus2(c2);
  for (const auto& l : r.lines)
    if (!l.pass) throw Error(l.name == "pivotal_wedge" ? "PivotalWedgeFails" : "InvalidCalculus", l.name + ": " + l.detail);
}

}  // namespace

Calculus2 build_quiver_omega2(const Calculus1& c, const std::map<std::pair<int, int>, std::pair<int, int>>& nomination) {
  if (!c.quiver) throw Error("NotAQuiverCalculus", c.name);
  const QuiverData& q = *c.quiver;
  const int ne = static_cast<int>(q.edges.size());
  const int nv = static_cast<int>(q.vertices.size());
  for (const auto& e : q.edges)
    if (e.source == e.target) throw Error("LoopPresent", e.label);
  Calculus2 c2;
  c2.calc1 = c;
  c2.omega_omega = tensor_over_A(c.omega, c.omega);
  const TensorSpace& T = c2.omega_omega;
  // Quotient coordinates of Omega (x)_A Omega are the composable pairs.
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < T.result->dim; ++k)
    for (int f = 0; f < ne * ne; ++f)
      if (!T.section(f, k).is_zero()) pairs.emplace_back(f / ne, f % ne);
  std::map<std::pair<int, int>, std::vector<int>> groups;  // (p, q) -> pair indices
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k)
    groups[{q.edges[pairs[k].first].source, q.edges[pairs[k].second].target}].push_back(k);
  for (const auto& [pq, choice] : nomination) {
    auto it = groups.find(pq);
    bool ok = it != groups.end() &&
              std::any_of(it->second.begin(), it->second.end(), [&](int k) { return pairs[k] == choice; });
    if (!ok) throw Error("NoTwoStepToNominate", q.vertices.at(pq.first) + "->" + q.vertices.at(pq.second));
  }
  std::vector<bool> nominated(pairs.size(), false);
  for (auto& [pq, ks] : groups) {
    int chosen = -1;
    auto it = nomination.find(pq);
    if (it != nomination.end()) {
      for (int k : ks)
        if (pairs[k] == it->second) chosen = k;
    } else {
      auto key = [&](int k) {
        const auto& e1 = q.edges[pairs[k].first];
        const auto& e2 = q.edges[pairs[k].second];
        return std::make_tuple(e1.target, e1.label, e2.label);
      };
      chosen = *std::min_element(ks.begin(), ks.end(), [&](int a, int b) { return key(a) < key(b); });
    }
    nominated[chosen] = true;
    c2.nominated[pq] = pairs[chosen];
  }
  for (int p = 0; p < nv; ++p)
    for (int r = 0; r < nv; ++r)
      if (!groups.count({p, r})) c2.unnominated_pairs.emplace_back(p, r);
  std::vector<int> basis;  // indices into pairs
  std::vector<int> pos(pairs.size(), -1);
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k)
    if (!nominated[k]) {
      pos[k] = static_cast<int>(basis.size());
      basis.push_back(k);
      c2.two_steps.push_back(pairs[k]);
    }
  const int n2 = static_cast<int>(basis.size());
  auto om2 = std::make_shared<Bimodule>();
  auto x2 = std::make_shared<Bimodule>();
  om2->base = x2->base = c.base;
  om2->dim = x2->dim = n2;
  for (int b : basis) {
    const auto& e1 = q.edges[pairs[b].first];
    const auto& e2 = q.edges[pairs[b].second];
    om2->labels.push_back(">" + e1.label + "^>" + e2.label);
    x2->labels.push_back("<" + e2.label + "^<" + e1.label);
  }
  for (int p = 0; p < nv; ++p) {
    Mat ol(n2, n2), orr(n2, n2), xl(n2, n2), xr(n2, n2);
    for (int i = 0; i < n2; ++i) {
      const auto& e1 = q.edges[pairs[basis[i]].first];
      const auto& e2 = q.edges[pairs[basis[i]].second];
      if (e1.source == p) ol(i, i) = 1, xr(i, i) = 1;
      if (e2.target == p) orr(i, i) = 1, xl(i, i) = 1;
    }
    om2->left.push_back(ol);
    om2->right.push_back(orr);
    x2->left.push_back(xl);
    x2->right.push_back(xr);
  }
  om2->validate();
  x2->validate();
  c2.omega2 = om2;
  c2.wedge = Mat(n2, T.result->dim);
  for (const auto& [pq, ks] : groups)
    for (int k : ks) {
      if (!nominated[k]) {
        c2.wedge(pos[k], k) = 1;
        continue;
      }
      for (int other : ks)
        if (other != k) c2.wedge(pos[other], k) = -1;
    }
  c2.d1 = Mat(n2, ne);
  for (int e = 0; e < ne; ++e) {
    Vec acc(n2);
    for (int f = 0; f < ne; ++f) {
      acc = add(acc, c2.wedge_of(unit_vec(ne, f), unit_vec(ne, e)));
      acc = add(acc, c2.wedge_of(unit_vec(ne, e), unit_vec(ne, f)));
    }
    for (int i = 0; i < n2; ++i) c2.d1(i, e) = acc[i];
  }
  DualityData& d = c2.duality2;
  d.omega = om2;
  d.dual = x2;
  d.ev = Mat(nv, n2 * n2);
  d.under_ev = Mat(nv, n2 * n2);
  for (int i = 0; i < n2; ++i) {
    const auto& e1 = q.edges[pairs[basis[i]].first];
    const auto& e2 = q.edges[pairs[basis[i]].second];
    d.coev.emplace_back(unit_vec(n2, i), unit_vec(n2, i));
    d.under_coev.emplace_back(unit_vec(n2, i), unit_vec(n2, i));
    d.ev(e2.target, i * n2 + i) = 1;
    d.under_ev(e1.source, i * n2 + i) = 1;
  }
  c2.dual2_gens = basis_generator_set(*x2);
  c2.omega2_gens = basis_generator_set(*om2);
  check_or_throw(c2);
  return c2;
}

Calculus2 build_exterior_square_omega2(const Calculus1& c) {
  if (!c.cocycle) throw Error("NotAGroupCalculus", c.name);
  const GroupCocycleData& g = *c.cocycle;
  const int ng = static_cast<int>(g.group.elements.size());
  const int nl = static_cast<int>(g.lambda_labels.size());
  std::vector<std::pair<int, int>> wp;
  std::map<std::pair<int, int>, int> wpi;
  for (int l = 0; l < nl; ++l)
    for (int m = l + 1; m < nl; ++m) {
      wpi[{l, m}] = static_cast<int>(wp.size());
      wp.emplace_back(l, m);
    }
  const int nw = static_cast<int>(wp.size());
  // Coefficients of lambda_l ^ lambda_m in the basis of the exterior square.
  auto wedge_basis = [&](int l, int m) {
    Vec v(nw);
    if (l < m) v[wpi[{l, m}]] = 1;
    if (l > m) v[wpi[{m, l}]] = -1;
    return v;
  };
  Calculus2 c2;
  c2.calc1 = c;
  auto om2 = std::make_shared<Bimodule>();
  om2->base = c.base;
  om2->dim = nw * ng;
  for (const auto& [l, m] : wp)
    for (int h = 0; h < ng; ++h)
      om2->labels.push_back(g.lambda_labels[l] + "^" + g.lambda_labels[m] + "@" + g.group.elements[h]);
  for (int x = 0; x < ng; ++x) {
    Mat left(om2->dim, om2->dim), right(om2->dim, om2->dim);
    const Mat& r = g.rep[x];
    for (int w = 0; w < nw; ++w) {
      auto [l, m] = wp[w];
      Vec img(nw);
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b)
          if (!r(a, l).is_zero() && !r(b, m).is_zero()) axpy(img, r(a, l) * r(b, m), wedge_basis(a, b));
      for (int h = 0; h < ng; ++h) {
        right(w * ng + g.group.table[h][x], w * ng + h) = 1;
        for (int w2 = 0; w2 < nw; ++w2) left(w2 * ng + g.group.table[x][h], w * ng + h) = img[w2];
      }
    }
    om2->left.push_back(left);
    om2->right.push_back(right);
  }
  om2->validate();
  c2.omega2 = om2;
  c2.omega_omega = tensor_over_A(c.omega, c.omega);
  const int dw = c.omega->dim;
  Mat full(om2->dim, dw * dw);
  for (int l = 0; l < nl; ++l)
    for (int x = 0; x < ng; ++x)
      for (int m = 0; m < nl; ++m)
        for (int h = 0; h < ng; ++h) {
          Vec acc(nw);
          for (int m2 = 0; m2 < nl; ++m2)
            if (!g.rep[x](m2, m).is_zero()) axpy(acc, g.rep[x](m2, m), wedge_basis(l, m2));
          const int col = (l * ng + x) * dw + (m * ng + h);
          const int gh = g.group.table[x][h];
          for (int w = 0; w < nw; ++w) full(w * ng + gh, col) = acc[w];
        }
  if (!is_balanced(full, *c.omega, *c.omega)) throw Error("InvalidCalculus", "wedge not balanced");
  c2.wedge = full * c2.omega_omega.section;
  // d(lambda @ g) = zeta(g) ^ lambda @ g, the graded commutator with the inner form.
  c2.d1 = Mat(om2->dim, dw);
  for (int l = 0; l < nl; ++l)
    for (int x = 0; x < ng; ++x) {
      Vec acc(nw);
      for (int m = 0; m < nl; ++m)
        if (!g.zeta[x][m].is_zero()) axpy(acc, g.zeta[x][m], wedge_basis(m, l));
      for (int w = 0; w < nw; ++w) c2.d1(w * ng + x, l * ng + x) = acc[w];
    }
  std::vector<Vec> basis;
  std::vector<std::string> labels;
  for (int w = 0; w < nw; ++w) {
    basis.push_back(unit_vec(om2->dim, w * ng + g.group.identity));
    labels.push_back(g.lambda_labels[wp[w].first] + "^" + g.lambda_labels[wp[w].second]);
  }
  c2.duality2 = free_duality(om2, basis, labels, "");
  std::vector<Vec> fg;
  std::vector<std::string> fl;
  for (const auto& [w, x] : c2.duality2.coev) fg.push_back(x);
  for (const auto& l : labels) fl.push_back("f_" + l);
  c2.dual2_gens = make_generator_set(*c2.duality2.dual, fg, fl);
  c2.omega2_gens = make_generator_set(*om2, basis, labels);
  check_or_throw(c2);
  return c2;
}

bool pivotal_wedge_holds(const Calculus2& c2) {
  const Calculus1& c = c2.calc1;
  const Bimodule& X = *c.dual();
  const Bimodule& X2 = *c2.duality2.dual;
  TensorSpace xx = tensor_over_A(c.dual(), c.dual());
  const auto& co = c.duality.coev;
  const auto& uco = c.duality.under_coev;
  for (int b = 0; b < X2.dim; ++b) {
    Vec x2 = unit_vec(X2.dim, b);
    Vec lhs(xx.result->dim), rhs(xx.result->dim);
    for (const auto& [wi, xi] : co)
      for (const auto& [wj, xj] : co) {
        Vec a = c2.duality2.eval(x2, c2.wedge_of(wi, wj));
        lhs = add(lhs, xx.tensor(X.act_left(a, xj), xi));
      }
    for (const auto& [yi, ri] : uco)
      for (const auto& [yj, rj] : uco) {
        Vec a = c2.duality2.under_eval(c2.wedge_of(rj, ri), x2);
        rhs = add(rhs, xx.tensor(yi, X.act_right(yj, a)));
      }
    if (lhs != rhs) return false;
  }
  return true;
}

CalculusReport validate_calculus2(const Calculus2& c2) {
  CalculusReport r;
  const Calculus1& c = c2.calc1;
  const FiniteAlgebra& A = *c.base;
  const Bimodule& W = *c.omega;
  const Bimodule& W2 = *c2.omega2;
  r.lines.push_back({"wedge_bimodule_map", is_bimodule_map(c2.wedge, *c2.omega_omega.result, W2), "wedge is not a bimodule map"});
  bool ok = true;
  std::string det;
  for (int a = 0; a < A.dim() && ok; ++a)
    for (int w = 0; w < W.dim && ok; ++w) {
      Vec wv = unit_vec(W.dim, w), av = A.basis(a);
      Vec l1 = c2.d1.apply(W.left[a].apply(wv));
      Vec r1 = add(c2.wedge_of(c.d(av), wv), W2.left[a].apply(c2.d1.apply(wv)));
      Vec l2 = c2.d1.apply(W.right[a].apply(wv));
      Vec r2 = sub(W2.right[a].apply(c2.d1.apply(wv)), c2.wedge_of(wv, c.d(av)));
      if (l1 != r1 || l2 != r2) {
        ok = false;
        det = "at " + A.labels()[a] + ", " + W.labels[w];
      }
    }
  r.lines.push_back({"graded_leibniz", ok, det});
  r.lines.push_back({"d_squared", (c2.d1 * c.d0).is_zero(), "d1 d0 != 0"});
  DualityReport dr = validate_duality(c2.duality2);
  for (const auto& l : dr.lines) r.lines.push_back({"duality2." + l.name, l.pass, l.detail});
  r.lines.push_back({"pivotal_wedge", pivotal_wedge_holds(c2), "pivotal wedge identity fails"});
  return r;
}

}  // namespace hopfalg
