#include "hopfalg/calculus.hpp"

#include <algorithm>
#include <set>

namespace hopfalg {

bool CalculusReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

namespace {

bool compute_surjective(const Calculus1& c) {
  const int n = c.base->dim();
  Subspace span(c.omega->dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) span.add(c.omega->left[a].apply(c.d0.column(b)));
  return span.dim() == c.omega->dim;
}

void finish(Calculus1& c) {
  c.surjective = compute_surjective(c);
  CalculusReport r = validate_calculus(c);
  for (const auto& l : r.lines)
    if (!l.pass) throw Error(l.name == "leibniz" ? "LeibnizViolation" : "InvalidCalculus", l.name + ": " + l.detail);
}

}  // namespace

Calculus1 build_quiver_calculus(const QuiverData& q, const std::string& name) {
  const int nv = static_cast<int>(q.vertices.size());
  for (const auto& e : q.edges)
    if (e.source < 0 || e.source >= nv || e.target < 0 || e.target >= nv) throw Error("UnknownVertex", e.label);
  {
    std::set<std::string> labels;
    for (const auto& e : q.edges)
      if (!labels.insert(e.label).second) throw Error("DuplicateLabel", e.label);
  }
  Calculus1 c;
  c.name = name;
  c.kind = "quiver";
  c.quiver = q;
  c.base = new_function_algebra(q.vertices);
  const int ne = static_cast<int>(q.edges.size());
  auto om = std::make_shared<Bimodule>();
  auto xx = std::make_shared<Bimodule>();
  om->base = xx->base = c.base;
  om->dim = xx->dim = ne;
  for (const auto& e : q.edges) {
    om->labels.push_back(">" + e.label);
    xx->labels.push_back("<" + e.label);
  }
  for (int p = 0; p < nv; ++p) {
    Mat ol(ne, ne), orr(ne, ne), xl(ne, ne), xr(ne, ne);
    for (int e = 0; e < ne; ++e) {
      if (q.edges[e].source == p) ol(e, e) = 1, xr(e, e) = 1;
      if (q.edges[e].target == p) orr(e, e) = 1, xl(e, e) = 1;
    }
    om->left.push_back(ol);
    om->right.push_back(orr);
    xx->left.push_back(xl);
    xx->right.push_back(xr);
  }
  om->validate();
  xx->validate();
  c.omega = om;
  c.d0 = Mat(ne, nv);
  for (int e = 0; e < ne; ++e) {
    c.d0(e, q.edges[e].target) += 1;
    c.d0(e, q.edges[e].source) -= 1;
  }
  DualityData& d = c.duality;
  d.omega = om;
  d.dual = xx;
  d.ev = Mat(nv, ne * ne);
  d.under_ev = Mat(nv, ne * ne);
  for (int e = 0; e < ne; ++e) {
    d.coev.emplace_back(unit_vec(ne, e), unit_vec(ne, e));
    d.under_coev.emplace_back(unit_vec(ne, e), unit_vec(ne, e));
    d.ev(q.edges[e].target, e * ne + e) = 1;
    d.under_ev(q.edges[e].source, e * ne + e) = 1;
  }
  Vec theta(ne);
  for (int e = 0; e < ne; ++e) theta[e] = 1;
  c.inner_theta = theta;
  c.dual_gens = basis_generator_set(*xx);
  c.omega_gens = basis_generator_set(*om);
  finish(c);
  return c;
}

DualityData free_duality(const BimodulePtr& omega, const std::vector<Vec>& basis,
                         const std::vector<std::string>& basis_labels, const std::string& dual_prefix) {
  const FiniteAlgebra& A = *omega->base;
  const int n = A.dim(), r = static_cast<int>(basis.size());
  if (omega->dim != n * r) throw Error("NotFree", "dimension is not rank times dim A");
  std::vector<Vec> rc, lc;
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n; ++a) {
      rc.push_back(omega->right[a].apply(basis[i]));
      lc.push_back(omega->left[a].apply(basis[i]));
    }
  auto rinv = inverse(Mat::from_columns(omega->dim, rc));
  auto linv = inverse(Mat::from_columns(omega->dim, lc));
  if (!rinv || !linv) throw Error("NotFree", "basis is not free on both sides");
  auto coord = [&](const Mat& inv, const Vec& w, int i) {
    Vec all = inv.apply(w);
    return Vec(all.begin() + static_cast<long>(i) * n, all.begin() + static_cast<long>(i + 1) * n);
  };
  auto x = std::make_shared<Bimodule>();
  x->base = omega->base;
  x->dim = n * r;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < n; ++k) x->labels.push_back(A.labels()[k] + "." + dual_prefix + basis_labels[i]);
  for (int a = 0; a < n; ++a) {
    Mat l(x->dim, x->dim), rr(x->dim, x->dim);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < n; ++k) {
        const Vec& prod = A.product(a, k);
        for (int m = 0; m < n; ++m) l(i * n + m, i * n + k) = prod[m];
        for (int j = 0; j < r; ++j) {
          Vec beta = coord(*rinv, omega->left[a].apply(basis[j]), i);  // beta_ij(a)
          Vec ek_beta = A.mul(A.basis(k), beta);
          for (int m = 0; m < n; ++m) rr(j * n + m, i * n + k) += ek_beta[m];
        }
      }
    x->left.push_back(l);
    x->right.push_back(rr);
  }
  x->validate();
  DualityData d;
  d.omega = omega;
  d.dual = x;
  std::vector<Vec> f(r, Vec(x->dim));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < n; ++k) f[i][i * n + k] = A.unit()[k];
  d.ev = Mat(n, x->dim * omega->dim);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < n; ++k)
      for (int w = 0; w < omega->dim; ++w) {
        Vec v = A.mul(A.basis(k), coord(*rinv, unit_vec(omega->dim, w), i));
        for (int m = 0; m < n; ++m) d.ev(m, (i * n + k) * omega->dim + w) = v[m];
      }
  std::vector<Vec> xc;
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n; ++a) xc.push_back(x->right[a].apply(f[i]));
  auto xinv = inverse(Mat::from_columns(x->dim, xc));
  if (!xinv) throw Error("NotFree", "dual basis is not right free");
  d.under_ev = Mat(n, omega->dim * x->dim);
  for (int w = 0; w < omega->dim; ++w)
    for (int xv = 0; xv < x->dim; ++xv) {
      Vec acc(n);
      for (int i = 0; i < r; ++i)
        acc = add(acc, A.mul(coord(*linv, unit_vec(omega->dim, w), i), coord(*xinv, unit_vec(x->dim, xv), i)));
      for (int m = 0; m < n; ++m) d.under_ev(m, w * x->dim + xv) = acc[m];
    }
  for (int i = 0; i < r; ++i) {
    d.coev.emplace_back(basis[i], f[i]);
    d.under_coev.emplace_back(f[i], basis[i]);
  }
  return d;
}

namespace {

void attach_free_generators(Calculus1& c, const std::vector<Vec>& basis, const std::vector<std::string>& labels) {
  std::vector<Vec> fg;
  std::vector<std::string> fl;
  for (const auto& [w, x] : c.duality.coev) fg.push_back(x);
  for (const auto& l : labels) fl.push_back("f_" + l);
  c.dual_gens = make_generator_set(*c.duality.dual, fg, fl);
  c.omega_gens = make_generator_set(*c.omega, basis, labels);
}

}  // namespace

Calculus1 build_derivation_calculus(const AlgebraPtr& a, const Mat& d, const std::string& name) {
  if (d.rows() != a->dim() || d.cols() != a->dim()) throw Error("ShapeMismatch", "derivation matrix");
  Calculus1 c;
  c.name = name;
  c.kind = "derivation";
  c.base = a;
  c.omega = regular_bimodule(a);
  c.d0 = d;
  c.duality = free_duality(c.omega, {a->unit()}, {"D"}, "");
  attach_free_generators(c, {a->unit()}, {"D"});
  finish(c);
  return c;
}

Calculus1 build_inner_calculus(const AlgebraPtr& a, const BimodulePtr& omega, const Vec& theta,
                               const std::vector<Vec>& free_basis, const std::vector<std::string>& basis_labels,
                               const std::string& name) {
  omega->validate();
  Calculus1 c;
  c.name = name;
  c.kind = "inner";
  c.base = a;
  c.omega = omega;
  c.d0 = Mat(omega->dim, a->dim());
  for (int b = 0; b < a->dim(); ++b) {
    Vec v = sub(omega->right[b].apply(theta), omega->left[b].apply(theta));
    for (int i = 0; i < omega->dim; ++i) c.d0(i, b) = v[i];
  }
  c.inner_theta = theta;
  c.duality = free_duality(omega, free_basis, basis_labels, "");
  attach_free_generators(c, free_basis, basis_labels);
  finish(c);
  return c;
}

Calculus1 build_m2_calculus() {
  AlgebraPtr a = new_matrix_algebra(2);
  auto om = std::make_shared<Bimodule>();
  om->base = a;
  om->dim = 8;
  for (int c = 0; c < 2; ++c)
    for (const auto& l : a->labels()) om->labels.push_back(std::string(c == 0 ? "s" : "t") + "." + l);
  Mat id2 = Mat::identity(2);
  for (int i = 0; i < 4; ++i) {
    om->left.push_back(kron(id2, a->left_mult(i)));
    om->right.push_back(kron(id2, a->right_mult(i)));
  }
  Vec s(8), t(8), theta(8);
  s[0] = s[3] = 1;
  t[4] = t[7] = 1;
  theta[1] = 1;      // E12 in the first summand
  theta[4 + 2] = 1;  // E21 in the second summand
  return build_inner_calculus(a, om, theta, {s, t}, {"s", "t"}, "m2");
}

std::vector<Mat> extend_representation(const GroupData& g, const std::map<int, Mat>& gens) {
  const int n = static_cast<int>(g.elements.size());
  if (gens.empty()) throw Error("NotARepresentation", "no generators");
  const int dim = gens.begin()->second.rows();
  std::vector<std::optional<Mat>> rep(n);
  rep[g.identity] = Mat::identity(dim);
  std::vector<int> frontier{g.identity};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int h : frontier)
      for (const auto& [s, m] : gens) {
        int k = g.table[h][s];
        Mat v = *rep[h] * m;
        if (!rep[k]) {
          rep[k] = v;
          next.push_back(k);
        } else if (*rep[k] != v) {
          throw Error("NotARepresentation", "inconsistent generator images");
        }
      }
    frontier = next;
  }
  std::vector<Mat> out;
  for (int h = 0; h < n; ++h) {
    if (!rep[h]) throw Error("NotARepresentation", "generators do not generate the group");
    out.push_back(*rep[h]);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (out[x] * out[y] != out[g.table[x][y]]) throw Error("NotARepresentation", "not multiplicative");
  return out;
}

GroupCocycleData d6_cocycle_data() {
  if (FieldContext::sqrt_d() != 3) FieldContext::set_sqrt_d(3);
  GroupCocycleData g;
  g.group = dihedral6();
  g.lambda_labels = {"xi", "tau"};
  const Scalar half = Scalar::rational(1, 2);
  const Scalar hs = half * Scalar::sqrt();
  Mat ra(2, 2), rb(2, 2);
  // Rotation by 120 degrees, so that a has order 3; columns are the images of xi and tau.
  ra(0, 0) = -half;
  ra(1, 0) = hs;
  ra(0, 1) = -hs;
  ra(1, 1) = -half;
  rb(0, 0) = 1;
  rb(1, 1) = -1;
  g.rep = extend_representation(g.group, {{1, ra}, {3, rb}});
  Vec theta{Scalar(1), Scalar(1)};
  for (const auto& m : g.rep) g.zeta.push_back(sub(m.apply(theta), theta));
  return g;
}

Calculus1 build_group_cocycle_calculus(const GroupCocycleData& g, const std::string& name) {
  const int ng = static_cast<int>(g.group.elements.size());
  const int nl = static_cast<int>(g.lambda_labels.size());
  if (static_cast<int>(g.rep.size()) != ng || static_cast<int>(g.zeta.size()) != ng)
    throw Error("ShapeMismatch", "representation or cocycle table size");
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y) {
      if (g.rep[x] * g.rep[y] != g.rep[g.group.table[x][y]]) throw Error("NotARepresentation", "not multiplicative");
      if (g.zeta[g.group.table[x][y]] != add(g.rep[x].apply(g.zeta[y]), g.zeta[x]))
        throw Error("CocycleViolation", g.group.elements[x] + "," + g.group.elements[y]);
    }
  Calculus1 c;
  c.name = name;
  c.kind = "group";
  c.cocycle = g;
  c.base = new_group_algebra(g.group.elements, g.group.table);
  auto om = std::make_shared<Bimodule>();
  om->base = c.base;
  om->dim = nl * ng;
  for (int l = 0; l < nl; ++l)
    for (int h = 0; h < ng; ++h) om->labels.push_back(g.lambda_labels[l] + "@" + g.group.elements[h]);
  for (int x = 0; x < ng; ++x) {
    Mat left(om->dim, om->dim), right(om->dim, om->dim);
    for (int l = 0; l < nl; ++l)
      for (int h = 0; h < ng; ++h) {
        right(l * ng + g.group.table[h][x], l * ng + h) = 1;
        for (int m = 0; m < nl; ++m) left(m * ng + g.group.table[x][h], l * ng + h) = g.rep[x](m, l);
      }
    om->left.push_back(left);
    om->right.push_back(right);
  }
  om->validate();
  c.omega = om;
  c.d0 = Mat(om->dim, ng);
  for (int x = 0; x < ng; ++x)
    for (int l = 0; l < nl; ++l) c.d0(l * ng + x, x) = g.zeta[x][l];
  std::vector<Vec> basis;
  for (int l = 0; l < nl; ++l) basis.push_back(unit_vec(om->dim, l * ng + g.group.identity));
  c.duality = free_duality(om, basis, g.lambda_labels, "");
  attach_free_generators(c, basis, g.lambda_labels);
  // d(g) = zeta(g) g = g theta' - theta' g with theta' = theta (x) e whenever zeta(g) = g>theta - theta.
  bool inner = false;
  Vec theta_l;
  if (nl > 0) {
    // Try theta' solving zeta(x) = rep(x) theta' - theta' for all x.
    Vec rhs;
    Mat sys(ng * nl, nl);
    for (int x = 0; x < ng; ++x)
      for (int l = 0; l < nl; ++l) {
        for (int m = 0; m < nl; ++m) sys(x * nl + l, m) = g.rep[x](l, m) - (l == m ? Scalar(1) : Scalar(0));
        rhs.push_back(g.zeta[x][l]);
      }
    auto sol = solve(sys, rhs);
    if (sol) {
      inner = true;
      theta_l = *sol;
    }
  }
  if (inner) {
    Vec theta(om->dim);
    for (int l = 0; l < nl; ++l) theta[l * ng + g.group.identity] = -theta_l[l];
    c.inner_theta = theta;
  }
  finish(c);
  return c;
}

CalculusReport validate_calculus(const Calculus1& c) {
  CalculusReport r;
  const FiniteAlgebra& A = *c.base;
  const Bimodule& W = *c.omega;
  bool ok = true;
  std::string det;
  for (int i = 0; i < A.dim() && ok; ++i)
    for (int j = 0; j < A.dim() && ok; ++j) {
      Vec lhs = c.d(A.product(i, j));
      Vec rhs = add(W.right[j].apply(c.d(A.basis(i))), W.left[i].apply(c.d(A.basis(j))));
      if (lhs != rhs) {
        ok = false;
        det = "d(" + A.labels()[i] + A.labels()[j] + ")";
      }
    }
  r.lines.push_back({"leibniz", ok, det});
  if (c.inner_theta) {
    ok = true;
    for (int b = 0; b < A.dim() && ok; ++b)
      if (c.d(A.basis(b)) != sub(W.right[b].apply(*c.inner_theta), W.left[b].apply(*c.inner_theta))) {
        ok = false;
        det = "theta commutator at " + A.labels()[b];
      }
    r.lines.push_back({"inner", ok, det});
  }
  r.lines.push_back({"d_unit", is_zero(c.d(A.unit())), "d(1) != 0"});
  DualityReport dr = validate_duality(c.duality);
  for (const auto& l : dr.lines) r.lines.push_back({"duality." + l.name, l.pass, l.detail});
  return r;
}

}  // namespace hopfalg

namespace hopfalg {

Mat d6_sixty_degree_matrix() {
  if (FieldContext::sqrt_d() != 3) FieldContext::set_sqrt_d(3);
  const Scalar half = Scalar::rational(1, 2);
  Mat r(2, 2);
  r(0, 0) = half;
  r(1, 0) = half * Scalar::sqrt();
  r(0, 1) = -half * Scalar::sqrt();
  r(1, 1) = half;
  return r;
}

}  // namespace hopfalg
