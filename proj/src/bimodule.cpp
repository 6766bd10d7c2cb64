#include "hopfalg/bimodule.hpp"

namespace hopfalg {

Mat Bimodule::left_matrix(const Vec& a) const {
  Mat m(dim, dim);
  for (int i = 0; i < base->dim(); ++i)
    if (!a[i].is_zero()) m += left[i] * a[i];
  return m;
}

Mat Bimodule::right_matrix(const Vec& a) const {
  Mat m(dim, dim);
  for (int i = 0; i < base->dim(); ++i)
    if (!a[i].is_zero()) m += right[i] * a[i];
  return m;
}

Vec Bimodule::act_left(const Vec& a, const Vec& m) const { return left_matrix(a).apply(m); }
Vec Bimodule::act_right(const Vec& m, const Vec& a) const { return right_matrix(a).apply(m); }

void Bimodule::validate() const {
  const FiniteAlgebra& A = *base;
  const int n = A.dim();
  if (static_cast<int>(left.size()) != n || static_cast<int>(right.size()) != n)
    throw Error("NotABimodule", "action count");
  if (left_matrix(A.unit()) != Mat::identity(dim)) throw Error("NotABimodule", "left unit");
  if (right_matrix(A.unit()) != Mat::identity(dim)) throw Error("NotABimodule", "right unit");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (left[i] * left[j] != left_matrix(A.product(i, j)))
        throw Error("NotABimodule", "left associativity at " + A.labels()[i] + "," + A.labels()[j]);
      if (right[j] * right[i] != right_matrix(A.product(i, j)))
        throw Error("NotABimodule", "right associativity at " + A.labels()[i] + "," + A.labels()[j]);
      if (left[i] * right[j] != right[j] * left[i])
        throw Error("NotABimodule", "actions do not commute at " + A.labels()[i] + "," + A.labels()[j]);
    }
}

std::string Bimodule::format(const Vec& m) const {
  std::string s;
  for (int i = 0; i < dim; ++i) {
    if (m[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += (m[i].is_one() ? std::string() : "(" + m[i].str() + ")") + labels[i];
  }
  return s.empty() ? "0" : s;
}

BimodulePtr regular_bimodule(const AlgebraPtr& a) {
  auto m = std::make_shared<Bimodule>();
  m->base = a;
  m->dim = a->dim();
  m->labels = a->labels();
  for (int i = 0; i < a->dim(); ++i) {
    m->left.push_back(a->left_mult(i));
    m->right.push_back(a->right_mult(i));
  }
  return m;
}

BimodulePtr zero_bimodule(const AlgebraPtr& a) {
  auto m = std::make_shared<Bimodule>();
  m->base = a;
  m->dim = 0;
  m->left.assign(a->dim(), Mat(0, 0));
  m->right.assign(a->dim(), Mat(0, 0));
  return m;
}

TensorSpace tensor_over_A(const BimodulePtr& m, const BimodulePtr& n) {
  if (m->base.get() != n->base.get() && m->base->labels() != n->base->labels())
    throw Error("BaseMismatch", "tensor factors over different algebras");
  const int dm = m->dim, dn = n->dim, full = dm * dn;
  const int na = m->base->dim();
  Subspace rel(full);
  Mat idm = Mat::identity(dm), idn = Mat::identity(dn);
  for (int a = 0; a < na; ++a) {
    Mat r = kron(m->right[a], idn) - kron(idm, n->left[a]);
    for (int c = 0; c < full; ++c) rel.add(r.column(c));
  }
  std::vector<int> freec = rel.free_coordinates();
  const int q = static_cast<int>(freec.size());
  TensorSpace t;
  t.first = m;
  t.second = n;
  t.proj = Mat(q, full);
  t.section = Mat(full, q);
  for (int c = 0; c < full; ++c) {
    Vec r = rel.reduce(unit_vec(full, c));
    for (int k = 0; k < q; ++k) t.proj(k, c) = r[freec[k]];
  }
  for (int k = 0; k < q; ++k) t.section(freec[k], k) = 1;
  auto res = std::make_shared<Bimodule>();
  res->base = m->base;
  res->dim = q;
  for (int k = 0; k < q; ++k) {
    int i = freec[k] / std::max(dn, 1), j = freec[k] % std::max(dn, 1);
    res->labels.push_back(m->labels[i] + "(x)" + n->labels[j]);
  }
  for (int a = 0; a < na; ++a) {
    res->left.push_back(t.proj * kron(m->left[a], idn) * t.section);
    res->right.push_back(t.proj * kron(idm, n->right[a]) * t.section);
  }
  t.result = res;
  return t;
}

bool is_bimodule_map(const Mat& f, const Bimodule& m, const Bimodule& n) {
  if (f.rows() != n.dim || f.cols() != m.dim) return false;
  for (int a = 0; a < m.base->dim(); ++a) {
    if (f * m.left[a] != n.left[a] * f) return false;
    if (f * m.right[a] != n.right[a] * f) return false;
  }
  return true;
}

bool is_balanced(const Mat& f, const Bimodule& m, const Bimodule& n) {
  Mat idm = Mat::identity(m.dim), idn = Mat::identity(n.dim);
  for (int a = 0; a < m.base->dim(); ++a)
    if (!(f * (kron(m.right[a], idn) - kron(idm, n.left[a]))).is_zero()) return false;
  return true;
}

bool DualityReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

namespace {

// Bimodule structure on A (x)_k B tensors: (a m) (x) n and m (x) (n b).
bool pairing_is_bimodule_map(const Mat& ev, const Bimodule& first, const Bimodule& second) {
  const FiniteAlgebra& A = *first.base;
  Mat id1 = Mat::identity(first.dim), id2 = Mat::identity(second.dim);
  for (int a = 0; a < A.dim(); ++a) {
    if (ev * kron(first.left[a], id2) != A.left_mult(a) * ev) return false;
    if (ev * kron(id1, second.right[a]) != A.right_mult(a) * ev) return false;
  }
  return true;
}

}  // namespace

DualityReport validate_duality(const DualityData& d) {
  DualityReport rep;
  const Bimodule& W = *d.omega;
  const Bimodule& X = *d.dual;
  const FiniteAlgebra& A = *W.base;
  auto line = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.lines.push_back({name, ok, ok ? "" : detail});
  };
  line("ev_balanced", is_balanced(d.ev, X, W), "ev does not factor through the tensor over A");
  line("ev_bimodule_map", pairing_is_bimodule_map(d.ev, X, W), "ev is not a bimodule map");
  line("under_ev_balanced", is_balanced(d.under_ev, W, X), "under_ev does not factor through the tensor over A");
  line("under_ev_bimodule_map", pairing_is_bimodule_map(d.under_ev, W, X), "under_ev is not a bimodule map");

  // (ev (x) id)(id (x) coev) = id on X
  bool ok = true;
  std::string det;
  for (int x = 0; x < X.dim && ok; ++x) {
    Vec xv = unit_vec(X.dim, x), acc(X.dim);
    for (const auto& [w, xi] : d.coev) acc = add(acc, X.act_left(d.eval(xv, w), xi));
    if (acc != xv) {
      ok = false;
      det = "fails on " + X.labels[x];
    }
  }
  line("snake_dual", ok, det);
  ok = true;
  for (int w = 0; w < W.dim && ok; ++w) {
    Vec wv = unit_vec(W.dim, w), acc(W.dim);
    for (const auto& [wi, xi] : d.coev) acc = add(acc, W.act_right(wi, d.eval(xi, wv)));
    if (acc != wv) {
      ok = false;
      det = "fails on " + W.labels[w];
    }
  }
  line("snake_module", ok, det);
  ok = true;
  for (int w = 0; w < W.dim && ok; ++w) {
    Vec wv = unit_vec(W.dim, w), acc(W.dim);
    for (const auto& [yj, rj] : d.under_coev) acc = add(acc, W.act_left(d.under_eval(wv, yj), rj));
    if (acc != wv) {
      ok = false;
      det = "fails on " + W.labels[w];
    }
  }
  line("under_snake_module", ok, det);
  ok = true;
  for (int x = 0; x < X.dim && ok; ++x) {
    Vec xv = unit_vec(X.dim, x), acc(X.dim);
    for (const auto& [yj, rj] : d.under_coev) acc = add(acc, X.act_right(yj, d.under_eval(rj, xv)));
    if (acc != xv) {
      ok = false;
      det = "fails on " + X.labels[x];
    }
  }
  line("under_snake_dual", ok, det);

  TensorSpace wx = tensor_over_A(d.omega, d.dual);
  TensorSpace xw = tensor_over_A(d.dual, d.omega);
  ok = true;
  for (int a = 0; a < A.dim() && ok; ++a) {
    Vec av = A.basis(a), l(wx.result->dim), r(wx.result->dim);
    for (const auto& [w, x] : d.coev) {
      l = add(l, wx.tensor(W.act_left(av, w), x));
      r = add(r, wx.tensor(w, X.act_right(x, av)));
    }
    if (l != r) {
      ok = false;
      det = "coev not central at " + A.labels()[a];
    }
  }
  line("coev_central", ok, det);
  ok = true;
  for (int a = 0; a < A.dim() && ok; ++a) {
    Vec av = A.basis(a), l(xw.result->dim), r(xw.result->dim);
    for (const auto& [y, w] : d.under_coev) {
      l = add(l, xw.tensor(X.act_left(av, y), w));
      r = add(r, xw.tensor(y, W.act_right(w, av)));
    }
    if (l != r) {
      ok = false;
      det = "under_coev not central at " + A.labels()[a];
    }
  }
  line("under_coev_central", ok, det);
  return rep;
}

namespace {
Vec flatten(const Mat& f) {
  Vec v;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) v.push_back(f(i, j));
  return v;
}
Mat unflatten(const Vec& v, int rows, int cols) {
  Mat f(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) f(i, j) = v[static_cast<size_t>(i) * cols + j];
  return f;
}
}  // namespace

Vec HomSpace::coordinates(const Mat& f) const {
  if (basis.empty()) {
    if (!f.is_zero()) throw Error("NotInSpace", "map outside the hom space");
    return {};
  }
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  Vec target = flatten(f);
  auto x = solve(Mat::from_columns(static_cast<int>(target.size()), cols), target);
  if (!x) throw Error("NotInSpace", "map outside the hom space");
  return *x;
}

Mat HomSpace::map_of(const Vec& coords) const {
  if (basis.empty()) return Mat();
  Mat f(basis[0].rows(), basis[0].cols());
  for (size_t k = 0; k < basis.size(); ++k)
    if (!coords[k].is_zero()) f += basis[k] * coords[k];
  return f;
}

HomSpace hom_space(const BimodulePtr& m, const BimodulePtr& n, HomSide side) {
  const int dm = m->dim, dn = n->dim, na = m->base->dim();
  const int unknowns = dm * dn;
  // f is dn x dm, flattened row-major; constraint f X_M = Y_N f for the relevant actions.
  std::vector<Vec> eqs;
  for (int a = 0; a < na; ++a) {
    const Mat& xm = side == HomSide::Right ? m->right[a] : m->left[a];
    const Mat& yn = side == HomSide::Right ? n->right[a] : n->left[a];
    for (int i = 0; i < dn; ++i)
      for (int j = 0; j < dm; ++j) {
        Vec e(unknowns);
        for (int k = 0; k < dm; ++k)
          if (!xm(k, j).is_zero()) e[i * dm + k] += xm(k, j);
        for (int k = 0; k < dn; ++k)
          if (!yn(i, k).is_zero()) e[k * dm + j] -= yn(i, k);
        if (!is_zero(e)) eqs.push_back(e);
      }
  }
  Mat sys(static_cast<int>(eqs.size()), unknowns);
  for (size_t r = 0; r < eqs.size(); ++r)
    for (int c = 0; c < unknowns; ++c) sys(static_cast<int>(r), c) = eqs[r][c];
  std::vector<Vec> ns = eqs.empty() ? std::vector<Vec>{} : nullspace(sys);
  if (eqs.empty())
    for (int c = 0; c < unknowns; ++c) ns.push_back(unit_vec(unknowns, c));
  HomSpace h;
  for (const auto& v : ns) h.basis.push_back(unflatten(v, dn, dm));
  auto b = std::make_shared<Bimodule>();
  b->base = m->base;
  b->dim = static_cast<int>(h.basis.size());
  for (int k = 0; k < b->dim; ++k) b->labels.push_back("h" + std::to_string(k));
  for (int a = 0; a < na; ++a) {
    Mat l(b->dim, b->dim), r(b->dim, b->dim);
    for (int k = 0; k < b->dim; ++k) {
      const Mat& f = h.basis[k];
      Mat lf = side == HomSide::Right ? n->left[a] * f : f * m->right[a];
      Mat rf = side == HomSide::Right ? f * m->left[a] : n->right[a] * f;
      Vec lc = h.coordinates(lf), rc = h.coordinates(rf);
      for (int i = 0; i < b->dim; ++i) {
        l(i, k) = lc[i];
        r(i, k) = rc[i];
      }
    }
    b->left.push_back(l);
    b->right.push_back(r);
  }
  h.bimodule = b;
  return h;
}

}  // namespace hopfalg

namespace hopfalg {

Vec GeneratorSet::left_expand(const Vec& v) const {
  Vec out(left_coeffs.empty() ? 0 : left_coeffs[0].size());
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) axpy(out, v[i], left_coeffs[i]);
  return out;
}

Vec GeneratorSet::right_expand(const Vec& v) const {
  Vec out(right_coeffs.empty() ? 0 : right_coeffs[0].size());
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) axpy(out, v[i], right_coeffs[i]);
  return out;
}

GeneratorSet make_generator_set(const Bimodule& m, std::vector<Vec> gens, std::vector<std::string> labels) {
  GeneratorSet g;
  g.gens = std::move(gens);
  g.labels = std::move(labels);
  const int na = m.base->dim(), ng = g.size();
  std::vector<Vec> lcols(static_cast<size_t>(na + 1) * ng), rcols(static_cast<size_t>(na + 1) * ng);
  for (int k = 0; k < ng; ++k) {
    lcols[k] = g.gens[k];
    rcols[k] = g.gens[k];
  }
  for (int a = 0; a < na; ++a)
    for (int k = 0; k < ng; ++k) {
      lcols[(a + 1) * ng + k] = m.left[a].apply(g.gens[k]);
      rcols[(a + 1) * ng + k] = m.right[a].apply(g.gens[k]);
    }
  Mat lm = Mat::from_columns(m.dim, lcols), rm = Mat::from_columns(m.dim, rcols);
  for (int v = 0; v < m.dim; ++v) {
    auto l = solve(lm, unit_vec(m.dim, v));
    auto r = solve(rm, unit_vec(m.dim, v));
    if (!l || !r) throw Error("NotGenerating", "basis vector " + m.labels[v] + " is not generated");
    g.left_coeffs.push_back(*l);
    g.right_coeffs.push_back(*r);
  }
  return g;
}

GeneratorSet basis_generator_set(const Bimodule& m) {
  std::vector<Vec> gens;
  for (int i = 0; i < m.dim; ++i) gens.push_back(unit_vec(m.dim, i));
  return make_generator_set(m, gens, m.labels);
}

}  // namespace hopfalg
