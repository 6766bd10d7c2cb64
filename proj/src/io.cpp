#include "hopfalg/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hopfalg {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error("ParseError", what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

Scalar scalar_of(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  parse_error("scalars are integers or strings such as \"1/2+1/2*s\"");
}

Vec vec_of(const json& j) {
  if (!j.is_array()) parse_error("expected a vector");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_of(x));
  return v;
}

/// @brief Dense row-major matrix given as a list of rows.
Mat dense_of(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a nonempty list of rows");
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) parse_error("ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = scalar_of(j[i][k]);
  }
  return m;
}

/// @brief Sparse triplets [row, column, value] into a rows x cols matrix.
Mat triplets_of(const json& j, int rows, int cols) {
  if (!j.is_array()) parse_error("expected a list of [row, column, value] triplets");
  Mat m(rows, cols);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
      parse_error("bad triplet " + t.dump());
    const int r = t[0].get<int>(), c = t[1].get<int>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) parse_error("triplet outside the matrix: " + t.dump());
    m(r, c) = scalar_of(t[2]);
  }
  return m;
}

int index_of(const std::vector<std::string>& names, const json& j, const char* what) {
  if (!j.is_string()) parse_error(std::string(what) + " must be named by a string");
  const std::string s = j.get<std::string>();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  parse_error(std::string("unknown ") + what + " '" + s + "'");
}

CalculusBundle parse_quiver(const json& j, const std::string& name) {
  QuiverData q;
  for (const auto& v : need(j, "vertices")) {
    if (!v.is_string()) parse_error("vertex names must be strings");
    q.vertices.push_back(v.get<std::string>());
  }
  for (const auto& e : need(j, "edges")) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_string()) parse_error("edges are [label, source, target]");
    q.edges.push_back({e[0].get<std::string>(), index_of(q.vertices, e[1], "vertex"), index_of(q.vertices, e[2], "vertex")});
  }
  std::map<std::pair<int, int>, std::pair<int, int>> nomination;
  if (j.contains("nominations")) {
    std::vector<std::string> labels;
    for (const auto& e : q.edges) labels.push_back(e.label);
    for (const auto& n : j.at("nominations")) {
      if (!n.is_array() || n.size() != 4) parse_error("nominations are [p, q, a, b]");
      nomination[{index_of(q.vertices, n[0], "vertex"), index_of(q.vertices, n[1], "vertex")}] = {
          index_of(labels, n[2], "edge"), index_of(labels, n[3], "edge")};
    }
  }
  CalculusBundle b;
  b.c1 = build_quiver_calculus(q, name);
  b.c2 = build_quiver_omega2(b.c1, nomination);
  return b;
}

CalculusBundle parse_group(const json& j, const std::string& name) {
  if (j.contains("sqrt_d")) {
    const int d = need(j, "sqrt_d").get<int>();
    if (FieldContext::sqrt_d() != d) FieldContext::set_sqrt_d(d);
  }
  GroupCocycleData g;
  for (const auto& e : need(j, "elements")) g.group.elements.push_back(e.get<std::string>());
  const int n = static_cast<int>(g.group.elements.size());
  const json& table = need(j, "table");
  if (!table.is_array() || static_cast<int>(table.size()) != n) parse_error("group table has the wrong size");
  for (const auto& row : table) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) parse_error("group table has the wrong size");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(index_of(g.group.elements, x, "group element"));
    g.group.table.push_back(r);
  }
  g.group.identity = j.contains("identity") ? index_of(g.group.elements, j.at("identity"), "group element") : 0;
  for (const auto& l : need(j, "lambda")) g.lambda_labels.push_back(l.get<std::string>());
  std::map<int, Mat> gens;
  for (const auto& [k, m] : need(j, "generators").items()) gens[index_of(g.group.elements, json(k), "group element")] = dense_of(m);
  g.rep = extend_representation(g.group, gens);
  if (j.contains("zeta")) {
    g.zeta.assign(n, Vec());
    for (const auto& [k, v] : j.at("zeta").items()) g.zeta[index_of(g.group.elements, json(k), "group element")] = vec_of(v);
    for (const auto& z : g.zeta)
      if (z.size() != g.lambda_labels.size()) parse_error("zeta needs one vector per group element");
  } else {
    const Vec theta = vec_of(need(j, "theta"));
    if (theta.size() != g.lambda_labels.size()) parse_error("theta has the wrong length");
    for (const auto& m : g.rep) g.zeta.push_back(sub(m.apply(theta), theta));
  }
  CalculusBundle b;
  b.c1 = build_group_cocycle_calculus(g, name);
  b.c2 = build_exterior_square_omega2(b.c1);
  return b;
}

}  // namespace

Calculus1 build_matrix_inner_calculus(int n, const Vec& theta, const std::string& name) {
  if (n < 1) throw Error("ShapeMismatch", "matrix size must be positive");
  AlgebraPtr a = new_matrix_algebra(n);
  const int n2 = n * n;
  if (static_cast<int>(theta.size()) != 2 * n2) throw Error("ShapeMismatch", "theta needs 2 n^2 components");
  auto om = std::make_shared<Bimodule>();
  om->base = a;
  om->dim = 2 * n2;
  for (int c = 0; c < 2; ++c)
    for (const auto& l : a->labels()) om->labels.push_back(std::string(c == 0 ? "s" : "t") + "." + l);
  const Mat id2 = Mat::identity(2);
  for (int i = 0; i < n2; ++i) {
    om->left.push_back(kron(id2, a->left_mult(i)));
    om->right.push_back(kron(id2, a->right_mult(i)));
  }
  Vec s(2 * n2), t(2 * n2);
  for (int i = 0; i < n2; ++i) {
    s[i] = a->unit()[i];
    t[n2 + i] = a->unit()[i];
  }
  return build_inner_calculus(a, om, theta, {s, t}, {"s", "t"}, name);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CalculusBundle parse_calculus(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
  try {
    const std::string kind = need(j, "kind").get<std::string>();
    const std::string name = j.value("name", kind);
    CalculusBundle b;
    if (kind == "quiver") {
      b = parse_quiver(j, name);
    } else if (kind == "group") {
      b = parse_group(j, name);
    } else if (kind == "matrix_inner") {
      const int n = need(j, "n").get<int>();
      b.c1 = build_matrix_inner_calculus(n, vec_of(need(j, "theta")), name);
    } else {
      parse_error("unknown calculus kind '" + kind + "'");
    }
    if (j.contains("ev_override")) {
      Mat& ev = b.c1.duality.ev;
      const Mat patch = triplets_of(j.at("ev_override"), ev.rows(), ev.cols());
      for (const auto& t : j.at("ev_override")) ev(t[0].get<int>(), t[1].get<int>()) = patch(t[0].get<int>(), t[1].get<int>());
      if (b.c2) b.c2->calc1.duality.ev = ev;
    }
    return b;
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

CalculusBundle read_calculus_file(const std::string& path) { return parse_calculus(read_text_file(path)); }

ModuleRepSpec parse_module(const std::string& text, const Algebroid& alg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
  try {
    if (j.value("unit", false)) return unit_module_spec(alg);
    const Alphabet& ab = alg.pres.alphabet;
    if (j.contains("quiver")) {
      const Calculus1& c = *alg.calc;
      if (!c.quiver) parse_error("quiver representation for a calculus that is not a quiver");
      const QuiverData& q = *c.quiver;
      const json& jq = j.at("quiver");
      QuiverRep qr;
      for (const auto& v : q.vertices) qr.dims.push_back(need(need(jq, "dims"), v.c_str()).get<int>());
      const json& arrows = need(jq, "arrows");
      for (const auto& e : q.edges) {
        const int rows = qr.dims[e.target], cols = qr.dims[e.source];
        qr.arrows.push_back(arrows.contains(e.label) ? triplets_of(arrows.at(e.label), rows, cols) : Mat(rows, cols));
      }
      // The bridge lives at TX; its keys are carried over by symbol.
      const Algebroid tx = present(Level::TX, c);
      return translate_spec(quiver_rep_bridge(qr, tx), tx.pres.alphabet, ab);
    }
    ModuleRepSpec spec;
    spec.dim = need(j, "dim").get<int>();
    if (spec.dim < 0) parse_error("negative dimension");
    for (const auto& [label, trip] : need(j, "matrices").items()) {
      int id = -1;
      for (int s = 0; s < ab.size(); ++s)
        if (ab.label(s) == label) id = s;
      if (id < 0) parse_error("unknown generator '" + label + "' at level " + level_name(alg.pres.level));
      spec.matrices[id] = triplets_of(trip, spec.dim, spec.dim);
    }
    return spec;
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

ModuleRepSpec read_module_file(const std::string& path, const Algebroid& alg) {
  return parse_module(read_text_file(path), alg);
}

std::string dump_presentation(const Algebroid& alg) {
  std::ostringstream os;
  const Presentation& p = alg.pres;
  const Alphabet& ab = p.alphabet;
  os << "presentation " << p.name << "\n";
  os << "level " << level_name(p.level) << "\n";
  std::map<std::string, int> families;
  for (int s = 0; s < ab.size(); ++s) ++families[family_name(ab.symbol(s).family)];
  os << "families";
  for (int f = 0; f <= static_cast<int>(Family::O2X2); ++f) {
    const char* nm = family_name(static_cast<Family>(f));
    if (families.count(nm)) os << " " << nm << "=" << families[nm];
  }
  os << "\n";
  os << "generators " << ab.size() << "\n";
  for (int s = 0; s < ab.size(); ++s) os << "  " << s << " " << ab.label(s) << "\n";
  os << "relations " << p.relations.size() << "\n";
  for (std::size_t r = 0; r < p.relations.size(); ++r)
    os << "  " << r << " " << p.relation_names[r] << (std::find(p.oriented.begin(), p.oriented.end(), static_cast<int>(r)) != p.oriented.end() ? " [oriented]" : "")
       << ": " << ab.format(p.relations[r]) << "\n";
  if (alg.coring.present) {
    os << "delta\n";
    for (const auto& [s, t] : alg.coring.delta) os << "  " << ab.label(s) << " -> " << ab.format(t) << "\n";
    os << "epsilon\n";
    for (const auto& [s, m] : alg.coring.epsilon) {
      os << "  " << ab.label(s) << " ->";
      for (int i = 0; i < m.rows(); ++i) {
        os << " [";
        for (int k = 0; k < m.cols(); ++k) os << (k ? " " : "") << m(i, k).str();
        os << "]";
      }
      os << "\n";
    }
  }
  if (alg.hopf.present) {
    os << "antipode\n";
    for (const auto& [s, e] : alg.hopf.s) os << "  S(" << ab.label(s) << ") = " << ab.format(e) << "\n";
    os << "antipode_inverse\n";
    for (const auto& [s, e] : alg.hopf.s_inv) os << "  Sinv(" << ab.label(s) << ") = " << ab.format(e) << "\n";
    os << "upsilon " << (alg.hopf.upsilon ? "attached" : "absent") << " solution_dim " << alg.hopf.upsilon_solution_dim << "\n";
  }
  return os.str();
}

}  // namespace hopfalg
