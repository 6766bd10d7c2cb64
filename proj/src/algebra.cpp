#include "hopfalg/algebra.hpp"

#include <set>

namespace hopfalg {

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> labels, std::vector<std::vector<Vec>> c, Vec unit)
    : labels_(std::move(labels)), c_(std::move(c)), unit_(std::move(unit)) {
  const int n = dim();
  if (n == 0) throw Error("InvalidAlgebra", "dimension must be positive");
  if (static_cast<int>(c_.size()) != n || static_cast<int>(unit_.size()) != n)
    throw Error("ShapeMismatch", "structure constants");
  for (const auto& row : c_) {
    if (static_cast<int>(row.size()) != n) throw Error("ShapeMismatch", "structure constants");
    for (const auto& v : row)
      if (static_cast<int>(v.size()) != n) throw Error("ShapeMismatch", "structure constants");
  }
  lm_.assign(n, Mat(n, n));
  rm_.assign(n, Mat(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        lm_[i](k, j) = c_[i][j][k];
        rm_[i](k, j) = c_[j][i][k];
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec lhs = mul(c_[i][j], basis(k));
        Vec rhs = mul(basis(i), c_[j][k]);
        if (lhs != rhs) throw Error("NotAssociative", labels_[i] + "," + labels_[j] + "," + labels_[k]);
      }
  for (int i = 0; i < n; ++i)
    if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i))
      throw Error("UnitLaw", "unit fails on " + labels_[i]);
  commutative_ = true;
  for (int i = 0; i < n && commutative_; ++i)
    for (int j = 0; j < n; ++j)
      if (c_[i][j] != c_[j][i]) {
        commutative_ = false;
        break;
      }
}

Vec FiniteAlgebra::mul(const Vec& a, const Vec& b) const {
  const int n = dim();
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      axpy(out, a[i] * b[j], c_[i][j]);
    }
  }
  return out;
}

Mat FiniteAlgebra::left_mult(const Vec& a) const {
  Mat m(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (!a[i].is_zero()) m += lm_[i] * a[i];
  return m;
}

Mat FiniteAlgebra::right_mult(const Vec& a) const {
  Mat m(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (!a[i].is_zero()) m += rm_[i] * a[i];
  return m;
}

int FiniteAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (labels_[i] == label) return i;
  throw Error("UnknownLabel", label);
}

FiniteAlgebra FiniteAlgebra::opposite() const {
  std::vector<std::string> labels;
  for (const auto& l : labels_) labels.push_back(l + "^op");
  std::vector<std::vector<Vec>> c(dim(), std::vector<Vec>(dim()));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) c[i][j] = c_[j][i];
  return FiniteAlgebra(labels, c, unit_);
}

std::string FiniteAlgebra::format(const Vec& a) const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += (a[i].is_one() ? std::string() : "(" + a[i].str() + ")") + labels_[i];
  }
  return s.empty() ? "0" : s;
}

namespace {
void require_distinct(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error("DuplicateLabel", l);
}
}  // namespace

AlgebraPtr new_function_algebra(const std::vector<std::string>& labels) {
  if (labels.empty()) throw Error("InvalidAlgebra", "no points");
  require_distinct(labels);
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n)));
  Vec unit(n);
  for (int p = 0; p < n; ++p) {
    c[p][p][p] = 1;
    unit[p] = 1;
  }
  return std::make_shared<FiniteAlgebra>(labels, c, unit);
}

AlgebraPtr new_matrix_algebra(int n) {
  if (n < 1) throw Error("InvalidAlgebra", "matrix size must be positive");
  const int d = n * n;
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) labels.push_back("E" + std::to_string(i) + std::to_string(j));
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d, Vec(d)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) c[i * n + j][j * n + l][i * n + l] = 1;
  Vec unit(d);
  for (int i = 0; i < n; ++i) unit[i * n + i] = 1;
  return std::make_shared<FiniteAlgebra>(labels, c, unit);
}

AlgebraPtr new_group_algebra(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) throw Error("NotAGroup", "empty group");
  require_distinct(elements);
  if (static_cast<int>(table.size()) != n) throw Error("NotAGroup", "table shape");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error("NotAGroup", "table shape");
    std::set<int> seen(row.begin(), row.end());
    if (static_cast<int>(seen.size()) != n || *seen.begin() < 0 || *seen.rbegin() >= n)
      throw Error("NotAGroup", "rows are not permutations");
  }
  for (int j = 0; j < n; ++j) {
    std::set<int> seen;
    for (int i = 0; i < n; ++i) seen.insert(table[i][j]);
    if (static_cast<int>(seen.size()) != n) throw Error("NotAGroup", "columns are not permutations");
  }
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) throw Error("NotAGroup", "no identity element");
  std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j][table[i][j]] = 1;
  try {
    return std::make_shared<FiniteAlgebra>(elements, c, unit_vec(n, e));
  } catch (const Error& err) {
    throw Error("NotAGroup", err.what());
  }
}

AlgebraPtr enveloping(const FiniteAlgebra& a) {
  const int n = a.dim();
  const int d = n * n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels.push_back(a.labels()[i] + "|" + a.labels()[j] + "bar");
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d, Vec(d)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // (e_i (x) bar e_j)(e_k (x) bar e_l) = e_i e_k (x) bar(e_l e_j)
          const Vec& left = a.product(i, k);
          const Vec& right = a.product(l, j);
          Vec& out = c[i * n + j][k * n + l];
          for (int x = 0; x < n; ++x) {
            if (left[x].is_zero()) continue;
            for (int y = 0; y < n; ++y)
              if (!right[y].is_zero()) out[x * n + y] += left[x] * right[y];
          }
        }
  return std::make_shared<FiniteAlgebra>(labels, c, kron(a.unit(), a.unit()));
}

int GroupData::inverse(int g) const {
  for (size_t h = 0; h < elements.size(); ++h)
    if (table[g][h] == identity) return static_cast<int>(h);
  throw Error("NotAGroup", "no inverse");
}

GroupData dihedral6() {
  // Elements a^i b^j with index i + 3j; a^i b^j a^k b^l = a^(i + (-1)^j k) b^(j+l).
  GroupData g;
  g.elements = {"e", "a", "a2", "b", "ab", "a2b"};
  g.table.assign(6, std::vector<int>(6));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      int i = x % 3, j = x / 3, k = y % 3, l = y / 3;
      int e = ((i + (j ? -k : k)) % 3 + 3) % 3;
      g.table[x][y] = e + 3 * ((j + l) % 2);
    }
  g.identity = 0;
  return g;
}

}  // namespace hopfalg
