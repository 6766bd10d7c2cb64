#include "hopfalg/words.hpp"

#include <sstream>

namespace hopfalg {

const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::Abar: return "Abar";
    case Family::X: return "X";
    case Family::XO: return "XO";
    case Family::OX: return "OX";
    case Family::X2O2: return "X2O2";
    case Family::O2X2: return "O2X2";
  }
  return "?";
}

int Alphabet::add(GenSymbol s, std::string label) {
  if (!symbols_.empty() && static_cast<int>(s.family) < static_cast<int>(symbols_.back().family))
    throw Error("InvalidAlphabet", "families out of order");
  const int id = size();
  index_[{static_cast<int>(s.family), s.i, s.j}] = id;
  symbols_.push_back(s);
  labels_.push_back(std::move(label));
  return id;
}

int Alphabet::find(const GenSymbol& s) const {
  auto it = index_.find({static_cast<int>(s.family), s.i, s.j});
  return it == index_.end() ? -1 : it->second;
}

bool Alphabet::has_family(Family f) const {
  for (const auto& s : symbols_)
    if (s.family == f) return true;
  return false;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += "*";
    out += labels_[w[k]];
  }
  return out;
}

std::string Alphabet::format(const FreeElem& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")" << format(it->first);
  }
  return os.str();
}

std::string Alphabet::format(const TensorElem& t) const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ws, c] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t k = 0; k < ws.size(); ++k) os << (k ? " # " : "") << format(ws[k]);
  }
  return os.str();
}

Word letter(int id) { return Word(1, static_cast<char16_t>(id)); }

void add_term(FreeElem& e, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

FreeElem& operator+=(FreeElem& a, const FreeElem& b) {
  for (const auto& [w, c] : b) add_term(a, w, c);
  return a;
}

FreeElem& operator-=(FreeElem& a, const FreeElem& b) {
  for (const auto& [w, c] : b) add_term(a, w, -c);
  return a;
}

FreeElem operator+(const FreeElem& a, const FreeElem& b) {
  FreeElem r = a;
  return r += b;
}

FreeElem operator-(const FreeElem& a, const FreeElem& b) {
  FreeElem r = a;
  return r -= b;
}

FreeElem operator*(const Scalar& c, const FreeElem& e) {
  FreeElem r;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : e) r.emplace(w, c * x);
  return r;
}

FreeElem operator*(const FreeElem& a, const FreeElem& b) {
  FreeElem r;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_term(r, u + v, x * y);
  return r;
}

FreeElem sandwich(const Word& u, const FreeElem& e, const Word& v) {
  FreeElem r;
  for (const auto& [w, c] : e) r.emplace(u + w + v, c);
  return r;
}

FreeElem word_elem(const Word& w, const Scalar& c) {
  FreeElem r;
  add_term(r, w, c);
  return r;
}

int max_length(const FreeElem& e) { return e.empty() ? 0 : static_cast<int>(e.rbegin()->first.size()); }

const Word& leading_word(const FreeElem& e) {
  if (e.empty()) throw Error("ZeroElement", "leading word of zero");
  return e.rbegin()->first;
}

void add_term(TensorElem& t, const std::vector<Word>& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

TensorElem& operator+=(TensorElem& a, const TensorElem& b) {
  for (const auto& [w, c] : b) add_term(a, w, c);
  return a;
}

TensorElem operator+(const TensorElem& a, const TensorElem& b) {
  TensorElem r = a;
  return r += b;
}

TensorElem operator-(const TensorElem& a, const TensorElem& b) {
  TensorElem r = a;
  for (const auto& [w, c] : b) add_term(r, w, -c);
  return r;
}

TensorElem operator*(const Scalar& c, const TensorElem& t) {
  TensorElem r;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : t) r.emplace(w, c * x);
  return r;
}

TensorElem operator*(const TensorElem& a, const TensorElem& b) {
  TensorElem r;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      if (u.size() != v.size()) throw Error("ArityMismatch", "tensor product of different arities");
      std::vector<Word> w(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] + v[k];
      add_term(r, w, x * y);
    }
  return r;
}

TensorElem tensor_of(const std::vector<FreeElem>& factors) {
  TensorElem r;
  r[std::vector<Word>(factors.size())] = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    TensorElem next;
    for (const auto& [ws, c] : r)
      for (const auto& [w, x] : factors[k]) {
        std::vector<Word> nw = ws;
        nw[k] = w;
        add_term(next, nw, c * x);
      }
    r = std::move(next);
  }
  return r;
}

}  // namespace hopfalg
