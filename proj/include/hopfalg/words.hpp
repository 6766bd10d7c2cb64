#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hopfalg/scalar.hpp"

namespace hopfalg {

/// @brief Generator families in their word-order precedence.
enum class Family : std::uint8_t { A, Abar, X, XO, OX, X2O2, O2X2 };

/// @brief Short name of a family as used in dumps.
const char* family_name(Family f);

/// @brief One generator symbol: family plus indices into the owning generator sets.
struct GenSymbol {
  Family family = Family::A;
  int i = 0;
  int j = 0;
  bool operator==(const GenSymbol&) const = default;
};

/// @brief A word is a sequence of symbol ids; the empty word is the unit.
using Word = std::u16string;

/// @brief Graded lexicographic order: shorter words first, then by symbol id.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// @brief Finite formal sum of words with nonzero coefficients.
using FreeElem = std::map<Word, Scalar, WordLess>;

/// @brief Finite formal sum of tuples of words (an element of a tensor power of the free algebra).
using TensorElem = std::map<std::vector<Word>, Scalar>;

/// @brief Ordered symbol table; ids follow family order so that id order is the word order.
class Alphabet {
 public:
  /// @brief Appends a symbol; families must be added in precedence order.
  int add(GenSymbol s, std::string label);
  int size() const { return static_cast<int>(symbols_.size()); }
  const GenSymbol& symbol(int id) const { return symbols_[id]; }
  const std::string& label(int id) const { return labels_[id]; }
  /// @brief Id of a symbol or -1 when absent.
  int find(const GenSymbol& s) const;
  bool has_family(Family f) const;
  std::string format(const Word& w) const;
  std::string format(const FreeElem& e) const;
  std::string format(const TensorElem& t) const;

 private:
  std::vector<GenSymbol> symbols_;
  std::vector<std::string> labels_;
  std::map<std::tuple<int, int, int>, int> index_;
};

Word letter(int id);

void add_term(FreeElem& e, const Word& w, const Scalar& c);
FreeElem operator+(const FreeElem& a, const FreeElem& b);
FreeElem operator-(const FreeElem& a, const FreeElem& b);
FreeElem operator*(const Scalar& c, const FreeElem& e);
FreeElem operator*(const FreeElem& a, const FreeElem& b);
FreeElem& operator+=(FreeElem& a, const FreeElem& b);
FreeElem& operator-=(FreeElem& a, const FreeElem& b);
/// @brief u e v for words u, v.
FreeElem sandwich(const Word& u, const FreeElem& e, const Word& v);
FreeElem word_elem(const Word& w, const Scalar& c = Scalar(1));
/// @brief Length of the longest word, or 0 for the zero element.
int max_length(const FreeElem& e);
/// @brief Greatest word; requires e nonzero.
const Word& leading_word(const FreeElem& e);

void add_term(TensorElem& t, const std::vector<Word>& w, const Scalar& c);
TensorElem operator+(const TensorElem& a, const TensorElem& b);
TensorElem operator-(const TensorElem& a, const TensorElem& b);
TensorElem operator*(const Scalar& c, const TensorElem& t);
TensorElem& operator+=(TensorElem& a, const TensorElem& b);
/// @brief Componentwise product of tensors of the same arity.
TensorElem operator*(const TensorElem& a, const TensorElem& b);
/// @brief Simple tensor e1 (x) e2 (x) ...
TensorElem tensor_of(const std::vector<FreeElem>& factors);
/// @brief Applies a linear map to one factor of every term.
template <class F>
TensorElem map_factor(const TensorElem& t, std::size_t k, F&& f) {
  TensorElem out;
  for (const auto& [ws, c] : t) {
    const FreeElem img = f(ws[k]);
    for (const auto& [w, c2] : img) {
      std::vector<Word> nw = ws;
      nw[k] = w;
      add_term(out, nw, c * c2);
    }
  }
  return out;
}

}  // namespace hopfalg
