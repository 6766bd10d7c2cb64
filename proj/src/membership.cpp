#include "hopfalg/membership.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hopfalg {

const char* tensor_kind_name(TensorKind k) {
  switch (k) {
    case TensorKind::Coring: return "coring";
    case TensorKind::Diamond: return "diamond";
    case TensorKind::Odot: return "odot";
    case TensorKind::Aop: return "aop";
  }
  return "?";
}

/// @brief Normalized unoriented relations, indexed by the cores of their words.
struct HardBasis {
  std::vector<FreeElem> elems;
  std::vector<Certificate> certs;
  std::vector<int> maxlen;
  std::unordered_map<Word, std::vector<int>> by_core;
  /// @brief Elements with a term made only of A and Abar letters.
  std::vector<int> unit_core;
  /// @brief Normal words made only of A and Abar letters, of length at most two (the unit included).
  std::vector<Word> prefixes;
};

namespace {

using SparseVec = std::map<int, Scalar>;

void sv_add(SparseVec& v, int col, const Scalar& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = v.try_emplace(col, x);
  if (!inserted) {
    it->second += x;
    if (it->second.is_zero()) v.erase(it);
  }
}

/// @brief Incremental sparse elimination; pivots are led by their largest column id.
///
/// Each pivot remembers the raw row it came from and the earlier pivots subtracted from it,
/// so a reduction of a target can be expanded back into raw rows.
class Eliminator {
 public:
  struct Pivot {
    SparseVec vec;
    int raw = 0;
    Scalar scale;
    std::vector<std::pair<int, Scalar>> subs;
  };

  void reduce(SparseVec& v, std::vector<std::pair<int, Scalar>>& subs) const {
    while (!v.empty()) {
      auto it = std::prev(v.end());
      auto f = lead_.find(it->first);
      if (f == lead_.end()) return;
      const Scalar c = it->second;
      for (const auto& [col, x] : pivots_[f->second].vec) sv_add(v, col, -c * x);
      subs.emplace_back(f->second, c);
    }
  }

  /// @brief Adds a raw row; returns false when it is dependent on earlier rows.
  bool add(SparseVec v, int raw) {
    std::vector<std::pair<int, Scalar>> subs;
    reduce(v, subs);
    if (v.empty()) return false;
    Pivot p;
    p.scale = std::prev(v.end())->second;
    const Scalar inv = p.scale.inverse();
    for (auto& [col, x] : v) x *= inv;
    p.vec = std::move(v);
    p.raw = raw;
    p.subs = std::move(subs);
    lead_.emplace(std::prev(p.vec.end())->first, static_cast<int>(pivots_.size()));
    pivots_.push_back(std::move(p));
    return true;
  }

  /// @brief Raw-row coefficients of a combination given as pivot subtractions.
  std::map<int, Scalar> expand(const std::vector<std::pair<int, Scalar>>& subs) const {
    std::map<int, Scalar> g;
    for (const auto& [pi, c] : subs) g[pi] += c;
    std::map<int, Scalar> raw;
    while (!g.empty()) {
      auto it = std::prev(g.end());
      const int pi = it->first;
      const Scalar c = it->second;
      g.erase(it);
      if (c.is_zero()) continue;
      const Pivot& p = pivots_[pi];
      const Scalar w = c / p.scale;
      raw[p.raw] += w;
      for (const auto& [j, f] : p.subs) g[j] -= w * f;
    }
    for (auto it = raw.begin(); it != raw.end();) it = it->second.is_zero() ? raw.erase(it) : std::next(it);
    return raw;
  }

  /// @brief Reduces every column of v that leads a pivot, not only the largest one.
  void reduce_full(SparseVec& v, std::vector<std::pair<int, Scalar>>& subs) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      auto f = lead_.find(it->first);
      if (f == lead_.end()) continue;
      const int col = it->first;
      const Scalar c = it->second;
      for (const auto& [cc, x] : pivots_[f->second].vec) sv_add(v, cc, -c * x);
      subs.emplace_back(f->second, c);
      it = v.lower_bound(col);
    }
  }

  std::size_t size() const { return pivots_.size(); }

 private:
  std::vector<Pivot> pivots_;
  std::unordered_map<int, int> lead_;
};

/// @brief Column ids for hashable keys, in discovery order.
template <class Key>
class ColumnTable {
 public:
  /// @brief Id of a key; sets fresh when it was not seen before.
  int id(const Key& k, bool& fresh) {
    auto [it, inserted] = ids_.try_emplace(k, static_cast<int>(keys_.size()));
    fresh = inserted;
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  const Key& key(int id) const { return keys_[id]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::unordered_map<Key, int> ids_;
  std::vector<Key> keys_;
};

/// @brief Expansion order: unexpanded columns of the residual first, then discovery order.
class Frontier {
 public:
  int next(const SparseVec& residual, std::deque<int>& queue) {
    for (auto it = residual.rbegin(); it != residual.rend(); ++it)
      if (mark(it->first)) return it->first;
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      if (mark(c)) return c;
    }
    return -1;
  }

 private:
  bool mark(int c) {
    if (c >= static_cast<int>(done_.size())) done_.resize(c + 1, 0);
    if (done_[c]) return false;
    done_[c] = 1;
    return true;
  }
  std::vector<char> done_;
};

std::size_t prefix_length(const Presentation& p, const Word& w) {
  std::size_t k = 0;
  while (k < w.size() && p.is_prefix_symbol(w[k])) ++k;
  return k;
}

Word join_key(const std::vector<Word>& ws) {
  Word k;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) k.push_back(char16_t(0xFFFF));
    k += ws[i];
  }
  return k;
}

/// @brief Normal form of a FreeElem through the memoized word reduction.
FreeElem nf(const Presentation& p, const FreeElem& e) { return p.rewriting->reduce(e); }

const HardBasis& hard_basis(const Presentation& p) {
  if (p.hard_cache) return *p.hard_cache;
  auto hb = std::make_shared<HardBasis>();
  std::vector<int> letters;
  for (int s : p.a_symbol)
    if (s >= 0) letters.push_back(s);
  for (int s : p.abar_symbol)
    if (s >= 0) letters.push_back(s);
  std::vector<Word> mult{Word()};
  for (int s : letters) mult.push_back(letter(s));
  // Prefix multipliers: normal words over A and Abar letters of length at most two.
  for (const Word& a : mult) {
    if (p.rewriting->is_normal(a)) hb->prefixes.push_back(a);
    if (a.size() == 1)
      for (int s : letters) {
        const Word w = a + letter(s);
        if (p.rewriting->is_normal(w)) hb->prefixes.push_back(w);
      }
  }
  Eliminator elim;
  ColumnTable<Word> cols;
  for (int r : p.unoriented) {
    for (const Word& m : mult) {
      Certificate c;
      cert_add(c, Word(), r, m, Scalar(1));
      Certificate t;
      FreeElem e = p.rewriting->reduce_traced(sandwich(Word(), p.relations[r], m), t);
      if (e.empty()) continue;
      cert_add(c, t, Scalar(-1));
      SparseVec v;
      for (const auto& [w, x] : e) {
        bool fresh = false;
        sv_add(v, cols.id(w, fresh), x);
      }
      if (!elim.add(std::move(v), static_cast<int>(hb->elems.size()))) continue;
      const int idx = static_cast<int>(hb->elems.size());
      std::set<Word> cores;
      for (const auto& [w, x] : e) cores.insert(w.substr(prefix_length(p, w)));
      for (const Word& core : cores)
        if (!core.empty()) hb->by_core[core].push_back(idx);
      if (cores.count(Word())) hb->unit_core.push_back(idx);
      hb->maxlen.push_back(max_length(e));
      hb->elems.push_back(std::move(e));
      hb->certs.push_back(std::move(c));
    }
  }
  p.hard_cache = hb;
  return *hb;
}

struct IdealRow {
  bool raw = false;
  Word u;
  int h = 0;  ///< hard basis index, or relation index for raw rows
  Word v;
};

/// @brief Certificate of a row: qaHg minus its normal-form trace, or the plain relation instance.
Certificate ideal_row_cert(const Presentation& p, const HardBasis& hb, const IdealRow& r) {
  Certificate c;
  if (r.raw) {
    cert_add(c, r.u, r.h, r.v, Scalar(1));
    return c;
  }
  c = cert_sandwich(r.u, hb.certs[r.h], r.v);
  Certificate t;
  p.rewriting->reduce_traced(sandwich(r.u, hb.elems[r.h], r.v), t);
  cert_add(c, t, Scalar(-1));
  return c;
}

/// @brief Closure over normal words with left multipliers from the first nq prefixes.
///
/// With unit_rows set, elements having a prefix-only term are also inserted at every split of a
/// column core, so that such a term can meet the column.
MembershipResult closure_nf(const FreeElem& e, const Presentation& p, int bound, const MembershipOptions& opts,
                            std::size_t nq, bool unit_rows = false) {
  MembershipResult res;
  Certificate trace;
  const FreeElem target = p.rewriting->reduce_traced(e, trace);
  auto finish_member = [&](Certificate cert) {
    if (recombine(cert, p.relations) != e) throw Error("CertificateMismatch", "ideal certificate does not recombine");
    res.status = MemberStatus::Member;
    res.certificate = std::move(cert);
    return res;
  };
  if (target.empty()) {
    res.note = "normal form is zero";
    return finish_member(std::move(trace));
  }
  if (p.unoriented.empty()) {
    res.note = "nonzero normal form and no unoriented relations";
    return res;
  }
  const HardBasis& hb = hard_basis(p);
  const std::vector<Word> qs(hb.prefixes.begin(), hb.prefixes.begin() + std::min(nq, hb.prefixes.size()));
  ColumnTable<Word> cols;
  std::deque<int> queue;
  SparseVec residual;
  auto col_of = [&](const Word& w) {
    bool fresh = false;
    const int id = cols.id(w, fresh);
    if (fresh) queue.push_back(id);
    return id;
  };
  for (const auto& [w, x] : target) sv_add(residual, col_of(w), x);
  Eliminator elim;
  std::vector<IdealRow> rows;
  std::unordered_set<Word> seen;
  std::vector<std::pair<int, Scalar>> tsubs;
  bool capped = false;
  Frontier frontier;
  while (true) {
    elim.reduce_full(residual, tsubs);
    if (residual.empty()) break;
    const int next = frontier.next(residual, queue);
    if (next < 0) break;
    const Word w = cols.key(next);
    const std::size_t pl = prefix_length(p, w);
    const Word core = w.substr(pl);
    const std::size_t L = core.size();
    auto add_rows = [&](const Word& alpha, const std::vector<int>& hs, const Word& gamma) {
      for (int h : hs) {
        const std::size_t len = alpha.size() + hb.maxlen[h] + gamma.size();
        for (const Word& q : qs) {
          if (static_cast<int>(q.size() + len) > bound) continue;
          IdealRow r{false, q + alpha, h, gamma};
          Word key = r.u;
          key.push_back(char16_t(0xFFFF));
          key.push_back(static_cast<char16_t>(h));
          key.push_back(char16_t(0xFFFF));
          key += r.v;
          if (!seen.insert(key).second) continue;
          const FreeElem row = nf(p, sandwich(r.u, hb.elems[h], r.v));
          if (row.empty()) continue;
          SparseVec v;
          for (const auto& [rw, x] : row) sv_add(v, col_of(rw), x);
          elim.add(std::move(v), static_cast<int>(rows.size()));
          rows.push_back(r);
        }
      }
    };
    for (std::size_t s = 0; s < L; ++s)
      for (std::size_t t = s + 1; t <= L; ++t) {
        auto it = hb.by_core.find(core.substr(s, t - s));
        if (it != hb.by_core.end()) add_rows(core.substr(0, s), it->second, core.substr(t));
      }
    if (unit_rows)
      for (std::size_t s = 0; s <= L; ++s) add_rows(core.substr(0, s), hb.unit_core, core.substr(s));
    if (cols.size() > opts.max_columns) {
      capped = true;
      break;
    }
  }
  res.rows = rows.size();
  res.columns = cols.size();
  if (!residual.empty()) {
    res.note = capped ? "closure exceeded the column cap" : "not in the bounded closure";
    return res;
  }
  Certificate cert = trace;
  for (const auto& [ri, c] : elim.expand(tsubs)) cert_add(cert, ideal_row_cert(p, hb, rows[ri]), c);
  res.note = "bounded closure over normal words";
  return finish_member(std::move(cert));
}

/// @brief Goal-directed span of u r v over raw words, with no rewriting involved.
MembershipResult closure_raw(const FreeElem& e, const Presentation& p, int bound, const MembershipOptions& opts) {
  MembershipResult res;
  std::unordered_map<Word, std::vector<int>> by_word;
  std::vector<int> with_unit;
  std::vector<int> maxlen(p.relations.size());
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    maxlen[r] = max_length(p.relations[r]);
    for (const auto& [w, x] : p.relations[r]) {
      if (w.empty())
        with_unit.push_back(static_cast<int>(r));
      else
        by_word[w].push_back(static_cast<int>(r));
    }
  }
  for (auto& [w, v] : by_word) v.erase(std::unique(v.begin(), v.end()), v.end());
  ColumnTable<Word> cols;
  std::deque<int> queue;
  auto col_of = [&](const Word& w) {
    bool fresh = false;
    const int id = cols.id(w, fresh);
    if (fresh) queue.push_back(id);
    return id;
  };
  SparseVec residual;
  for (const auto& [w, x] : e) sv_add(residual, col_of(w), x);
  Eliminator elim;
  std::vector<IdealRow> rows;
  std::set<std::tuple<Word, int, Word>> seen;
  std::vector<std::pair<int, Scalar>> tsubs;
  bool capped = false;
  auto try_row = [&](const Word& u, int r, const Word& v) {
    if (static_cast<int>(u.size() + v.size()) + maxlen[r] > bound) return false;
    if (!seen.insert({u, r, v}).second) return false;
    SparseVec vec;
    for (const auto& [w, x] : p.relations[r]) sv_add(vec, col_of(u + w + v), x);
    rows.push_back({true, u, r, v});
    return elim.add(std::move(vec), static_cast<int>(rows.size()) - 1);
  };
  Frontier frontier;
  while (true) {
    elim.reduce_full(residual, tsubs);
    if (residual.empty()) break;
    const int next = frontier.next(residual, queue);
    if (next < 0) break;
    const Word w = cols.key(next);
    bool added = false;
    for (std::size_t s = 0; s <= w.size(); ++s) {
      for (int r : with_unit) added |= try_row(w.substr(0, s), r, w.substr(s));
      for (std::size_t t = s + 1; t <= w.size(); ++t) {
        auto it = by_word.find(w.substr(s, t - s));
        if (it == by_word.end()) continue;
        for (int r : it->second) added |= try_row(w.substr(0, s), r, w.substr(t));
      }
    }
    (void)added;
    if (cols.size() > opts.max_columns) {
      capped = true;
      break;
    }
  }
  res.rows = rows.size();
  res.columns = cols.size();
  if (!residual.empty()) {
    res.note = capped ? "closure exceeded the column cap" : "not in the bounded span";
    return res;
  }
  Certificate cert;
  for (const auto& [ri, c] : elim.expand(tsubs)) cert_add(cert, rows[ri].u, rows[ri].h, rows[ri].v, c);
  if (recombine(cert, p.relations) != e) throw Error("CertificateMismatch", "raw certificate does not recombine");
  res.status = MemberStatus::Member;
  res.certificate = std::move(cert);
  res.note = "bounded span of relation instances";
  return res;
}

// ---------------------------------------------------------------------------------------------
// Tensor powers

int basis_index(const Presentation& p, int sym) { return p.alphabet.symbol(sym).i; }

/// @brief Rewrites a tensor to canonical form: each factor normal, prefix letters moved across
/// each boundary in the direction fixed by the kind. Optionally records the steps taken.
TensorElem canon(const TensorElem& t, const Presentation& p, TensorKind kind, std::vector<TensorCertTerm>* trace) {
  const RewriteSystem& rs = *p.rewriting;
  TensorElem work = t;
  TensorElem out;
  auto single_word_nf = [&](const Word& cand, const Word& expect, Certificate* c) {
    if (c) {
      const FreeElem r = rs.reduce_traced(word_elem(cand), *c);
      return r.size() == 1 && r.begin()->first == expect && r.begin()->second == Scalar(1);
    }
    const FreeElem& r = rs.reduce_word(cand);
    return r.size() == 1 && r.begin()->first == expect && r.begin()->second == Scalar(1);
  };
  while (!work.empty()) {
    auto it = work.begin();
    std::vector<Word> ws = it->first;
    const Scalar c = it->second;
    work.erase(it);
    bool done = false;
    for (std::size_t k = 0; k < ws.size() && !done; ++k) {
      if (rs.is_normal(ws[k])) continue;
      FreeElem r;
      if (trace) {
        Certificate cc;
        r = rs.reduce_traced(word_elem(ws[k]), cc);
        for (const auto& [key, x] : cc)
          trace->push_back({false, ws, static_cast<int>(k), std::get<0>(key), std::get<1>(key), std::get<2>(key), c * x});
      } else {
        r = rs.reduce_word(ws[k]);
      }
      for (const auto& [w, x] : r) {
        std::vector<Word> ns = ws;
        ns[k] = w;
        add_term(work, ns, c * x);
      }
      done = true;
    }
    if (done) continue;
    for (std::size_t b = 0; b + 1 < ws.size() && !done; ++b) {
      const Word& x = ws[b];
      const Word& y = ws[b + 1];
      if (kind == TensorKind::Coring || kind == TensorKind::Diamond) {
        const std::size_t pl = prefix_length(p, x);
        for (std::size_t pos = 0; pos < pl && !done; ++pos) {
          if (p.alphabet.symbol(x[pos]).family != Family::Abar) continue;
          const int j = basis_index(p, x[pos]);
          Word xs = x;
          xs.erase(pos, 1);
          Certificate cc;
          if (!single_word_nf(letter(x[pos]) + xs, x, trace ? &cc : nullptr)) continue;
          std::vector<Word> ns = ws;
          ns[b] = xs;
          ns[b + 1] = letter(p.a_symbol[j]) + y;
          if (trace) {
            std::vector<Word> mctx = ws;
            mctx[b] = xs;
            trace->push_back({true, mctx, static_cast<int>(b), Word(), j, Word(), c});
            for (const auto& [key, v] : cc)
              trace->push_back({false, ws, static_cast<int>(b), std::get<0>(key), std::get<1>(key), std::get<2>(key), -c * v});
          }
          add_term(work, ns, c);
          done = true;
        }
      } else if (kind == TensorKind::Odot) {
        if (!y.empty() && p.alphabet.symbol(y[0]).family == Family::A) {
          const int j = basis_index(p, y[0]);
          std::vector<Word> ns = ws;
          ns[b] = x + letter(y[0]);
          ns[b + 1] = y.substr(1);
          if (trace) {
            std::vector<Word> mctx = ws;
            mctx[b + 1] = y.substr(1);
            trace->push_back({true, mctx, static_cast<int>(b), Word(), j, Word(), -c});
          }
          add_term(work, ns, c);
          done = true;
        }
      } else {
        const std::size_t pl = prefix_length(p, y);
        for (std::size_t pos = 0; pos < pl && !done; ++pos) {
          if (p.alphabet.symbol(y[pos]).family != Family::Abar) continue;
          const int j = basis_index(p, y[pos]);
          Word ys = y;
          ys.erase(pos, 1);
          Certificate cc;
          if (!single_word_nf(letter(y[pos]) + ys, y, trace ? &cc : nullptr)) continue;
          std::vector<Word> ns = ws;
          ns[b] = x + letter(y[pos]);
          ns[b + 1] = ys;
          if (trace) {
            std::vector<Word> mctx = ws;
            mctx[b + 1] = ys;
            trace->push_back({true, mctx, static_cast<int>(b), Word(), j, Word(), -c});
            for (const auto& [key, v] : cc)
              trace->push_back(
                  {false, ws, static_cast<int>(b + 1), std::get<0>(key), std::get<1>(key), std::get<2>(key), -c * v});
          }
          add_term(work, ns, c);
          done = true;
        }
      }
    }
    if (!done) add_term(out, ws, c);
  }
  return out;
}

struct TensorRow {
  std::vector<Word> ctx;
  int slot = 0;
  Word u;
  int h = 0;  ///< hard basis index, or the basis index of A for a middle row
  Word v;
  bool middle = false;
};

TensorElem tensor_row_raw(const Presentation& p, TensorKind kind, const HardBasis* hb, const TensorRow& r) {
  TensorElem t;
  if (r.middle) {
    for (const auto& [ws, x] : middle_relation(p, kind, r.ctx[r.slot], r.ctx[r.slot + 1], r.h)) {
      std::vector<Word> ns = r.ctx;
      ns[r.slot] = ws[0];
      ns[r.slot + 1] = ws[1];
      add_term(t, ns, x);
    }
    return t;
  }
  for (const auto& [w, x] : hb->elems[r.h]) {
    std::vector<Word> ns = r.ctx;
    ns[r.slot] = r.u + w + r.v;
    add_term(t, ns, x);
  }
  return t;
}

std::vector<Word> ctx_variants(const Presentation& p, const Word& w) {
  std::vector<Word> out{w};
  const std::size_t pl = prefix_length(p, w);
  if (pl == 0) return out;
  Word a_only, abar_only;
  for (std::size_t k = 0; k < pl; ++k) (p.alphabet.symbol(w[k]).family == Family::A ? a_only : abar_only) += w[k];
  const Word core = w.substr(pl);
  for (const Word& cand : {core, abar_only + core, a_only + core})
    if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
  return out;
}

}  // namespace

MembershipResult ideal_membership(const FreeElem& e, const Presentation& p, int bound, const MembershipOptions& opts) {
  if (max_length(e) > bound)
    throw Error("BoundTooSmall", "element has length " + std::to_string(max_length(e)) + " > " + std::to_string(bound));
  if (e.empty()) {
    MembershipResult r;
    r.status = MemberStatus::Member;
    r.note = "zero element";
    return r;
  }
  if (!opts.use_rewriting || !p.rewriting) return closure_raw(e, p, bound, opts);
  // Left multipliers from A and Abar are tried only when the unit multiplier alone does not suffice.
  MembershipOptions first = opts;
  first.max_columns = std::min<std::size_t>(opts.max_columns, 10000);
  MembershipResult r = closure_nf(e, p, bound, first, 1);
  if (r.member() || p.unoriented.empty()) return r;
  r = closure_nf(e, p, bound, opts, static_cast<std::size_t>(-1));
  if (r.member() || r.note != "not in the bounded closure") return r;
  // Last stage: let prefix-only terms of the hard relations meet the columns.
  return closure_nf(e, p, bound, opts, static_cast<std::size_t>(-1), true);
}

MembershipResult equal_mod_ideal(const FreeElem& a, const FreeElem& b, const Presentation& p, int bound,
                                 const MembershipOptions& opts) {
  return ideal_membership(a - b, p, bound, opts);
}

TensorElem middle_relation(const Presentation& p, TensorKind kind, const Word& x, const Word& y, int a) {
  TensorElem t;
  switch (kind) {
    case TensorKind::Coring:
    case TensorKind::Diamond:
      add_term(t, {letter(p.abar_symbol.at(a)) + x, y}, Scalar(1));
      add_term(t, {x, letter(p.a_symbol.at(a)) + y}, Scalar(-1));
      break;
    case TensorKind::Odot:
      add_term(t, {x + letter(p.a_symbol.at(a)), y}, Scalar(1));
      add_term(t, {x, letter(p.a_symbol.at(a)) + y}, Scalar(-1));
      break;
    case TensorKind::Aop:
      add_term(t, {x + letter(p.abar_symbol.at(a)), y}, Scalar(1));
      add_term(t, {x, letter(p.abar_symbol.at(a)) + y}, Scalar(-1));
      break;
  }
  return t;
}

TensorElem recombine_tensor(const std::vector<TensorCertTerm>& cert, const Presentation& p, TensorKind kind) {
  TensorElem out;
  for (const TensorCertTerm& c : cert) {
    if (c.middle) {
      const TensorElem m = middle_relation(p, kind, c.ctx[c.slot], c.ctx[c.slot + 1], c.rel);
      for (const auto& [ws, x] : m) {
        std::vector<Word> ns = c.ctx;
        ns[c.slot] = ws[0];
        ns[c.slot + 1] = ws[1];
        add_term(out, ns, c.c * x);
      }
    } else {
      for (const auto& [w, x] : p.relations.at(c.rel)) {
        std::vector<Word> ns = c.ctx;
        ns[c.slot] = c.u + w + c.v;
        add_term(out, ns, c.c * x);
      }
    }
  }
  return out;
}

namespace {

TensorMembershipResult tensor_closure(const TensorElem& e, const Presentation& p, TensorKind kind, int bound,
                                      const MembershipOptions& opts, std::size_t nq) {
  for (const auto& [ws, x] : e)
    for (const Word& w : ws)
      if (static_cast<int>(w.size()) > bound)
        throw Error("BoundTooSmall", "tensor factor has length " + std::to_string(w.size()) + " > " + std::to_string(bound));
  TensorMembershipResult res;
  if (!p.rewriting) throw Error("NoRulesAtThisLevel", "presentation not finalized");
  std::vector<TensorCertTerm> trace;
  const TensorElem target = canon(e, p, kind, &trace);
  auto finish_member = [&](std::vector<TensorCertTerm> cert) {
    if (recombine_tensor(cert, p, kind) != e) throw Error("CertificateMismatch", "tensor certificate does not recombine");
    res.status = MemberStatus::Member;
    res.certificate = std::move(cert);
    return res;
  };
  if (target.empty()) {
    res.note = "canonical form is zero";
    return finish_member(std::move(trace));
  }
  const HardBasis* hb = p.unoriented.empty() ? nullptr : &hard_basis(p);
  std::vector<Word> qs;
  if (hb) qs.assign(hb->prefixes.begin(), hb->prefixes.begin() + std::min(nq, hb->prefixes.size()));
  std::vector<int> middle_basis;
  for (std::size_t a = 0; a < p.a_symbol.size(); ++a) {
    const bool needs_abar = kind != TensorKind::Odot;
    if (p.a_symbol[a] >= 0 && (!needs_abar || (a < p.abar_symbol.size() && p.abar_symbol[a] >= 0)))
      middle_basis.push_back(static_cast<int>(a));
  }
  ColumnTable<Word> cols;
  std::vector<std::vector<Word>> col_words;
  std::deque<int> queue;
  auto col_of = [&](const std::vector<Word>& ws) {
    bool fresh = false;
    const int id = cols.id(join_key(ws), fresh);
    if (fresh) {
      col_words.push_back(ws);
      queue.push_back(id);
    }
    return id;
  };
  SparseVec residual;
  for (const auto& [ws, x] : target) sv_add(residual, col_of(ws), x);
  Eliminator elim;
  std::vector<TensorRow> rows;
  std::unordered_set<Word> seen;
  std::vector<std::pair<int, Scalar>> tsubs;
  bool capped = false;
  Frontier frontier;
  while (true) {
    elim.reduce_full(residual, tsubs);
    if (residual.empty()) break;
    const int next = frontier.next(residual, queue);
    if (next < 0) break;
    const std::vector<Word> ws = col_words[next];
    bool added = false;
    auto add_row = [&](TensorRow r) {
      Word key = join_key(r.ctx);
      key.push_back(char16_t(0xFFFE));
      key.push_back(static_cast<char16_t>(r.middle ? 1 : 0));
      key.push_back(static_cast<char16_t>(r.slot));
      key += r.u;
      key.push_back(char16_t(0xFFFE));
      key.push_back(static_cast<char16_t>(r.h));
      key.push_back(char16_t(0xFFFE));
      key += r.v;
      if (!seen.insert(key).second) return;
      const TensorElem row = canon(tensor_row_raw(p, kind, hb, r), p, kind, nullptr);
      if (row.empty()) return;
      SparseVec v;
      for (const auto& [rw, x] : row) sv_add(v, col_of(rw), x);
      rows.push_back(std::move(r));
      added |= elim.add(std::move(v), static_cast<int>(rows.size()) - 1);
    };
    // Middle relations at each boundary, with the neighbouring factors as found and with
    // their prefix letters removed.
    for (std::size_t b = 0; b + 1 < ws.size(); ++b) {
      for (const Word& x : ctx_variants(p, ws[b]))
        for (const Word& y : ctx_variants(p, ws[b + 1])) {
          if (static_cast<int>(x.size() + 1) > bound || static_cast<int>(y.size() + 1) > bound) continue;
          std::vector<Word> ctx = ws;
          ctx[b] = x;
          ctx[b + 1] = y;
          for (int a : middle_basis) add_row(TensorRow{ctx, static_cast<int>(b), Word(), a, Word(), true});
        }
    }
    for (std::size_t k = 0; hb && k < ws.size(); ++k) {
      const Word& w = ws[k];
      const std::size_t pl = prefix_length(p, w);
      const Word core = w.substr(pl);
      const std::size_t L = core.size();
      // Context choices for the other factors.
      std::vector<std::vector<Word>> ctxs{ws};
      for (std::size_t j = 0; j < ws.size(); ++j) {
        if (j == k) continue;
        std::vector<std::vector<Word>> next;
        for (const auto& base : ctxs)
          for (const Word& var : ctx_variants(p, ws[j])) {
            std::vector<Word> c = base;
            c[j] = var;
            next.push_back(std::move(c));
          }
        ctxs = std::move(next);
      }
      for (std::size_t s = 0; s < L; ++s)
        for (std::size_t t = s + 1; t <= L; ++t) {
          auto it = hb->by_core.find(core.substr(s, t - s));
          if (it == hb->by_core.end()) continue;
          const Word alpha = core.substr(0, s);
          const Word gamma = core.substr(t);
          for (int h : it->second) {
            const std::size_t len = alpha.size() + hb->maxlen[h] + gamma.size();
            for (const Word& q : qs) {
              if (static_cast<int>(q.size() + len) > bound) continue;
              for (const auto& ctx : ctxs) add_row(TensorRow{ctx, static_cast<int>(k), q + alpha, h, gamma, false});
            }
          }
        }
    }
    (void)added;
    if (cols.size() > opts.max_columns) {
      capped = true;
      break;
    }
  }
  res.rows = rows.size();
  res.columns = cols.size();
  if (!residual.empty()) {
    res.note = capped ? "closure exceeded the column cap" : "not in the bounded closure";
    return res;
  }
  std::vector<TensorCertTerm> cert = trace;
  for (const auto& [ri, c] : elim.expand(tsubs)) {
    const TensorRow& r = rows[ri];
    if (r.middle) {
      cert.push_back({true, r.ctx, r.slot, Word(), r.h, Word(), c});
    } else {
      // The raw row lies in the ideal through the hard basis certificate in its slot.
      for (const auto& [key, x] : hb->certs[r.h])
        cert.push_back({false, r.ctx, r.slot, r.u + std::get<0>(key), std::get<1>(key), std::get<2>(key) + r.v, c * x});
    }
    std::vector<TensorCertTerm> rt;
    canon(tensor_row_raw(p, kind, hb, r), p, kind, &rt);
    for (auto& term : rt) {
      term.c = -c * term.c;
      cert.push_back(std::move(term));
    }
  }
  res.note = "bounded closure over canonical tensors";
  return finish_member(std::move(cert));
}

}  // namespace

TensorMembershipResult tensor_membership(const TensorElem& e, const Presentation& p, TensorKind kind, int bound,
                                         const MembershipOptions& opts) {
  MembershipOptions first = opts;
  first.max_columns = std::min<std::size_t>(opts.max_columns, 10000);
  TensorMembershipResult r = tensor_closure(e, p, kind, bound, first, 1);
  if (r.member() || p.unoriented.empty()) return r;
  return tensor_closure(e, p, kind, bound, opts, static_cast<std::size_t>(-1));
}

}  // namespace hopfalg
