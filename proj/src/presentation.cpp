#include "hopfalg/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hopfalg {

const char* level_name(Level l) {
  switch (l) {
    case Level::TX: return "TX";
    case Level::BOmega: return "BOmega";
    case Level::BX: return "BX";
    case Level::IBOmega: return "IBOmega";
    case Level::IBX: return "IBX";
    case Level::HOmega: return "HOmega";
    case Level::HX: return "HX";
    case Level::DX: return "DX";
  }
  return "?";
}

Level parse_level(const std::string& s) {
  for (Level l : {Level::TX, Level::BOmega, Level::BX, Level::IBOmega, Level::IBX, Level::HOmega, Level::HX, Level::DX})
    if (s == level_name(l)) return l;
  throw Error("UnknownLevel", s);
}

bool level_has_rules(Level l) { return l == Level::TX || l == Level::BOmega || l == Level::BX; }
bool level_has_x(Level l) {
  return l == Level::TX || l == Level::BX || l == Level::IBX || l == Level::HX || l == Level::DX;
}
bool level_has_abar(Level l) { return l != Level::TX; }
bool level_has_ox(Level l) { return static_cast<int>(l) >= static_cast<int>(Level::IBOmega); }
bool level_is_hopf(Level l) { return l == Level::HOmega || l == Level::HX || l == Level::DX; }

void cert_add(Certificate& c, const Word& u, int rel, const Word& v, const Scalar& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = c.try_emplace({u, rel, v}, x);
  if (!inserted) {
    it->second += x;
    if (it->second.is_zero()) c.erase(it);
  }
}

void cert_add(Certificate& c, const Certificate& other, const Scalar& x) {
  if (x.is_zero()) return;
  for (const auto& [k, y] : other) cert_add(c, std::get<0>(k), std::get<1>(k), std::get<2>(k), x * y);
}

Certificate cert_sandwich(const Word& x, const Certificate& c, const Word& y) {
  Certificate out;
  for (const auto& [k, v] : c) out.emplace(std::make_tuple(x + std::get<0>(k), std::get<1>(k), std::get<2>(k) + y), v);
  return out;
}

FreeElem recombine(const Certificate& c, const std::vector<FreeElem>& relations) {
  FreeElem out;
  for (const auto& [k, x] : c) {
    const auto& [u, r, v] = k;
    for (const auto& [w, y] : relations.at(r)) add_term(out, u + w + v, x * y);
  }
  return out;
}

Certificate rule_ref(const Word& u, int rid, const Word& v, const Scalar& x) {
  Certificate c;
  cert_add(c, u, -(rid + 1), v, x);
  return c;
}

RewriteSystem::RewriteSystem(const std::vector<FreeElem>& relations, const std::vector<int>& selected,
                             const CompletionOptions& opts) {
  std::deque<std::tuple<FreeElem, Certificate, bool>> pending;
  std::deque<std::pair<int, int>> pairs;
  for (int idx : selected) {
    Certificate c;
    cert_add(c, Word(), idx, Word(), Scalar(1));
    pending.emplace_back(relations.at(idx), std::move(c), false);
  }
  auto drain = [&]() {
    while (!pending.empty()) {
      auto [r, c, derived] = std::move(pending.front());
      pending.pop_front();
      Certificate t;
      FreeElem nf = reduce_raw(r, t);
      if (nf.empty()) continue;
      cert_add(c, t, Scalar(-1));
      const int rid = add_rule(std::move(nf), std::move(c), derived);
      const Word& lead = history_[rid].lhs;
      // Active rules whose left side contains the new leading word become reducible: requeue them.
      for (int k = 0; k < rid; ++k) {
        if (!alive_[k] || history_[k].lhs.find(lead) == Word::npos) continue;
        alive_[k] = 0;
        index_.erase(history_[k].lhs);
        if (--lengths_[history_[k].lhs.size()] == 0) lengths_.erase(history_[k].lhs.size());
        pending.emplace_back(word_elem(history_[k].lhs) - history_[k].rhs, rule_ref(Word(), k, Word(), Scalar(1)),
                             derived_flag_[k] != 0);
      }
      for (int k = 0; k <= rid; ++k)
        if (alive_[k]) {
          pairs.emplace_back(rid, k);
          if (k != rid) pairs.emplace_back(k, rid);
        }
    }
  };
  drain();
  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    if (!alive_[i] || !alive_[j]) continue;
    const Word li = history_[i].lhs;
    const Word lj = history_[j].lhs;
    for (std::size_t k = 1; k < li.size() && k < lj.size(); ++k) {
      if (!alive_[i] || !alive_[j]) break;
      if (li.compare(li.size() - k, k, lj, 0, k) != 0) continue;
      if (li.size() + lj.size() - k > static_cast<std::size_t>(opts.max_overlap_length)) {
        completed_ = false;
        continue;
      }
      const Word x = li.substr(0, li.size() - k);
      const Word z = lj.substr(k);
      // x (lj - rhs_j) - (li - rhs_i) z
      FreeElem diff = sandwich(Word(), history_[i].rhs, z) - sandwich(x, history_[j].rhs, Word());
      Certificate c = rule_ref(x, j, Word(), Scalar(1));
      cert_add(c, Word(), -(i + 1), z, Scalar(-1));
      if (static_cast<int>(index_.size()) >= opts.max_rules) {
        completed_ = false;
        pairs.clear();
        break;
      }
      pending.emplace_back(std::move(diff), std::move(c), true);
      drain();
    }
  }
  derived_ = 0;
  for (std::size_t k = 0; k < history_.size(); ++k)
    if (alive_[k]) {
      active_.push_back(history_[k]);
      active_ids_.push_back(static_cast<int>(k));
      derived_ += derived_flag_[k];
    }
}

int RewriteSystem::add_rule(FreeElem rel, Certificate cert, bool derived) {
  const Word lead = leading_word(rel);
  const Scalar inv = rel.rbegin()->second.inverse();
  Rule r;
  r.lhs = lead;
  for (const auto& [w, c] : rel)
    if (w != lead) add_term(r.rhs, w, -c * inv);
  cert_add(r.cert, cert, inv);
  const int rid = static_cast<int>(history_.size());
  history_.push_back(std::move(r));
  alive_.push_back(1);
  derived_flag_.push_back(derived ? 1 : 0);
  index_[lead] = rid;
  ++lengths_[lead.size()];
  memo_.clear();
  return rid;
}

int RewriteSystem::match(const Word& w, std::size_t& pos) const {
  Word probe;
  for (std::size_t p = 0; p < w.size(); ++p) {
    int best = -1;
    for (const auto& [len, count] : lengths_) {
      if (p + len > w.size()) break;
      probe.assign(w, p, len);
      auto it = index_.find(probe);
      if (it != index_.end() && (best < 0 || it->second < best)) best = it->second;
    }
    if (best >= 0) {
      pos = p;
      return best;
    }
  }
  return -1;
}

bool RewriteSystem::is_normal(const Word& w) const {
  std::size_t pos = 0;
  return match(w, pos) < 0;
}

const FreeElem& RewriteSystem::reduce_word(const Word& w) const {
  auto it = memo_.find(w);
  if (it != memo_.end()) return it->second;
  std::size_t pos = 0;
  const int r = match(w, pos);
  FreeElem out;
  if (r < 0) {
    out.emplace(w, Scalar(1));
  } else {
    const Rule& rule = history_[r];
    const Word u = w.substr(0, pos);
    const Word v = w.substr(pos + rule.lhs.size());
    for (const auto& [t, c] : rule.rhs) {
      const FreeElem& sub = reduce_word(u + t + v);
      for (const auto& [s, x] : sub) add_term(out, s, c * x);
    }
  }
  return memo_.emplace(w, std::move(out)).first->second;
}

FreeElem RewriteSystem::reduce(const FreeElem& e) const {
  FreeElem out;
  for (const auto& [w, c] : e) {
    const FreeElem& nf = reduce_word(w);
    for (const auto& [s, x] : nf) add_term(out, s, c * x);
  }
  return out;
}

FreeElem RewriteSystem::reduce_raw(const FreeElem& e, Certificate& trace) const {
  FreeElem work = e;
  FreeElem out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    const Word w = it->first;
    const Scalar c = it->second;
    work.erase(it);
    std::size_t pos = 0;
    const int r = match(w, pos);
    if (r < 0) {
      add_term(out, w, c);
      continue;
    }
    const Rule& rule = history_[r];
    const Word u = w.substr(0, pos);
    const Word v = w.substr(pos + rule.lhs.size());
    cert_add(trace, u, -(r + 1), v, c);
    for (const auto& [t, x] : rule.rhs) add_term(work, u + t + v, c * x);
  }
  return out;
}

FreeElem RewriteSystem::reduce_traced(const FreeElem& e, Certificate& trace) const {
  Certificate raw;
  FreeElem out = reduce_raw(e, raw);
  cert_add(trace, expand(raw));
  return out;
}

const Certificate& RewriteSystem::expanded(int rid) const {
  auto it = expanded_.find(rid);
  if (it != expanded_.end()) return it->second;
  Certificate out = expand(history_[rid].cert);
  return expanded_.emplace(rid, std::move(out)).first->second;
}

Certificate RewriteSystem::expand(const Certificate& c) const {
  Certificate out;
  for (const auto& [k, x] : c) {
    const auto& [u, r, v] = k;
    if (r >= 0)
      cert_add(out, u, r, v, x);
    else
      cert_add(out, cert_sandwich(u, expanded(-r - 1), v), x);
  }
  return out;
}

Certificate RewriteSystem::rule_certificate(std::size_t i) const { return expanded(active_ids_.at(i)); }

int Presentation::add_relation(FreeElem r, std::string n, bool orient) {
  const int idx = static_cast<int>(relations.size());
  relations.push_back(std::move(r));
  relation_names.push_back(std::move(n));
  (orient ? oriented : unoriented).push_back(idx);
  return idx;
}

void Presentation::finalize(const CompletionOptions& opts) {
  rewriting = std::make_shared<RewriteSystem>(relations, oriented, opts);
}

bool Presentation::is_prefix_symbol(int id) const {
  const Family f = alphabet.symbol(id).family;
  return f == Family::A || f == Family::Abar;
}

FreeElem Presentation::a_elem(const std::vector<Scalar>& coords) const {
  FreeElem e;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) add_term(e, letter(a_symbol.at(i)), coords[i]);
  return e;
}

FreeElem Presentation::abar_elem(const std::vector<Scalar>& coords) const {
  FreeElem e;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) {
      if (abar_symbol.at(i) < 0) throw Error("MissingFamily", "Abar not present at this level");
      add_term(e, letter(abar_symbol[i]), coords[i]);
    }
  return e;
}

FreeElem normal_form(const FreeElem& e, const Presentation& p) {
  if (!level_has_rules(p.level)) throw Error("NoRulesAtThisLevel", level_name(p.level));
  if (!p.rewriting) throw Error("NoRulesAtThisLevel", "presentation not finalized");
  return p.rewriting->reduce(e);
}

}  // namespace hopfalg
