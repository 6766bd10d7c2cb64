#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hopfalg/connections.hpp"
#include "hopfalg/io.hpp"
#include "hopfalg/verifier.hpp"

using namespace hopfalg;

namespace {

const std::string kData = HOPFALG_DATA_DIR;
const std::string kCli = HOPFALG_CLI;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  /// @brief Records a failed condition; the criterion stays red.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail << " [" << what << "]";
  }
};

Calculus1 load(const std::string& file) { return read_calculus_file(kData + "/" + file).c1; }

struct Named {
  std::string name;
  Calculus1 c1;
  std::optional<Calculus2> c2;
};

std::vector<Named> calculi() {
  std::vector<Named> out;
  for (const char* f : {"gamma2.quiver.json", "triangle.quiver.json", "m2.matrix_inner.json", "d6.group.json"}) {
    CalculusBundle b = read_calculus_file(kData + "/" + f);
    out.push_back({b.c1.name, b.c1, b.c2});
  }
  return out;
}

int sym(const Presentation& p, const std::string& label) {
  for (int i = 0; i < p.alphabet.size(); ++i)
    if (p.alphabet.label(i) == label) return i;
  throw Error("MissingSymbol", label);
}

FreeElem w(const Presentation& p, std::initializer_list<std::string> labels) {
  Word word;
  for (const std::string& l : labels) word += letter(sym(p, l));
  return word_elem(word);
}

std::string failing_lines(const std::vector<CheckLine>& lines) {
  std::string s;
  for (const CheckLine& l : lines)
    if (!l.pass) s += l.name + ";";
  return s;
}

void run_axioms(Outcome& o, const std::string& tag, const Algebroid& alg, const std::vector<std::string>& ids,
                const std::function<int(const std::string&)>& bound, const CheckOptions& opts = {}) {
  for (const std::string& id : ids) {
    const AxiomCheck c = check(id, alg, bound(id), opts);
    o.require(c.status == CheckStatus::Pass, tag + " " + level_name(alg.pres.level) + " " + id + " " +
                                                 status_name(c.status) + " at D=" + std::to_string(c.bound));
  }
}

/// @brief Duality and calculus identities for the four calculi.
void criterion1(Outcome& o) {
  for (const Named& n : calculi()) {
    const CalculusReport r = validate_calculus(n.c1);
    o.require(r.all_pass(), n.name + " " + failing_lines(r.lines));
    if (n.c2) {
      const CalculusReport r2 = validate_calculus2(*n.c2);
      o.require(r2.all_pass(), n.name + " second order " + failing_lines(r2.lines));
      o.require(pivotal_wedge_holds(*n.c2), n.name + " pivotal wedge");
    }
  }
  o.detail << " four calculi validated";
}

/// @brief Bialgebroid axioms at BOmega and BX.
void criterion2(Outcome& o) {
  const std::vector<std::string> ids{"delta_well_defined", "epsilon_well_defined", "coassoc", "counit_law", "delta_rs",
                                     "counit_rs", "takeuchi", "delta_unit", "epsilon_unit"};
  for (const Named& n : calculi())
    for (Level lv : {Level::BOmega, Level::BX}) {
      const Algebroid alg = present(lv, n.c1);
      run_axioms(o, n.name, alg, ids, [](const std::string& id) { return id == "coassoc" ? 5 : 4; });
    }
  o.detail << " 9 axioms x 2 levels x 4 calculi";
}

/// @brief Path algebra isomorphism for the two quivers.
void criterion3(Outcome& o) {
  for (const char* f : {"gamma2.quiver.json", "triangle.quiver.json"}) {
    const Calculus1 c = load(f);
    const PathAlgebraBridge b = path_algebra_bridge(c);
    for (const auto& [name, ok] : b.checks) o.require(ok, c.name + " " + name);
    const Algebroid tx = present(Level::TX, c);
    for (const auto& [s, img] : b.backward)
      o.require(normal_form(substitute(img, b.forward), tx.pres) == normal_form(word_elem(letter(s)), tx.pres),
                c.name + " round trip on " + tx.pres.alphabet.label(s));
  }
  o.detail << " gamma2 and triangle";
}

/// @brief Antipode axioms with the closed-form Upsilon at D = 6.
void criterion4(Outcome& o) {
  for (const char* f : {"gamma2.quiver.json", "m2.matrix_inner.json", "d6.group.json"}) {
    const Calculus1 c = load(f);
    const std::optional<Mat> documented = documented_upsilon(c);
    o.require(documented.has_value(), c.name + " closed-form Upsilon");
    // Independent restatement of the closed form: f_s - f_t on arrows, zero on the free basis.
    if (documented && c.quiver)
      for (std::size_t e = 0; e < c.quiver->edges.size(); ++e)
        o.require(documented->column(static_cast<int>(e)) ==
                      sub(c.base->basis(c.quiver->edges[e].source), c.base->basis(c.quiver->edges[e].target)),
                  c.name + " Upsilon on arrow " + c.quiver->edges[e].label);
    if (documented && !c.quiver)
      for (const Vec& g : c.dual_gens.gens) o.require(is_zero(documented->apply(g)), c.name + " Upsilon on free basis");
    for (Level lv : {Level::HOmega, Level::HX}) {
      const Algebroid alg = present(lv, c);
      if (lv == Level::HX) {
        o.require(alg.hopf.upsilon.has_value() && documented && *alg.hopf.upsilon == *documented,
                  c.name + " attached Upsilon is the closed form");
      }
      std::vector<std::string> ids{"s_well_defined", "antipode_left", "antipode_right", "s_s_inv_inverse"};
      if (lv == Level::HOmega) ids.push_back("s_involutive");
      run_axioms(o, c.name, alg, ids, [](const std::string&) { return 6; });
    }
  }
  o.detail << " gamma2, m2, d6 at HOmega and HX, D=6";
}

/// @brief Flat level: builds, flat reductions and the derived identities.
void criterion5(Outcome& o) {
  // Triangle: composing the two 2-step loops at a vertex gives the same path algebra element.
  {
    const CalculusBundle b = read_calculus_file(kData + "/triangle.quiver.json");
    const Algebroid dx = present(Level::DX, b.c1, &*b.c2);
    const Presentation& p = dx.pres;
    auto arrow = [&](const std::string& e) { return w(p, {"X[<" + e + "]"}) - w(p, {"A[" + e.substr(1) + "]"}); };
    const std::vector<std::array<std::string, 4>> loops{{"01", "10", "02", "20"}, {"10", "01", "12", "21"},
                                                        {"20", "02", "21", "12"}};
    for (const auto& [a1, a2, b1, b2] : loops) {
      const FreeElem e = arrow(a2) * arrow(a1) - arrow(b2) * arrow(b1);
      o.require(ideal_membership(e, p, 4).member(), "triangle flat reduction " + a1 + a2 + " vs " + b1 + b2);
    }
    const AxiomCheck flat = check("flatness_consequence", dx, 4);
    o.require(flat.status == CheckStatus::Pass, "triangle flatness_consequence");
  }
  // D6: the two free vector fields commute.
  {
    const CalculusBundle b = read_calculus_file(kData + "/d6.group.json");
    const Algebroid dx = present(Level::DX, b.c1, &*b.c2);
    const Presentation& p = dx.pres;
    const FreeElem e = w(p, {"X[f_xi]", "X[f_tau]"}) - w(p, {"X[f_tau]", "X[f_xi]"});
    o.require(ideal_membership(e, p, 4).member(), "d6 flat condition");
    const AxiomCheck ext = check("extendability_consequence", dx, 8);
    o.require(ext.status == CheckStatus::Pass, "d6 extendability_consequence");
    const AxiomCheck derived = check("derived_flat_identities", dx, 8);
    o.require(derived.status != CheckStatus::Fail, "d6 derived identities FAIL");
    o.detail << " d6 derived identities " << status_name(derived.status) << " at D=8";
  }
  // Gamma2 with Omega2 = 0: the derived identities hold trivially and must not be UNKNOWN.
  {
    const Calculus1 c = load("gamma2.quiver.json");
    const Calculus2 c2 = build_quiver_omega2(c);
    o.require(c2.omega2->dim == 0, "gamma2 Omega2 is zero");
    const Algebroid dx = present(Level::DX, c, &c2);
    const AxiomCheck derived = check("derived_flat_identities", dx, 8);
    o.require(derived.status == CheckStatus::Pass, "gamma2 derived identities at D=8");
  }
}

ModuleRep quiver_module(const std::vector<int>& arrows, int nv, const Algebroid& alg, const Algebroid& tx) {
  QuiverRep r;
  r.dims.assign(nv, 1);
  for (int a : arrows) {
    Mat m(1, 1);
    m(0, 0) = Scalar(a);
    r.arrows.push_back(m);
  }
  return extend_module(translate_spec(quiver_rep_bridge(r, tx), tx.pres.alphabet, alg.pres.alphabet), alg);
}

/// @brief Modules: unit object, Leibniz, tensor cross-checks, adjunction maps and curvature.
void criterion6(Outcome& o) {
  int units = 0;
  for (const Named& n : calculi())
    for (int l = static_cast<int>(Level::TX); l <= static_cast<int>(Level::DX); ++l) {
      const Level lv = static_cast<Level>(l);
      std::optional<Calculus2> c2 = n.c2;
      if (lv == Level::DX && !c2 && n.c1.quiver) c2 = build_quiver_omega2(n.c1);
      if (lv == Level::DX && !c2) continue;
      const Algebroid alg = present(lv, n.c1, c2 ? &*c2 : nullptr);
      try {
        const ModuleRep u = validate_module(unit_module_spec(alg), alg.pres);
        ++units;
        if (lv != Level::TX) {
          const ConnectionData cd = induced_connection(u, alg);
          o.require(cd.all_pass(), n.name + " unit connection " + failing_lines(cd.checks));
        }
        if (lv == Level::DX) o.require(curvature_and_flatness(u, alg).flat, n.name + " unit curvature");
      } catch (const Error& e) {
        o.require(false, n.name + " unit at " + level_name(lv) + ": " + e.what());
      }
    }
  const Calculus1 g = load("gamma2.quiver.json");
  const Algebroid tx = present(Level::TX, g);
  const Algebroid hx = present(Level::HX, g);
  std::vector<ModuleRep> mods{validate_module(unit_module_spec(hx), hx.pres), quiver_module({2, 3}, 2, hx, tx),
                              quiver_module({-1, 4}, 2, hx, tx),
                              extend_module(read_module_file(kData + "/gamma2_bridge2.module.json", hx), hx)};
  for (const ModuleRep& m : mods) {
    const ConnectionData cd = induced_connection(m, hx);
    o.require(cd.all_pass(), "leibniz " + failing_lines(cd.checks));
  }
  int pairs = 0;
  for (const ModuleRep& m : mods)
    for (const ModuleRep& n : mods) {
      const TensorModule t = tensor_modules(m, n, hx);
      o.require(t.all_pass(), "tensor pair " + failing_lines(t.checks));
      ++pairs;
    }
  o.require(pairs >= 10, "at least ten tensor pairs");
  int homs = 0;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const HomModules h = hom_modules(mods[i], mods[(i + 1) % mods.size()], hx);
    o.require(h.all_pass(), "hom adjunction " + failing_lines(h.checks));
    ++homs;
  }
  // Every module that validates at DX is flat.
  const CalculusBundle tri = read_calculus_file(kData + "/triangle.quiver.json");
  const Algebroid tdx = present(Level::DX, tri.c1, &*tri.c2);
  const ModuleRep flat = extend_module(read_module_file(kData + "/triangle_flat.module.json", tdx), tdx);
  const CurvatureReport cr = curvature_and_flatness(flat, tdx);
  o.require(cr.flat && cr.curvature.is_zero(), "triangle module curvature");
  const Calculus2 g2 = build_quiver_omega2(g);
  const Algebroid gdx = present(Level::DX, g, &g2);
  const ModuleRep gm = extend_module(translate_spec(mods[1].spec(), hx.pres.alphabet, gdx.pres.alphabet), gdx);
  o.require(curvature_and_flatness(gm, gdx).flat, "gamma2 module curvature");
  o.detail << " units=" << units << " tensor_pairs=" << pairs << " hom_pairs=" << homs;
}

FreeElem random_elem(std::mt19937& rng, const Presentation& p, int len) {
  std::uniform_int_distribution<int> nterms(1, 3), length(0, len), symbol(0, p.alphabet.size() - 1), coef(-3, 3);
  FreeElem e;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word wd;
    const int l = length(rng);
    for (int k = 0; k < l; ++k) wd += letter(symbol(rng));
    add_term(e, wd, Scalar(coef(rng)));
  }
  return e;
}

/// @brief Rewriting equality against the raw membership oracle on random pairs.
void criterion7(Outcome& o) {
  constexpr int kPairs = 100;
  MembershipOptions raw;
  raw.use_rewriting = false;
  raw.max_columns = 50000;
  int total = 0, equal = 0;
  for (const Named& n : calculi())
    for (Level lv : {Level::TX, Level::BOmega, Level::BX}) {
      const Algebroid alg = present(lv, n.c1);
      const Presentation& p = alg.pres;
      std::mt19937 rng(7);
      int agree = 0;
      for (int i = 0; i < kPairs; ++i) {
        const FreeElem a = random_elem(rng, p, 2);
        FreeElem b = a;
        if (i % 2 == 0) {
          // Add one relation instance, possibly with a one-letter context.
          const FreeElem& r = p.relations[rng() % p.relations.size()];
          Word u, v;
          const int k = static_cast<int>(rng() % 3);
          if (k == 1) u = letter(static_cast<int>(rng() % p.alphabet.size()));
          if (k == 2) v = letter(static_cast<int>(rng() % p.alphabet.size()));
          b += sandwich(u, r, v) * word_elem(Word(), Scalar(static_cast<int>(rng() % 3) + 1));
        } else {
          b += random_elem(rng, p, 2);
        }
        const int bound = std::max(max_length(a), max_length(b)) + 2;
        const bool nf_equal = normal_form(a, p) == normal_form(b, p);
        const bool member = ideal_membership(a - b, p, bound, raw).member();
        agree += nf_equal == member;
        equal += nf_equal;
        ++total;
      }
      o.require(agree == kPairs, n.name + " " + level_name(lv) + " agreement " + std::to_string(agree));
    }
  o.detail << " pairs=" << total << " equal=" << equal;
}

int run_cli(const std::string& args, std::string& out) {
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// @brief Negative controls.
void criterion8(Outcome& o) {
  const Calculus1 bad = load("gamma2_corrupt_ev.quiver.json");
  const CalculusReport r = validate_calculus(bad);
  bool duality_fail = false;
  for (const CheckLine& l : r.lines) duality_fail = duality_fail || (!l.pass && l.name.rfind("duality.", 0) == 0);
  o.require(duality_fail, "corrupted ev reports a duality FAIL");
  std::string out;
  o.require(run_cli("verify --calc " + kData + "/gamma2_corrupt_ev.quiver.json", out) == 5, "corrupted ev exit 5");

  const Calculus1 g = load("gamma2.quiver.json");
  const Algebroid tx = present(Level::TX, g);
  try {
    validate_module(read_module_file(kData + "/gamma2_violating.module.json", tx), tx.pres);
    o.require(false, "violating module validated");
  } catch (const RelationViolated& e) {
    o.require(!e.defect().is_zero(), "defect is nonzero");
    o.require(e.relation_name().rfind("X.right_a", 0) == 0, "violated relation is the X A commutation");
  }

  SuiteOptions opts;
  opts.levels = {Level::BOmega, Level::BX, Level::HX};
  opts.bound = 1;
  const SuiteReport s = run_suite(g, nullptr, opts);
  o.require(s.status == CheckStatus::Unknown, "bound 1 suite is UNKNOWN");
  out.clear();
  const int code = run_cli("verify --calc " + kData + "/gamma2.quiver.json --bound 1", out);
  o.require(code == 4, "bound 1 exit 4");
  o.require(out.find("overall PASS") == std::string::npos, "bound 1 never PASS");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"duality and calculus suite", criterion1}, {"bialgebroid suite", criterion2},
      {"path algebra isomorphism", criterion3},   {"hopf suite", criterion4},
      {"flat suite", criterion5},                 {"module and connection suite", criterion6},
      {"oracle equivalence", criterion7},         {"negative controls", criterion8}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << static_cast<int>(s) << " s)" << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
