#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopfalg/connections.hpp"
#include "hopfalg/io.hpp"
#include "hopfalg/verifier.hpp"

using namespace hopfalg;

namespace {

constexpr int kOk = 0;
constexpr int kParse = 2;
constexpr int kCalculus = 3;
constexpr int kUnknown = 4;
constexpr int kFail = 5;

int exit_for(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return kOk;
    case CheckStatus::Unknown: return kUnknown;
    case CheckStatus::Fail: return kFail;
  }
  return kFail;
}

/// @brief Accepts "A..B" for the chain of levels from A to B, or a comma separated list.
std::vector<Level> parse_levels(const std::string& s) {
  std::vector<Level> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = static_cast<int>(parse_level(s.substr(0, dots)));
    const int hi = static_cast<int>(parse_level(s.substr(dots + 2)));
    if (lo > hi) throw Error("ParseError", "empty level range " + s);
    for (int l = lo; l <= hi; ++l) out.push_back(static_cast<Level>(l));
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_level(item));
  if (out.empty()) throw Error("ParseError", "no levels given");
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("ParseError", "cannot write " + out);
  f << text;
}

CheckStatus calculus_status(const CalculusBundle& b, bool with_second, std::vector<CheckLine>* lines) {
  CalculusReport r = validate_calculus(b.c1);
  bool ok = r.all_pass();
  if (lines) *lines = r.lines;
  if (with_second && b.c2) {
    CalculusReport r2 = validate_calculus2(*b.c2);
    ok = ok && r2.all_pass();
    if (lines)
      for (const auto& l : r2.lines) lines->push_back({"second_order." + l.name, l.pass, l.detail});
  }
  return ok ? CheckStatus::Pass : CheckStatus::Fail;
}

std::string matrix_text(const Mat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << "   ";
    for (int j = 0; j < m.cols(); ++j) os << " " << m(i, j).str();
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json matrix_json(const Mat& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct BuildArgs {
  std::string calc, level, out;
};

int cmd_build(const BuildArgs& a) {
  const CalculusBundle b = read_calculus_file(a.calc);
  const Level level = parse_level(a.level);
  std::vector<CheckLine> lines;
  if (calculus_status(b, level == Level::DX, &lines) != CheckStatus::Pass) {
    for (const auto& l : lines)
      if (!l.pass) std::cerr << "calculus " << l.name << " FAIL " << l.detail << "\n";
    return kCalculus;
  }
  const Algebroid alg = present(level, b.c1, b.c2 ? &*b.c2 : nullptr);
  emit(dump_presentation(alg), a.out);
  return kOk;
}

struct VerifyArgs {
  std::string calc, levels = "TX..HX", axioms, out, format = "text";
  int bound = 4;
  std::vector<std::string> level_bounds;
  bool timings = false;
};

int cmd_verify(const VerifyArgs& a) {
  const CalculusBundle b = read_calculus_file(a.calc);
  SuiteOptions opts;
  opts.levels = parse_levels(a.levels);
  opts.bound = a.bound;
  opts.axioms = split_list(a.axioms);
  for (const auto& lb : a.level_bounds) {
    const auto eq = lb.find('=');
    if (eq == std::string::npos) throw Error("ParseError", "expected LEVEL=BOUND, got " + lb);
    opts.level_bounds.emplace_back(parse_level(lb.substr(0, eq)), std::stoi(lb.substr(eq + 1)));
  }
  const SuiteReport rep = run_suite(b.c1, b.c2 ? &*b.c2 : nullptr, opts);
  emit(a.format == "structured" ? rep.to_json(a.timings) : rep.to_text(a.timings), a.out);
  return exit_for(rep.status);
}

struct ModuleArgs {
  std::string calc, rep, with, level = "HX", checks = "connection,tensor,hom,curvature", out, format = "text";
};

/// @brief Lines of a module report under a common prefix.
struct ModuleReport {
  std::vector<std::pair<std::string, CheckLine>> lines;
  std::vector<std::string> notes;
  void add(const std::string& group, const std::vector<CheckLine>& ls) {
    for (const auto& l : ls) lines.emplace_back(group, l);
  }
  CheckStatus status() const {
    for (const auto& [g, l] : lines)
      if (!l.pass) return CheckStatus::Fail;
    return CheckStatus::Pass;
  }
};

/// @brief Level carrying X letters above a level without them, used to obtain sigma inverse.
Level upper_x_level(Level l) {
  switch (l) {
    case Level::BOmega: return Level::BX;
    case Level::IBOmega: return Level::IBX;
    case Level::HOmega: return Level::HX;
    default: return l;
  }
}

/// @brief Reads a representation and extends it to alg, passing through upper when it is given.
ModuleRep realize(const std::string& path, const Algebroid& alg, const Algebroid* upper) {
  if (!upper) return extend_module(read_module_file(path, alg), alg);
  return restrict_module(extend_module(read_module_file(path, *upper), *upper), *upper, alg);
}

int cmd_module(const ModuleArgs& a) {
  const CalculusBundle b = read_calculus_file(a.calc);
  const Level level = parse_level(a.level);
  std::vector<CheckLine> calc_lines;
  if (calculus_status(b, true, &calc_lines) != CheckStatus::Pass) {
    for (const auto& l : calc_lines)
      if (!l.pass) std::cerr << "calculus " << l.name << " FAIL " << l.detail << "\n";
    return kCalculus;
  }
  const Calculus2* c2 = b.c2 ? &*b.c2 : nullptr;
  const Algebroid alg = present(level, b.c1, level == Level::DX ? c2 : nullptr);
  std::optional<Algebroid> upper;
  if (upper_x_level(level) != level) upper = present(upper_x_level(level), b.c1, nullptr);
  const Algebroid* up = upper ? &*upper : nullptr;

  ModuleReport report;
  std::optional<ModuleRep> rep;
  try {
    rep = realize(a.rep, alg, up);
  } catch (const RelationViolated& e) {
    std::ostringstream os;
    if (a.format == "structured") {
      nlohmann::ordered_json j{{"level", level_name(level)},
                               {"status", "FAIL"},
                               {"error", e.code()},
                               {"relation", e.relation()},
                               {"relation_name", e.relation_name()},
                               {"defect", matrix_json(e.defect())}};
      os << j.dump(2) << "\n";
    } else {
      os << "module " << level_name(level) << "\n";
      os << "validate FAIL RelationViolated relation " << e.relation() << " " << e.relation_name() << "\n";
      os << "  defect\n" << matrix_text(e.defect());
      os << "overall FAIL\n";
    }
    emit(os.str(), a.out);
    return kFail;
  }
  report.lines.emplace_back("validate", CheckLine{"relations", true, ""});

  std::optional<ModuleRep> other;
  if (!a.with.empty()) other = realize(a.with, alg, up);
  const ModuleRep unit = validate_module(unit_module_spec(alg), alg.pres);

  for (const auto& c : split_list(a.checks)) {
    if (c == "connection") {
      if (level == Level::TX) {
        report.notes.push_back("connection skipped: TX carries no coring");
        continue;
      }
      report.add("connection", induced_connection(*rep, alg).checks);
    } else if (c == "tensor") {
      if (level == Level::TX) {
        report.notes.push_back("tensor skipped: TX carries no coring");
        continue;
      }
      report.add("tensor.self", tensor_modules(*rep, *rep, alg).checks);
      report.add("tensor.unit_left", tensor_modules(unit, *rep, alg).checks);
      report.add("tensor.unit_right", tensor_modules(*rep, unit, alg).checks);
      if (other) {
        report.add("tensor.with", tensor_modules(*rep, *other, alg).checks);
        report.add("tensor.with_swapped", tensor_modules(*other, *rep, alg).checks);
      }
    } else if (c == "hom") {
      if (level != Level::HOmega && level != Level::HX) {
        report.notes.push_back("hom skipped: inner homs are built at HOmega and HX");
        continue;
      }
      report.add("hom.self", hom_modules(*rep, *rep, alg).checks);
      report.add("hom.unit", hom_modules(*rep, unit, alg).checks);
      if (other) report.add("hom.with", hom_modules(*rep, *other, alg).checks);
    } else if (c == "curvature") {
      if (!level_has_x(level) || level == Level::TX) {
        report.notes.push_back("curvature skipped: no X letters at this level");
        continue;
      }
      if (!c2) {
        report.notes.push_back("curvature skipped: no second-order data");
        continue;
      }
      report.add("curvature", curvature_and_flatness(*rep, alg, c2).checks);
    } else {
      throw Error("ParseError", "unknown module check " + c);
    }
  }

  std::ostringstream os;
  const CheckStatus st = report.status();
  if (a.format == "structured") {
    nlohmann::ordered_json j;
    j["level"] = level_name(level);
    j["dim"] = rep->dim;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& [g, l] : report.lines)
      j["checks"].push_back({{"group", g}, {"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    j["notes"] = report.notes;
    j["status"] = status_name(st);
    os << j.dump(2) << "\n";
  } else {
    os << "module " << level_name(level) << " dim=" << rep->dim << "\n";
    for (const auto& [g, l] : report.lines)
      os << g << " " << l.name << " " << (l.pass ? "PASS" : "FAIL") << (l.pass || l.detail.empty() ? "" : " " + l.detail)
         << "\n";
    for (const auto& n : report.notes) os << "note " << n << "\n";
    os << "overall " << status_name(st) << "\n";
  }
  emit(os.str(), a.out);
  return exit_for(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations and exact checks for bialgebroids and Hopf algebroids of vector fields"};
  app.require_subcommand(1);

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "Dump the presentation of one level");
  build->add_option("--calc", ba.calc, "Calculus file")->required();
  build->add_option("--level", ba.level, "Level name")->required();
  build->add_option("--out", ba.out, "Output file (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the axiom suite");
  verify->add_option("--calc", va.calc, "Calculus file")->required();
  verify->add_option("--levels,--level", va.levels, "Levels as A..B or a comma separated list");
  verify->add_option("--bound", va.bound, "Word-length bound");
  verify->add_option("--level-bound", va.level_bounds, "Per-level bound as LEVEL=D");
  verify->add_option("--axioms", va.axioms, "Comma separated axiom ids (default all applicable)");
  verify->add_option("--out", va.out, "Output file (default stdout)");
  verify->add_option("--format", va.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  verify->add_flag("--timings", va.timings, "Include timings in the report");

  ModuleArgs ma;
  auto* module = app.add_subcommand("module", "Validate a module and check its connection data");
  module->add_option("--calc", ma.calc, "Calculus file")->required();
  module->add_option("--rep", ma.rep, "Representation file")->required();
  module->add_option("--with", ma.with, "Second representation for the tensor and hom cross-checks");
  module->add_option("--level", ma.level, "Level name");
  module->add_option("--checks", ma.checks, "Comma separated subset of connection,tensor,hom,curvature");
  module->add_option("--out", ma.out, "Output file (default stdout)");
  module->add_option("--format", ma.format, "Report format")->check(CLI::IsMember({"text", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*build) return cmd_build(ba);
    if (*verify) return cmd_verify(va);
    if (*module) return cmd_module(ma);
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << "\n";
    const std::string& code = e.code();
    if (code == "NotPivotal" || code == "PivotalWedgeFails" || code == "MissingSecondOrder") return kCalculus;
    if (code == "NoCompatibleExtension" || code == "ShapeMismatch") return kFail;
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error " << e.what() << "\n";
    return kParse;
  }
  return kParse;
}
