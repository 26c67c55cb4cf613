#include "cli.hpp"

#include "strata/cyclic.hpp"
#include "strata/json_io.hpp"
#include "strata/parallel.hpp"
#include "strata/pcone.hpp"
#include "strata/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace strata::cli {
namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int n = 0;
  std::string r;
  std::string s;
  std::string p = "2";
  std::string format;
  std::string kind;
  std::string weight;
  std::string suite;
  int max_n = 6;
  std::string primes = "2,3,5";
  int jobs = 0;
  std::string out_path;
  bool paper_variant = false;
};

Int parse_int(const std::string& text, const std::string& what) {
  const bool digits = !text.empty() && text.find_first_not_of("-0123456789") == std::string::npos &&
                      text.find('-', 1) == std::string::npos && text != "-";
  if (!digits) throw UsageError("malformed " + what + " '" + text + "'");
  return Int(text);
}

// nullopt means symbolic.
std::optional<Int> parse_prime(const std::string& text) {
  if (text == "symbolic") return std::nullopt;
  Int p = parse_int(text, "--p");
  if (p < 2) throw UsageError("--p must be at least 2 or 'symbolic'");
  return p;
}

Int numeric_prime(const Config& c, const std::string& what) {
  const auto p = parse_prime(c.p);
  if (!p) throw UsageError(what + " needs a numeric --p");
  return *p;
}

void check_n(const Config& c) {
  if (c.n < 1 || c.n > kMaxModulus) throw UsageError("--n must lie in 1.." + std::to_string(kMaxModulus));
}

IndexSet parse_set(const std::string& text, int n, const std::string& flag) {
  try {
    return IndexSet::parse(text, n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string format_or(const Config& c, const std::string& fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "text") throw UsageError("--format must be json or text");
  return f;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void print_hrep_text(std::ostream& out, const Matrix& hrep) {
  if (hrep.empty()) out << "(no inequalities)\n";
  for (const Vec& f : hrep) out << format_inequality(f) << "\n";
}

// ---------------------------------------------------------------- phi

int cmd_phi(const Config& c, std::ostream& out) {
  check_n(c);
  const IndexSet R = parse_set(c.r, c.n, "--r");
  const IndexSet S = parse_set(c.s, c.n, "--s");
  const std::string format = format_or(c, "text");
  const IndexSet T = phi(R, S);
  if (!c.paper_variant) {
    if (format == "json") {
      print_json(out, Json{{"n", c.n}, {"R", index_set_to_json(R)}, {"S", index_set_to_json(S)},
                           {"phi", index_set_to_json(T)}});
    } else {
      out << T.to_string() << "\n";
    }
    return kExitOk;
  }
  const IndexSet V = phi_odd_offset_formula(S);
  const bool agree = V == T;
  if (format == "json") {
    print_json(out, Json{{"n", c.n},
                         {"R", index_set_to_json(R)},
                         {"S", index_set_to_json(S)},
                         {"phi", index_set_to_json(T)},
                         {"paper_variant", index_set_to_json(V)},
                         {"agree", agree},
                         {"paper_variant_applies", R.empty()}});
  } else {
    out << std::left << std::setw(16) << "phi" << "paper_variant\n";
    out << std::setw(16) << T.to_braced() << V.to_braced();
    if (!agree) out << "  discrepant";
    if (!R.empty()) out << "  (formula stated for R = {})";
    out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- cone

const std::vector<std::string> kKinds{"pha", "crs", "isum", "lw", "gs", "dominant"};

StratumContext stratum(const Config& c, bool nonempty) {
  check_n(c);
  const IndexSet R = parse_set(c.r, c.n, "--r");
  const IndexSet S = parse_set(c.s, c.n, "--s");
  if (nonempty && S.empty()) throw UsageError("--s must be nonempty for this cone");
  return StratumContext(c.n, R, S, numeric_prime(c, "this command"));
}

// Cones that are a p-cone attached to a context can also be printed symbolically.
std::optional<PCone> pcone_for(const Config& c, const StratumContext& ctx) {
  if (c.kind == "crs") return cone_crs(ctx);
  if (c.kind == "pha") return cone_pha_adjugate(ctx);
  return std::nullopt;
}

PolyCone build_cone(const Config& c) {
  check_n(c);
  const IndexSet R = parse_set(c.r, c.n, "--r");
  if (c.kind == "gs") return cone_gs(c.n, R);
  if (c.kind == "dominant") return cone_dominant(c.n, R);
  if (c.kind == "lw") return cone_lw(c.n, R, numeric_prime(c, "cone lw"));
  const StratumContext ctx = stratum(c, true);
  if (c.kind == "pha") return cone_pha(ctx);
  if (c.kind == "crs") return cone_crs(ctx).realize();
  if (c.kind == "isum") return intersection_sum_cone(ctx);
  throw UsageError("unknown cone kind '" + c.kind + "'");
}

int cmd_cone_symbolic(const Config& c, std::ostream& out, const std::string& format) {
  if (c.kind != "crs" && c.kind != "pha") throw UsageError("--p symbolic is only available for pha and crs");
  check_n(c);
  const IndexSet R = parse_set(c.r, c.n, "--r");
  const IndexSet S = parse_set(c.s, c.n, "--s");
  if (S.empty()) throw UsageError("--s must be nonempty for this cone");
  // Sign sets do not depend on p; any prime serves to build the expressions.
  const StratumContext ctx(c.n, R, S, Int(2));
  const PCone pc = *pcone_for(c, ctx);
  if (format == "text") {
    for (const PExpression& e : pc.expressions) out << format_inequality(e.symbolic_coefficients()) << "\n";
    return kExitOk;
  }
  Json exprs = Json::array();
  for (const PExpression& e : pc.expressions) {
    exprs.push_back(Json{{"d", e.d}, {"T", index_set_to_json(e.T)},
                         {"inequality", format_inequality(e.symbolic_coefficients())}});
  }
  print_json(out, Json{{"n", c.n}, {"R", index_set_to_json(R)}, {"S", index_set_to_json(S)}, {"p", "symbolic"},
                       {"expressions", exprs}});
  return kExitOk;
}

int cmd_cone(const Config& c, std::ostream& out, std::ostream& err) {
  const std::string format = format_or(c, "json");
  if (!parse_prime(c.p)) return cmd_cone_symbolic(c, out, format);
  PolyCone cone = PolyCone::zero(1);
  try {
    cone = build_cone(c);
  } catch (const PhaConstructionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  if (format == "json") {
    Json j = to_json(cone);
    if (c.kind == "crs" || c.kind == "pha") {
      const StratumContext ctx = stratum(c, true);
      const PCone pc = *pcone_for(c, ctx);
      Json exprs = Json::array();
      for (const PExpression& e : pc.expressions) {
        exprs.push_back(Json{{"d", e.d}, {"T", index_set_to_json(e.T)}});
      }
      Json wrapped = to_json(ctx);
      wrapped["kind"] = c.kind;
      wrapped["expressions"] = exprs;
      for (const auto& [k, v] : j.items()) {
        if (k != "n") wrapped[k] = v;
      }
      j = wrapped;
    } else {
      Json wrapped{{"kind", c.kind}};
      for (const auto& [k, v] : j.items()) wrapped[k] = v;
      j = wrapped;
    }
    print_json(out, j);
    return kExitOk;
  }
  if (c.kind == "crs" || c.kind == "pha") {
    const StratumContext ctx = stratum(c, true);
    const PCone pc = *pcone_for(c, ctx);
    for (const PExpression& e : pc.expressions) out << format_inequality(e.coefficients(ctx.p)) << "\n";
    return kExitOk;
  }
  print_hrep_text(out, cone.hrep());
  return kExitOk;
}

// ---------------------------------------------------------------- member

Vec parse_weight(const std::string& text, int n) {
  Vec w;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    w.push_back(parse_int(b == std::string::npos ? "" : token.substr(b, e - b + 1), "weight entry"));
  }
  if (static_cast<int>(w.size()) != n) {
    throw UsageError("--weight has " + std::to_string(w.size()) + " entries, expected " + std::to_string(n));
  }
  return w;
}

int cmd_member(const Config& c, std::ostream& out, std::ostream& err) {
  check_n(c);
  const std::string format = format_or(c, "json");
  const Vec w = parse_weight(c.weight, c.n);
  PolyCone cone = PolyCone::zero(1);
  try {
    cone = build_cone(c);
  } catch (const PhaConstructionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  const auto violated = cone.violated_form(w);
  if (format == "json") {
    Json j{{"kind", c.kind}, {"weight", vec_to_json(w)}, {"member", !violated}};
    if (violated) {
      j["violated_form"] = vec_to_json(*violated);
      j["value"] = dot(*violated, w).str();
    }
    print_json(out, j);
  } else {
    out << (violated ? "false" : "true") << "\n";
    if (violated) out << "violated: " << format_inequality(*violated) << "  (value " << dot(*violated, w) << ")\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- classify

Json flags_json(const PConeFlags& f) {
  return Json{{"s_adapted", f.s_adapted}, {"homogeneous", f.homogeneous}, {"admissible", f.admissible},
              {"positive", f.positive}, {"hasse_admissible", f.hasse_admissible}};
}

int cmd_classify(const Config& c, std::ostream& out) {
  const StratumContext ctx = stratum(c, true);
  const std::string format = format_or(c, "json");
  const ChainDiagram diagram(ctx.R, ctx.S);
  std::vector<int> removable;
  if (ctx.S.size() >= 2) {
    for (int j : ctx.S.members()) {
      if (is_removable(j, ctx.R, ctx.S)) removable.push_back(j);
    }
  }
  const bool regular = classify_hasse_regular(ctx.R, ctx.S);
  const PConeFlags crs = classify_pcone(cone_crs(ctx));
  const PConeFlags pha = classify_pcone(cone_pha_adjugate(ctx));
  Json comps = Json::array();
  for (const ChainComponent& comp : diagram.components()) {
    comps.push_back(Json{{"vertices", comp.vertices}, {"tail", comp.tail}, {"head", comp.head}});
  }
  if (format == "json") {
    Json j = to_json(ctx);
    j["phi"] = index_set_to_json(phi(ctx.R, ctx.S));
    j["components"] = comps;
    j["removable"] = removable;
    j["irreducible"] = ctx.S.size() >= 2 && removable.empty();
    j["hasse_regular"] = regular;
    j["crs_flags"] = flags_json(crs);
    j["pha_flags"] = flags_json(pha);
    print_json(out, j);
    return kExitOk;
  }
  out << "phi: " << phi(ctx.R, ctx.S).to_braced() << "\n";
  out << "components:";
  for (const ChainComponent& comp : diagram.components()) {
    out << " [";
    for (std::size_t k = 0; k < comp.vertices.size(); ++k) out << (k ? "," : "") << comp.vertices[k];
    out << "]";
  }
  out << "\nremovable: " << IndexSet(ctx.n, removable).to_braced() << "\n";
  out << "hasse_regular: " << (regular ? "true" : "false") << "\n";
  out << "pha homogeneous: " << (pha.homogeneous ? "true" : "false") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  VerifyParams params;
  if (c.max_n < 1 || c.max_n > kMaxNCap) throw UsageError("--max-n must lie in 1.." + std::to_string(kMaxNCap));
  params.max_n = c.max_n;
  params.primes.clear();
  std::stringstream ss(c.primes);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const Int p = parse_int(token, "prime");
    if (p < 2) throw UsageError("primes must be at least 2");
    params.primes.push_back(p);
  }
  if (params.primes.empty()) throw UsageError("--primes is empty");
  params.jobs = resolve_jobs(c.jobs);
  const VerificationReport report = run_suite(c.suite, params);
  const std::string text = report.to_json().dump(2) + "\n";
  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + c.out_path + "'");
    file << text;
  }
  err << "suite " << report.suite << ": " << report.count("pass") << " pass, " << report.count("fail") << " fail, "
      << report.count("skipped") << " skipped, " << report.discrepancies.size() << " discrepancies\n";
  return report.failures() == 0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-cones of Ekedahl-Oort strata of A1-type Shimura varieties", "strata-cones"};
  app.require_subcommand(1);
  Config c;

  auto add_context = [&](CLI::App* sub, bool needs_s) {
    sub->add_option("--n", c.n, "size of E_n")->required();
    sub->add_option("--r", c.r, "parabolic type R, comma list (\"\" for empty)")->required();
    auto* s = sub->add_option("--s", c.s, "stratum S, comma list");
    if (needs_s) s->required();
    sub->add_option("--p", c.p, "prime, or 'symbolic'");
    sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* phi_cmd = app.add_subcommand("phi", "print the sign set phi(R, S)");
  add_context(phi_cmd, true);
  phi_cmd->add_flag("--paper-variant", c.paper_variant, "also print the odd-offset closed formula");

  auto* cone_cmd = app.add_subcommand("cone", "construct a cone");
  cone_cmd->add_option("kind", c.kind, "pha, crs, isum, lw, gs or dominant")->required()->check(CLI::IsMember(kKinds));
  add_context(cone_cmd, false);

  auto* member_cmd = app.add_subcommand("member", "test membership of a weight");
  member_cmd->add_option("--kind", c.kind, "cone kind")->required()->check(CLI::IsMember(kKinds));
  member_cmd->add_option("--weight", c.weight, "comma separated integers")->required();
  add_context(member_cmd, false);

  auto* classify_cmd = app.add_subcommand("classify", "classify a stratum");
  add_context(classify_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", c.suite, "theorem, identity, hasse, generators, conjecture, products or all")
      ->required()
      ->check(CLI::IsMember({"theorem", "identity", "hasse", "generators", "conjecture", "products", "all"}));
  verify_cmd->add_option("--max-n", c.max_n, "largest n (at most " + std::to_string(kMaxNCap) + ")");
  verify_cmd->add_option("--primes", c.primes, "comma separated primes");
  verify_cmd->add_option("--jobs", c.jobs, "worker threads (default: STRATA_CONES_JOBS or 1)");
  verify_cmd->add_option("--out", c.out_path, "report path (default: stdout)");

  std::vector<std::string> storage{"strata-cones"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (phi_cmd->parsed()) return cmd_phi(c, out);
    if (cone_cmd->parsed()) return cmd_cone(c, out, err);
    if (member_cmd->parsed()) return cmd_member(c, out, err);
    if (classify_cmd->parsed()) return cmd_classify(c, out);
    if (verify_cmd->parsed()) return cmd_verify(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

}  // namespace strata::cli
