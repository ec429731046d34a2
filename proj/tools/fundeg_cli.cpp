// Command-line front end: degree / delta / nu / sweep / verify / zeros.
//
// Exit codes: 0 success (including vacuous verifier runs), 1 verifier
// conclusion failure, 2 parse or input error, 3 resource cap exceeded,
// 4 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fundeg/json_io.hpp"
#include "fundeg/rng.hpp"

namespace {

using namespace fundeg;

struct GlobalOpts {
  std::string format = "text";  // text | json | csv
  std::uint64_t cap = 1u << 24;
  unsigned threads = 0;  // 0 = resolve from env/hardware
  std::optional<std::uint64_t> seed;
};

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("FUNDEG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // parallel_count falls back to hardware concurrency
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON if the argument starts with '{' or '['; otherwise a path.
Json load_json_arg(const std::string& arg) {
  std::size_t i = 0;
  while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
  const std::string text =
      (i < arg.size() && (arg[i] == '{' || arg[i] == '[')) ? arg : read_text_file(arg);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
}

std::uint32_t infer_nvars(const std::string& text) {
  std::uint32_t best = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == 'x' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::uint32_t v = 0;
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        v = v * 10 + static_cast<std::uint32_t>(text[j++] - '0');
      best = std::max(best, v);
    }
  }
  return best;
}

void emit(const GlobalOpts& g, const Json& j, const std::string& text_form) {
  if (g.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text_form;
}

int cmd_degree(const GlobalOpts& g, const std::string& domain_spec,
               const std::string& codomain_spec, const std::string& table_arg,
               const std::string& table_file, const std::string& field_spec,
               const std::string& poly_text, const std::string& ring_spec,
               const std::string& nc_text, std::uint32_t nvars_flag) {
  Json rep;
  GroupFunction f = [&]() -> GroupFunction {
    if (!poly_text.empty()) {
      if (field_spec.empty()) throw ParseError("--poly requires --field");
      const FiniteField field = field_from_spec(Json(field_spec));
      const std::uint32_t nvars = nvars_flag ? nvars_flag : std::max(1u, infer_nvars(poly_text));
      const auto poly = poly_parse(field, nvars, poly_text);
      rep["pdeg"] = poly.pweight_degree();
      rep["total_degree"] = poly.total_degree();
      return poly.induced_function();
    }
    if (!nc_text.empty()) {
      if (ring_spec.empty()) throw ParseError("--nc requires --ring");
      const FiniteRing ring = FiniteRing::parse(ring_spec);
      const std::uint32_t nvars = nvars_flag ? nvars_flag : std::max(1u, infer_nvars(nc_text));
      const auto expr = nc_parse(ring, nvars, nc_text);
      rep["nc_degree"] = nc_degree(expr);
      return expr.induced_function(g.cap);
    }
    if (domain_spec.empty() || codomain_spec.empty())
      throw ParseError("table input requires --domain and --codomain");
    if (!table_arg.empty() && !table_file.empty())
      throw ParseError("--table and --table-file are mutually exclusive");
    const std::string src = !table_file.empty() ? read_text_file(table_file) : table_arg;
    if (src.empty()) throw ParseError("missing function input (--table, --poly or --nc)");
    const auto domain = FiniteAbelianGroup::parse(domain_spec);
    const auto codomain = FiniteAbelianGroup::parse(codomain_spec);
    return table_from_json(domain, codomain, load_json_arg(src));
  }();

  const DegreeReport dr = functional_degree_report(f);
  rep["degree"] = degree_to_json(dr.degree);
  Json parts = Json::array();
  for (const auto& [p, d] : dr.per_prime) {
    Json e;
    e["prime"] = p;
    e["degree"] = d;
    parts.push_back(std::move(e));
  }
  rep["per_prime"] = std::move(parts);
  rep["witness_level"] = dr.degree.is_finite() ? Json(dr.degree.value()) : Json(nullptr);
  if (dr.infinite_witness) {
    rep["infinite_witness"] = Json::array({dr.infinite_witness->first, dr.infinite_witness->second});
  }
  if (g.seed) rep["seed"] = *g.seed;

  std::ostringstream text;
  text << "degree: " << dr.degree << "\n";
  for (const auto& [p, d] : dr.per_prime) text << "prime " << p << ": degree " << d << "\n";
  if (dr.degree.is_finite()) text << "witness level: " << dr.degree.value() << "\n";
  if (rep.contains("pdeg"))
    text << "pdeg: " << rep["pdeg"] << ", total degree: " << rep["total_degree"] << "\n";
  if (rep.contains("nc_degree")) text << "nc degree: " << rep["nc_degree"] << "\n";
  emit(g, rep, text.str());
  return 0;
}

int cmd_delta(const GlobalOpts& g, const std::string& a_spec, const std::string& b_spec) {
  const auto A = FiniteAbelianGroup::parse(a_spec);
  const auto B = FiniteAbelianGroup::parse(b_spec);
  const Degree d = delta(A, B);
  Json rep;
  rep["A"] = A.to_string();
  rep["B"] = B.to_string();
  rep["delta"] = degree_to_json(d);
  std::ostringstream text;
  text << "delta: " << d << "\n";
  emit(g, rep, text.str());
  return 0;
}

int cmd_nu(const GlobalOpts& g, std::uint64_t p, std::uint32_t alpha, std::uint32_t beta,
           const std::string& group_spec, std::uint64_t modulus) {
  const bool cyclic_form = p != 0;
  const bool group_form = !group_spec.empty();
  if (cyclic_form == group_form)
    throw ParseError("use either --p/--alpha/--beta or --group/--modulus");

  Json rep;
  std::ostringstream text;
  if (cyclic_form) {
    if (alpha == 0 || beta == 0) throw ParseError("--alpha and --beta must be >= 1");
    const auto oracle = nu_cyclic_oracle(p, alpha, beta);
    const std::uint64_t hyp = hypothesis_value(p, alpha, beta);
    rep["group"] = oracle.group.to_string();
    rep["modulus"] = oracle.modulus;
    rep["nu_oracle"] = oracle.nu.value();
    const std::uint64_t pa = detail::ipow(p, alpha), pb = detail::ipow(p, beta);
    if (pa * pb <= 4096) {
      const auto dl = nu_via_delta(FiniteAbelianGroup({pa}), pb);
      rep["nu_delta"] = dl.nu.value();
    }
    rep["hypothesis"] = hyp;
    rep["matches_hypothesis"] = oracle.nu == Degree(hyp);
    text << "nu: " << oracle.nu << "\n";
    text << "hypothesis: " << hyp << " ("
         << (oracle.nu == Degree(hyp) ? "matches" : "differs") << ")\n";
  } else {
    const auto A = FiniteAbelianGroup::parse(group_spec);
    if (modulus < 2) throw ParseError("--modulus must be >= 2");
    const auto res = nu_via_delta(A, modulus);
    rep = nu_result_to_json(res);
    text << "nu: " << res.nu << "\n";
  }
  if (g.seed) rep["seed"] = *g.seed;
  emit(g, rep, text.str());
  return 0;
}

int cmd_sweep(const GlobalOpts& g, std::uint64_t p_max, std::uint32_t alpha_max,
              std::uint32_t beta_max) {
  const auto rows = conjecture_sweep(p_max, alpha_max, beta_max);
  if (g.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(sweep_row_to_json(r));
    Json rep;
    rep["rows"] = std::move(arr);
    if (g.seed) rep["seed"] = *g.seed;
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << sweep_csv_header() << "\n";
    for (const auto& r : rows) std::cout << sweep_row_to_csv(r) << "\n";
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& instance_arg) {
  const Json ij = load_json_arg(instance_arg);
  Instance inst = instance_from_json(ij);
  if (g.seed && inst.seed && *g.seed != *inst.seed)
    throw ParseError("--seed conflicts with the seed in the instance");
  const auto seed = inst.seed ? inst.seed : g.seed;
  const VerifierReport rep = run_verifier(inst, g.cap, resolve_threads(g.threads));
  Json rj = report_to_json(rep);
  if (seed) rj["seed"] = *seed;

  std::ostringstream text;
  text << rep.theorem_id << ": hypothesis " << (rep.hypothesis_holds ? "holds" : "fails")
       << " (" << rep.hypothesis_text << ")\n";
  text << "zero count: " << rep.zero_count << "\n";
  if (rep.hypothesis_holds)
    text << "conclusion: " << (*rep.conclusion_holds ? "holds" : "FAILS") << "\n";
  else
    text << "conclusion: not asserted (vacuous)\n";
  for (const auto& w : rep.warnings) text << "warning: " << w << "\n";
  for (const auto& n : rep.notes) text << "note: " << n << "\n";
  emit(g, rj, text.str());
  return rep.passed() ? 0 : 1;
}

int cmd_zeros(const GlobalOpts& g, const std::string& instance_arg) {
  const Json ij = load_json_arg(instance_arg);
  Instance inst = instance_from_json(ij);
  const std::uint64_t count = run_count_zeros(inst, g.cap, resolve_threads(g.threads));
  Json rep;
  rep["zero_count"] = count;
  if (inst.seed) rep["seed"] = *inst.seed;
  std::ostringstream text;
  text << count << "\n";
  emit(g, rep, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional degree, group-ring nilpotency and Chevalley-Warning verifiers "
               "for finite abelian groups"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::uint64_t seed_flag = 0;
  bool seed_set = false;
  app.add_option("--format", g.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cap", g.cap, "Enumeration cap in points (default 2^24)");
  app.add_option("--threads", g.threads,
                 "Worker threads for zero counting (default: FUNDEG_THREADS or all cores)");
  app.add_option("--seed", seed_flag, "Seed echoed into reports")->each([&](const std::string&) {
    seed_set = true;
  });

  // degree
  std::string domain_spec, codomain_spec, table_arg, table_file, field_spec, poly_text,
      ring_spec, nc_text;
  std::uint32_t nvars_flag = 0;
  auto* degree_cmd = app.add_subcommand("degree", "Functional degree of a function");
  degree_cmd->add_option("--domain", domain_spec, "Domain group, e.g. Z4xZ2");
  degree_cmd->add_option("--codomain", codomain_spec, "Codomain group");
  degree_cmd->add_option("--table", table_arg, "Inline JSON table of codomain elements");
  degree_cmd->add_option("--table-file", table_file, "Path to a JSON table");
  degree_cmd->add_option("--field", field_spec, "Field spec p,alpha for polynomial input");
  degree_cmd->add_option("--poly", poly_text, "Polynomial, e.g. \"x1^2*x2 + 2\"");
  degree_cmd->add_option("--ring", ring_spec, "Ring spec Z<n> or M<k>(Z<n>) for --nc");
  degree_cmd->add_option("--nc", nc_text, "Noncommutative polynomial expression");
  degree_cmd->add_option("--nvars", nvars_flag, "Variable count (default: inferred)");

  // delta
  std::string delta_a, delta_b;
  auto* delta_cmd = app.add_subcommand("delta", "Maximal functional degree A -> B");
  delta_cmd->add_option("A", delta_a, "Domain group")->required();
  delta_cmd->add_option("B", delta_b, "Codomain group")->required();

  // nu
  std::uint64_t nu_p = 0, nu_modulus = 0;
  std::uint32_t nu_alpha = 0, nu_beta = 0;
  std::string nu_group;
  auto* nu_cmd = app.add_subcommand("nu", "Nilpotency degree of the augmentation ideal");
  nu_cmd->add_option("--p", nu_p, "Prime (cyclic oracle form)");
  nu_cmd->add_option("--alpha", nu_alpha, "Group is Z_{p^alpha}");
  nu_cmd->add_option("--beta", nu_beta, "Coefficients are Z_{p^beta}");
  nu_cmd->add_option("--group", nu_group, "Group spec (degree-link form)");
  nu_cmd->add_option("--modulus", nu_modulus, "Coefficient modulus n >= 2 (degree-link form)");

  // sweep
  std::uint64_t sweep_pmax = 3;
  std::uint32_t sweep_amax = 2, sweep_bmax = 2;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep nu over (p, alpha, beta) grids");
  sweep_cmd->add_option("--p-max", sweep_pmax, "Largest prime");
  sweep_cmd->add_option("--alpha-max", sweep_amax, "Largest alpha");
  sweep_cmd->add_option("--beta-max", sweep_bmax, "Largest beta");

  // verify / zeros
  std::string verify_arg, zeros_arg;
  auto* verify_cmd = app.add_subcommand("verify", "Run a theorem verifier on an instance");
  verify_cmd->add_option("instance", verify_arg, "Instance JSON (inline or a file path)")
      ->required();
  auto* zeros_cmd = app.add_subcommand("zeros", "Count common zeros of an instance");
  zeros_cmd->add_option("instance", zeros_arg, "Instance JSON (inline or a file path)")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_set) g.seed = seed_flag;

  try {
    if (degree_cmd->parsed())
      return cmd_degree(g, domain_spec, codomain_spec, table_arg, table_file, field_spec,
                        poly_text, ring_spec, nc_text, nvars_flag);
    if (delta_cmd->parsed()) return cmd_delta(g, delta_a, delta_b);
    if (nu_cmd->parsed()) return cmd_nu(g, nu_p, nu_alpha, nu_beta, nu_group, nu_modulus);
    if (sweep_cmd->parsed()) return cmd_sweep(g, sweep_pmax, sweep_amax, sweep_bmax);
    if (verify_cmd->parsed()) return cmd_verify(g, verify_arg);
    if (zeros_cmd->parsed()) return cmd_zeros(g, zeros_arg);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
