#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fundeg/chevalley.hpp"
#include "fundeg/degree.hpp"
#include "fundeg/finite_field.hpp"
#include "fundeg/function.hpp"
#include "fundeg/group.hpp"
#include "fundeg/group_ring.hpp"
#include "fundeg/nilpotency.hpp"
#include "fundeg/rings_nc.hpp"

namespace fundeg {

using Json = nlohmann::ordered_json;

inline Json element_to_json(const GroupElement& a) {
  Json arr = Json::array();
  for (auto c : a.coords()) arr.push_back(c);
  return arr;
}

inline GroupElement element_from_json(const FiniteAbelianGroup& g, const Json& j) {
  if (!j.is_array()) throw ParseError("element must be a JSON array of integers");
  std::vector<std::uint64_t> coords;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("element coordinates must be integers");
    const std::int64_t x = v.get<std::int64_t>();
    if (coords.size() >= g.num_factors()) throw ParseError("too many coordinates");
    const std::int64_t n = static_cast<std::int64_t>(g.cyclic_orders()[coords.size()]);
    std::int64_t r = x % n;
    if (r < 0) r += n;
    coords.push_back(static_cast<std::uint64_t>(r));
  }
  if (coords.size() != g.num_factors()) throw ParseError("wrong number of coordinates");
  return GroupElement(g, std::move(coords));
}

inline Json degree_to_json(const Degree& d) {
  if (d.is_infinite()) return Json("inf");
  return Json(d.value());
}

inline Json ring_element_to_json(const GroupRingElement& r) {
  Json arr = Json::array();
  for (const auto& [rank, z] : r.coeffs()) {
    Json term;
    term["element"] = element_to_json(r.group().unrank(rank));
    term["coeff"] = z.str();
    arr.push_back(std::move(term));
  }
  return arr;
}

inline Json function_to_json(const GroupFunction& f) {
  Json j;
  j["domain"] = f.domain().to_string();
  j["codomain"] = f.codomain().to_string();
  Json table = Json::array();
  for (std::uint64_t x = 0; x < f.domain().order(); ++x)
    table.push_back(element_to_json(f.codomain().unrank(f.at_rank(x))));
  j["table"] = std::move(table);
  return j;
}

inline GroupFunction function_from_json(const Json& j) {
  const auto domain = FiniteAbelianGroup::parse(j.at("domain").get<std::string>());
  const auto codomain = FiniteAbelianGroup::parse(j.at("codomain").get<std::string>());
  std::vector<std::uint32_t> table;
  for (const auto& e : j.at("table"))
    table.push_back(static_cast<std::uint32_t>(codomain.rank(element_from_json(codomain, e))));
  return GroupFunction(domain, codomain, std::move(table));
}

/// Table for a function with a known domain/codomain: a bare JSON array of
/// codomain elements in domain rank order.
inline GroupFunction table_from_json(const FiniteAbelianGroup& domain,
                                     const FiniteAbelianGroup& codomain, const Json& arr) {
  if (!arr.is_array()) throw ParseError("function table must be a JSON array");
  std::vector<std::uint32_t> table;
  for (const auto& e : arr)
    table.push_back(static_cast<std::uint32_t>(codomain.rank(element_from_json(codomain, e))));
  return GroupFunction(domain, codomain, std::move(table));
}

inline Json poly_to_json(const MultivariatePolynomial& f) {
  Json j;
  j["p"] = f.field().p();
  j["alpha"] = f.field().alpha();
  j["modulus"] = f.field().modulus();
  j["nvars"] = f.nvars();
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["exps"] = e;
    t["coef"] = c.coeffs;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline MultivariatePolynomial poly_from_json(const Json& j) {
  const std::uint64_t p = j.at("p").get<std::uint64_t>();
  const std::uint32_t alpha = j.at("alpha").get<std::uint32_t>();
  FiniteField field = j.contains("modulus")
                          ? FiniteField::make_with_modulus(
                                p, alpha, j.at("modulus").get<std::vector<std::uint64_t>>())
                          : FiniteField::make(p, alpha);
  MultivariatePolynomial f(field, j.at("nvars").get<std::uint32_t>());
  for (const auto& t : j.at("terms")) {
    FqElement c{t.at("coef").get<std::vector<std::uint64_t>>()};
    f.add_term(t.at("exps").get<std::vector<std::uint64_t>>(), c);
  }
  return f;
}

inline Json nu_result_to_json(const NuResult& r) {
  Json j;
  j["group"] = r.group.to_string();
  j["modulus"] = r.modulus;
  j["nu"] = degree_to_json(r.nu);
  j["method"] = r.method;
  if (r.hypothesis_value) j["hypothesis"] = *r.hypothesis_value;
  if (r.matches_hypothesis) j["matches_hypothesis"] = *r.matches_hypothesis;
  return j;
}

inline Json sweep_row_to_json(const SweepRow& r) {
  Json j;
  j["p"] = r.p;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["nu_oracle"] = r.nu_oracle ? Json(*r.nu_oracle) : Json(nullptr);
  j["nu_delta"] = r.nu_delta ? Json(*r.nu_delta) : Json(nullptr);
  j["hypothesis"] = r.hypothesis;
  j["match"] = r.match ? Json(*r.match) : Json(nullptr);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline std::string sweep_csv_header() { return "p,alpha,beta,nu_oracle,nu_delta,hypothesis,match"; }

inline std::string sweep_row_to_csv(const SweepRow& r) {
  std::string s;
  s += std::to_string(r.p) + "," + std::to_string(r.alpha) + "," + std::to_string(r.beta) + ",";
  s += r.nu_oracle ? std::to_string(*r.nu_oracle) : "";
  s += ",";
  s += r.nu_delta ? std::to_string(*r.nu_delta) : "";
  s += "," + std::to_string(r.hypothesis) + ",";
  s += r.match ? (*r.match ? "true" : "false") : "";
  return s;
}

inline Json report_to_json(const VerifierReport& rep) {
  Json j;
  j["theorem"] = rep.theorem_id;
  Json hyp;
  hyp["holds"] = rep.hypothesis_holds;
  hyp["lhs"] = rep.hypothesis_lhs;
  hyp["rhs"] = rep.hypothesis_rhs;
  hyp["text"] = rep.hypothesis_text;
  j["hypothesis"] = std::move(hyp);
  j["zero_count"] = rep.zero_count;
  if (rep.divisor) j["divisor"] = *rep.divisor;
  if (rep.lower_bound) j["lower_bound"] = *rep.lower_bound;
  j["conclusion"] = rep.conclusion_holds ? Json(*rep.conclusion_holds) : Json(nullptr);
  Json degs = Json::array();
  for (const auto& d : rep.computed_degrees) degs.push_back(degree_to_json(d));
  j["computed_degrees"] = std::move(degs);
  if (rep.witness) j["witness"] = *rep.witness;
  if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  j["pass"] = rep.passed();
  return j;
}

/// A parsed verifier/zero-counting instance.
struct Instance {
  std::string theorem;  // empty for plain zero counting
  std::uint32_t N = 1;
  std::optional<std::uint64_t> seed;

  // Group case.
  std::optional<FiniteAbelianGroup> group;
  std::optional<FiniteAbelianGroup> codomain;
  std::vector<GroupFunction> table_functions;
  std::vector<std::optional<std::uint64_t>> declared_degrees;

  // Field case.
  std::optional<FiniteField> field;
  std::vector<MultivariatePolynomial> polys;

  // Ring case.
  std::optional<FiniteRing> ring;
  std::vector<NcPolyExpression> ncs;

  std::optional<std::vector<GroupElement>> restriction;
};

inline FiniteField field_from_spec(const Json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("field spec must be \"p,alpha\"");
    return FiniteField::make(std::stoull(s.substr(0, comma)),
                             static_cast<std::uint32_t>(std::stoul(s.substr(comma + 1))));
  }
  if (spec.is_object()) {
    const std::uint64_t p = spec.at("p").get<std::uint64_t>();
    const std::uint32_t alpha = spec.at("alpha").get<std::uint32_t>();
    if (spec.contains("modulus"))
      return FiniteField::make_with_modulus(p, alpha,
                                            spec.at("modulus").get<std::vector<std::uint64_t>>());
    return FiniteField::make(p, alpha);
  }
  throw ParseError("field spec must be a string or an object");
}

inline Instance instance_from_json(const Json& j) {
  Instance inst;
  if (j.contains("theorem")) inst.theorem = j.at("theorem").get<std::string>();
  if (j.contains("N")) inst.N = j.at("N").get<std::uint32_t>();
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();

  const int kinds = int(j.contains("group")) + int(j.contains("field")) + int(j.contains("ring"));
  if (kinds != 1) throw ParseError("instance must have exactly one of group, field, ring");

  if (j.contains("declared_degrees"))
    for (const auto& d : j.at("declared_degrees"))
      inst.declared_degrees.push_back(d.is_null() ? std::nullopt
                                                  : std::optional<std::uint64_t>(d.get<std::uint64_t>()));

  if (j.contains("group")) {
    inst.group = FiniteAbelianGroup::parse(j.at("group").get<std::string>());
    inst.codomain = j.contains("codomain")
                        ? FiniteAbelianGroup::parse(j.at("codomain").get<std::string>())
                        : *inst.group;
    const FiniteAbelianGroup domain = power_group(*inst.group, inst.N);
    for (const auto& fj : j.at("functions")) {
      if (fj.is_array())
        inst.table_functions.push_back(table_from_json(domain, *inst.codomain, fj));
      else if (fj.is_object())
        inst.table_functions.push_back(function_from_json(fj));
      else
        throw ParseError("group-case functions must be tables");
    }
    if (j.contains("restriction")) {
      std::vector<GroupElement> gens;
      for (const auto& g : j.at("restriction")) gens.push_back(element_from_json(domain, g));
      inst.restriction = std::move(gens);
    }
  } else if (j.contains("field")) {
    inst.field = field_from_spec(j.at("field"));
    for (const auto& fj : j.at("functions")) {
      if (fj.is_string())
        inst.polys.push_back(poly_parse(*inst.field, inst.N, fj.get<std::string>()));
      else if (fj.is_object())
        inst.polys.push_back(poly_from_json(fj));
      else
        throw ParseError("field-case functions must be polynomial strings or objects");
    }
    if (j.contains("restriction")) {
      const FiniteAbelianGroup domain = power_group(inst.field->additive_group(), inst.N);
      std::vector<GroupElement> gens;
      for (const auto& g : j.at("restriction")) {
        // A point of F^N: N field elements, each an array of alpha coords
        // (or a bare integer for prime fields).
        std::vector<std::uint64_t> coords;
        if (!g.is_array()) throw ParseError("subgroup generator must be an array");
        for (const auto& fe : g) {
          if (fe.is_number_integer()) {
            const std::uint64_t p = inst.field->p();
            std::int64_t v = fe.get<std::int64_t>() % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            if (inst.field->alpha() != 1)
              throw ParseError("extension-field coordinates must be arrays");
            coords.push_back(static_cast<std::uint64_t>(v));
          } else if (fe.is_array()) {
            if (fe.size() != inst.field->alpha())
              throw ParseError("field element must have alpha coordinates");
            for (const auto& c : fe)
              coords.push_back(c.get<std::uint64_t>() % inst.field->p());
          } else {
            throw ParseError("bad field element in subgroup generator");
          }
        }
        gens.push_back(domain.element(std::move(coords)));
      }
      inst.restriction = std::move(gens);
    }
  } else {
    inst.ring = FiniteRing::parse(j.at("ring").get<std::string>());
    for (const auto& fj : j.at("functions")) {
      if (!fj.is_string()) throw ParseError("ring-case functions must be expression strings");
      inst.ncs.push_back(nc_parse(*inst.ring, inst.N, fj.get<std::string>()));
    }
  }
  return inst;
}

/// Runs the verifier named by the instance's theorem id.
inline VerifierReport run_verifier(const Instance& inst, std::uint64_t point_cap = (1u << 24),
                                   unsigned threads = 1) {
  if (inst.theorem == "chevalley_group" || inst.theorem == "warning1_group") {
    if (!inst.group) throw ParseError("group-case theorem needs a group instance");
    if (inst.theorem == "chevalley_group")
      return verify_chevalley_group(*inst.group, inst.N, *inst.codomain, inst.table_functions,
                                    inst.declared_degrees, point_cap, threads);
    return verify_warning1_group(*inst.group, inst.N, *inst.codomain, inst.table_functions,
                                 inst.declared_degrees, point_cap, threads);
  }
  if (inst.theorem == "warning1_ring") {
    if (!inst.ring) throw ParseError("warning1_ring needs a ring instance");
    return verify_warning1_ring(*inst.ring, inst.N, inst.ncs, point_cap, threads);
  }
  if (inst.theorem == "warning1_pweight") {
    if (!inst.field) throw ParseError("warning1_pweight needs a field instance");
    return verify_warning1_field_pweight(*inst.field, inst.N, inst.polys, point_cap, threads);
  }
  if (inst.theorem == "restricted_subgroup") {
    if (!inst.field || !inst.restriction)
      throw ParseError("restricted_subgroup needs a field instance with a restriction");
    return verify_restricted_subgroup(*inst.field, inst.N, inst.polys, *inst.restriction,
                                      point_cap, threads);
  }
  if (inst.theorem == "restricted_range") {
    std::vector<GroupFunction> fs;
    if (inst.group) {
      fs = inst.table_functions;
    } else if (inst.field) {
      for (const auto& f : inst.polys) fs.push_back(f.induced_function());
    } else {
      throw ParseError("restricted_range needs a group or field instance");
    }
    return verify_restricted_range(fs, point_cap, threads);
  }
  if (inst.theorem == "warning2") {
    if (!inst.field) throw ParseError("warning2 needs a field instance");
    return verify_warning2(*inst.field, inst.N, inst.polys, point_cap, threads);
  }
  throw ParseError("unknown theorem id: " + inst.theorem);
}

/// Exact zero count for any instance kind (theorem id not required).
inline std::uint64_t run_count_zeros(const Instance& inst, std::uint64_t point_cap = (1u << 24),
                                     unsigned threads = 1) {
  if (inst.group) {
    const FiniteAbelianGroup domain = power_group(*inst.group, inst.N);
    std::optional<Subgroup> sub;
    if (inst.restriction) sub.emplace(domain, *inst.restriction);
    return count_zeros(domain, inst.table_functions, sub, point_cap, threads);
  }
  if (inst.field) {
    std::optional<Subgroup> sub;
    if (inst.restriction)
      sub.emplace(power_group(inst.field->additive_group(), inst.N), *inst.restriction);
    return detail::count_poly_zeros(*inst.field, inst.polys, inst.N, point_cap, threads, sub);
  }
  const auto& ring = *inst.ring;
  const std::uint64_t rsize = ring.size();
  std::uint64_t npoints = 1;
  for (std::uint32_t i = 0; i < inst.N; ++i) {
    if (npoints > point_cap / rsize) throw CapExceeded("zero counting exceeds the point cap");
    npoints *= rsize;
  }
  return detail::parallel_count(
      npoints,
      [&](std::uint64_t x) {
        std::vector<std::uint64_t> point(inst.N);
        std::uint64_t rem = x;
        for (std::uint32_t v = inst.N; v-- > 0;) {
          point[v] = rem % rsize;
          rem /= rsize;
        }
        for (const auto& f : inst.ncs) {
          std::vector<std::uint64_t> pt(point.begin(), point.begin() + f.nvars());
          if (f.evaluate_ranks(pt) != ring.zero_rank()) return false;
        }
        return true;
      },
      threads);
}

}  // namespace fundeg
