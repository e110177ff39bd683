#pragma once

#include <json.hpp>

#include "report.hpp"
#include "taylor.hpp"

namespace ldeconf {

using ordered_json = nlohmann::ordered_json;

// Complex values travel as [re, im]; a bare number is accepted as a real.
inline ordered_json to_json(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

inline cplx complex_from_json(const ordered_json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return cplx(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("expected a complex value as [re, im] or a number");
}

inline ordered_json to_json(const ConformalMap& T) {
  ordered_json j;
  j["kind"] = std::string(T.kind());
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, MobiusParams>) {
          j["a"] = to_json(p.a);
          j["b"] = to_json(p.b);
          j["c"] = to_json(p.c);
          j["d"] = to_json(p.d);
        } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
          j["alpha"] = p.alpha;
          j["zeta"] = to_json(p.zeta);
        } else if constexpr (std::is_same_v<P, HorodiscParams>) {
          j["zeta"] = to_json(p.zeta);
        } else {
          j["alpha"] = p.alpha;
          j["phi"] = p.phi;
        }
      },
      T.params());
  return j;
}

inline ConformalMap map_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("map: expected an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "mobius")
    return ConformalMap::mobius(complex_from_json(j.at("a")), complex_from_json(j.at("b")),
                                complex_from_json(j.at("c")), complex_from_json(j.at("d")));
  if (kind == "stolz_petal")
    return ConformalMap::stolz_petal(j.at("alpha").get<double>(), complex_from_json(j.at("zeta")));
  if (kind == "horodisc") return ConformalMap::horodisc(complex_from_json(j.at("zeta")));
  if (kind == "sector")
    return ConformalMap::sector(j.at("alpha").get<double>(), j.at("phi").get<double>());
  if (kind == "strip")
    return ConformalMap::strip(j.at("alpha").get<double>(), j.at("phi").get<double>());
  throw std::invalid_argument("map: unknown kind \"" + kind + "\"");
}

inline ordered_json to_json(const Domain& d) {
  switch (d.kind()) {
    case Domain::Kind::disc: return "disc";
    case Domain::Kind::right_half_plane: return "half_plane";
    default: {
      ordered_json j;
      j["image"] = to_json(d.map());
      return j;
    }
  }
}

inline Domain domain_from_json(const ordered_json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "disc") return Domain::disc();
    if (s == "half_plane") return Domain::right_half_plane();
    throw std::invalid_argument("domain: unknown name \"" + s + "\"");
  }
  if (j.is_object() && j.contains("image")) return Domain::image(map_from_json(j.at("image")));
  throw std::invalid_argument("domain: expected \"disc\", \"half_plane\" or {\"image\": <map>}");
}

// Expression descriptors for coefficient functions.  Families:
//   {"family":"constant","value":[re,im]}
//   {"family":"polynomial","coeffs":[[re,im],...]}          (ascending powers of z)
//   {"family":"rational","num":[...],"den":[...]}
//   {"family":"exponential","rate":[re,im]}
//   {"family":"example51","alpha":a,"offset":[re,im]}
//   {"family":"example51_solution","which":1|2,"alpha":a,"offset":[re,im]}
inline AnalyticFunction function_from_json(const ordered_json& j, const Domain& domain) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("coeffs: expected an object with a \"family\" field");
  std::string fam = j.at("family").get<std::string>();
  auto coeff_list = [&](const char* key) {
    std::vector<cplx> c;
    for (const auto& e : j.at(key)) c.push_back(complex_from_json(e));
    return c;
  };
  if (fam == "constant") return AnalyticFunction::constant(complex_from_json(j.at("value")), domain);
  if (fam == "polynomial") return AnalyticFunction::polynomial(coeff_list("coeffs"), domain);
  if (fam == "rational")
    return AnalyticFunction::rational(coeff_list("num"), coeff_list("den"), domain);
  if (fam == "exponential")
    return AnalyticFunction::exponential(complex_from_json(j.at("rate")), domain);
  if (fam == "example51") {
    cplx off = j.contains("offset") ? complex_from_json(j.at("offset")) : cplx(0.0);
    return AnalyticFunction::example51_coefficient(j.at("alpha").get<double>(), off, domain);
  }
  if (fam == "example51_solution") {
    cplx off = j.contains("offset") ? complex_from_json(j.at("offset")) : cplx(0.0);
    return AnalyticFunction::example51_solution(j.at("which").get<int>(),
                                                j.at("alpha").get<double>(), off, domain);
  }
  throw std::invalid_argument("coeffs: unknown family \"" + fam + "\"");
}

// {"order": k, "coeffs": [<descriptor>...], "domain": <domain>}
inline LinearOde ode_from_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("ode: expected an object");
  int order = j.at("order").get<int>();
  Domain dom = j.contains("domain") ? domain_from_json(j.at("domain")) : Domain::disc();
  std::vector<AnalyticFunction> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(function_from_json(c, dom));
  return LinearOde(order, std::move(coeffs), dom);
}

inline ordered_json to_json(const CountingFunction& cf) {
  ordered_json j;
  j["n_origin"] = cf.n_origin();
  ordered_json recs = ordered_json::array();
  for (const auto& r : cf.records()) recs.push_back({{"r", r.r}, {"n", r.n}, {"N", r.N}});
  j["records"] = std::move(recs);
  ordered_json jumps = ordered_json::array();
  for (const auto& jm : cf.jumps())
    jumps.push_back({{"radius", jm.radius}, {"multiplicity", jm.multiplicity}});
  j["jumps"] = std::move(jumps);
  return j;
}

inline ordered_json to_json(const OscillationReport& rep) {
  ordered_json j;
  j["order"] = rep.order;
  j["shrink_b"] = rep.grid.shrink_b;
  ordered_json rows = ordered_json::array();
  for (const OscillationRow& row : rep.rows) {
    ordered_json r;
    r["r"] = row.r;
    r["s_r"] = row.s_r;
    r["I"] = row.I;
    r["rhs_N_sum"] = row.rhs_N_sum;
    r["rhs_cross_sum"] = row.rhs_cross_sum;
    r["log2_term"] = row.log2_term;
    r["ratio"] = row.ratio;
    r["cor_N_sum"] = row.cor_N_sum;
    r["cor_cross_sum"] = row.cor_cross_sum;
    r["log_term"] = row.log_term;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  ordered_json fits;
  fits["I"] = rep.exponent_I;
  fits["rhs_total"] = rep.exponent_rhs;
  fits["ratio_spread"] = rep.exponent_ratio_max;
  fits["fit_rmin"] = rep.fit_rmin;
  j["fitted_exponents"] = std::move(fits);
  ordered_json bc = ordered_json::array();
  for (const auto& cf : rep.base_counts) bc.push_back(to_json(cf));
  j["base_counts"] = std::move(bc);
  ordered_json cc = ordered_json::array();
  for (const auto& cf : rep.cross_counts) cc.push_back(to_json(cf));
  j["cross_counts"] = std::move(cc);
  return j;
}

}  // namespace ldeconf
