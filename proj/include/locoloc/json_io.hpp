#pragma once

// JSON forms of engine values. Keys keep insertion order so that two runs
// print byte-identical documents.

#include "locoloc/real_complex.hpp"
#include "locoloc/parse.hpp"

#include <json.hpp>

namespace locoloc {

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

inline Json to_json(const FgAbGroup& g) {
  Json f = Json::array();
  for (const auto& n : g.invariant_factors()) f.push_back(to_json(n));
  return {{"group", g.to_string()}, {"rank", g.rank()}, {"torsion", f}};
}

inline Json to_json(const ExtModule& m) { return m.to_string(); }

inline Json to_json(const Representable<ExtModule>& m) {
  if (is_representable(m)) return to_json(std::get<ExtModule>(m));
  return {{"not_representable", std::get<NotRepresentable>(m).reason}};
}

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json to_json(const GroupHom& f) {
  return {{"domain", f.domain().to_string()}, {"codomain", f.codomain().to_string()}, {"matrix", to_json(f.matrix())}};
}

inline Json to_json(const ExtensionProblem& p) {
  Json c = Json::array();
  for (const auto& g : p.candidates) c.push_back(g.middle.to_string());
  Json out = {{"sub", p.sub.to_string()}, {"quot", p.quot.to_string()}, {"candidates", c}};
  out["resolved"] = p.resolved ? Json(p.resolved->to_string()) : Json(nullptr);
  return out;
}

/// Graded values as {period, degrees: [{degree, value}]}; period is null for
/// bounded groups.
template <typename T>
Json to_json(const GradedGroup<T>& g) {
  Json degs = Json::array();
  for (int n : g.degrees()) degs.push_back({{"degree", n}, {"value", to_json(g.at(n))}});
  Json out;
  out["period"] = g.is_periodic() ? Json(g.period()) : Json(nullptr);
  out["literal"] = g.to_string();
  out["degrees"] = std::move(degs);
  return out;
}

inline Json to_json(const FreeComplex& C) {
  Json d = Json::array();
  for (const auto& m : C.differentials()) d.push_back(to_json(m));
  return {{"lo", C.lo()}, {"hi", C.hi()}, {"ranks", C.ranks()}, {"differentials", d}};
}

/// {nodes: [{label, group}], exact_at: [...], witnesses: [...], notes: [...]}
inline Json to_json(const ExactSequenceReport& r) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < r.labels.size(); ++i) nodes.push_back({{"label", r.labels[i]}, {"group", r.groups[i]}});
  Json exact = Json::array();
  for (bool b : r.exact_at) exact.push_back(b);
  return {{"nodes", nodes}, {"exact_at", exact}, {"witnesses", r.witnesses}, {"notes", r.notes}};
}

inline Json to_json(const IsoReport& r) {
  Json degs = Json::array();
  for (const auto& d : r.degrees) {
    Json e = {{"degree", d.degree}, {"phi_iso", d.phi_iso}, {"loc_iso", d.loc_iso}, {"tor0_iso", d.tor0_iso},
              {"tor1_iso", d.tor1_iso}, {"tor_iso", d.tor_iso}};
    Json q = Json::array();
    for (const auto& [p, ok] : d.mod_q_iso) q.push_back({{"q", to_json(p)}, {"iso", ok}});
    e["mod_q_iso"] = std::move(q);
    degs.push_back(std::move(e));
  }
  return {{"all_phi", r.all_phi()}, {"all_loc", r.all_loc()}, {"all_tor", r.all_tor()},
          {"all_mod_q", r.all_mod_q()}, {"degrees", degs}};
}

inline Json to_json(const SplittingReport& r) {
  Json degs = Json::array();
  for (const auto& d : r.degrees)
    degs.push_back({{"degree", d.degree}, {"left", d.left.to_string()}, {"right", d.right.to_string()}, {"iso", d.iso}});
  return {{"coefficients", r.coefficients}, {"passed", r.passed()},       {"two_chi_zero", r.two_chi_zero},
          {"localized_chi_vanishes", r.localized_chi_vanishes},           {"exponent_bound_holds", r.exponent_bound_holds},
          {"degrees", degs},       {"notes", r.notes}};
}

// ---------------------------------------------------------------------------
// Reading: groups and homs in the same shape they are written.

inline FgAbGroup group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_group(j.get<std::string>());
  if (j.is_object() && j.contains("group")) return parse_group(j.at("group").get<std::string>());
  throw Error("ParseError", "group: expected a literal string or {group: ...}");
}

inline IntMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  if (!j.is_array() || (j.size() != rows && !(j.empty() && (rows == 0 || cols == 0))))
    throw Error("ParseError", "matrix: expected " + std::to_string(rows) + " rows");
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error("ParseError", "matrix: rows must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = detail::json_integer(j[i][c], "matrix entry");
  }
  return m;
}

/// {domain, codomain, matrix}, matrix rows indexed by codomain generators.
inline GroupHom hom_from_json(const nlohmann::json& j) {
  const FgAbGroup d = group_from_json(j.at("domain")), c = group_from_json(j.at("codomain"));
  return {d, c, matrix_from_json(j.at("matrix"), c.num_generators(), d.num_generators())};
}

/// {real: graded literal, complex: graded literal, chi: [8 homs], c: [8], delta: [8]}
inline RCPair rc_pair_from_json(const nlohmann::json& j) {
  try {
    auto maps = [&](const char* key) {
      std::vector<GroupHom> out;
      for (const auto& h : j.at(key)) out.push_back(hom_from_json(h));
      return out;
    };
    return {parse_graded_fg(j.at("real").get<std::string>()), parse_graded_fg(j.at("complex").get<std::string>()),
            maps("chi"), maps("c"), maps("delta")};
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("rc pair: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error("ParseError", e.what());
  }
}

inline Json to_json(const ChainMap& f) {
  Json comps = Json::object();
  for (const auto& [n, m] : f.components()) comps[std::to_string(n)] = to_json(m);
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"degree", f.degree()},
          {"components", comps}};
}

/// {source: complex, target: complex, degree: k, components: {"n": matrix}};
/// omitted components are zero.
inline ChainMap chain_map_from_json(const nlohmann::json& j) {
  try {
    const FreeComplex A = parse_complex(j.at("source").dump()), B = parse_complex(j.at("target").dump());
    const int k = j.value("degree", 0);
    std::map<int, IntMatrix> comps;
    if (j.contains("components"))
      for (const auto& [key, m] : j.at("components").items()) {
        const int n = std::stoi(key);
        comps[n] = matrix_from_json(m, B.rank(n + k), A.rank(n));
      }
    return {A, B, comps, k};
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("chain map: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error("ParseError", std::string("chain map: ") + e.what());
  }
}

inline Json to_json(const RCPair& p) {
  auto maps = [](const std::vector<GroupHom>& fs) {
    Json a = Json::array();
    for (const auto& f : fs) a.push_back(to_json(f));
    return a;
  };
  return {{"real", p.real().to_string()}, {"complex", p.complex().to_string()}, {"chi", maps(p.chi_maps())},
          {"c", maps(p.c_maps())},        {"delta", maps(p.delta_maps())}};
}

}  // namespace locoloc
