// Command-line front end. Exit status: 0 ok, 1 a check failed, 2 usage or
// parse error. Arguments that take JSON also accept @path.

#include "locoloc/paper_check.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace locoloc;

struct Out {
  Json json = Json::object();
  std::vector<std::string> text;
  int status = 0;
};

struct Globals {
  std::string output = "text";
  std::string seed = "0xC0FFEE";
  std::size_t trials = 500;
  std::string max_order = "4096";
  bool parallel = false;
};

Integer integer_arg(const std::string& s, const std::string& what) {
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0)
    throw Error("ParseError", what + ": expected an integer, found '" + s + "'");
  return n;
}

std::string text_arg(const std::string& s) {
  if (!s.starts_with("@")) return s;
  std::ifstream in(s.substr(1));
  if (!in) throw Error("InvalidArgument", "cannot read " + s.substr(1));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json json_arg(const std::string& s, const std::string& what) {
  try {
    return nlohmann::json::parse(text_arg(s));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, {"JSON for " + what}, e.what());
  }
}

std::string show(const Representable<ExtModule>& m) {
  return is_representable(m) ? std::get<ExtModule>(m).to_string()
                             : "NotRepresentable (" + std::get<NotRepresentable>(m).reason + ")";
}

GradedFg theory_arg(const std::string& s) {
  if (s == "point-complex") return fixtures::k_point();
  if (s == "point-real") return fixtures::ko_point();
  return parse_graded_fg(s);
}

KTheoryObject object_arg(const std::string& s) {
  if (s == "point-complex") return fixtures::point_complex();
  if (s == "point-real") return fixtures::point_real();
  if (s == "DQ") return fixtures::dq();
  if (s == "DQZ") return fixtures::dqz();
  if (s.starts_with("Cq(") && s.ends_with(")")) return fixtures::cq(integer_arg(s.substr(3, s.size() - 4), "Cq"));
  GradedExt g = parse_graded(s);
  if (!g.is_periodic() || (g.period() != 2 && g.period() != 8))
    throw Error("InvalidArgument", "K-theory objects need period 2 or 8");
  return {s, g, g.period() == 2 ? Flavor::Complex : Flavor::Real};
}

RCPair pair_arg(const std::string& s) {
  if (s.empty() || s == "point-rc") return fixtures::point_rc();
  return rc_pair_from_json(json_arg(s, "an RC pair"));
}

/// Z/s, Z[1/x] or Z[1/x]/Z with x an integer or a prime set literal.
Coefficients coefficients_arg(const std::string& s) {
  if (s.starts_with("Z/")) return Coefficients::finite(integer_arg(s.substr(2), "Z/s"));
  std::string body = s;
  const bool quotient = body.ends_with("]/Z");
  if (quotient) body.resize(body.size() - 2);
  if (!body.starts_with("Z[1/") || !body.ends_with("]"))
    throw ParseError(0, {"Z/s", "Z[1/S]", "Z[1/S]/Z"}, s);
  const std::string inner = body.substr(4, body.size() - 5);
  const PrimeSet S = !inner.empty() && std::isdigit(static_cast<unsigned char>(inner[0]))
                         ? PrimeSet::primes_of(integer_arg(inner, "Z[1/N]"))
                         : parse_prime_set(inner);
  return quotient ? Coefficients::torsion_quotient(S) : Coefficients::localized(S);
}

ChainMap map_arg(const std::string& map, const std::string& complex, const std::string& s) {
  if (!map.empty()) return chain_map_from_json(json_arg(map, "a chain map"));
  if (complex.empty()) throw Error("InvalidArgument", "give --map, or --complex with --s");
  return ChainMap::multiplication(parse_complex(text_arg(complex)), integer_arg(s, "--s"));
}

void add_sequence(Out& o, const ExactSequenceReport& r) {
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    o.text.push_back((r.exact_at[i] ? "  ok   " : "  FAIL ") + r.labels[i] + ": " + r.groups[i]);
  o.text.push_back(r.exact() ? "exact" : "not exact");
  for (const auto& w : r.witnesses) o.text.push_back("  " + w);
  for (const auto& n : r.notes) o.text.push_back("note: " + n);
  o.json["sequence"] = to_json(r);
  o.json["exact"] = r.exact();
  if (!r.exact()) o.status = 1;
}

template <typename T>
void add_degrees(Out& o, const GradedGroup<T>& g) {
  for (int n : g.degrees()) o.text.push_back("degree " + std::to_string(n) + ": " + g.at(n).to_string());
  o.json["result"] = to_json(g);
}

// ---------------------------------------------------------------------------

Out group_normalize(const std::string& lit) {
  Out o;
  const Literal v = parse_literal(lit);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FgAbGroup>) {
          o.json = {{"kind", "group"}, {"value", to_json(x)}};
          o.text.push_back(x.to_string());
        } else if constexpr (std::is_same_v<T, ExtModule>) {
          o.json = {{"kind", "module"}, {"value", x.to_string()}};
          o.text.push_back(x.to_string());
        } else if constexpr (std::is_same_v<T, PrimeSet>) {
          o.json = {{"kind", "prime_set"}, {"value", x.to_string()}};
          o.text.push_back(x.to_string());
        } else if constexpr (std::is_same_v<T, GradedExt>) {
          o.json = {{"kind", "graded"}, {"value", to_json(x)}};
          o.text.push_back(x.to_string());
        } else {
          o.json = {{"kind", "complex"}, {"value", to_json(x)}};
          o.text.push_back(to_json(x).dump());
          const GradedFg H = x.homology();
          for (int n : H.degrees()) o.text.push_back("H_" + std::to_string(n) + " = " + H.at(n).to_string());
        }
      },
      v);
  return o;
}

Out group_bifunctor(Bifunctor kind, const std::string& a, const std::string& b) {
  Out o;
  const auto r = bifunctor(kind, parse_module(a), parse_module(b));
  o.json = {{"functor", std::string(to_string(kind))}, {"a", parse_module(a).to_string()},
            {"b", parse_module(b).to_string()}, {"value", to_json(r)}};
  o.text.push_back(show(r));
  return o;
}

Out localize_cmd(const std::string& g, const std::string& s, bool tor, const std::string& colimit_s, unsigned depth) {
  Out o;
  const FgAbGroup M = parse_group(g);
  const PrimeSet S = parse_prime_set(s);
  const ExtModule L = localize_group(M, S);
  o.json = {{"group", M.to_string()}, {"S", S.to_string()}, {"localized", L.to_string()}};
  o.text.push_back(L.to_string());
  if (tor) {
    const auto t = tor_coefficients(M, S);
    o.json["tor0"] = t.tor0.to_string();
    o.json["tor1"] = t.tor1.to_string();
    o.text.push_back("tor0: " + t.tor0.to_string());
    o.text.push_back("tor1: " + t.tor1.to_string());
  }
  if (!colimit_s.empty()) {
    const auto c = colimit_truncation_oracle(M, integer_arg(colimit_s, "--colimit"), depth);
    o.json["colimit"] = {{"s", colimit_s}, {"depth", depth}, {"ker", c.ker_approx.to_string()},
                         {"coker", c.coker_approx.to_string()}};
    o.text.push_back("ker(s^" + std::to_string(depth) + "): " + c.ker_approx.to_string());
    o.text.push_back("coker(s^" + std::to_string(depth) + "): " + c.coker_approx.to_string());
  }
  return o;
}

Out coeff_cmd(const Globals& gl, const std::string& theory, const std::string& kind, const std::string& q,
              const std::string& S, const std::string& policy) {
  Out o;
  const GradedFg F = theory_arg(theory);
  o.json["theory"] = F.to_string();
  o.json["kind"] = kind;
  if (kind == "finite") {
    const auto pol = policy == "split" ? ResolutionPolicy::Split : ResolutionPolicy::Enumerate;
    const Integer s = integer_arg(q, "--q");
    o.json["q"] = to_json(s);
    o.json["policy"] = policy;
    add_degrees(o, finite_coefficients(F, s, pol, integer_arg(gl.max_order, "--max-order")));
  } else {
    const PrimeSet P = parse_prime_set(S);
    o.json["S"] = P.to_string();
    add_degrees(o, kind == "torsion" ? torsion_theory(F, P) : localize_theory(F, P));
  }
  return o;
}

Out toy_cone(const ChainMap& f) {
  Out o;
  const Cone c = cone(f);
  o.json["cone"] = to_json(c.complex);
  const GradedFg H = c.complex.homology();
  Json h = Json::array();
  for (int n : H.degrees()) {
    h.push_back({{"degree", n}, {"group", H.at(n).to_string()}});
    o.text.push_back("H_" + std::to_string(n) + "(cone) = " + H.at(n).to_string());
  }
  o.json["homology"] = h;
  add_sequence(o, cone_les(f));
  return o;
}

Out toy_sfinite(const FreeComplex& C, const PrimeSet& S) {
  Out o;
  const auto s = s_finite_test(C, S);
  const bool acyclic = s && *s == 1;
  o.json = {{"S", S.to_string()}, {"s_finite", s.has_value()}, {"s", s ? to_json(*s) : Json(nullptr)},
            {"zero_object", acyclic}};
  if (!s) o.text.push_back("not S-finite");
  else if (acyclic) o.text.push_back("s = 1 (already zero object)");
  else o.text.push_back("s = " + s->get_str());
  return o;
}

Out toy_sequiv(const ChainMap& f, const PrimeSet& S) {
  Out o;
  const auto r = s_equivalence_test(f, S);
  auto opt = [](const std::optional<Integer>& n) { return n ? to_json(*n) : Json(nullptr); };
  o.json = {{"S", S.to_string()},       {"cone_test", r.cone_test}, {"inverse_search", r.inverse_search},
            {"agree", r.agree},         {"cone_s", opt(r.cone_s)}, {"inverse_s", opt(r.inverse_s)}};
  if (r.inverse) o.json["inverse"] = to_json(*r.inverse);
  o.text.push_back(std::string("cone test: ") + (r.cone_test ? "S-finite, s = " + r.cone_s->get_str() : "fails"));
  o.text.push_back(std::string("inverse search: ") +
                   (r.inverse_search ? "found, s = " + r.inverse_s->get_str() : "none"));
  o.text.push_back(r.agree ? "agree" : "DISAGREE");
  if (!r.agree) o.status = 1;
  return o;
}

Out toy_theta(const FreeComplex& C, const Integer& q, const Integer& p, const std::optional<Integer>& r) {
  Out o;
  const ThetaResult t = theta_map(C, q, p, r);
  o.json["theta"] = to_json(t.theta);
  Json h = Json::array();
  for (int n = t.theta.source().lo(); n <= t.theta.source().hi(); ++n) {
    const GroupHom f = t.theta.on_homology(n);
    h.push_back({{"degree", n}, {"map", to_json(f)}});
    o.text.push_back("H_" + std::to_string(n) + ": " + f.domain().to_string() + " -> " + f.codomain().to_string() +
                     ", matrix " + to_json(f.matrix()).dump());
  }
  o.json["on_homology"] = h;
  o.json["composite_check"] = t.composite_check ? Json(*t.composite_check) : Json(nullptr);
  if (t.composite_check) {
    o.text.push_back(std::string("composite check: ") + (*t.composite_check ? "homotopic" : "NOT homotopic"));
    if (!*t.composite_check) o.status = 1;
  }
  return o;
}

Out kk_uct(const std::string& a, const std::string& b) {
  Out o;
  const KTheoryObject A = object_arg(a), B = object_arg(b);
  const UCTResult r = uct_kk(A, B);
  Json degs = Json::array();
  for (const auto& d : r.degrees) {
    degs.push_back({{"degree", d.degree}, {"sub", to_json(d.sub)}, {"quot", to_json(d.quot)},
                    {"resolved", to_json(d.resolved)}});
    o.text.push_back("KK_" + std::to_string(d.degree) + "(" + A.name + ", " + B.name + ") = " + show(d.resolved) +
                     "   [Ext part " + show(d.sub) + ", Hom part " + show(d.quot) + "]");
  }
  o.json = {{"a", A.name}, {"b", B.name}, {"label", r.label}, {"degrees", degs}};
  o.text.push_back("(" + r.label + ")");
  return o;
}

Out kk_cq(const Globals& gl, const Integer& q, const std::string& flavor) {
  Out o;
  const Integer max_order = integer_arg(gl.max_order, "--max-order");
  const bool real = flavor == "real";
  const auto co = coefficient_object(real ? fixtures::point_real() : fixtures::point_complex(), q, max_order);
  const std::string K = real ? "KO_" : "K_", name = "C_" + q.get_str();
  o.json = {{"q", to_json(q)}, {"flavor", flavor}, {"k_groups", to_json(co.k_groups)}};
  for (int n = 0; n < co.k_groups.period(); ++n)
    o.text.push_back(K + std::to_string(n) + "(" + name + ") = " + co.k_groups.at(n).to_string());
  if (real) {
    const auto r = kko_cq_r(q);
    const auto b = kko_cq_cq_bound(q, max_order);
    o.json["kko_cq_r"] = {{"kko_minus1", r.kko_minus1.to_string()}, {"kko_0", r.kko_0.to_string()},
                          {"sequence", to_json(r.les)}};
    o.json["kko_cq_cq"] = {{"problem", to_json(b.problem)}, {"bound", to_json(b.bound)},
                           {"exponent_bound_holds", b.exponent_bound_holds}, {"conclusion", b.conclusion}};
    o.text.push_back("KKO_-1(" + name + ",R) = " + r.kko_minus1.to_string());
    o.text.push_back("KKO_0(" + name + ",R) = " + r.kko_0.to_string());
    o.text.push_back("KKO_0(" + name + "," + name + ") in " + b.problem.to_string() + ", exponent divides " +
                     b.bound.get_str() + (b.exponent_bound_holds ? "" : ": FAILS"));
    if (!r.les.exact() || !b.exponent_bound_holds) o.status = 1;
  }
  return o;
}

Out kk_dq() {
  Out o;
  const DQExamples d = dq_examples();
  o.json = {{"kk0_dq_dq", to_json(d.kk0_dq_dq)},
            {"kk0_dq_point", to_json(d.kk0_dq_point)},
            {"kk0_dq_point_rational", to_json(d.kk0_dq_point_rational)},
            {"qz_tensor_q", to_json(d.qz_tensor_q)},
            {"kk0_dqz_dqz_rational", to_json(d.kk0_dqz_dqz_rational)},
            {"dqz_claim_status", d.dqz_claim_status}};
  o.text = {"KK_0(DQ, DQ) = " + show(d.kk0_dq_dq), "KK_0(DQ, point) = " + show(d.kk0_dq_point),
            "KK_0(DQ, point) (x) Q = " + show(d.kk0_dq_point_rational), "Q/Z (x) Q = " + show(d.qz_tensor_q),
            "KK_0(DQZ, DQZ) (x) Q: " + d.dqz_claim_status};
  return o;
}

Out rc_split(const RCPair& p, const Coefficients& H) {
  Out o;
  const SplittingReport r = splitting_check(p, H);
  for (const auto& d : r.degrees)
    o.text.push_back("degree " + std::to_string(d.degree) + ": " + d.left.to_string() + (d.iso ? " == " : " != ") +
                     d.right.to_string());
  o.text.push_back(std::string("2 chi = 0: ") + (r.two_chi_zero ? "yes" : "no"));
  if (H.kind == Coefficients::Kind::Localized)
    o.text.push_back(std::string("localized chi vanishes: ") + (r.localized_chi_vanishes ? "yes" : "no"));
  if (H.kind == Coefficients::Kind::Finite)
    o.text.push_back(std::string("exponents divide s: ") + (r.exponent_bound_holds ? "yes" : "no"));
  for (const auto& n : r.notes) o.text.push_back("note: " + n);
  o.text.push_back(r.passed() ? "splits" : "does NOT split");
  o.json = to_json(r);
  if (!r.passed()) o.status = 1;
  return o;
}

Out paper_check(const Globals& gl) {
  Out o;
  CheckOptions opt;
  try {
    opt.seed = std::stoull(gl.seed, nullptr, 0);
  } catch (const std::exception&) {
    throw Error("ParseError", "--seed: expected an integer, found '" + gl.seed + "'");
  }
  opt.trials = gl.trials;
  opt.parallel = gl.parallel;
  opt.max_order = integer_arg(gl.max_order, "--max-order");
  const auto results = run_paper_check(opt);
  bool all = true;
  double total = 0;
  Json crit = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    total += r.seconds;
    crit.push_back(to_json(r));
    std::ostringstream line;
    line << std::setw(2) << r.id << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.title;
    if (r.trials) line << "  [" << r.passed_trials << "/" << r.trials << "]";
    line << "  (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    o.text.push_back(line.str());
    for (const auto& row : r.rows) o.text.push_back("        " + row);
    for (const auto& f : r.failures) o.text.push_back("      ! " + f);
  }
  std::ostringstream t;
  t << std::fixed << std::setprecision(2) << total;
  o.text.push_back(std::string(all ? "all criteria pass" : "SOME CRITERIA FAIL") + " (" + t.str() + " s)");
  o.json = {{"seed", opt.seed}, {"trials", opt.trials}, {"max_order", to_json(opt.max_order)},
            {"passed", all},    {"criteria", crit}};
  if (!all) o.status = 1;
  return o;
}

int usage_error(const std::string& name, const std::string& what) {
  std::cerr << name << ": " << what << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localisation, colocalisation and coefficient computations for graded abelian groups"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--output", gl.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", gl.seed, "seed for randomised suites (default 0xC0FFEE)");
  app.add_option("--trials", gl.trials, "trials per randomised suite (default 500)");
  app.add_option("--max-order", gl.max_order, "cap on |sub| * |quot| for extension enumeration (default 4096)");
  app.add_flag("--parallel", gl.parallel, "run property trials concurrently");

  std::function<Out()> action;
  std::string a, b, lit, theory, S = "{}", q, s, t, p, r, kind = "finite", policy = "enumerate", complex, map,
                                  flavor = "complex", pair, H, colimit;
  bool tor = false;
  unsigned depth = 8;

  auto* group = app.add_subcommand("group", "finitely generated abelian groups");
  group->require_subcommand(1);
  auto* norm = group->add_subcommand("normalize", "parse a literal and print its canonical form");
  norm->add_option("literal", lit)->required();
  norm->callback([&] { action = [&] { return group_normalize(lit); }; });
  for (auto k : {Bifunctor::Hom, Bifunctor::Ext, Bifunctor::Tensor, Bifunctor::Tor}) {
    std::string nm(to_string(k));
    std::transform(nm.begin(), nm.end(), nm.begin(), [](unsigned char c) { return std::tolower(c); });
    auto* c = group->add_subcommand(nm, nm + "(A, B)");
    c->add_option("A", a)->required();
    c->add_option("B", b)->required();
    c->callback([&, k] { action = [&, k] { return group_bifunctor(k, a, b); }; });
  }

  auto* loc = app.add_subcommand("localize", "M (x) Z[S^-1]");
  loc->add_option("--group", lit)->required();
  loc->add_option("--S", S)->required();
  loc->add_flag("--tor", tor, "also print the Tor coefficient groups");
  loc->add_option("--colimit", colimit, "also print ker and coker of s^depth");
  loc->add_option("--depth", depth);
  loc->callback([&] { action = [&] { return localize_cmd(lit, S, tor, colimit, depth); }; });

  auto* coeff = app.add_subcommand("coeff", "a graded theory with finite, torsion or localised coefficients");
  coeff->add_option("--theory", theory, "graded literal, point-complex or point-real")->required();
  coeff->add_option("--kind", kind)->check(CLI::IsMember({"finite", "torsion", "localized", "localised"}));
  coeff->add_option("--q", q, "finite coefficients Z/q");
  coeff->add_option("--S", S, "prime set for torsion or localised coefficients");
  coeff->add_option("--policy", policy)->check(CLI::IsMember({"split", "enumerate"}));
  coeff->callback([&] {
    if (kind == "localised") kind = "localized";
    if (kind == "finite" && q.empty()) throw CLI::ValidationError("--q", "finite coefficients need --q");
    action = [&] { return coeff_cmd(gl, theory, kind, q, S, policy); };
  });

  auto* les = app.add_subcommand("les", "long exact sequences");
  les->require_subcommand(1);
  auto* lc = les->add_subcommand("loc-coloc", "F -> S^-1 F -> F(;S^-1 Z/Z)");
  lc->add_option("--theory", theory)->required();
  lc->add_option("--S", S)->required();
  lc->callback([&] {
    action = [&] {
      Out o;
      add_sequence(o, assemble_loc_coloc_les(theory_arg(theory), parse_prime_set(S)));
      return o;
    };
  });
  auto* lcoef = les->add_subcommand("coefficient", "F(;s) -> F(;st) -> F(;t)");
  lcoef->add_option("--theory", theory)->required();
  lcoef->add_option("--s", s)->required();
  lcoef->add_option("--t", t)->required();
  lcoef->callback([&] {
    action = [&] {
      Out o;
      add_sequence(o, coefficient_les(theory_arg(theory), integer_arg(s, "--s"), integer_arg(t, "--t")));
      return o;
    };
  });
  auto* oct = les->add_subcommand("octahedron", "C_s -> C_st -> C_t for a complex");
  oct->add_option("--complex", complex)->required();
  oct->add_option("--s", s)->required();
  oct->add_option("--t", t)->required();
  oct->callback([&] {
    action = [&] {
      Out o;
      add_sequence(o,
                   octahedron_check(parse_complex(text_arg(complex)), integer_arg(s, "--s"), integer_arg(t, "--t")));
      return o;
    };
  });

  auto* toy = app.add_subcommand("toy", "complexes of free abelian groups up to homotopy");
  toy->require_subcommand(1);
  auto* tc = toy->add_subcommand("cone", "mapping cone and its homology sequence");
  tc->add_option("--map", map, "chain map JSON");
  tc->add_option("--complex", complex, "complex JSON, with --s for multiplication by s");
  tc->add_option("--s", s);
  tc->callback([&] { action = [&] { return toy_cone(map_arg(map, complex, s)); }; });
  auto* tf = toy->add_subcommand("sfinite", "least S-number s with s * id nullhomotopic");
  tf->add_option("--complex", complex)->required();
  tf->add_option("--S", S)->required();
  tf->callback([&] { action = [&] { return toy_sfinite(parse_complex(text_arg(complex)), parse_prime_set(S)); }; });
  auto* te = toy->add_subcommand("sequiv", "S-equivalence by cone and by inverse search");
  te->add_option("--map", map, "chain map JSON");
  te->add_option("--complex", complex, "complex JSON, with --s for multiplication by s");
  te->add_option("--s", s);
  te->add_option("--S", S)->required();
  te->callback([&] { action = [&] { return toy_sequiv(map_arg(map, complex, s), parse_prime_set(S)); }; });
  auto* tt = toy->add_subcommand("theta", "the comparison map C_q -> C_p for q | p");
  tt->add_option("--complex", complex)->required();
  tt->add_option("--q", q)->required();
  tt->add_option("--p", p)->required();
  tt->add_option("--r", r, "intermediate q | r | p for the composite check");
  tt->callback([&] {
    action = [&] {
      std::optional<Integer> mid;
      if (!r.empty()) mid = integer_arg(r, "--r");
      return toy_theta(parse_complex(text_arg(complex)), integer_arg(q, "--q"), integer_arg(p, "--p"), mid);
    };
  });

  auto* kk = app.add_subcommand("kk", "KK-groups of fixtures");
  kk->require_subcommand(1);
  auto* ku = kk->add_subcommand("uct", "KK_*(A, B) from the universal coefficient sequence");
  ku->add_option("--a", a, "point-complex, Cq(q), DQ, DQZ or a period-2 literal")->required();
  ku->add_option("--b", b)->required();
  ku->callback([&] { action = [&] { return kk_uct(a, b); }; });
  auto* kc = kk->add_subcommand("cq", "K-theory of the cone C_q");
  kc->add_option("--q", q)->required();
  kc->add_option("--flavor", flavor)->check(CLI::IsMember({"complex", "real"}));
  kc->callback([&] { action = [&] { return kk_cq(gl, integer_arg(q, "--q"), flavor); }; });
  auto* kd = kk->add_subcommand("dq", "the D_Q and D_Q/Z examples");
  kd->callback([&] { action = [&] { return kk_dq(); }; });

  auto* rc = app.add_subcommand("rc", "real and complex K-theory");
  rc->require_subcommand(1);
  auto* rl = rc->add_subcommand("les", "exactness of KO -> K -> KO[-2] -> KO[1]");
  rl->add_option("--pair", pair, "point-rc (default) or RC pair JSON");
  rl->callback([&] {
    action = [&] {
      Out o;
      add_sequence(o, eta_les_check(pair_arg(pair)));
      return o;
    };
  });
  auto* rs = rc->add_subcommand("split", "K(;H) = KO(;H) + KO[-2](;H)");
  rs->add_option("--H", H, "Z[1/2], Z/s (odd s) or Z[1/S]/Z (S odd, finite)")->required();
  rs->add_option("--pair", pair, "point-rc (default) or RC pair JSON");
  rs->callback([&] { action = [&] { return rc_split(pair_arg(pair), coefficients_arg(H)); }; });

  auto* pc = app.add_subcommand("paper-check", "run every acceptance criterion and print the comparison table");
  pc->callback([&] { action = [&] { return paper_check(gl); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Out o = action();
    if (gl.output == "json") std::cout << o.json.dump(2) << "\n";
    else
      for (const auto& line : o.text) std::cout << line << "\n";
    return o.status;
  } catch (const Error& e) {
    const std::string& n = e.name();
    if (n == "ParseError" || n == "InvalidArgument" || n == "DisallowedCoefficient") return usage_error(n, e.what());
    std::cerr << n << ": " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    return usage_error("InvalidArgument", e.what());
  }
}
