#include "locoloc/json_io.hpp"
#include "locoloc/parse.hpp"
#include "locoloc/random.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

using namespace locoloc;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

// stderr is folded into the captured text
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(LOCOLOC_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

// ---------------------------------------------------------------------------
// Literals

TEST(Parse, GroupExamples) {
  const FgAbGroup g = parse_group("Z^2 + Z/4 + Z/3");
  EXPECT_EQ(g.rank(), 2u);
  EXPECT_EQ(g.invariant_factors(), std::vector<Integer>{12});
  EXPECT_EQ(parse_group(" 0 "), FgAbGroup{});
  EXPECT_EQ(parse_group("Z/2^3"), FgAbGroup::from_cyclic_orders(0, {2, 2, 2}));
  EXPECT_TRUE(std::holds_alternative<GradedExt>(parse_literal("period=2: [Z, 0]")));
  EXPECT_EQ(std::get<GradedExt>(parse_literal("period=2: [Z, 0]")), to_ext(GradedFg::periodic(2, {FgAbGroup::free(1), {}})));
  EXPECT_TRUE(std::holds_alternative<PrimeSet>(parse_literal("{2, 3}")));
  EXPECT_TRUE(std::holds_alternative<ExtModule>(parse_literal("Q/Z")));
}

TEST(Parse, ErrorsCarryAPosition) {
  try {
    parse_group("Z/0");
    FAIL() << "Z/0 parsed";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.name(), "ParseError");
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    parse_group("Z + + Z/3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_group(""), ParseError);
  EXPECT_THROW(parse_group("Z/4 junk"), ParseError);
  EXPECT_THROW(parse_graded("period=3: [Z, 0, 0]"), Error);
  EXPECT_THROW(parse_complex("{\"lo\": 0, \"ranks\": [1, 1], \"differentials\": [[[1, 2]]]}"), Error);
  EXPECT_THROW(parse_complex("{\"lo\": 0"), ParseError);
}

TEST(Parse, GroupsRoundTrip) {
  Random R(71);
  for (int i = 0; i < 300; ++i) {
    const FgAbGroup g = random_group(R, {3, 4, 60});
    ASSERT_EQ(parse_group(g.to_string()), g) << g.to_string();
    ASSERT_EQ(std::get<FgAbGroup>(parse_literal(g.to_string())), g);
  }
}

TEST(Parse, ModulesRoundTrip) {
  Random R(72);
  for (int i = 0; i < 300; ++i) {
    const PrimeSet S = random_prime_set(R);
    ExtModule m = localize_group(random_group(R), S);
    if (R.coin()) {
      const auto s = direct_sum(m, ExtModule::prufer(random_prime_set(R), static_cast<unsigned long>(R.uniform(1, 3))));
      if (is_representable(s)) m = std::get<ExtModule>(s);
    }
    // the base ring is only printed when there is a free part
    ASSERT_EQ(parse_module(m.to_string()), m) << m.to_string();
    if (m.free_rank() > 0) {
      ASSERT_TRUE(identical(parse_module(m.to_string()), m));
    }
  }
}

TEST(Parse, PrimeSetsRoundTrip) {
  for (const auto* s : {"{}", "{2}", "{2, 3, 5}", "all", "odd", "all\\{2, 5}", "{101, 7}"}) {
    const PrimeSet S = parse_prime_set(s);
    EXPECT_EQ(parse_prime_set(S.to_string()), S) << s;
  }
}

TEST(Parse, GradedRoundTrip) {
  Random R(73);
  for (int i = 0; i < 200; ++i) {
    const GradedFg F = random_graded(R);
    ASSERT_EQ(parse_graded_fg(F.to_string()), F) << F.to_string();
    const GradedExt L = localize_theory(F, random_prime_set(R));
    ASSERT_EQ(parse_graded(L.to_string()), L) << L.to_string();
  }
}

TEST(Parse, ComplexesRoundTrip) {
  Random R(74);
  for (int i = 0; i < 200; ++i) {
    const FreeComplex C = random_complex(R);
    const std::string s = to_json(C).dump();
    ASSERT_EQ(parse_complex(s), C) << s;
    ASSERT_EQ(std::get<FreeComplex>(parse_literal(s)), C);
  }
}

TEST(Parse, ChainMapsRoundTrip) {
  Random R(75);
  for (int i = 0; i < 100; ++i) {
    const ChainMap f = random_s_equivalence_candidate(R);
    const ChainMap g = chain_map_from_json(to_json(f));
    ASSERT_EQ(g.source(), f.source());
    ASSERT_EQ(g.target(), f.target());
    for (int n = f.source().lo(); n <= f.source().hi(); ++n) ASSERT_EQ(g.at(n), f.at(n));
  }
}

// ---------------------------------------------------------------------------
// Command line

TEST(Cli, CoefficientExample) {
  const CliRun r = cli("coeff --theory \"period=2: [Z, 0]\" --q 6");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "degree 0: Z/6")) << r.out;
  EXPECT_TRUE(contains(r.out, "degree 1: 0")) << r.out;
}

TEST(Cli, LocalizeExample) {
  const CliRun r = cli("localize --group \"Z + Z/12\" --S \"{2,3}\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Z[1/6]\n");
}

TEST(Cli, NormalizeMergesCoprimeFactors) {
  const CliRun r = cli("group normalize \"Z^2 + Z/4 + Z/3\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "Z^2 + Z/12")) << r.out;
}

TEST(Cli, CqKTheory) {
  const CliRun r = cli("kk cq --q 6 --flavor complex");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "K_0(C_6) = Z/6")) << r.out;
  EXPECT_TRUE(contains(r.out, "K_1(C_6) = 0")) << r.out;
}

TEST(Cli, ExitCodes) {
  CliRun r = cli("group normalize \"Z/0\"");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, "ParseError")) << r.out;
  r = cli("rc split --H Z/2");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.out, "DisallowedCoefficient")) << r.out;
  EXPECT_EQ(cli("no-such-command").status, 2);
  EXPECT_EQ(cli("coeff --theory \"period=2: [Z/64, Z/128]\" --q 128 --max-order 16").status, 1);
  EXPECT_EQ(cli("rc les").status, 0);
  // x3 is not an S-equivalence for S = {2}; both tests say so and the run succeeds
  const std::string bad =
      "{\"source\": {\"lo\": 0, \"ranks\": [1]}, \"target\": {\"lo\": 0, \"ranks\": [1]}, \"components\": {\"0\": [[3]]}}";
  r = cli("toy sequiv --map '" + bad + "' --S \"{2}\"");
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(Cli, JsonIsDeterministic) {
  for (const std::string args :
       {"--output json coeff --theory \"period=2: [Z/4, Z/2]\" --q 2",
        "--output json les loc-coloc --theory \"bounded: {0: Z/12, 1: Z}\" --S \"{2}\"",
        "--output json kk uct --a \"Cq(4)\" --b \"Cq(6)\"", "--output json rc split --H \"Z[1/2]\"",
        "--output json paper-check --trials 20"}) {
    const CliRun a = cli(args), b = cli(args);
    ASSERT_EQ(a.status, 0) << args << "\n" << a.out;
    ASSERT_EQ(a.out, b.out) << args;
    ASSERT_TRUE(nlohmann::json::accept(a.out)) << a.out;
  }
}

TEST(Cli, CheckCommandJsonSchema) {
  const CliRun r = cli("--output json paper-check --trials 30 --seed 7");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("trials"), 30);
  EXPECT_EQ(j.at("passed"), true);
  ASSERT_EQ(j.at("criteria").size(), 11u);
  for (const auto& c : j.at("criteria")) {
    EXPECT_TRUE(c.contains("id") && c.contains("title") && c.contains("passed") && c.contains("rows"));
    EXPECT_FALSE(c.contains("seconds"));
  }
}
