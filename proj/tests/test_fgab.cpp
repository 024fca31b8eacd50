#include "locoloc/bifunctor.hpp"
#include "locoloc/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace locoloc;

namespace {

IntMatrix mat(std::size_t r, std::size_t c, std::vector<long> v) {
  std::vector<Integer> e(v.begin(), v.end());
  return {r, c, e};
}

std::vector<std::vector<Integer>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

bool diagonal_chain_ok(const IntMatrix& D) {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i != j && D(i, j) != 0) return false;
      if (i == j) d.push_back(D(i, j));
    }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && !divides(d[i], d[i + 1])) return false;
  }
  return true;
}

IntMatrix random_matrix(Random& R, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = R.uniform(-bound, bound);
  return m;
}

oracle::Profile profile_of(const FgAbGroup& g, long limit) { return oracle::profile(oracle::finite_of(g), limit); }

}  // namespace

TEST(Smith, TwoByTwoExample) {
  const IntMatrix M = mat(2, 2, {2, 4, 6, 8});
  const auto s = smith_normal_form(M);
  EXPECT_EQ(s.U * M * s.V, s.D);
  EXPECT_EQ(s.D, mat(2, 2, {2, 0, 0, 4}));
  // d1 is the gcd of the entries, d1 d2 = |det|
  EXPECT_EQ(s.D(0, 0), 2);
  EXPECT_EQ(s.D(0, 0) * s.D(1, 1), Integer(abs(oracle::det(to_rows(M)))));
}

TEST(Smith, IdentityAndZero) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).D, IntMatrix::identity(3));
  const auto z = smith_normal_form(IntMatrix(2, 3));
  EXPECT_TRUE(z.D.is_zero());
  EXPECT_EQ(z.rank, 0u);
}

TEST(Smith, RandomMatricesDecompose) {
  Random R(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(R.uniform(1, 6)), c = static_cast<std::size_t>(R.uniform(1, 6));
    const IntMatrix M = random_matrix(R, r, c, 20);
    const auto s = smith_normal_form(M, {true, false, true, false});
    ASSERT_EQ(s.U * M * s.V, s.D);
    ASSERT_TRUE(diagonal_chain_ok(s.D));
    ASSERT_EQ(Integer(abs(oracle::det(to_rows(s.U)))), 1);
    ASSERT_EQ(Integer(abs(oracle::det(to_rows(s.V)))), 1);
    // idempotent on its own output
    ASSERT_EQ(smith_normal_form(s.D).D, s.D);
    // square case: product of the diagonal is |det|
    if (r == c && r <= 4) {
      Integer p = 1;
      for (const auto& d : s.diagonal()) p *= d;
      ASSERT_EQ(p, Integer(abs(oracle::det(to_rows(M)))));
    }
  }
}

TEST(Presentation, Examples) {
  EXPECT_EQ(group_from_presentation(mat(1, 1, {12})), FgAbGroup::cyclic(12));
  EXPECT_EQ(group_from_presentation(IntMatrix(0, 2)), FgAbGroup::free(2));
  EXPECT_EQ(group_from_presentation(mat(2, 2, {2, 0, 0, 0})), FgAbGroup::from_cyclic_orders(1, {2}));
}

TEST(Presentation, CoprimeFactorsMerge) {
  const auto g = FgAbGroup::from_cyclic_orders(2, {4, 3});
  EXPECT_EQ(g.rank(), 2u);
  ASSERT_EQ(g.invariant_factors().size(), 1u);
  EXPECT_EQ(g.invariant_factors()[0], 12);
  EXPECT_EQ(g.to_string(), "Z^2 + Z/12");
}

TEST(Presentation, MatchesElementCountsOfRandomFiniteCokernels) {
  Random R(5);
  for (int trial = 0; trial < 60; ++trial) {
    // diagonal-ish relations keep the brute-force group small
    const long a = R.uniform(1, 6), b = R.uniform(1, 6), c = R.uniform(-3, 3);
    const IntMatrix M = mat(2, 2, {a, c, 0, b});
    const FgAbGroup g = group_from_presentation(M);
    ASSERT_EQ(g.order(), a * b);
    // brute force: Z^2 / <(a,0), (c,b)> has elements (x, y) with 0 <= x < a, 0 <= y < b;
    // count those killed by n by reducing n(x, y) with the relations
    for (long n = 1; n <= a * b; ++n) {
      long killed = 0;
      for (long x = 0; x < a; ++x)
        for (long y = 0; y < b; ++y) {
          long X = n * x, Y = n * y;
          const long k = Y / b;  // subtract k (c, b)
          if (Y % b != 0) continue;
          X -= k * c;
          if (((X % a) + a) % a == 0) ++killed;
        }
      ASSERT_EQ(killed, profile_of(g, a * b).at(n)) << "relations " << M;
    }
  }
}

TEST(Subquotients, Examples) {
  auto t = map_subquotients(GroupHom::multiplication(FgAbGroup::free(1), 5));
  EXPECT_EQ(t.kernel, FgAbGroup{});
  EXPECT_EQ(t.image, FgAbGroup::free(1));
  EXPECT_EQ(t.cokernel, FgAbGroup::cyclic(5));

  t = map_subquotients(GroupHom::multiplication(FgAbGroup::cyclic(4), 2));
  EXPECT_EQ(t.kernel, FgAbGroup::cyclic(2));
  EXPECT_EQ(t.image, FgAbGroup::cyclic(2));
  EXPECT_EQ(t.cokernel, FgAbGroup::cyclic(2));

  t = map_subquotients(GroupHom(FgAbGroup::free(2), FgAbGroup::free(1), mat(1, 2, {1, 0})));
  EXPECT_EQ(t.kernel, FgAbGroup::free(1));
  EXPECT_EQ(t.image, FgAbGroup::free(1));
  EXPECT_EQ(t.cokernel, FgAbGroup{});
}

TEST(Subquotients, OrdersAndRanksAddUp) {
  Random R(7);
  for (int trial = 0; trial < 300; ++trial) {
    const FgAbGroup A = random_group(R), B = random_group(R);
    const GroupHom f = random_hom(R, A, B);
    const auto t = map_subquotients(f);
    ASSERT_EQ(A.rank(), t.kernel.rank() + t.image.rank());
    if (A.is_finite()) {
      ASSERT_EQ(A.order(), t.kernel.order() * t.image.order());
    }
    if (B.is_finite()) {
      ASSERT_EQ(B.order(), t.image.order() * t.cokernel.order());
    }
  }
}

TEST(Bifunctor, Examples) {
  EXPECT_EQ(bifunctor(Bifunctor::Hom, FgAbGroup::cyclic(6), FgAbGroup::cyclic(6)), FgAbGroup::cyclic(6));
  for (long q : {2, 3, 4, 12})
    EXPECT_EQ(bifunctor(Bifunctor::Tor, FgAbGroup::cyclic(q), FgAbGroup::cyclic(q)), FgAbGroup::cyclic(q));
  for (long q : {2, 4, 6, 10})
    EXPECT_EQ(bifunctor(Bifunctor::Tensor, FgAbGroup::cyclic(2), FgAbGroup::cyclic(q)), FgAbGroup::cyclic(2));
}

TEST(Bifunctor, CyclicValuesAllAgreeWithGcd) {
  for (long a = 2; a <= 30; ++a)
    for (long b = 2; b <= 30; ++b) {
      const FgAbGroup want = FgAbGroup::from_cyclic_orders(0, {std::gcd(a, b)});
      for (auto k : {Bifunctor::Hom, Bifunctor::Ext, Bifunctor::Tensor, Bifunctor::Tor})
        ASSERT_EQ(bifunctor(k, FgAbGroup::cyclic(a), FgAbGroup::cyclic(b)), want) << a << " " << b;
    }
}

TEST(Bifunctor, FreeArguments) {
  const FgAbGroup Z = FgAbGroup::free(1), Z5 = FgAbGroup::cyclic(5);
  EXPECT_EQ(bifunctor(Bifunctor::Hom, Z, Z5), Z5);
  EXPECT_EQ(bifunctor(Bifunctor::Hom, Z5, Z), FgAbGroup{});
  EXPECT_EQ(bifunctor(Bifunctor::Ext, Z, Z5), FgAbGroup{});
  EXPECT_EQ(bifunctor(Bifunctor::Ext, Z5, Z), Z5);
  EXPECT_EQ(bifunctor(Bifunctor::Tor, Z, Z5), FgAbGroup{});
  EXPECT_EQ(bifunctor(Bifunctor::Tensor, FgAbGroup::free(2), FgAbGroup::free(3)), FgAbGroup::free(6));
}

TEST(Bifunctor, HomMatchesEnumeratedHomomorphisms) {
  Random R(3);
  for (int trial = 0; trial < 80; ++trial) {
    const GroupShape small{0, 2, 12};
    const FgAbGroup A = random_group(R, small), B = random_group(R, small);
    if (A.order() * B.order() > 600) continue;
    const FgAbGroup H = bifunctor(Bifunctor::Hom, A, B);
    const long lim = std::max<long>(2, B.torsion_exponent().get_si());
    ASSERT_EQ(profile_of(H, lim), oracle::hom_profile(oracle::finite_of(A), oracle::finite_of(B), lim))
        << A << " -> " << B;
    // finite groups: Ext, tensor and Tor are all abstractly Hom
    for (auto k : {Bifunctor::Ext, Bifunctor::Tensor, Bifunctor::Tor}) ASSERT_EQ(bifunctor(k, A, B), H);
  }
}

TEST(Bifunctor, AdditiveInEachArgument) {
  Random R(9);
  for (int trial = 0; trial < 200; ++trial) {
    const FgAbGroup A = random_group(R), A2 = random_group(R), B = random_group(R);
    for (auto k : {Bifunctor::Hom, Bifunctor::Ext, Bifunctor::Tensor, Bifunctor::Tor}) {
      ASSERT_EQ(bifunctor(k, A + A2, B), bifunctor(k, A, B) + bifunctor(k, A2, B));
      ASSERT_EQ(bifunctor(k, B, A + A2), bifunctor(k, B, A) + bifunctor(k, B, A2));
    }
  }
}

TEST(TorsionData, Examples) {
  auto t = torsion_data(FgAbGroup::cyclic(12), PrimeSet::finite({2}));
  EXPECT_EQ(t.s_torsion, FgAbGroup::cyclic(4));
  EXPECT_EQ(t.exponent_of_torsion, 12);
  t = torsion_data(FgAbGroup::free(2), PrimeSet::all());
  EXPECT_EQ(t.s_torsion, FgAbGroup{});
  EXPECT_EQ(t.exponent_of_torsion, 1);
  const FgAbGroup M = FgAbGroup::from_cyclic_orders(0, {6, 10});
  t = torsion_data(M, PrimeSet::finite({2, 5}));
  EXPECT_EQ(t.s_torsion, FgAbGroup::from_cyclic_orders(0, {2, 10}));
  EXPECT_EQ(t.exponent_of_torsion, 30);
}

TEST(TorsionData, MatchesEnumeratedAnnihilatedElements) {
  // elements of Z/6 + Z/10 killed by a {2,5}-number, i.e. by 10
  const oracle::Finite M{{6, 10}};
  long killed = 0;
  for (long e = 0; e < M.size(); ++e)
    if (M.is_zero(M.scale(10, M.decode(e)))) ++killed;
  EXPECT_EQ(killed, FgAbGroup::from_cyclic_orders(0, {2, 10}).order());
  EXPECT_EQ(torsion_data(FgAbGroup::from_cyclic_orders(0, {6, 10}), PrimeSet::finite({2, 5})).s_torsion.order(),
            killed);
}

TEST(GroupHom, TorsionColumnsAreReduced) {
  const FgAbGroup Z4 = FgAbGroup::cyclic(4);
  const GroupHom f(Z4, Z4, mat(1, 1, {6}));
  EXPECT_EQ(f.matrix()(0, 0), 2);
  EXPECT_THROW(GroupHom(FgAbGroup::cyclic(2), FgAbGroup::free(1), mat(1, 1, {1})), std::invalid_argument);
}
