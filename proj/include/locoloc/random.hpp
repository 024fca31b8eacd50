#pragma once

// Seeded generators for the property suites. Every draw goes through one
// std::mt19937_64, so a seed fixes the whole sequence.

#include "locoloc/complex.hpp"
#include "locoloc/theories.hpp"

#include <random>
#include <set>

namespace locoloc {

class Random {
 public:
  explicit Random(std::uint64_t seed) : eng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v.at(static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))); }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct GroupShape {
  long max_rank = 2;
  long max_factors = 3;
  long max_exponent = 36;
};

/// Free rank and cyclic factors dividing one exponent e <= max_exponent, so
/// the exponent bound survives normalisation.
inline FgAbGroup random_group(Random& R, const GroupShape& shape = {}) {
  const auto rank = static_cast<std::size_t>(R.uniform(0, shape.max_rank));
  const long k = R.uniform(0, shape.max_factors);
  if (k == 0 || shape.max_exponent < 2) return FgAbGroup::free(rank);
  const Integer e = R.uniform(2, shape.max_exponent);
  const std::vector<Integer> ds = divisors(e);
  std::vector<Integer> orders{e};
  for (long i = 1; i < k; ++i) orders.push_back(R.pick(ds));
  return FgAbGroup::from_cyclic_orders(rank, orders);
}

/// A random element of the n-torsion of B, in canonical coordinates
/// (n = 0 means no constraint).
inline std::vector<Integer> random_torsion_element(Random& R, const FgAbGroup& B, const Integer& n, long spread = 3) {
  std::vector<Integer> x(B.num_generators());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i < B.rank()) {
      x[i] = n == 0 ? Integer(R.uniform(-spread, spread)) : Integer(0);
    } else {
      const Integer& m = B.invariant_factors()[i - B.rank()];
      const Integer step = n == 0 ? Integer(1) : exact_div(m, gcd(m, n));
      x[i] = mod(step * R.uniform(0, spread * 4), m);
    }
  }
  return x;
}

/// A well-defined hom A -> B: torsion generators of order n go to n-torsion.
inline GroupHom random_hom(Random& R, const FgAbGroup& A, const FgAbGroup& B) {
  IntMatrix m(B.num_generators(), A.num_generators());
  for (std::size_t j = 0; j < A.num_generators(); ++j) {
    const Integer n = j < A.rank() ? Integer(0) : A.invariant_factors()[j - A.rank()];
    m.set_col(j, random_torsion_element(R, B, n));
  }
  return {A, B, m};
}

struct GradedShape {
  GroupShape group;
  double periodic = 0.5;
  long max_window = 3;
};

inline GradedFg random_graded(Random& R, const GradedShape& shape = {}) {
  if (R.coin(shape.periodic)) return GradedFg::periodic(2, {random_group(R, shape.group), random_group(R, shape.group)});
  const long lo = R.uniform(-1, 1), len = R.uniform(1, shape.max_window);
  std::map<int, FgAbGroup> e;
  for (long n = lo; n < lo + len; ++n) e[static_cast<int>(n)] = random_group(R, shape.group);
  return GradedFg::bounded(e);
}

/// Maps between random theories of the same shape. Mixes multiplication
/// maps, automorphism-like maps and arbitrary homs so that isomorphisms,
/// S-isomorphisms and neither all occur.
inline TheoryMap random_theory_map(Random& R, const GradedShape& shape = {}) {
  TheoryMap phi;
  phi.source = random_graded(R, shape);
  const long mode = R.uniform(0, 2);
  if (mode == 2) {
    // independent target on the same degrees
    if (phi.source.is_periodic()) {
      phi.target = GradedFg::periodic(2, {random_group(R, shape.group), random_group(R, shape.group)});
    } else {
      std::map<int, FgAbGroup> e;
      for (int n : phi.source.degrees()) e[n] = random_group(R, shape.group);
      const auto [lo, hi] = phi.source.window();
      if (lo <= hi && e.empty()) e[lo] = random_group(R, shape.group);
      phi.target = GradedFg::bounded(e);
    }
  } else {
    phi.target = phi.source;
  }
  std::vector<int> degs;
  if (phi.source.is_periodic()) degs = {0, 1};
  else {
    std::set<int> s;
    for (int n : phi.source.degrees()) s.insert(n);
    for (int n : phi.target.degrees()) s.insert(n);
    degs.assign(s.begin(), s.end());
  }
  const std::vector<long> scalars = {1, -1, 2, 3, 5, 6};
  for (int n : degs) {
    const FgAbGroup A = phi.source.at(n), B = phi.target.at(n);
    if (mode == 0) phi.maps.emplace(n, GroupHom::multiplication(A, R.pick(scalars)));
    else phi.maps.emplace(n, random_hom(R, A, B));
  }
  phi.validate();
  return phi;
}

struct ComplexShape {
  long max_length = 4;  // number of degrees
  long max_rank = 3;
  long max_entry = 6;
};

namespace detail {

inline bool entries_within(const IntMatrix& m, long bound) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (locoloc::abs(m(i, j)) > bound) return false;
  return true;
}

/// Random small combination of the columns of K, reshaped into rows x cols
/// (column-major), or a zero matrix when no draw stays within the bound.
inline IntMatrix random_in_span(Random& R, const IntMatrix& K, std::size_t rows, std::size_t cols, long bound) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<Integer> c(K.cols());
    const long spread = attempt < 12 ? 2 : 1;
    for (auto& x : c) x = R.coin(0.6) ? Integer(R.uniform(-spread, spread)) : Integer(0);
    const std::vector<Integer> v = K * c;
    IntMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
    if (entries_within(m, bound)) return m;
  }
  return IntMatrix(rows, cols);
}

}  // namespace detail

/// Each differential is drawn from the kernel lattice of the one below, so
/// d d = 0 holds by construction.
inline FreeComplex random_complex(Random& R, const ComplexShape& shape = {}) {
  const long len = R.uniform(1, shape.max_length);
  const int lo = static_cast<int>(R.uniform(-1, 1));
  std::vector<std::size_t> ranks;
  for (long i = 0; i < len; ++i) ranks.push_back(static_cast<std::size_t>(R.uniform(0, shape.max_rank)));
  std::vector<IntMatrix> ds;
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
    const std::size_t rows = ranks[i], cols = ranks[i + 1];
    if (i == 0) {
      IntMatrix m(rows, cols);
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b) m(a, b) = R.coin(0.7) ? R.uniform(-shape.max_entry, shape.max_entry) : 0;
      ds.push_back(std::move(m));
      continue;
    }
    // columns of d must lie in ker(d_prev); vec(d) = (I (x) K) c
    const IntMatrix K = kernel_basis(ds.back());
    IntMatrix big(rows * cols, K.cols() * cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < K.cols(); ++b) big(j * rows + a, j * K.cols() + b) = K(a, b);
    ds.push_back(detail::random_in_span(R, big, rows, cols, shape.max_entry));
  }
  return {lo, ranks, ds};
}

/// All degree-0 chain maps A -> B as a lattice: columns of the returned
/// matrix, each a stacked vector of components in ascending degree.
struct ChainMapLattice {
  int lo = 0, hi = -1;
  std::vector<std::size_t> offsets;  // start of component n = lo + i
  IntMatrix basis;

  ChainMap assemble(const FreeComplex& A, const FreeComplex& B, std::span<const Integer> v) const {
    std::map<int, IntMatrix> f;
    for (int n = lo; n <= hi; ++n) {
      const std::size_t r = B.rank(n), c = A.rank(n), off = offsets[static_cast<std::size_t>(n - lo)];
      IntMatrix m(r, c);
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < r; ++i) m(i, j) = v[off + j * r + i];
      f[n] = std::move(m);
    }
    return {A, B, f};
  }
};

inline ChainMapLattice chain_map_lattice(const FreeComplex& A, const FreeComplex& B) {
  ChainMapLattice L;
  L.lo = std::min(A.lo(), B.lo());
  L.hi = std::max(A.hi(), B.hi());
  std::size_t total = 0;
  for (int n = L.lo; n <= L.hi; ++n) {
    L.offsets.push_back(total);
    total += B.rank(n) * A.rank(n);
  }
  // rows: entries of d^B_n f_n - f_{n-1} d^A_n, a rank_B(n-1) x rank_A(n) matrix
  std::size_t rows = 0;
  for (int n = L.lo + 1; n <= L.hi; ++n) rows += B.rank(n - 1) * A.rank(n);
  IntMatrix E(rows, total);
  std::size_t row = 0;
  for (int n = L.lo + 1; n <= L.hi; ++n) {
    const IntMatrix dB = B.d(n), dA = A.d(n);
    const std::size_t off_n = L.offsets[static_cast<std::size_t>(n - L.lo)];
    const std::size_t off_m = L.offsets[static_cast<std::size_t>(n - 1 - L.lo)];
    const std::size_t rb = B.rank(n), rb1 = B.rank(n - 1), ra = A.rank(n), ra1 = A.rank(n - 1);
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t i = 0; i < rb1; ++i, ++row) {
        // (dB f_n)(i, j) = sum_k dB(i, k) f_n(k, j)
        for (std::size_t k = 0; k < rb; ++k) E(row, off_n + j * rb + k) += dB(i, k);
        // (f_{n-1} dA)(i, j) = sum_k f_{n-1}(i, k) dA(k, j)
        for (std::size_t k = 0; k < ra1; ++k) E(row, off_m + k * rb1 + i) -= dA(k, j);
      }
  }
  L.basis = total == 0 ? IntMatrix(0, 0) : kernel_basis(E);
  return L;
}

inline ChainMap random_chain_map(Random& R, const FreeComplex& A, const FreeComplex& B, long max_entry = 6) {
  const ChainMapLattice L = chain_map_lattice(A, B);
  if (L.basis.cols() == 0) return ChainMap::zero(A, B);
  const IntMatrix v = detail::random_in_span(R, L.basis, L.basis.rows(), 1, max_entry);
  return L.assemble(A, B, v.col(0));
}

/// Degree-0 chain maps for the S-equivalence suite: half the time an
/// endomorphism s + dh + hd (often an S-equivalence), otherwise a random
/// chain map between two random complexes.
inline ChainMap random_s_equivalence_candidate(Random& R, const ComplexShape& shape = {}) {
  const FreeComplex A = random_complex(R, shape);
  if (R.coin()) {
    const Integer s = R.pick(std::vector<long>{1, -1, 2, 3, 4, 6});
    std::map<int, IntMatrix> f;
    for (int n = A.lo(); n <= A.hi(); ++n) f[n] = IntMatrix::scalar(A.rank(n), s);
    // add a null-homotopic perturbation dh + hd when it keeps entries small,
    // h_n : A_n -> A_{n+1}
    std::map<int, IntMatrix> hs;
    for (int n = A.lo() - 1; n <= A.hi(); ++n) {
      IntMatrix h(A.rank(n + 1), A.rank(n));
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = R.coin(0.3) ? R.uniform(-1, 1) : 0;
      hs[n] = std::move(h);
    }
    std::map<int, IntMatrix> g = f;
    for (int n = A.lo(); n <= A.hi(); ++n) g[n] = g[n] + A.d(n + 1) * hs[n] + hs[n - 1] * A.d(n);
    const bool small = std::all_of(g.begin(), g.end(), [&](const auto& kv) {
      return detail::entries_within(kv.second, shape.max_entry);
    });
    return {A, A, small ? g : f};
  }
  const FreeComplex B = random_complex(R, shape);
  return random_chain_map(R, A, B, shape.max_entry);
}

inline PrimeSet random_prime_set(Random& R) {
  static const std::vector<PrimeSet> choices = {PrimeSet::finite({2}), PrimeSet::finite({3}), PrimeSet::finite({2, 3}),
                                                PrimeSet::all()};
  return R.pick(choices);
}

}  // namespace locoloc
