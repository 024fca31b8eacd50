#pragma once

// Short exact sequences sub >-> E ->> quot with an undetermined middle term:
// either split, or enumerated up to isomorphism with explicit certificates.

#include "locoloc/group_hom.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace locoloc {

struct ExtensionCandidate {
  FgAbGroup middle;
  GroupHom inclusion;   // sub -> middle
  GroupHom projection;  // middle -> quot
};

enum class ResolutionPolicy { Split, Enumerate };

struct ExtensionProblem {
  FgAbGroup sub;
  FgAbGroup quot;
  std::vector<ExtensionCandidate> candidates;
  std::optional<FgAbGroup> resolved;

  ExtensionProblem() = default;
  ExtensionProblem(FgAbGroup s, FgAbGroup q) : sub(std::move(s)), quot(std::move(q)) {}

  std::vector<FgAbGroup> candidate_groups() const {
    std::vector<FgAbGroup> out;
    for (const auto& c : candidates) out.push_back(c.middle);
    return out;
  }
  bool is_zero() const { return sub.is_trivial() && quot.is_trivial(); }

  /// Resolved group, else the candidate set in braces.
  std::string to_string() const {
    if (resolved) return resolved->to_string();
    std::string out = "{";
    for (std::size_t i = 0; i < candidates.size(); ++i)
      out += (i ? " | " : "") + candidates[i].middle.to_string();
    return out + "}";
  }
  /// Zero problems compare equal regardless of bookkeeping.
  friend bool operator==(const ExtensionProblem& a, const ExtensionProblem& b) {
    return a.sub == b.sub && a.quot == b.quot && a.resolved == b.resolved &&
           a.candidate_groups() == b.candidate_groups();
  }
};

/// True when i is injective, p surjective, and im i = ker p.
inline bool certifies_extension(const GroupHom& i, const GroupHom& p) {
  if (!(i.codomain() == p.domain())) return false;
  if (!is_injective(i) || !is_surjective(p)) return false;
  const auto h = homology_at(i, p);
  return h && h->is_trivial();
}

namespace detail {

/// Exponents of the p-primary part, descending (a partition).
inline std::vector<unsigned> primary_type(const FgAbGroup& g, const Integer& p) {
  std::vector<unsigned> out;
  for (const auto& n : g.invariant_factors()) {
    const unsigned v = static_cast<unsigned>(valuation(n, p));
    if (v) out.push_back(v);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline void partitions_rec(unsigned n, unsigned max_part, std::vector<unsigned>& cur,
                           std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<unsigned>> partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

/// p-group with the given type, canonical order (ascending factors).
inline FgAbGroup p_group(const Integer& p, const std::vector<unsigned>& type) {
  std::vector<Integer> orders;
  for (unsigned e : type) orders.push_back(locoloc::pow(p, e));
  return FgAbGroup::from_cyclic_orders(0, orders);
}

/// Littlewood-Richardson coefficient c^lambda_{mu nu}: the number of skew
/// tableaux of shape lambda/mu and content nu whose reverse reading word is a
/// lattice word. A p-group of type lambda has a subgroup of type mu with
/// quotient of type nu exactly when it is nonzero.
inline unsigned long lr_coefficient(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu,
                                    const std::vector<unsigned>& nu) {
  auto size = [](const std::vector<unsigned>& a) {
    unsigned t = 0;
    for (unsigned x : a) t += x;
    return t;
  };
  if (size(lambda) != size(mu) + size(nu) || mu.size() > lambda.size()) return 0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu[i] > lambda[i]) return 0;
  const std::size_t rows = lambda.size();
  auto mu_at = [&](std::size_t i) { return i < mu.size() ? mu[i] : 0u; };
  // T[i][j] for columns j in [mu_i, lambda_i)
  std::vector<std::vector<unsigned>> T(rows);
  for (std::size_t i = 0; i < rows; ++i) T[i].assign(lambda[i], 0);
  std::vector<unsigned> count(nu.size() + 1, 0);
  unsigned long total = 0;
  // reading order: rows top to bottom, each right to left
  std::function<void(std::size_t, long)> fill = [&](std::size_t i, long j) {
    if (i == rows) {
      ++total;
      return;
    }
    if (j < static_cast<long>(mu_at(i))) {
      const std::size_t ni = i + 1;
      fill(ni, ni < rows ? static_cast<long>(lambda[ni]) - 1 : 0);
      return;
    }
    const auto col = static_cast<std::size_t>(j);
    // weakly increasing along the row: at most the entry to the right
    unsigned hi = static_cast<unsigned>(nu.size());
    if (col + 1 < lambda[i]) hi = std::min(hi, T[i][col + 1]);
    // strictly increasing down columns
    unsigned lo = 1;
    if (i > 0 && col >= mu_at(i - 1)) lo = T[i - 1][col] + 1;
    for (unsigned v = lo; v <= hi; ++v) {
      if (count[v] >= nu[v - 1]) continue;
      if (v > 1 && count[v] + 1 > count[v - 1]) continue;
      ++count[v];
      T[i][col] = v;
      fill(i, j - 1);
      --count[v];
    }
    T[i][col] = 0;
  };
  fill(0, rows ? static_cast<long>(lambda[0]) - 1 : 0);
  return total;
}

/// Depth-first search for an embedding of `sub` into `E` with quotient
/// `quot`, all p-groups, run only when one is known to exist. Elements of E
/// are encoded as integers; the generated subgroup is kept as a membership
/// table, so each step costs O(|E|) without any Smith form.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const Integer& p, FgAbGroup sub, FgAbGroup E, FgAbGroup quot, std::size_t node_limit)
      : sub_(std::move(sub)), E_(std::move(E)), quot_(std::move(quot)), limit_(node_limit), p_(p.get_si()) {
    for (const auto& n : E_.invariant_factors()) mods_.push_back(n.get_si());
    k_ = mods_.size();
    N_ = 1;
    for (long m : mods_) N_ *= static_cast<std::size_t>(m);
    coords_.resize(N_ * k_);
    for (std::size_t x = 0, c = 0; x < N_; ++x) {
      std::size_t r = x;
      for (std::size_t i = 0; i < k_; ++i, ++c) {
        coords_[c] = static_cast<long>(r % static_cast<std::size_t>(mods_[i]));
        r /= static_cast<std::size_t>(mods_[i]);
      }
    }
    for (std::size_t x = 0; x < N_; ++x) {
      const long o = order(x);
      by_order_[o].push_back(x);
      // x = sum p^{a_i} e_i: every element is one of these up to automorphism
      bool rep = true;
      for (std::size_t i = 0; i < k_ && rep; ++i) {
        long c = coords_[x * k_ + i];
        while (c > 1 && c % p_ == 0) c /= p_;
        rep = coords_[x * k_ + i] == 0 || c == 1;
      }
      if (rep) reps_by_order_[o].push_back(x);
    }
    sub_types_ = primary_type(sub_, p);
    quot_type_ = primary_type(quot_, p);
  }

  std::optional<std::pair<GroupHom, GroupHom>> run() {
    images_.assign(sub_types_.size(), 0);
    std::vector<char> in_h(N_, 0);
    in_h[0] = 1;
    return dfs(0, in_h, {0});
  }
  bool exhausted_limit() const noexcept { return nodes_ >= limit_; }

 private:
  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t code = 0, mult = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      code += static_cast<std::size_t>((coords_[a * k_ + i] + coords_[b * k_ + i]) % mods_[i]) * mult;
      mult *= static_cast<std::size_t>(mods_[i]);
    }
    return code;
  }
  std::size_t scale(std::size_t a, long t) const {
    std::size_t code = 0, mult = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      code += static_cast<std::size_t>((coords_[a * k_ + i] * t) % mods_[i]) * mult;
      mult *= static_cast<std::size_t>(mods_[i]);
    }
    return code;
  }
  long order(std::size_t a) const {
    long o = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      const long c = coords_[a * k_ + i];
      if (c) o = std::max(o, mods_[i] / std::gcd(mods_[i], c));
    }
    return o;
  }

  /// Type of E/H (descending exponents) from the sizes of its p^j-torsion.
  std::vector<unsigned> quotient_type(const std::vector<char>& in_h, std::size_t h_size) const {
    std::vector<std::size_t> torsion{1};
    const std::size_t q_size = N_ / h_size;
    long pj = 1;
    while (torsion.back() < q_size) {
      pj *= p_;
      std::size_t hits = 0;
      for (std::size_t x = 0; x < N_; ++x)
        if (in_h[scale(x, pj)]) ++hits;
      torsion.push_back(hits / h_size);
    }
    // the number of parts >= j is log_p(torsion_j / torsion_{j-1})
    std::vector<unsigned> at_least;
    for (std::size_t j = 1; j < torsion.size(); ++j) {
      unsigned c = 0;
      for (std::size_t r = torsion[j] / torsion[j - 1]; r > 1; r /= static_cast<std::size_t>(p_)) ++c;
      at_least.push_back(c);
    }
    // conjugate partition
    std::vector<unsigned> out(at_least.empty() ? 0 : at_least[0], 0);
    for (unsigned c : at_least)
      for (unsigned i = 0; i < c; ++i) ++out[i];
    return out;
  }

  std::optional<std::pair<GroupHom, GroupHom>> certificate() const {
    // columns in ascending canonical order of sub; search ran largest first
    const std::size_t m = sub_types_.size();
    IntMatrix inc(k_, m);
    for (std::size_t d = 0; d < m; ++d) {
      const std::size_t col = m - 1 - d;
      for (std::size_t i = 0; i < k_; ++i) inc(i, col) = coords_[images_[d] * k_ + i];
    }
    const GroupHom i(sub_, E_, inc);
    const PresentedQuotient c = cokernel_presentation(i);
    if (!(c.group == quot_)) return std::nullopt;
    return std::make_pair(i, GroupHom(E_, quot_, c.to_canonical));
  }

  std::optional<std::pair<GroupHom, GroupHom>> dfs(std::size_t depth, const std::vector<char>& in_h,
                                                   const std::vector<std::size_t>& h) {
    const std::size_t m = sub_types_.size();
    if (depth == m) return certificate();
    const unsigned e = sub_types_[depth];
    const long mj = static_cast<long>(locoloc::pow(Integer(p_), e).get_si());
    // the generators still to place, as a partition
    const std::vector<unsigned> rest(sub_types_.begin() + static_cast<long>(depth) + 1, sub_types_.end());
    const auto& pool = depth == 0 ? reps_by_order_ : by_order_;
    const auto it = pool.find(mj);
    if (it == pool.end()) return std::nullopt;
    std::vector<char> next(N_);
    for (std::size_t y : it->second) {
      if (++nodes_ >= limit_) return std::nullopt;
      // <y> meets H trivially iff its order-p element is outside H
      if (in_h[scale(y, mj / p_)]) continue;
      std::fill(next.begin(), next.end(), 0);
      std::vector<std::size_t> h2;
      h2.reserve(h.size() * static_cast<std::size_t>(mj));
      std::size_t ky = 0;
      for (long t = 0; t < mj; ++t, ky = add(ky, y))
        for (std::size_t x : h) {
          const std::size_t z = add(x, ky);
          next[z] = 1;
          h2.push_back(z);
        }
      // E/H must still hold the rest of sub with quotient quot
      if (lr_coefficient(quotient_type(next, h2.size()), rest, quot_type_) == 0) continue;
      images_[depth] = y;
      if (auto r = dfs(depth + 1, next, h2)) return r;
    }
    return std::nullopt;
  }

  FgAbGroup sub_, E_, quot_;
  std::size_t limit_;
  std::size_t nodes_ = 0;
  long p_;
  std::vector<long> mods_;
  std::size_t k_ = 0, N_ = 1;
  std::vector<long> coords_;
  std::map<long, std::vector<std::size_t>> by_order_, reps_by_order_;
  std::vector<unsigned> sub_types_, quot_type_;  // descending exponents
  std::vector<std::size_t> images_;
};

/// Relation matrix listing elementary divisors prime by prime (ascending
/// primes, ascending powers), the layout used to glue per-prime certificates.
inline IntMatrix primary_relations(const FgAbGroup& g, const std::vector<Integer>& primes) {
  std::vector<Integer> d;
  for (const auto& p : primes) {
    const FgAbGroup part = p_group(p, primary_type(g, p));
    d.insert(d.end(), part.invariant_factors().begin(), part.invariant_factors().end());
  }
  return IntMatrix::diagonal(d);
}

}  // namespace detail

/// Split certificate: sub -> sub + quot -> quot.
inline ExtensionCandidate split_candidate(const FgAbGroup& sub, const FgAbGroup& quot) {
  const SplitSum E({sub, quot});
  return {E.group(), E.inclusion(0), E.projection(1)};
}

inline ExtensionProblem resolve_extension(ExtensionProblem p, ResolutionPolicy policy,
                                          const Integer& max_order = 4096) {
  p.candidates.clear();
  p.resolved.reset();
  if (policy == ResolutionPolicy::Split || p.sub.is_trivial() || p.quot.is_trivial()) {
    p.candidates.push_back(split_candidate(p.sub, p.quot));
    p.resolved = p.candidates.front().middle;
    return p;
  }
  if (!p.sub.is_finite() || !p.quot.is_finite())
    throw std::invalid_argument("resolve_extension: enumeration needs finite sub and quot");
  const Integer N = p.sub.order() * p.quot.order();
  if (N > max_order)
    throw Error("BoundExceeded", "extension enumeration: order " + N.get_str() + " exceeds bound " +
                                     max_order.get_str());

  // Per prime, every p-group of the right order admitting an embedding of
  // sub_p with quotient quot_p, each with its certificate.
  const std::vector<Integer> primes = prime_divisors(N);
  std::vector<std::vector<std::pair<std::vector<unsigned>, std::pair<GroupHom, GroupHom>>>> per_prime;
  for (const auto& q : primes) {
    const auto mu = detail::primary_type(p.sub, q);
    const auto nu = detail::primary_type(p.quot, q);
    const unsigned e = static_cast<unsigned>(valuation(N, q));
    const FgAbGroup Sq = detail::p_group(q, mu), Qq = detail::p_group(q, nu);
    auto& found = per_prime.emplace_back();
    for (const auto& lambda : detail::partitions(e)) {
      // rank and exponent bounds every extension obeys
      if (lambda.size() < std::max(mu.size(), nu.size()) || lambda.size() > mu.size() + nu.size()) continue;
      const unsigned emu = mu.empty() ? 0 : mu[0], enu = nu.empty() ? 0 : nu[0];
      if (lambda[0] < std::max(emu, enu) || lambda[0] > emu + enu) continue;
      if (detail::lr_coefficient(lambda, mu, nu) == 0) continue;
      detail::EmbeddingSearch search(q, Sq, detail::p_group(q, lambda), Qq, 2'000'000);
      auto cert = search.run();
      if (!cert)
        throw Error("BoundExceeded", "extension enumeration: no certificate found for " +
                                         detail::p_group(q, lambda).to_string() +
                                         (search.exhausted_limit() ? " within the search limit" : ""));
      found.emplace_back(lambda, std::move(*cert));
    }
  }

  // Glue one choice per prime.
  const IntMatrix sub_rel = detail::primary_relations(p.sub, primes);
  const IntMatrix quot_rel = detail::primary_relations(p.quot, primes);
  const PresentedQuotient sub_pq = present_quotient(sub_rel);
  const PresentedQuotient quot_pq = present_quotient(quot_rel);
  std::vector<std::size_t> pick(primes.size(), 0);
  while (true) {
    std::vector<Integer> mid_d;
    IntMatrix i_blocks, p_blocks;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const auto& [lambda, cert] = per_prime[k][pick[k]];
      for (const auto& n : cert.first.codomain().invariant_factors()) mid_d.push_back(n);
      i_blocks = direct_sum(i_blocks, cert.first.matrix());
      p_blocks = direct_sum(p_blocks, cert.second.matrix());
    }
    const PresentedQuotient mid_pq = present_quotient(IntMatrix::diagonal(mid_d));
    ExtensionCandidate c{mid_pq.group, hom_between_presentations(sub_pq, mid_pq, i_blocks),
                         hom_between_presentations(mid_pq, quot_pq, p_blocks)};
    p.candidates.push_back(std::move(c));

    std::size_t k = 0;
    for (; k < primes.size(); ++k) {
      if (++pick[k] < per_prime[k].size()) break;
      pick[k] = 0;
    }
    if (k == primes.size()) break;
  }
  std::sort(p.candidates.begin(), p.candidates.end(), [](const auto& a, const auto& b) {
    return a.middle.invariant_factors().size() != b.middle.invariant_factors().size()
               ? a.middle.invariant_factors().size() > b.middle.invariant_factors().size()
               : a.middle.invariant_factors() < b.middle.invariant_factors();
  });
  if (p.candidates.size() == 1) p.resolved = p.candidates.front().middle;
  return p;
}

}  // namespace locoloc
