#pragma once

// Literal grammars for groups, modules, prime sets, graded groups and complexes.
//
//   group    := '0' | gterm ('+' gterm)*
//   gterm    := 'Z' ['^' N] | 'Z/' N ['^' N]
//   module   := '0' | mterm ('+' mterm)*
//   mterm    := gterm | 'Z[1/' (N | primes) ']' ['^' N] | 'Q' ['^' N]
//             | 'Q/Z' | '(Q/Z)^' N | 'Prufer(' (N | primes) ')' ['^' N]
//   primes   := '{' [N (',' N)*] '}' | 'all' | 'odd' | 'all\' '{' ... '}'
//   graded   := 'period=' N ':' '[' module (',' module)* ']'
//             | 'bounded:' '{' [int ':' module (',' int ':' module)*] '}'
//   complex  := JSON {lo, hi, ranks, differentials}

#include "locoloc/complex.hpp"

#include <json.hpp>

#include <cctype>
#include <variant>

namespace locoloc {

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
      : Error("ParseError", message(position, expected, found)), position_(position), expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string message(std::size_t pos, const std::vector<std::string>& exp, const std::string& found) {
    std::string out = "at position " + std::to_string(pos) + ": expected ";
    for (std::size_t i = 0; i < exp.size(); ++i) out += (i ? (i + 1 == exp.size() ? " or " : ", ") : "") + exp[i];
    return out + ", found " + (found.empty() ? "end of input" : "'" + found + "'");
  }
  std::size_t position_;
  std::vector<std::string> expected_;
};

namespace detail {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view s) : s_(s) {}

  FgAbGroup group() {
    skip();
    if (accept("0")) return FgAbGroup{};
    FgAbGroup g = gterm();
    while (accept("+")) g = g + gterm();
    return g;
  }

  ExtModule module() {
    skip();
    if (accept("0")) return ExtModule{};
    const std::size_t start = pos_;
    ExtModule m = mterm();
    while (accept("+")) {
      auto sum = direct_sum(m, mterm());
      if (!is_representable(sum))
        throw ParseError(start, {"a module in the supported class"}, std::get<NotRepresentable>(sum).reason);
      m = std::get<ExtModule>(std::move(sum));
    }
    return m;
  }

  PrimeSet primes() {
    skip();
    if (accept("odd")) return PrimeSet::odd();
    if (accept("all")) {
      if (!accept("\\")) return PrimeSet::all();
      return PrimeSet::cofinite(prime_list());
    }
    return PrimeSet::finite(prime_list());
  }

  GradedExt graded() {
    skip();
    if (accept("period")) {
      expect("=");
      const std::size_t at = pos_;
      const long P = natural().get_si();
      if (P != 2 && P != 8) throw ParseError(at, {"period 2", "period 8"}, std::to_string(P));
      expect(":");
      expect("[");
      std::vector<ExtModule> e;
      do e.push_back(module());
      while (accept(","));
      const std::size_t close = pos_;
      expect("]");
      if (e.size() != static_cast<std::size_t>(P))
        throw ParseError(close, {std::to_string(P) + " entries"}, std::to_string(e.size()) + " entries");
      return GradedExt::periodic(static_cast<int>(P), e);
    }
    if (accept("bounded")) {
      expect(":");
      expect("{");
      std::map<int, ExtModule> e;
      if (!accept("}")) {
        do {
          const std::size_t at = pos_;
          const int n = integer();
          expect(":");
          if (!e.emplace(n, module()).second) throw ParseError(at, {"a new degree"}, std::to_string(n));
        } while (accept(","));
        expect("}");
      }
      return GradedExt::bounded(e);
    }
    fail({"'period='", "'bounded:'"});
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail({"end of input"});
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found;
    if (pos_ < s_.size()) found = std::string(s_.substr(pos_, std::min<std::size_t>(8, s_.size() - pos_)));
    throw ParseError(pos_, std::move(expected), found);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek_is(std::string_view t) {
    skip();
    return s_.substr(pos_, t.size()) == t;
  }
  bool accept(std::string_view t) {
    if (!peek_is(t)) return false;
    pos_ += t.size();
    return true;
  }
  void expect(std::string_view t) {
    if (!accept(t)) fail({"'" + std::string(t) + "'"});
  }

  Integer natural() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail({"a natural number"});
    return Integer(std::string(s_.substr(b, pos_ - b)));
  }
  int integer() {
    skip();
    const bool neg = accept("-");
    const std::size_t at = pos_;
    const Integer v = natural();
    if (!v.fits_sint_p()) throw ParseError(at, {"a small integer"}, v.get_str());
    return neg ? -static_cast<int>(v.get_si()) : static_cast<int>(v.get_si());
  }
  Integer positive() {
    const std::size_t at = pos_;
    const Integer n = natural();
    if (n == 0) {
      pos_ = at;
      skip();
      fail({"a positive integer"});
    }
    return n;
  }
  std::size_t exponent() {
    if (!accept("^")) return 1;
    const std::size_t at = pos_;
    const Integer e = natural();
    if (!e.fits_ulong_p() || e > 1'000'000) throw ParseError(at, {"an exponent below 10^6"}, e.get_str());
    return e.get_ui();
  }
  std::vector<Integer> prime_list() {
    expect("{");
    std::vector<Integer> ps;
    if (accept("}")) return ps;
    do {
      skip();
      const std::size_t at = pos_;
      const Integer p = natural();
      if (!is_prime(p)) throw ParseError(at, {"a prime"}, p.get_str());
      ps.push_back(p);
    } while (accept(","));
    expect("}");
    return ps;
  }
  // a prime set, or a positive integer standing for its prime divisors
  PrimeSet prime_spec() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return PrimeSet::primes_of(positive());
    if (peek_is("{") || peek_is("all") || peek_is("odd")) return primes();
    fail({"a positive integer", "a prime set"});
  }

  FgAbGroup gterm() {
    skip();
    if (!accept("Z")) fail({"'Z'", "'0'"});
    if (accept("/")) {
      const Integer n = positive();
      const std::size_t k = exponent();
      return FgAbGroup::from_cyclic_orders(0, std::vector<Integer>(k, n));
    }
    return FgAbGroup::free(exponent());
  }

  ExtModule mterm() {
    skip();
    if (accept("(")) {
      expect("Q/Z");
      expect(")");
      if (!peek_is("^")) fail({"'^'"});
      return ExtModule::prufer(PrimeSet::all(), exponent());
    }
    if (accept("Prufer")) {
      expect("(");
      const PrimeSet T = prime_spec();
      expect(")");
      return ExtModule::prufer(T, exponent());
    }
    if (accept("Q/Z")) return ExtModule::q_mod_z();
    if (accept("Q")) return ExtModule::rational(exponent());
    if (peek_is("Z[")) {
      accept("Z[");
      expect("1");
      expect("/");
      const PrimeSet S = prime_spec();
      expect("]");
      return ExtModule::localized(S, exponent());
    }
    if (peek_is("Z")) return ExtModule::from_group(gterm());
    fail({"'Z'", "'Q'", "'Q/Z'", "'(Q/Z)^'", "'Prufer('", "'0'"});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline Integer json_integer(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Integer n;
    if (n.set_str(v.get<std::string>(), 10) == 0) return n;
  }
  throw Error("ParseError", "complex: " + where + " must be an integer");
}

}  // namespace detail

inline FgAbGroup parse_group(std::string_view s) {
  detail::LiteralParser p(s);
  FgAbGroup g = p.group();
  p.finish();
  return g;
}

inline ExtModule parse_module(std::string_view s) {
  detail::LiteralParser p(s);
  ExtModule m = p.module();
  p.finish();
  return m;
}

inline PrimeSet parse_prime_set(std::string_view s) {
  detail::LiteralParser p(s);
  PrimeSet S = p.primes();
  p.finish();
  return S;
}

inline GradedExt parse_graded(std::string_view s) {
  detail::LiteralParser p(s);
  GradedExt g = p.graded();
  p.finish();
  return g;
}

/// A graded literal whose entries must all be finitely generated.
inline GradedFg parse_graded_fg(std::string_view s) {
  auto g = to_fg(parse_graded(s));
  if (!g) throw Error("ParseError", "graded literal has entries that are not finitely generated");
  return *g;
}

/// {lo, hi, ranks: [...], differentials: [[[...]]]}; differentials[i] is
/// d_{lo+i+1} as a list of rows. Empty matrices may be written [].
inline FreeComplex parse_complex(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, {"a JSON object"}, e.what());
  }
  if (!j.is_object() || !j.contains("lo") || !j.contains("ranks"))
    throw Error("ParseError", "complex: expected an object with lo, ranks and differentials");
  try {
    const int lo = j.at("lo").get<int>();
    const auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
    if (j.contains("hi") && j.at("hi").get<int>() != lo + static_cast<int>(ranks.size()) - 1)
      throw Error("ParseError", "complex: hi does not match lo and ranks");
    std::vector<IntMatrix> ds;
    const auto& jd = j.contains("differentials") ? j.at("differentials") : nlohmann::json::array();
    if (!jd.is_array() || jd.size() + 1 != std::max<std::size_t>(ranks.size(), 1))
      throw Error("ParseError", "complex: need ranks.size() - 1 differentials");
    for (std::size_t i = 0; i < jd.size(); ++i) {
      IntMatrix m(ranks[i], ranks[i + 1]);
      const auto& rows = jd[i];
      const std::string where = "d_" + std::to_string(lo + static_cast<int>(i) + 1);
      const bool empty_ok = m.rows() == 0 || m.cols() == 0;
      if (!rows.is_array() || (!(empty_ok && rows.empty()) && rows.size() != m.rows()))
        throw Error("ParseError", "complex: " + where + " must have " + std::to_string(m.rows()) + " rows");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != m.cols())
          throw Error("ParseError", "complex: " + where + " rows must have " + std::to_string(m.cols()) + " entries");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = detail::json_integer(rows[r][c], where);
      }
      ds.push_back(std::move(m));
    }
    return FreeComplex(lo, ranks, ds);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("complex: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error("ParseError", e.what());
  }
}

using Literal = std::variant<FgAbGroup, ExtModule, PrimeSet, GradedExt, FreeComplex>;

/// Picks the grammar from the leading token. Group literals come back as
/// FgAbGroup, anything needing a localized or divisible term as ExtModule.
inline Literal parse_literal(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  const std::string_view t = s.substr(i);
  if (t.empty()) throw ParseError(i, {"a literal"}, "");
  if (t.starts_with("period") || t.starts_with("bounded")) return parse_graded(s);
  if (t.starts_with("{\"") || (t.starts_with("{") && t.find('"') != std::string_view::npos)) return parse_complex(s);
  if (t.starts_with("{") || t.starts_with("all") || t.starts_with("odd")) return parse_prime_set(s);
  const ExtModule m = parse_module(s);
  if (auto g = m.as_group()) return *g;
  return m;
}

}  // namespace locoloc
