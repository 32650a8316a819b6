#pragma once

// Exact coefficient fields. Every field exposes the same small interface so
// the algebra engine can be instantiated over either one:
//
//   value_type, zero(), one(), from_int(), add(), sub(), mul(), neg(), inv(),
//   is_zero(), to_string(), parse(), name()

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "wlpa/error.hpp"

namespace wlpa {

class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t n) const { return value_type(n); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division by zero");
    return value_type(1) / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }

  std::string to_string(const value_type& a) const { return a.str(); }

  /// Accepts `n` or `n/d` with an optional leading sign.
  value_type parse(std::string_view text) const {
    const auto slash = text.find('/');
    auto integer = [](std::string_view s) {
      std::string_view digits = s;
      if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
        throw Error("malformed scalar '" + std::string(s) + "'");
      return boost::multiprecision::cpp_int(std::string(s.front() == '+' ? s.substr(1) : s));
    };
    if (slash == std::string_view::npos) return value_type(integer(text));
    const auto den = integer(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return value_type(integer(text.substr(0, slash)), den);
  }

  std::string name() const { return "rational"; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// Integers modulo a prime p < 2^31.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw Error("prime modulus out of range");
    for (std::uint64_t d = 2; d <= p / d; ++d)
      if (p % d == 0) throw Error(std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const noexcept { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(std::int64_t n) const {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = n % m;
    if (r < 0) r += m;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero");
    // Fermat: a^(p-2).
    value_type result = 1, base = a, e = p_ - 2;
    while (e != 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  bool is_zero(value_type a) const { return a == 0; }

  std::string to_string(value_type a) const { return std::to_string(a); }

  value_type parse(std::string_view text) const {
    const RationalField q;
    const auto r = q.parse(text);
    auto reduce = [&](const boost::multiprecision::cpp_int& x) {
      boost::multiprecision::cpp_int m = x % p_;
      if (m < 0) m += p_;
      return static_cast<value_type>(m);
    };
    const value_type d = reduce(denominator(r));
    if (d == 0) throw Error("denominator vanishes modulo " + std::to_string(p_));
    return mul(reduce(numerator(r)), inv(d));
  }

  std::string name() const { return "mod:" + std::to_string(p_); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

}  // namespace wlpa
