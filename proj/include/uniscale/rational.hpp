#pragma once
// Exact rational arithmetic for Lebesgue/weight exponents.  Regime boundaries
// are decided by integer cross-multiplication, never by floating point, so a
// parameter sitting exactly on a threshold classifies deterministically.

#include <cstdint>
#include <string>

#include "uniscale/common.hpp"

namespace uniscale {

// Finite rational, normalized (gcd 1, positive denominator).
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a) { return Rat(-a.num, a.den); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }
};

Rat rat_min(const Rat& a, const Rat& b);
Rat rat_max(const Rat& a, const Rat& b);

// Exponent in [1, inf] (for p, q, r) or any rational weight; "inf" is an
// explicit sentinel so 1/p is exact (0 for inf).
struct Exponent {
  Rat r;
  bool inf = false;

  Exponent() : r(1), inf(false) {}
  Exponent(long long n) : r(n), inf(false) {}
  Exponent(const Rat& x) : r(x), inf(false) {}
  static Exponent infinity() {
    Exponent e;
    e.inf = true;
    return e;
  }

  bool is_inf() const { return inf; }
  double value() const;        // +HUGE_VAL when infinite
  Rat reciprocal() const;      // 1/p, exact; 0 for inf
  Exponent conjugate() const;  // p' with 1/p + 1/p' = 1

  friend bool operator==(const Exponent& a, const Exponent& b);
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator<=(const Exponent& a, const Exponent& b);
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return b <= a; }
};

// Accepts "3", "-2", "4/3", "3/10", "inf" (also "Inf", "INF", "oo").
Rat parse_rat(const std::string& s);
Exponent parse_exponent(const std::string& s);

std::string to_string(const Rat& x);
std::string to_string(const Exponent& x);

}  // namespace uniscale
