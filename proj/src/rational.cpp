#include "uniscale/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace uniscale {

Rat::Rat(long long n, long long d) {
  if (d == 0) throw validation_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }

bool operator<(const Rat& a, const Rat& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

double Exponent::value() const { return inf ? HUGE_VAL : r.value(); }

Rat Exponent::reciprocal() const {
  if (inf) return Rat(0);
  if (r.num == 0) throw validation_error("reciprocal of zero exponent");
  return Rat(r.den, r.num);
}

Exponent Exponent::conjugate() const {
  // 1/p + 1/p' = 1
  if (inf) return Exponent(1);
  if (r == Rat(1)) return Exponent::infinity();
  if (r <= Rat(1)) throw validation_error("conjugate requires exponent >= 1, got " + to_string(r));
  return Exponent(Rat(r.num, r.num - r.den));
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.inf || b.inf) return a.inf && b.inf;
  return a.r == b.r;
}

bool operator<(const Exponent& a, const Exponent& b) {
  if (a.inf) return false;
  if (b.inf) return true;
  return a.r < b.r;
}

bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw validation_error("empty rational");
  auto slash = s.find('/');
  auto to_ll = [&](const std::string& part) {
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(part.c_str(), &end, 10);
    if (errno != 0 || end == part.c_str() || *end != '\0')
      throw validation_error("malformed rational: '" + s + "'");
    return v;
  };
  if (slash == std::string::npos) return Rat(to_ll(s));
  return Rat(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

Exponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "oo") return Exponent::infinity();
  return Exponent(parse_rat(s));
}

std::string to_string(const Rat& x) {
  if (x.den == 1) return std::to_string(x.num);
  return std::to_string(x.num) + "/" + std::to_string(x.den);
}

std::string to_string(const Exponent& x) { return x.inf ? "inf" : to_string(x.r); }

}  // namespace uniscale
