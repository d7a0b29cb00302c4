#ifndef RGROUND_RATIONAL_HPP
#define RGROUND_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace rground {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with normalized sign (den > 0) and gcd-reduced magnitude.
// Int literals are rationals with den == 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Rational from_int_string(const std::string& s) { return Rational(BigInt(s)); }

  // Parses an SMT-LIB decimal such as "1.5" or "0.25".
  static Rational from_decimal_string(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return from_int_string(s);
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    BigInt den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (neg) intpart = intpart.substr(1);
    BigInt num = BigInt(intpart.empty() ? "0" : intpart) * den + BigInt(frac.empty() ? "0" : frac);
    if (neg) num = -num;
    return Rational(num, den);
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  int compare(const Rational& o) const {
    BigInt l = num_ * o.den_;
    BigInt r = o.num_ * den_;
    if (l < r) return -1;
    if (l > r) return 1;
    return 0;
  }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return compare(o) < 0; }

  // Decimal text when the denominator divides a power of ten, empty otherwise.
  std::string try_decimal() const {
    if (den_ == 1) return num_.str();
    BigInt d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return "";
    int k = std::max(twos, fives);
    BigInt scale = 1;
    for (int i = 0; i < k; ++i) scale *= 10;
    BigInt scaled = num_ * (scale / den_);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.str();
    while ((int)digits.size() <= k) digits = "0" + digits;
    std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    return neg ? "-" + out : out;
  }

  // Canonical literal text: integers in decimal, otherwise decimal when exact,
  // else "p/q" (printers wrap non-integers in SMT-LIB syntax themselves).
  std::string str() const {
    if (den_ == 1) return num_.str();
    std::string dec = try_decimal();
    if (!dec.empty()) return dec;
    return num_.str() + "/" + den_.str();
  }

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace rground

#endif
