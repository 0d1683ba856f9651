#include "malle/rational.hpp"

#include <cmath>
#include <cstdio>

#include "malle/error.hpp"

namespace malle {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw ParseError("empty rational", 1, 1);
  s = s.substr(start);

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational '" + s + "'", 1, 1);
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'", 1, int(slash) + 2);
    out = Rational(BigInt(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      throw ParseError("malformed decimal '" + s + "'", 1, 1);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    out = Rational(BigInt(ip + fp), scale);
  } else {
    if (!all_digits(body)) throw ParseError("malformed number '" + s + "'", 1, 1);
    out = Rational(BigInt(body));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

std::string to_decimal(const Rational& r, int places) {
  // Round half away from zero on the exact value.
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational scaled = abs(r) * scale;
  BigInt q = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(q);
  if (frac * 2 >= 1) q += 1;
  std::string digits = q.get_str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places)
      digits = std::string(places + 1 - digits.size(), '0') + digits;
    digits.insert(digits.size() - places, ".");
  }
  if (r < 0 && q != 0) digits = "-" + digits;
  return digits;
}

}  // namespace malle
