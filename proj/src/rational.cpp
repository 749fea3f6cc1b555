#include "pudg/rational.hpp"

#include "pudg/errors.hpp"

#include <cctype>

namespace pudg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorKind::Format, "bad rational literal '" + std::string(whole) + "'");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt n = parse_int(text.substr(0, slash), text);
    BigInt d = parse_int(text.substr(slash + 1), text);
    if (d == 0) fail(ErrorKind::Format, "zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || !(fp.empty() || all_digits(fp)))
      fail(ErrorKind::Format, "bad rational literal '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt num = BigInt(std::string(ip)) * scale + (fp.empty() ? BigInt(0) : BigInt(std::string(fp)));
    Rational r(num, scale);
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt pow2(std::uint64_t k) {
  BigInt one = 1;
  return one << static_cast<unsigned>(k);
}

Rational inv_pow2(std::uint64_t k) { return Rational(BigInt(1), pow2(k)); }

Rational pow(const Rational& base, std::uint64_t e) {
  Rational result = 1, b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace pudg
