#include "tetroc/types.hpp"

#include "tetroc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tetroc {

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") throw bad();
      Integer num(digits);
      Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(s.size() - dot - 1));
      return Rational(num, den);
    }
    return Rational(Integer(s));
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

Rational snap(double value, std::int64_t denominator) {
  if (!std::isfinite(value)) throw Error("cannot snap a non-finite coordinate");
  auto num = static_cast<std::int64_t>(std::llround(value * static_cast<double>(denominator)));
  return Rational(num, denominator);
}

Rational snap(const Rational& value, std::int64_t den) {
  const Rational scaled = abs(value) * den + Rational(1, 2);
  Integer n = numerator(scaled) / denominator(scaled);  // floor of a non-negative value
  if (value < 0) n = -n;
  return Rational(n, Integer(den));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tetroc
