#include "infnc/rational.hpp"

#include "infnc/error.hpp"

namespace infnc {

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw Error("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw Error("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

}  // namespace infnc
