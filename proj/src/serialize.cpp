#include "ffzeta/serialize.hpp"

#include <cctype>

#include "ffzeta/errors.hpp"

namespace ffz {

nlohmann::json elem_to_json(FieldPtr field, Elem c) {
  if (field->is_prime()) return c;
  return field->coordinates(c);
}

Elem elem_from_json(FieldPtr field, const nlohmann::json& j) {
  if (field->is_prime()) {
    if (!j.is_number_integer()) throw PreconditionError("field element must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < 0 || v >= field->characteristic()) throw PreconditionError("field element out of range");
    return static_cast<Elem>(v);
  }
  if (!j.is_array() || j.size() != field->degree()) {
    throw PreconditionError("extension-field element must be a coordinate array of length m");
  }
  std::vector<std::uint32_t> coords;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw PreconditionError("coordinate must be an integer");
    const auto v = x.get<std::int64_t>();
    if (v < 0 || v >= field->characteristic()) throw PreconditionError("coordinate out of range");
    coords.push_back(static_cast<std::uint32_t>(v));
  }
  return field->from_coordinates(coords);
}

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json j = nlohmann::json::array();
  for (Elem c : p.coeffs()) j.push_back(elem_to_json(p.field(), c));
  return j;
}

Poly poly_from_json(FieldPtr field, const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("polynomial must be a JSON array");
  std::vector<Elem> c;
  for (const auto& x : j) c.push_back(elem_from_json(field, x));
  return Poly(field, std::move(c));
}

nlohmann::json fraction_to_json(const Fraction& x) {
  return {{"num", poly_to_json(x.num())}, {"den", poly_to_json(x.den())}};
}

Fraction fraction_from_json(FieldPtr field, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw PreconditionError("fraction must be an object with num and den");
  }
  return Fraction(poly_from_json(field, j["num"]), poly_from_json(field, j["den"]));
}

namespace {

std::string strip(const std::string& s) {
  std::string r;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) r += ch;
  }
  return r;
}

}  // namespace

Poly parse_poly(FieldPtr field, const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw PreconditionError("empty polynomial");
  if (s.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad polynomial array: ") + e.what());
    }
    return poly_from_json(field, j);
  }
  if (!field->is_prime()) throw PreconditionError("textual polynomials need a prime field");
  const std::int64_t p = field->characteristic();
  Poly r(field);
  std::size_t i = 0;
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      throw PreconditionError("expected + or - in polynomial '" + text + "'");
    }
    std::int64_t coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef = (coef * 10 + (s[i++] - '0')) % p;
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::uint64_t deg = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 't' || s[i] == 'T')) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
          throw PreconditionError("bad exponent in polynomial '" + text + "'");
        }
        deg = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) deg = deg * 10 + (s[i++] - '0');
      }
    } else if (!have_coef) {
      throw PreconditionError("cannot parse polynomial '" + text + "'");
    }
    r += Poly::monomial(field, deg, field->from_int(sign * coef));
  }
  return r;
}

Fraction parse_fraction(FieldPtr field, const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw PreconditionError("empty fraction");
  if (s.front() == '{') {
    try {
      return fraction_from_json(field, nlohmann::json::parse(s));
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad fraction JSON: ") + e.what());
    }
  }
  // The slash separating numerator and denominator sits outside brackets.
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[' || s[i] == '(') ++depth;
    if (s[i] == ']' || s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      auto part = [](std::string x) {
        if (x.size() >= 2 && x.front() == '(' && x.back() == ')') x = x.substr(1, x.size() - 2);
        return x;
      };
      const Poly den = parse_poly(field, part(s.substr(i + 1)));
      if (den.is_zero()) throw PreconditionError("zero denominator");
      return Fraction(parse_poly(field, part(s.substr(0, i))), den);
    }
  }
  std::string x = s;
  if (x.size() >= 2 && x.front() == '(' && x.back() == ')') x = x.substr(1, x.size() - 2);
  return Fraction(parse_poly(field, x));
}

}  // namespace ffz
