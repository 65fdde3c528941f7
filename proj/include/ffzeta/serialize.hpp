#pragma once

// JSON forms shared by the library and the CLI. A prime-field element is an
// integer in [0, p); an extension-field element is its ascending coordinate
// array of length m. A polynomial is the ascending array of its
// coefficients, so theta^2 + 2 over F_3 is [2, 0, 1].

#include <string>

#include <json.hpp>

#include "ffzeta/fraction.hpp"

namespace ffz {

nlohmann::json elem_to_json(FieldPtr field, Elem c);
/// Throws PreconditionError on out-of-range or malformed input.
Elem elem_from_json(FieldPtr field, const nlohmann::json& j);

nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(FieldPtr field, const nlohmann::json& j);

/// {"num": [...], "den": [...]}.
nlohmann::json fraction_to_json(const Fraction& x);
Fraction fraction_from_json(FieldPtr field, const nlohmann::json& j);

/// Parses a polynomial in x written like "x^2 + 2*x - 1" (integer
/// coefficients reduced mod p) or a JSON coefficient array "[2,0,1]".
Poly parse_poly(FieldPtr field, const std::string& text);
/// "num" or "num/den", each part accepted by parse_poly; "1/x", "1/x^2".
Fraction parse_fraction(FieldPtr field, const std::string& text);

}  // namespace ffz
