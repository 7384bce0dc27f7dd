#ifndef SHIFTEQ_TEXTIO_HPP
#define SHIFTEQ_TEXTIO_HPP

#include <string>

#include "shifteq/matrix.hpp"
#include "shifteq/poly.hpp"

namespace shifteq {

// Square or rectangular matrix from JSON arrays-of-arrays. Entries may be
// JSON integers or decimal strings (for values beyond 2^63).
IntMatrix parse_matrix(const std::string& text);

// Integer-coefficient polynomial in t: integer literals, t, ^, *, binary and
// unary + and -, juxtaposition ("2t^2-3t+1"). Recursive descent, exact.
IntPoly parse_poly(const std::string& text);

// JSON array-of-arrays; entries emitted as numbers when they fit in 64 bits,
// as decimal strings otherwise.
std::string matrix_to_json(const IntMatrix& m);

}  // namespace shifteq

#endif
