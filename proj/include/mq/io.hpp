#pragma once

#include <iosfwd>
#include <string>

#include "mq/polynomial.hpp"

namespace mq {

// Polynomial-system files are JSON:
//   {
//     "format": "mq-system", "version": 1,
//     "num_vars": <int>, "field": "F2"|"C",
//     "includes_field_equations": <bool>,
//     "polys": [ [ [num, den, [e1,...,en]], ... ], ... ]
//   }
// num/den are JSON integers, or decimal strings when they do not fit in 64
// bits. Duplicate monomials within one polynomial are summed and zero results
// dropped. F2 systems require den == 1 and num in {0,1} after reduction.

PolySystem load_system(const std::string& path);
PolySystem parse_system(const std::string& text);
void save_system(const PolySystem& sys, const std::string& path);
std::string format_system(const PolySystem& sys);

}  // namespace mq

#include "mq/macaulay.hpp"

namespace mq {

// Matrix files are line based:
//   mq-matrix 1
//   flavor <plain|boolean>  / degree_kind <max|total> / degree <d>
//   num_vars / rows / cols / then row, col, entry and bentry records.
// Coordinates are exact numerator/denominator pairs.
std::string format_matrix(const MacaulaySystem& sys);

}  // namespace mq
