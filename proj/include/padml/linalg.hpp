#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over the rationals.
 *
 * Square systems go through fraction-free (Bareiss) elimination on a
 * denominator-cleared integer matrix, which bounds intermediate growth
 * on Vandermonde-like inputs. Null spaces come from rational
 * Gauss-Jordan with a fixed pivot rule, so the basis order is
 * deterministic: free columns ascending, each basis vector has a 1 in
 * its free column and 0 in the other free columns.
 */

#include <optional>
#include <vector>

#include "padml/rational.hpp"

namespace padml {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// Solves the square system A x = b exactly. Returns nullopt when A is
/// singular (inconsistent or underdetermined alike).
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

/// Rank of an arbitrary rational matrix.
std::size_t rank(const RationalMatrix& a);

/// Basis of the right null space {v : A v = 0}, ordered by free column.
/// Empty when A has full column rank. An empty matrix (zero rows) yields
/// the identity basis.
std::vector<RationalVector> nullspace(const RationalMatrix& a, std::size_t cols);

/// Scales a nonzero rational vector to coprime integers with positive
/// leading nonzero entry. Used for certificates and canonical model keys.
std::vector<Integer> to_coprime_integers(const RationalVector& v);

}  // namespace padml
