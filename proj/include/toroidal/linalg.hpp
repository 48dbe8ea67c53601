#pragma once

#include "toroidal/constant.hpp"

#include <vector>

namespace tor {

using IntMatrix = std::vector<std::vector<int>>;
using QMatrix = std::vector<std::vector<Rational>>;

QMatrix to_rational(const IntMatrix& a);
int rank(QMatrix a);
int rank(const IntMatrix& a);
Rational determinant(QMatrix a);

// X with A*X = B for square invertible A; throws std::domain_error if singular
QMatrix solve(const QMatrix& A, const QMatrix& B);

QMatrix multiply(const QMatrix& a, const QMatrix& b);
QMatrix subtract(const QMatrix& a, const QMatrix& b);
bool is_zero(const QMatrix& a);

// rows x cols submatrix picked by index lists
QMatrix submatrix(const QMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace tor
