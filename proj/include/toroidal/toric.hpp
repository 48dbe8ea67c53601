#pragma once

#include "toroidal/chart.hpp"
#include "toroidal/linalg.hpp"
#include "toroidal/report.hpp"

#include <vector>

namespace tor {

struct LocalModelDims {
    int d = 0;  // dimension
    int n = 0;  // cone dimension, the number of divisor coordinates
};

// Monomial morphism between toric local models. Row i gives the exponents of
// the pullback of target coordinate i; columns 0..n-1 are the divisor
// coordinates of the source, the rest are torus coordinates.
struct ToricMorphismData {
    LocalModelDims source;  // (d, n)
    LocalModelDims target;  // (m, l)
    IntMatrix matrix;       // m x d
    // torus coordinates of the source point, one per torus column; empty means all 1
    std::vector<Rational> alphas;
};

// Failures are prefixed by the check name: shape, block, rank, column, row.
Report validate_toric_morphism(const ToricMorphismData& data);

struct ToroidalPresentation {
    int r = 0;                    // rank of the divisor block
    std::vector<int> row_perm;    // new divisor row k is original row row_perm[k]
    std::vector<int> col_perm;    // new divisor column k is original column col_perm[k]
    std::vector<int> torus_perm;  // new torus column k is original torus column torus_perm[k]
    QMatrix b;                    // r x (d-n), columns in torus_perm order
    QMatrix c_block;              // (m-r) x (d-n), columns in torus_perm order
    IntMatrix tf_matrix;          // m x d normalized exponent matrix
    // constant term of each normalized torus unit, one per row r..m-1;
    // symbolic when the exponents are fractional and the alphas are not 1
    std::vector<Constant> alpha_bar;
    ChartForm chart;  // the same data as a toroidal (or smooth) chart
};

// Throws std::invalid_argument if validation fails, std::logic_error on an
// internal inconsistency.
ToroidalPresentation normalize_toric_presentation(const ToricMorphismData& data);

// Residual of the elimination: A[r rows, torus] - A[r rows, r pivot cols] * b.
QMatrix elimination_residual(const ToricMorphismData& data, const ToroidalPresentation& p);

}  // namespace tor
