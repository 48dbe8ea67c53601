#include "toroidal/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace tor {

QMatrix to_rational(const IntMatrix& a) {
    QMatrix q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int v : a[i]) q[i].emplace_back(v);
    return q;
}

int rank(QMatrix a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return static_cast<int>(r);
}

int rank(const IntMatrix& a) { return rank(to_rational(a)); }

Rational determinant(QMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

QMatrix solve(const QMatrix& A, const QMatrix& B) {
    const std::size_t n = A.size();
    const std::size_t m = B.empty() ? 0 : B[0].size();
    QMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = A[i];
        aug[i].insert(aug[i].end(), B[i].begin(), B[i].end());
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && aug[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("solve: singular matrix");
        std::swap(aug[p], aug[c]);
        Rational inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rational f = aug[i][c];
            for (std::size_t k = 0; k < n + m; ++k) aug[i][k] -= f * aug[c][k];
        }
    }
    QMatrix X(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) X[i][k] = aug[i][n + k];
    return X;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    QMatrix c(a.size(), std::vector<Rational>(cols));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) throw std::invalid_argument("multiply: shape mismatch");
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
    return c;
}

QMatrix subtract(const QMatrix& a, const QMatrix& b) {
    QMatrix c = a;
    if (a.size() != b.size()) throw std::invalid_argument("subtract: shape mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw std::invalid_argument("subtract: shape mismatch");
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
    }
    return c;
}

bool is_zero(const QMatrix& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (v != 0) return false;
    return true;
}

QMatrix submatrix(const QMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    QMatrix s;
    for (int i : rows) {
        std::vector<Rational> r;
        for (int j : cols) r.push_back(a.at(i).at(j));
        s.push_back(std::move(r));
    }
    return s;
}

}  // namespace tor
