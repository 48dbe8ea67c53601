#include "toroidal/toric.hpp"

#include <stdexcept>

namespace tor {

namespace {

bool next_combination(std::vector<int>& comb, int n) {
    const int r = static_cast<int>(comb.size());
    for (int i = r - 1; i >= 0; --i) {
        if (comb[i] < n - r + i) {
            ++comb[i];
            for (int k = i + 1; k < r; ++k) comb[k] = comb[k - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int r) {
    std::vector<int> v(r);
    for (int i = 0; i < r; ++i) v[i] = i;
    return v;
}

// chosen indices first, then the rest in increasing order
std::vector<int> complete_perm(const std::vector<int>& chosen, int n) {
    std::vector<int> p = chosen;
    std::vector<bool> used(n, false);
    for (int i : chosen) used[i] = true;
    for (int i = 0; i < n; ++i)
        if (!used[i]) p.push_back(i);
    return p;
}

Rational qpow(const Rational& q, long e) {
    mpz_class num, den;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
    Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

std::vector<int> iota_vec(int n) { return first_combination(n); }

}  // namespace

Report validate_toric_morphism(const ToricMorphismData& data) {
    Report rep;
    const int d = data.source.d, n = data.source.n, m = data.target.d, l = data.target.n;
    if (n < 0 || n > d || l < 0 || l > m) {
        rep.fail("shape: cone dimension outside [0, dimension]");
        return rep;
    }
    if (static_cast<int>(data.matrix.size()) != m) {
        rep.fail("shape: matrix has " + std::to_string(data.matrix.size()) + " rows, expected " + std::to_string(m));
        return rep;
    }
    for (int i = 0; i < m; ++i)
        if (static_cast<int>(data.matrix[i].size()) != d) {
            rep.fail("shape: row " + std::to_string(i) + " has wrong width");
            return rep;
        }
    if (!data.alphas.empty()) {
        if (static_cast<int>(data.alphas.size()) != d - n) rep.fail("shape: alphas must have one entry per torus column");
        for (const auto& a : data.alphas)
            if (a == 0) rep.fail("shape: zero alpha");
    }
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j)
            if (data.matrix[i][j] < 0)
                rep.fail("shape: negative divisor exponent at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = l; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (data.matrix[i][j] != 0)
                rep.fail("block: torus row " + std::to_string(i) + " has exponent at divisor column " + std::to_string(j));
    int rk = rank(data.matrix);
    if (rk != m) rep.fail("rank: rank is " + std::to_string(rk) + ", expected " + std::to_string(m));
    for (int j = 0; j < n; ++j) {
        int sum = 0;
        for (int i = 0; i < l; ++i) sum += data.matrix[i][j];
        if (sum <= 0) rep.fail("column: divisor column " + std::to_string(j) + " has zero sum");
    }
    for (int i = 0; i < l; ++i) {
        int sum = 0;
        for (int j = 0; j < n; ++j) sum += data.matrix[i][j];
        if (sum <= 0) rep.fail("row: divisor row " + std::to_string(i) + " has zero sum");
    }
    return rep;
}

ToroidalPresentation normalize_toric_presentation(const ToricMorphismData& data) {
    Report rep = validate_toric_morphism(data);
    if (!rep.ok()) throw std::invalid_argument("invalid toric morphism: " + rep.first());
    const int d = data.source.d, n = data.source.n, m = data.target.d, l = data.target.n;
    const int t = d - n;

    ToroidalPresentation p;
    IntMatrix block(l, std::vector<int>(n));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) block[i][j] = data.matrix[i][j];
    p.r = rank(block);
    const int r = p.r;

    const QMatrix A = to_rational(data.matrix);
    std::vector<int> rows_sel, cols_sel;
    bool found = r == 0;
    for (auto R = first_combination(r); !found;) {
        for (auto C = first_combination(r); !found;) {
            if (determinant(submatrix(A, R, C)) != 0) {
                rows_sel = R;
                cols_sel = C;
                found = true;
            }
            if (!found && !next_combination(C, n)) break;
        }
        if (!found && !next_combination(R, l)) break;
    }
    if (!found) throw std::logic_error("no invertible minor of the divisor block");
    p.row_perm = complete_perm(rows_sel, l);
    p.col_perm = complete_perm(cols_sel, n);

    std::vector<int> all_rows = p.row_perm;
    for (int i = l; i < m; ++i) all_rows.push_back(i);
    std::vector<int> torus;
    for (int j = n; j < d; ++j) torus.push_back(j);
    std::vector<int> lead_rows(p.row_perm.begin(), p.row_perm.begin() + r);
    std::vector<int> lead_cols(p.col_perm.begin(), p.col_perm.begin() + r);

    QMatrix b = r == 0 ? QMatrix() : solve(submatrix(A, lead_rows, lead_cols), submatrix(A, lead_rows, torus));

    // c = A[r.., torus] - [A[r..l, lead]; 0] * b
    std::vector<int> tail_rows(all_rows.begin() + r, all_rows.end());
    QMatrix c = submatrix(A, tail_rows, torus);
    if (r > 0) {
        QMatrix left(m - r, std::vector<Rational>(r));
        for (int i = 0; i < l - r; ++i)
            for (int k = 0; k < r; ++k) left[i][k] = A[tail_rows[i]][lead_cols[k]];
        c = subtract(c, multiply(left, b));
    }
    if (rank(c) != m - r)
        throw std::logic_error("rank of the torus block after elimination is " + std::to_string(rank(c)));

    // torus columns that carry the rank of c go first
    std::vector<int> picked;
    for (int j = 0; j < t && static_cast<int>(picked.size()) < m - r; ++j) {
        std::vector<int> trial = picked;
        trial.push_back(j);
        if (rank(submatrix(c, iota_vec(m - r), trial)) == static_cast<int>(trial.size())) picked = trial;
    }
    p.torus_perm = complete_perm(picked, t);
    p.b = r == 0 ? QMatrix() : submatrix(b, iota_vec(r), p.torus_perm);
    p.c_block = submatrix(c, iota_vec(m - r), p.torus_perm);

    for (int s = 0; s < m - r; ++s) {
        Rational val = 1;
        bool symbolic = false;
        for (int j = 0; j < t; ++j) {
            const Rational& e = p.c_block[s][j];
            if (e == 0 || data.alphas.empty()) continue;
            const Rational& alpha = data.alphas[p.torus_perm[j]];
            if (alpha == 1) continue;
            if (e.get_den() != 1) {
                symbolic = true;
                continue;
            }
            val *= qpow(alpha, e.get_num().get_si());
        }
        p.alpha_bar.push_back(symbolic ? Constant::symbol("abar" + std::to_string(s)) : Constant(val));
    }

    p.tf_matrix.assign(m, std::vector<int>(d, 0));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) p.tf_matrix[i][j] = data.matrix[p.row_perm[i]][p.col_perm[j]];
    for (int i = r; i < m; ++i) p.tf_matrix[i][n + (i - r)] = 1;

    IntMatrix chart_block(p.tf_matrix.begin(), p.tf_matrix.begin() + l);
    for (auto& row : chart_block) row.resize(n);
    p.chart = make_toroidal(d, m, chart_block);
    for (int i = 0; i < l; ++i) p.chart.ylabels[i] = p.row_perm[i];
    // rows r..l-1 carry the unit (x + alpha_bar); parameters take the first coordinates after the divisor
    for (int i = r; i < l; ++i)
        p.chart.units[i].factors.push_back(UnitFactor{n + (m - l) + (i - r), p.alpha_bar[i - r], 1});

    if (!is_zero(elimination_residual(data, p))) throw std::logic_error("elimination residual is nonzero");
    return p;
}

QMatrix elimination_residual(const ToricMorphismData& data, const ToroidalPresentation& p) {
    const int n = data.source.n, r = p.r;
    if (r == 0) return {};
    const QMatrix A = to_rational(data.matrix);
    std::vector<int> lead_rows(p.row_perm.begin(), p.row_perm.begin() + r);
    std::vector<int> lead_cols(p.col_perm.begin(), p.col_perm.begin() + r);
    std::vector<int> torus;
    for (int k : p.torus_perm) torus.push_back(n + k);
    return subtract(submatrix(A, lead_rows, torus), multiply(submatrix(A, lead_rows, lead_cols), p.b));
}

}  // namespace tor
