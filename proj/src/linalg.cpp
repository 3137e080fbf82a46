#include "descent/linalg.hpp"

#include <algorithm>

namespace descent {

RowEchelon rref(QMatrix m, std::size_t ncols) {
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (std::size_t c = col; c < ncols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const QMatrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

QMatrix nullspace(const QMatrix& m, std::size_t ncols) {
    RowEchelon e = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    QMatrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t ncols) {
    QMatrix aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
    RowEchelon e = rref(aug, ncols + 1);
    QVector x(ncols, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == ncols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][ncols];
    }
    return x;
}

namespace {

// unimodular row reduction; returns the number of nonzero leading rows
std::size_t integer_row_reduce(ZMatrix& m, std::size_t ncols) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        while (true) {
            std::size_t best = m.size();
            for (std::size_t r = row; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                if (best == m.size() || abs(m[r][col]) < abs(m[best][col])) best = r;
            }
            if (best == m.size()) break;
            std::swap(m[best], m[row]);
            bool done = true;
            for (std::size_t r = row + 1; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
                for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= q * m[row][c];
                if (m[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (row < m.size() && m[row][col] != 0) {
            if (m[row][col] < 0)
                for (auto& x : m[row]) x = -x;
            ++row;
        }
    }
    return row;
}

}  // namespace

ZMatrix hermite_basis(ZMatrix gens, std::size_t ncols) {
    for (auto& g : gens) g.resize(ncols);
    std::size_t r = integer_row_reduce(gens, ncols);
    gens.resize(r);
    // reduce entries above each pivot into [0, pivot)
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t col = 0;
        while (gens[i][col] == 0) ++col;
        for (std::size_t k = 0; k < i; ++k) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), gens[k][col].get_mpz_t(), gens[i][col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t c = 0; c < ncols; ++c) gens[k][c] -= q * gens[i][c];
        }
    }
    return gens;
}

ZMatrix integer_kernel(const ZMatrix& a, std::size_t n) {
    std::size_t m = a.size();
    ZMatrix t(n, ZVector(m + n, Integer(0)));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t r = 0; r < m; ++r) t[x][r] = a[r][x];
        t[x][m + x] = 1;
    }
    std::size_t r = integer_row_reduce(t, m);
    ZMatrix kernel;
    for (std::size_t k = r; k < n; ++k) kernel.emplace_back(t[k].begin() + static_cast<long>(m), t[k].end());
    return hermite_basis(kernel, n);
}

ZMatrix saturation(const ZMatrix& gens, std::size_t n) {
    QMatrix q;
    for (const auto& g : gens) q.push_back(to_qvector(g));
    QMatrix normals = nullspace(q, n);
    ZMatrix eqs;
    for (const auto& v : normals) eqs.push_back(primitive_from_rational(v));
    if (eqs.empty()) {
        ZMatrix id(n, ZVector(n, Integer(0)));
        for (std::size_t k = 0; k < n; ++k) id[k][k] = 1;
        return id;
    }
    return integer_kernel(eqs, n);
}

std::optional<ZVector> lattice_coordinates(const ZMatrix& basis, const ZVector& x) {
    std::size_t n = x.size();
    std::size_t r = basis.size();
    // solve c * basis = x, i.e. basis^T c = x
    QMatrix a(n, QVector(r));
    QVector b(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < r; ++i) a[k][i] = basis[i][k];
        b[k] = x[k];
    }
    auto sol = solve(a, b, r);
    if (!sol) return std::nullopt;
    ZVector c(r);
    for (std::size_t i = 0; i < r; ++i) {
        if ((*sol)[i].get_den() != 1) return std::nullopt;
        c[i] = (*sol)[i].get_num();
    }
    return c;
}

SparseRow* SparseEliminator::find_pivot(std::size_t col) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                               [](const auto& p, std::size_t c) { return p.first < c; });
    if (it == pivots_.end() || it->first != col) return nullptr;
    return &it->second;
}

namespace {

void normalize_content(SparseRow& row) {
    Integer g = 0;
    for (const auto& e : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g > 1)
        for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// row <- a*row - b*piv, where a, b cancel the leading entry
SparseRow combine(const SparseRow& row, const SparseRow& piv) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), piv.front().second.get_mpz_t());
    Integer a = piv.front().second / g;
    Integer b = row.front().second / g;
    SparseRow out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
            out.emplace_back(row[i].first, a * row[i].second);
            ++i;
        } else if (i == row.size() || piv[j].first < row[i].first) {
            out.emplace_back(piv[j].first, -b * piv[j].second);
            ++j;
        } else {
            Integer v = a * row[i].second - b * piv[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    normalize_content(out);
    return out;
}

}  // namespace

bool SparseEliminator::insert(SparseRow row) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
    normalize_content(row);
    while (!row.empty()) {
        SparseRow* piv = find_pivot(row.front().first);
        if (!piv) {
            std::size_t col = row.front().first;
            auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                                       [](const auto& p, std::size_t c) { return p.first < c; });
            pivots_.insert(it, {col, std::move(row)});
            return true;
        }
        row = combine(row, *piv);
    }
    return false;
}

std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
    SparseEliminator e;
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

}  // namespace descent
