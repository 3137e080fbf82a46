#include "descent/cone_monoid.hpp"

#include <algorithm>
#include <map>

#include "descent/lp.hpp"

namespace descent {

namespace {

bool pointed(const std::vector<ZVector>& rays, std::size_t n) {
    LinearProgram lp;
    lp.nvars = n;
    for (const auto& r : rays) {
        QVector row(n);
        for (std::size_t k = 0; k < n; ++k) row[k] = -r[k];
        lp.a_le.push_back(row);
        lp.b_le.push_back(Rational(-1));
    }
    lp.objective.assign(n, Rational(0));
    return lp_feasible(lp);
}

bool next_candidate(ZVector& v, long bound) {
    for (std::size_t k = v.size(); k-- > 0;) {
        if (v[k] < bound) {
            ++v[k];
            return true;
        }
        v[k] = -bound;
    }
    return false;
}

// smallest max value on the rays, ties broken lexicographically
ZVector choose_functional(const std::vector<ZVector>& rays, std::size_t n) {
    const long bound = 3;
    std::optional<std::pair<Integer, ZVector>> best;
    if (n <= 5) {
        ZVector v(n, Integer(-bound));
        do {
            Integer mx = 0;
            bool ok = true;
            for (const auto& r : rays) {
                Integer val = dot(v, r);
                if (val < 1) {
                    ok = false;
                    break;
                }
                mx = std::max(mx, val);
            }
            if (ok && (!best || std::make_pair(mx, v) < *best)) best = {mx, v};
        } while (next_candidate(v, bound));
    }
    if (best) return best->second;
    LinearProgram lp;
    lp.nvars = n + 1;
    for (const auto& r : rays) {
        QVector lo(n + 1, Rational(0)), hi(n + 1, Rational(0));
        for (std::size_t k = 0; k < n; ++k) {
            lo[k] = -r[k];
            hi[k] = r[k];
        }
        hi[n] = -1;
        lp.a_le.push_back(lo);
        lp.b_le.push_back(Rational(-1));
        lp.a_le.push_back(hi);
        lp.b_le.push_back(Rational(0));
    }
    lp.objective.assign(n + 1, Rational(0));
    lp.objective[n] = -1;
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal) throw VerificationError("no positive functional on a pointed cone");
    Integer den = 1;
    for (std::size_t k = 0; k < n; ++k) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), res.x[k].get_den_mpz_t());
    ZVector v(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rational s = res.x[k] * den;
        v[k] = s.get_num();
    }
    return v;
}

QVector scaled(const ZVector& r, const ZVector& phi) {
    Rational h(dot(phi, r));
    QVector out(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) out[k] = Rational(r[k]) / h;
    return out;
}

}  // namespace

bool Cone::contains(const QVector& x) const {
    if (x.size() != ambient) return false;
    for (const auto& e : equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::contains(const ZVector& x) const { return contains(to_qvector(x)); }

bool Cone::contains_interior(const ZVector& x) const {
    if (x.size() != ambient) return false;
    for (const auto& e : equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets)
        if (dot(f, x) <= 0) return false;
    return true;
}

Cone make_cone(const std::vector<ZVector>& input) {
    if (input.empty()) throw InputError("cone needs at least one ray");
    const std::size_t n = input[0].size();
    std::vector<ZVector> rays;
    for (const auto& r : input) {
        if (r.size() != n) throw InputError("rays of different dimensions");
        if (is_zero(r)) throw InputError("zero ray");
        rays.push_back(primitive(r));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    if (!pointed(rays, n)) throw InputError("cone is not pointed");

    Cone c;
    c.ambient = n;
    c.functional = choose_functional(rays, n);
    std::vector<QVector> pts;
    for (const auto& r : rays) pts.push_back(scaled(r, c.functional));
    Polytope phi = convex_hull(pts);
    for (const auto& r : rays)
        if (phi.vertex_index(scaled(r, c.functional)) != phi.vertices.size()) c.rays.push_back(r);
    c.dim = phi.dim + 1;
    if (phi.dim == 0) {
        c.facets.push_back(primitive(c.functional));
    } else {
        for (const auto& f : phi.facets) {
            QVector g(n);
            for (std::size_t k = 0; k < n; ++k) g[k] = Rational(f.normal[k]) - f.offset * c.functional[k];
            c.facets.push_back(primitive_from_rational(g));
        }
    }
    QMatrix rq;
    for (const auto& r : c.rays) rq.push_back(to_qvector(r));
    for (const auto& e : nullspace(rq, n)) c.equations.push_back(primitive_from_rational(e));
    return c;
}

CrossSection cross_section(const Cone& c) { return cross_section(c, c.functional); }

CrossSection cross_section(const Cone& c, const ZVector& functional) {
    std::vector<QVector> pts;
    for (const auto& r : c.rays) {
        if (dot(functional, r) <= 0) throw InputError("functional is not positive on the cone");
        pts.push_back(scaled(r, functional));
    }
    return {functional, convex_hull(pts)};
}

namespace {

std::int64_t det_int64(std::vector<std::vector<std::int64_t>> a) {
    // Bareiss
    const std::size_t n = a.size();
    std::int64_t sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = checked_sub(checked_mul(a[i][j], a[k][k]), checked_mul(a[i][k], a[k][j])) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<std::vector<std::int64_t>> minor(const std::vector<std::vector<std::int64_t>>& a, std::size_t r,
                                             std::size_t c) {
    std::vector<std::vector<std::int64_t>> m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == r) continue;
        std::vector<std::int64_t> row;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (j != c) row.push_back(a[i][j]);
        m.push_back(row);
    }
    return m;
}

// nonzero lattice points of sum [0,1) * columns
void parallelepiped_points(const std::vector<Point>& cols, std::vector<Point>& out) {
    const std::size_t d = cols.size();
    std::vector<std::vector<std::int64_t>> a(d, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a[i][j] = cols[j][i];
    std::int64_t det = det_int64(a);
    if (det == 0) return;
    std::vector<std::vector<std::int64_t>> adj(d, std::vector<std::int64_t>(d, 1));
    if (d > 1)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                adj[j][i] = ((i + j) % 2 ? -1 : 1) * det_int64(minor(a, i, j));
    std::int64_t adet = det < 0 ? -det : det;
    if (adet == 1) return;
    Point lo(d, 0), hi(d, 0);
    for (const auto& c : cols)
        for (std::size_t i = 0; i < d; ++i) (c[i] < 0 ? lo[i] : hi[i]) = checked_add(c[i] < 0 ? lo[i] : hi[i], c[i]);
    long double volume = 1;
    for (std::size_t i = 0; i < d; ++i) volume *= static_cast<long double>(hi[i] - lo[i] + 1);
    if (volume > 2e7L) throw BudgetExceeded("parallelepiped enumeration too large");
    Point x = lo;
    while (true) {
        bool inside = true;
        for (std::size_t i = 0; i < d && inside; ++i) {
            std::int64_t num = 0;
            for (std::size_t j = 0; j < d; ++j) num = checked_add(num, checked_mul(adj[i][j], x[j]));
            if (det < 0) num = -num;
            if (num < 0 || num >= adet) inside = false;
        }
        bool zero = std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
        if (inside && !zero) out.push_back(x);
        std::size_t k = 0;
        while (k < d && x[k] == hi[k]) {
            x[k] = lo[k];
            ++k;
        }
        if (k == d) break;
        ++x[k];
    }
}

}  // namespace

std::vector<ZVector> hilbert_basis(const Cone& c, const std::optional<ZMatrix>& lattice) {
    const std::size_t n = c.ambient;
    const std::size_t d = static_cast<std::size_t>(c.dim);
    if (d > 4) throw InputError("Hilbert bases are supported up to dimension 4");
    ZMatrix basis;
    if (lattice) {
        basis = hermite_basis(*lattice, n);
        QMatrix bq, span;
        for (const auto& b : basis) bq.push_back(to_qvector(b));
        for (const auto& r : c.rays) span.push_back(to_qvector(r));
        bool ok = basis.size() == d && rank(bq, n) == d;
        for (const auto& b : basis)
            for (const auto& e : c.equations)
                if (dot(e, b) != 0) ok = false;
        if (!ok) throw InputError("lattice is not full rank in the span of the cone");
    } else {
        basis = saturation(c.rays, n);
    }
    QMatrix bt(n, QVector(d));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < d; ++i) bt[k][i] = basis[i][k];

    std::vector<ZVector> coord_rays;
    for (const auto& r : c.rays) {
        auto y = solve(bt, to_qvector(r), d);
        if (!y) throw VerificationError("ray outside the lattice span");
        coord_rays.push_back(primitive_from_rational(*y));
    }
    Cone cc = make_cone(coord_rays);
    ZVector phi = cc.functional;

    std::vector<Point> pr;
    for (const auto& r : cc.rays) pr.push_back(to_point(r));
    std::vector<Point> cand = pr;
    std::vector<std::size_t> idx(d);
    for (std::size_t k = 0; k < d; ++k) idx[k] = k;
    const std::size_t m = pr.size();
    while (true) {
        std::vector<Point> cols;
        for (auto k : idx) cols.push_back(pr[k]);
        parallelepiped_points(cols, cand);
        std::size_t i = d;
        while (i > 0 && idx[i - 1] == m - d + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<std::pair<Integer, ZVector>> graded;
    for (const auto& p : cand) {
        ZVector z = to_zvector(p);
        graded.emplace_back(dot(phi, z), z);
    }
    std::sort(graded.begin(), graded.end());
    std::vector<ZVector> kept;
    for (const auto& [deg, x] : graded) {
        bool reducible = false;
        for (const auto& y : kept) {
            ZVector diff(d);
            for (std::size_t k = 0; k < d; ++k) diff[k] = x[k] - y[k];
            if (cc.contains(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) kept.push_back(x);
    }
    std::vector<ZVector> out;
    for (const auto& y : kept) {
        ZVector x(n, Integer(0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < n; ++k) x[k] += y[i] * basis[i][k];
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

AffineMonoid make_monoid(const std::vector<ZVector>& generators) {
    if (generators.empty()) throw InputError("monoid needs at least one generator");
    AffineMonoid m;
    m.ambient = generators[0].size();
    for (const auto& g : generators) {
        if (g.size() != m.ambient) throw InputError("generators of different dimensions");
        if (!is_zero(g)) m.generators.push_back(g);
    }
    std::sort(m.generators.begin(), m.generators.end());
    m.generators.erase(std::unique(m.generators.begin(), m.generators.end()), m.generators.end());
    if (m.generators.empty()) throw InputError("monoid has no nonzero generator");
    if (!pointed(m.generators, m.ambient)) throw InputError("monoid is not positive");
    m.lattice = hermite_basis(m.generators, m.ambient);
    m.rank = m.lattice.size();
    return m;
}

Cone monoid_cone(const AffineMonoid& m) { return make_cone(m.generators); }

Grading positive_grading(const AffineMonoid& m) {
    const std::size_t n = m.ambient;
    if (n <= 5) {
        for (long b = 1; b <= 3; ++b) {
            ZVector v(n, Integer(-b));
            do {
                bool top = false, ok = true;
                for (const auto& x : v)
                    if (abs(x) == b) top = true;
                if (!top) continue;
                for (const auto& g : m.generators)
                    if (dot(v, g) < 1) {
                        ok = false;
                        break;
                    }
                if (ok) return {v};
            } while (next_candidate(v, b));
        }
    }
    return {choose_functional(m.generators, n)};
}

namespace {

bool member_rec(const AffineMonoid& m, const Cone& c, const ZVector& phi, const ZVector& x,
                std::map<ZVector, bool>& memo) {
    if (is_zero(x)) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    bool res = false;
    if (c.contains(x)) {
        Integer dx = dot(phi, x);
        for (const auto& g : m.generators) {
            if (dot(phi, g) > dx) continue;
            ZVector y(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - g[k];
            if (member_rec(m, c, phi, y, memo)) {
                res = true;
                break;
            }
        }
    }
    memo[x] = res;
    return res;
}

}  // namespace

bool monoid_membership(const AffineMonoid& m, const ZVector& x) {
    if (x.size() != m.ambient) throw InputError("point dimension does not match the monoid");
    std::map<ZVector, bool> memo;
    return member_rec(m, monoid_cone(m), positive_grading(m).functional, x, memo);
}

NormalityResult normality(const AffineMonoid& m) {
    NormalityResult res;
    res.integral_closure = hilbert_basis(monoid_cone(m), m.lattice);
    res.normal = true;
    for (const auto& h : res.integral_closure)
        if (!monoid_membership(m, h)) {
            res.normal = false;
            res.witness = h;
            break;
        }
    return res;
}

bool interior_membership(const AffineMonoid& m, const ZVector& x) {
    if (is_zero(x)) return true;
    return monoid_cone(m).contains_interior(x) && monoid_membership(m, x);
}

ZVector Dilation::map(const ZVector& x) const {
    ZVector y(x);
    for (auto& v : y) v *= factor;
    return y;
}

Dilation dilate(const AffineMonoid& m, const Integer& c) {
    if (c < 2) throw InputError("dilation factor must be at least 2");
    Dilation d;
    d.factor = c;
    std::vector<ZVector> gens;
    for (const auto& g : m.generators) gens.push_back(d.map(g));
    d.monoid = make_monoid(gens);
    return d;
}

MonoidExtension monoid_pyramidal_extension(const AffineMonoid& m, const AffineMonoid& n) {
    MonoidExtension res;
    if (m.ambient != n.ambient) {
        res.failure = "ambient dimensions differ";
        return res;
    }
    if (!normality(m).normal || !normality(n).normal) {
        res.failure = "not normal";
        return res;
    }
    if (m.lattice != n.lattice) {
        res.failure = "lattices differ";
        return res;
    }
    for (const auto& g : m.generators)
        if (!monoid_membership(n, g)) {
            res.failure = "not a submonoid";
            return res;
        }
    Cone cn = monoid_cone(n), cm = monoid_cone(m);
    if (cn.rays == cm.rays) {
        res.failure = "not a proper inclusion";
        return res;
    }
    res.phi_n = cross_section(cn);
    res.phi_m = cross_section(cm, res.phi_n.functional);
    auto ext = check_pyramidal_extension(res.phi_m.polytope, res.phi_n.polytope);
    if (!ext) {
        res.failure = "not pyramidal";
        return res;
    }
    res.extension = *ext;
    return res;
}

}  // namespace descent
