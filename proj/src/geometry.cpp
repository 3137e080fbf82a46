#include "descent/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace descent {

namespace {

std::vector<QVector> sorted_unique(std::vector<QVector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Rational eval(const Halfspace& h, const QVector& x) { return dot(h.normal, x) - h.offset; }

// calls f on every size-k subset of {0..n-1}
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool Polytope::in_affine_hull(const QVector& x) const {
    for (const auto& e : equations)
        if (eval(e, x) != 0) return false;
    return true;
}

bool Polytope::contains(const QVector& x) const {
    if (x.size() != ambient || !in_affine_hull(x)) return false;
    for (const auto& f : facets)
        if (eval(f, x) < 0) return false;
    return true;
}

bool Polytope::contains(const Polytope& other) const {
    for (const auto& v : other.vertices)
        if (!contains(v)) return false;
    return true;
}

std::vector<std::size_t> Polytope::facet_vertices(std::size_t f) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (incidence[v][f]) out.push_back(v);
    return out;
}

std::size_t Polytope::vertex_index(const QVector& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return vertices.size();
    return static_cast<std::size_t>(it - vertices.begin());
}

QVector Polytope::centroid() const {
    QVector c(ambient, Rational(0));
    for (const auto& v : vertices)
        for (std::size_t k = 0; k < ambient; ++k) c[k] += v[k];
    for (auto& x : c) x /= static_cast<long>(vertices.size());
    return c;
}

int affine_dimension(const std::vector<QVector>& points) {
    if (points.empty()) return -1;
    QMatrix diffs;
    for (std::size_t k = 1; k < points.size(); ++k) {
        QVector d(points[0].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[k][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs, points[0].size()));
}

Polytope convex_hull(const std::vector<QVector>& input) {
    if (input.empty()) throw InputError("convex hull of an empty point set");
    const std::size_t n = input[0].size();
    for (const auto& p : input)
        if (p.size() != n) throw InputError("points of different dimensions");
    std::vector<QVector> pts = sorted_unique(input);

    Polytope poly;
    poly.ambient = n;
    const QVector& p0 = pts[0];
    QMatrix diffs;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        QVector d(n);
        for (std::size_t c = 0; c < n; ++c) d[c] = pts[k][c] - p0[c];
        diffs.push_back(std::move(d));
    }
    RowEchelon dir = rref(diffs, n);
    const std::size_t d = dir.pivots.size();
    poly.dim = static_cast<int>(d);
    for (const auto& e : nullspace(dir.rows, n)) {
        ZVector z = primitive_from_rational(e);
        poly.equations.push_back({z, dot(z, p0)});
    }
    std::sort(poly.equations.begin(), poly.equations.end(),
              [](const Halfspace& a, const Halfspace& b) { return a.normal < b.normal; });
    if (d == 0) {
        poly.vertices = {p0};
        poly.incidence = {{}};
        return poly;
    }

    // coordinates along the pivot columns give an injective projection of the affine hull
    std::vector<QVector> proj(pts.size(), QVector(d));
    for (std::size_t k = 0; k < pts.size(); ++k)
        for (std::size_t c = 0; c < d; ++c) proj[k][c] = pts[k][dir.pivots[c]];

    std::set<std::pair<ZVector, Rational>> seen;
    std::vector<std::pair<ZVector, Rational>> found;  // projected normal, offset
    for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& sub) {
        QMatrix m;
        for (std::size_t k = 1; k < sub.size(); ++k) {
            QVector r(d);
            for (std::size_t c = 0; c < d; ++c) r[c] = proj[sub[k]][c] - proj[sub[0]][c];
            m.push_back(std::move(r));
        }
        QMatrix ns = nullspace(m, d);
        if (ns.size() != 1) return;
        ZVector a = primitive_from_rational(ns[0]);
        Rational b = dot(a, proj[sub[0]]);
        bool pos = false, neg = false;
        for (const auto& y : proj) {
            Rational s = dot(a, y) - b;
            if (s > 0) pos = true;
            if (s < 0) neg = true;
            if (pos && neg) return;
        }
        if (neg) {
            for (auto& x : a) x = -x;
            b = -b;
        }
        if (seen.insert({a, b}).second) found.emplace_back(a, b);
    });

    std::vector<QVector> verts;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        QMatrix tight;
        for (const auto& [a, b] : found)
            if (dot(a, proj[k]) == b) tight.push_back(to_qvector(a));
        if (rank(tight, d) == d) verts.push_back(pts[k]);
    }
    poly.vertices = verts;
    for (const auto& [a, b] : found) {
        ZVector normal(n, Integer(0));
        for (std::size_t c = 0; c < d; ++c) normal[dir.pivots[c]] = a[c];
        poly.facets.push_back({normal, b});
    }
    std::sort(poly.facets.begin(), poly.facets.end(), [](const Halfspace& a, const Halfspace& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    });
    poly.incidence.assign(poly.vertices.size(), std::vector<bool>(poly.facets.size(), false));
    for (std::size_t v = 0; v < poly.vertices.size(); ++v)
        for (std::size_t f = 0; f < poly.facets.size(); ++f)
            poly.incidence[v][f] = eval(poly.facets[f], poly.vertices[v]) == 0;
    return poly;
}

bool same_polytope(const Polytope& a, const Polytope& b) {
    return a.ambient == b.ambient && a.vertices == b.vertices;
}

TypeMatch combinatorial_type_equal(const Polytope& p, const Polytope& q) {
    TypeMatch res;
    const std::size_t nv = p.vertices.size();
    const std::size_t nf = p.facets.size();
    if (p.dim != q.dim || nv != q.vertices.size() || nf != q.facets.size()) return res;
    auto co = [](const Polytope& x) {
        std::size_t k = x.vertices.size();
        std::vector<std::vector<std::size_t>> c(k, std::vector<std::size_t>(k, 0));
        for (std::size_t f = 0; f < x.facets.size(); ++f)
            for (std::size_t u = 0; u < k; ++u)
                if (x.incidence[u][f])
                    for (std::size_t v = 0; v < k; ++v)
                        if (x.incidence[v][f]) ++c[u][v];
        return c;
    };
    auto cp = co(p), cq = co(q);
    std::set<std::vector<std::size_t>> qfacets;
    for (std::size_t f = 0; f < nf; ++f) qfacets.insert(q.facet_vertices(f));

    std::vector<std::size_t> map(nv, nv);
    std::vector<bool> used(nv, false);
    auto leaf_ok = [&]() {
        for (std::size_t f = 0; f < nf; ++f) {
            std::vector<std::size_t> img;
            for (auto v : p.facet_vertices(f)) img.push_back(map[v]);
            std::sort(img.begin(), img.end());
            if (!qfacets.count(img)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t u) -> bool {
        if (u == nv) return leaf_ok();
        for (std::size_t w = 0; w < nv; ++w) {
            if (used[w] || cp[u][u] != cq[w][w]) continue;
            bool ok = true;
            for (std::size_t x = 0; x < u && ok; ++x)
                if (cp[u][x] != cq[w][map[x]]) ok = false;
            if (!ok) continue;
            used[w] = true;
            map[u] = w;
            if (self(self, u + 1)) return true;
            used[w] = false;
        }
        return false;
    };
    if (rec(rec, 0)) {
        res.equal = true;
        res.vertex_map = map;
    }
    return res;
}

std::vector<PyramidWitness> pyramid_witnesses(const Polytope& p) {
    if (p.dim < 1) throw InputError("pyramid test needs a polytope of dimension at least 1");
    std::vector<PyramidWitness> out;
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
        std::size_t off = p.vertices.size(), count = 0;
        for (std::size_t v = 0; v < p.vertices.size(); ++v)
            if (!p.incidence[v][f]) {
                off = v;
                ++count;
            }
        if (count == 1) out.push_back({p.vertices[off], f});
    }
    return out;
}

std::optional<PyramidWitness> is_pyramid(const Polytope& p) {
    auto all = pyramid_witnesses(p);
    if (all.empty()) return std::nullopt;
    return all.front();
}

Polytope pyramid_base(const Polytope& p, const PyramidWitness& w) {
    std::vector<QVector> pts;
    for (auto v : p.facet_vertices(w.base)) pts.push_back(p.vertices[v]);
    return convex_hull(pts);
}

namespace {

struct TowerMemo {
    Polytope poly;
    std::vector<QVector> apexes;
};

std::vector<QVector> tower(const Polytope& p, std::vector<TowerMemo>& memo) {
    if (p.dim <= 0) return {};
    for (const auto& m : memo) {
        if (m.poly.dim != p.dim || m.poly.vertices.size() != p.vertices.size() ||
            m.poly.facets.size() != p.facets.size())
            continue;
        TypeMatch t = combinatorial_type_equal(m.poly, p);
        if (!t.equal) continue;
        std::vector<QVector> out;
        for (const auto& a : m.apexes) out.push_back(p.vertices[t.vertex_map[m.poly.vertex_index(a)]]);
        return out;
    }
    std::vector<QVector> best;
    for (const auto& w : pyramid_witnesses(p)) {
        std::vector<QVector> sub = tower(pyramid_base(p, w), memo);
        if (sub.size() + 1 > best.size()) {
            best = {w.apex};
            best.insert(best.end(), sub.begin(), sub.end());
        }
    }
    memo.push_back({p, best});
    return best;
}

}  // namespace

ComplexityCertificate complexity(const Polytope& p) {
    std::vector<TowerMemo> memo;
    ComplexityCertificate c;
    c.apexes = tower(p, memo);
    c.value = p.dim - static_cast<int>(c.apexes.size());
    return c;
}

Polytope homothety(const Polytope& p, const QVector& center, const Rational& factor) {
    if (factor <= 0) throw InputError("homothety factor must be positive");
    std::vector<QVector> pts;
    for (const auto& v : p.vertices) {
        QVector w(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) w[k] = center[k] + factor * (v[k] - center[k]);
        pts.push_back(std::move(w));
    }
    return convex_hull(pts);
}

namespace {

QVector along(const QVector& v, const QVector& u, const Rational& s) {
    QVector w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) w[k] = v[k] + s * (u[k] - v[k]);
    return w;
}

}  // namespace

VertexCut cut_vertex(const Polytope& q, const QVector& v, const Hyperplane& chord) {
    if (q.vertex_index(v) == q.vertices.size()) throw InputError("cut point is not a vertex");
    Rational sv = dot(chord.normal, v) - chord.offset;
    if (sv == 0) throw InputError("chord passes through the cut vertex");
    std::vector<QVector> far, near{v};
    for (const auto& u : q.vertices) {
        if (u == v) continue;
        Rational su = dot(chord.normal, u) - chord.offset;
        if (su == 0) throw InputError("chord passes through a vertex");
        if ((su > 0) == (sv > 0)) throw InputError("chord does not separate the vertex");
        QVector x = along(v, u, sv / (sv - su));
        far.push_back(u);
        far.push_back(x);
        near.push_back(x);
    }
    return {convex_hull(far), convex_hull(near)};
}

std::optional<PyramidalExtension> check_pyramidal_extension(const Polytope& p, const Polytope& q) {
    if (p.ambient != q.ambient || p.dim != q.dim || q.dim < 1) return std::nullopt;
    if (!q.contains(p) || same_polytope(p, q)) return std::nullopt;
    std::vector<const Halfspace*> fresh;
    for (const auto& f : p.facets)
        if (std::find(q.facets.begin(), q.facets.end(), f) == q.facets.end()) fresh.push_back(&f);
    if (fresh.size() != 1) return std::nullopt;
    const Halfspace& h = *fresh[0];
    std::vector<std::size_t> below;
    for (std::size_t k = 0; k < q.vertices.size(); ++k)
        if (eval(h, q.vertices[k]) < 0) below.push_back(k);
    if (below.size() != 1) return std::nullopt;
    const QVector& v = q.vertices[below[0]];
    Rational sv = eval(h, v);
    std::vector<QVector> upper, region{v};
    for (const auto& u : q.vertices) {
        if (u == v) continue;
        Rational su = eval(h, u);
        upper.push_back(u);
        QVector x = su == 0 ? u : along(v, u, sv / (sv - su));
        upper.push_back(x);
        region.push_back(x);
    }
    if (!same_polytope(convex_hull(upper), p)) return std::nullopt;
    Polytope reg = convex_hull(region);
    if (reg.dim != q.dim) return std::nullopt;
    bool apex_ok = false;
    for (const auto& w : pyramid_witnesses(reg))
        if (w.apex == v) apex_ok = true;
    if (!apex_ok) return std::nullopt;
    PyramidalExtension ext;
    ext.apex = v;
    ext.complexity = complexity(reg).value;
    ext.region = std::move(reg);
    return ext;
}

namespace {

QVector midpoint(const QVector& a, const QVector& b) { return along(a, b, Rational(1, 2)); }

Rational dist2(const QVector& a, const QVector& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
}

}  // namespace

AdmissibleSequence build_admissible_sequence(const Polytope& p, const Polytope& target,
                                             const std::vector<QVector>& apexes, std::size_t budget) {
    if (p.dim > 2) throw InputError("admissible sequences are built for base dimension at most 2");
    if (target.ambient != p.ambient || target.dim != p.dim) throw InputError("target must be a full-dimensional polytope in aff(P)");
    for (const auto& v : target.vertices)
        if (!p.in_affine_hull(v)) throw InputError("target leaves the affine hull of P");
    auto lift = [&](const Polytope& x) {
        if (apexes.empty()) return x;
        std::vector<QVector> pts = apexes;
        pts.insert(pts.end(), x.vertices.begin(), x.vertices.end());
        return convex_hull(pts);
    };
    AdmissibleSequence seq;
    seq.origin = lift(p);
    seq.target = lift(target);
    if (target.contains(p)) return seq;
    if (p.dim == 0) throw InputError("target does not contain the 0-dimensional polytope");

    Polytope cur = p;
    auto push = [&](const std::vector<QVector>& pts) {
        if (seq.steps.size() >= budget) {
            seq.budget_exhausted = true;
            return false;
        }
        cur = convex_hull(pts);
        seq.steps.push_back({lift(cur), StepKind::shrink});
        return !target.contains(cur);
    };

    if (p.dim == 1) {
        QVector a = target.vertices.front(), b = target.vertices.back();
        QVector lo = p.vertices.front(), hi = p.vertices.back();
        if (lo != a && !push({a, hi})) return seq;
        if (hi != b) push({a, b});
        return seq;
    }

    const QVector c = target.centroid();
    while (cur.vertices.size() > 3) {
        std::size_t best = cur.vertices.size();
        for (std::size_t k = 0; k < cur.vertices.size(); ++k) {
            std::vector<QVector> rest;
            for (std::size_t m = 0; m < cur.vertices.size(); ++m)
                if (m != k) rest.push_back(cur.vertices[m]);
            if (!convex_hull(rest).contains(c)) continue;
            if (best == cur.vertices.size() || dist2(cur.vertices[k], c) > dist2(cur.vertices[best], c)) best = k;
        }
        std::vector<QVector> rest;
        for (std::size_t m = 0; m < cur.vertices.size(); ++m)
            if (m != best) rest.push_back(cur.vertices[m]);
        if (!push(rest)) return seq;
    }
    while (true) {
        const QVector a = cur.vertices[0], b = cur.vertices[1], d = cur.vertices[2];
        const QVector mab = midpoint(a, b), mbd = midpoint(b, d), mad = midpoint(a, d);
        std::vector<std::vector<std::vector<QVector>>> plans = {
            {{mab, b, d, mad}, {mab, mbd, d, mad}, {mab, mbd, mad}},
            {{a, b, mbd, mad}, {a, mab, mbd, mad}, {a, mab, mad}},
            {{a, b, mbd, mad}, {mab, b, mbd, mad}, {mab, b, mbd}},
            {{a, mab, mbd, d}, {mad, mab, mbd, d}, {mad, mbd, d}},
        };
        std::size_t choice = plans.size();
        for (std::size_t k = 0; k < plans.size() && choice == plans.size(); ++k)
            if (convex_hull(plans[k].back()).contains(c)) choice = k;
        for (const auto& pts : plans[choice])
            if (!push(pts)) return seq;
    }
}

SequenceValidation validate_admissible_sequence(const AdmissibleSequence& seq) {
    SequenceValidation res;
    const Polytope* prev = &seq.origin;
    for (std::size_t k = 0; k < seq.steps.size(); ++k) {
        const Polytope& cur = seq.steps[k].polytope;
        auto fail = [&](const std::string& why) {
            res.valid = false;
            res.step = k;
            res.reason = why;
            return res;
        };
        if (cur.dim != seq.origin.dim) return fail("dimension changed");
        if (!seq.origin.contains(cur)) return fail("step leaves the origin polytope");
        if (seq.steps[k].kind == StepKind::shrink) {
            if (!check_pyramidal_extension(cur, *prev)) return fail("shrink step is not a pyramidal extension");
        } else if (!cur.contains(*prev)) {
            return fail("grow step does not contain its predecessor");
        }
        prev = &cur;
    }
    res.reaches_target = seq.target.contains(seq.final_polytope());
    return res;
}

}  // namespace descent
