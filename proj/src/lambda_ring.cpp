#include "descent/lambda_ring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "descent/lp.hpp"

namespace descent {

namespace {

bool in_facets(const std::vector<Point>& facets, const Point& x) {
    for (const auto& a : facets)
        if (point_dot(a, x) < 0) return false;
    return true;
}

Rational q_floor_ceil(const Rational& q, bool up) {
    Integer f = q.get_num() / q.get_den();
    if (q < 0 && f * q.get_den() != q.get_num()) f -= 1;
    if (up && Rational(f) != q) f += 1;
    return Rational(f);
}

Point to_point_checked(const ZVector& v) {
    for (const auto& x : v)
        if (!x.fits_slong_p()) throw BudgetExceeded("coordinate exceeds int64");
    return to_point(v);
}

std::size_t pivot_coordinate(const Point& phi) {
    for (std::size_t k = phi.size(); k-- > 0;)
        if (phi[k] != 0) return k;
    throw InputError("zero grading");
}

// lattice points x of the cone with phi(x) = h, given a box bounding h * section
std::vector<Point> points_in_box(const std::vector<Point>& facets, const Point& phi, const Polytope& section,
                                 std::int64_t h) {
    std::vector<Point> out;
    if (h < 0) return out;
    const std::size_t n = phi.size();
    if (h == 0) {
        out.push_back(Point(n, 0));
        return out;
    }
    const std::size_t c = pivot_coordinate(phi);
    Point lo(n, 0), hi(n, 0);
    double volume = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        Rational mn = section.vertices[0][k], mx = mn;
        for (const auto& v : section.vertices) {
            mn = std::min(mn, v[k]);
            mx = std::max(mx, v[k]);
        }
        lo[k] = to_int64(q_floor_ceil(mn * h, true).get_num());
        hi[k] = to_int64(q_floor_ceil(mx * h, false).get_num());
        if (hi[k] < lo[k]) return out;
        volume *= static_cast<double>(hi[k] - lo[k] + 1);
    }
    if (volume > 5e7) throw BudgetExceeded("lattice point enumeration exceeds 5e7 candidates");
    Point x = lo;
    while (true) {
        std::int64_t rest = h;
        for (std::size_t k = 0; k < n; ++k)
            if (k != c) rest = checked_sub(rest, checked_mul(phi[k], x[k]));
        if (rest % phi[c] == 0) {
            x[c] = rest / phi[c];
            if (in_facets(facets, x)) out.push_back(x);
        }
        std::size_t k = n;
        while (k-- > 0) {
            if (k == c) continue;
            if (x[k] < hi[k]) {
                ++x[k];
                break;
            }
            x[k] = lo[k];
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

LinearProgram cone_lp(const std::vector<Point>& facets, const Point& objective) {
    LinearProgram lp;
    lp.nvars = objective.size();
    for (const auto& f : facets) {
        QVector row(lp.nvars);
        for (std::size_t k = 0; k < lp.nvars; ++k) row[k] = -f[k];
        lp.a_le.push_back(row);
        lp.b_le.push_back(Rational(0));
    }
    lp.objective = to_qvector(objective);
    return lp;
}

}  // namespace

std::string slot_name(Slot s) {
    switch (s) {
        case Slot::E11: return "E11";
        case Slot::DIAG: return "DIAG";
        case Slot::E12: return "E12";
        case Slot::E21: return "E21";
    }
    return "?";
}

Slot parse_slot(const std::string& s) {
    if (s == "E11") return Slot::E11;
    if (s == "DIAG") return Slot::DIAG;
    if (s == "E12") return Slot::E12;
    if (s == "E21") return Slot::E21;
    throw InputError("unknown slot: " + s);
}

std::string BasisMonomial::to_string() const { return slot_name(slot) + format_point(point); }

bool ChainRing::contains(const Point& x) const { return in_facets(facets, x); }

std::int64_t DescentInstance::degree(const Point& m) const { return point_dot(grading, m); }

bool DescentInstance::valid(int j, const BasisMonomial& b) const {
    if (j < 0 || j > n || b.point.size() != grading.size()) return false;
    if (degree(b.point) != b.degree) return false;
    const ChainRing& ring = chain[static_cast<std::size_t>(j)];
    switch (b.slot) {
        case Slot::E11:
        case Slot::DIAG: return ring.contains(b.point);
        case Slot::E21: return ring.contains(b.point) || ring.contains(point_sub(b.point, t));
        case Slot::E12: return ring.contains(b.point) && ring.contains(point_add(b.point, t));
    }
    return false;
}

BasisMonomial DescentInstance::monomial(Slot s, const Point& m) const { return {s, m, degree(m)}; }

std::int64_t chain_length(int i) {
    if (i < 1) throw InputError("i must be at least 1");
    if (i > 4) throw BudgetExceeded("chain length overflows int64");
    const int e = (1 << (i + 1)) - 1;
    return (std::int64_t{1} << e) - 2;
}

std::vector<Point> cone_points(const DescentInstance& inst, int j, std::int64_t h) {
    const ChainRing& ring = inst.chain.at(static_cast<std::size_t>(j));
    return points_in_box(ring.facets, inst.grading, ring.section, h);
}

Integer cone_points_box(const DescentInstance& inst, int j, std::int64_t h) {
    const ChainRing& ring = inst.chain.at(static_cast<std::size_t>(j));
    const std::size_t c = pivot_coordinate(inst.grading);
    Integer total = 1;
    for (std::size_t k = 0; k < inst.grading.size(); ++k) {
        if (k == c) continue;
        Rational mn = ring.section.vertices[0][k], mx = mn;
        for (const auto& v : ring.section.vertices) {
            mn = std::min(mn, v[k]);
            mx = std::max(mx, v[k]);
        }
        const Rational width = q_floor_ceil(mx * h, false) - q_floor_ceil(mn * h, true) + 1;
        if (width <= 0) return 0;
        total *= width.get_num();
    }
    return total;
}

DescentInstance build_instance(const InstanceSpec& spec) {
    if (spec.i < 1) throw InputError("i must be at least 1");
    if (spec.s < 2) throw InputError("s must be at least 2");
    const std::int64_t n64 = chain_length(spec.i);
    if (n64 > 100000) throw BudgetExceeded("chain length " + std::to_string(n64) + " exceeds the build budget");

    DescentInstance inst;
    inst.spec = spec;
    inst.i = spec.i;
    inst.s = spec.s;
    inst.n = static_cast<int>(n64);
    inst.n_monoid = make_monoid(spec.n_generators);
    inst.m_monoid = make_monoid(spec.m_generators);
    const std::size_t dim = inst.n_monoid.ambient;
    if (inst.m_monoid.ambient != dim) throw InputError("M and N have different ambient dimensions");
    for (std::size_t k = 0; k < dim; ++k) {
        ZVector e(dim, Integer(0));
        e[k] = 1;
        if (!lattice_coordinates(inst.n_monoid.lattice, e)) throw InputError("gp(N) is not the full lattice Z^n");
    }
    MonoidExtension ext = monoid_pyramidal_extension(inst.m_monoid, inst.n_monoid);
    if (!ext) throw InputError("M inside N is not a pyramidal extension: " + *ext.failure);

    const ZVector phi = positive_grading(inst.n_monoid).functional;
    inst.grading = to_point_checked(phi);
    const Cone n_cone = monoid_cone(inst.n_monoid);
    inst.m_cone = monoid_cone(inst.m_monoid);
    for (const auto& f : inst.m_cone.facets) inst.m_facets.push_back(to_point_checked(f));

    if (spec.v.size() != dim) throw InputError("v has the wrong dimension");
    const Polytope phi_n = cross_section(n_cone, phi).polytope;
    const Polytope phi_m = cross_section(inst.m_cone, phi).polytope;
    if (!phi_n.contains(spec.v) || phi_m.contains(spec.v)) throw InputError("v is not in Phi(N) minus Phi(M)");

    if (spec.t.size() != dim || is_zero(spec.t)) throw InputError("t must be a nonzero lattice point");
    {
        const Rational c = dot(phi, to_qvector(spec.t)) / dot(phi, spec.v);
        for (std::size_t k = 0; k < dim; ++k)
            if (Rational(spec.t[k]) != c * spec.v[k]) throw InputError("t is not on the ray through v");
        if (c <= 0) throw InputError("t is not on the ray through v");
    }
    inst.t = to_point_checked(spec.t);
    inst.t_degree = inst.degree(inst.t);

    const Cone d_cone = make_cone(spec.d_rays);
    const Cone dp_cone = make_cone(spec.dprime_rays);
    if (d_cone.ambient != dim || dp_cone.ambient != dim) throw InputError("D or D' has the wrong dimension");
    if (d_cone.dim != static_cast<int>(dim) || dp_cone.dim != static_cast<int>(dim))
        throw InputError("D and D' must be full-dimensional");
    for (const auto& r : dp_cone.rays)
        if (!inst.m_cone.contains_interior(r)) throw InputError("D' is not inside R+ M_*");
    for (const auto& r : d_cone.rays)
        if (!dp_cone.contains_interior(r)) throw InputError("D is not inside int(D') with the origin");

    const Polytope phi_d = cross_section(d_cone, phi).polytope;
    const Polytope phi_dp = cross_section(dp_cone, phi).polytope;
    try {
        for (int j = 0; j <= inst.n; ++j) {
            const Rational w(j, inst.n);
            std::vector<QVector> pts;
            for (const auto& p : phi_d.vertices)
                for (const auto& q : phi_dp.vertices) {
                    QVector x(dim);
                    for (std::size_t k = 0; k < dim; ++k) x[k] = (1 - w) * p[k] + w * q[k];
                    pts.push_back(x);
                }
            ChainRing ring;
            ring.section = convex_hull(pts);
            std::vector<ZVector> rays;
            for (const auto& v : ring.section.vertices) rays.push_back(primitive_from_rational(v));
            ring.cone = make_cone(rays);
            for (const auto& f : ring.cone.facets) ring.facets.push_back(to_point_checked(f));
            inst.chain.push_back(std::move(ring));
        }
        for (int j = 0; j < inst.n; ++j)
            for (const auto& r : inst.chain[static_cast<std::size_t>(j)].cone.rays)
                if (!inst.chain[static_cast<std::size_t>(j) + 1].cone.contains_interior(r))
                    throw VerificationError("chain cones are not strictly nested at link " + std::to_string(j));

        inst.gammas.assign(static_cast<std::size_t>(inst.n) + 1, 0);
        inst.links.assign(static_cast<std::size_t>(inst.n), GammaLink{});
        inst.gammas[static_cast<std::size_t>(inst.n)] = inst.s;
        for (int j = inst.n - 1; j >= 0; --j) {
            const auto ju = static_cast<std::size_t>(j);
            GammaLink& link = inst.links[ju];
            const std::int64_t g_next = inst.gammas[ju + 1];
            for (std::int64_t h = 1;; ++h) {
                if (h > 1000000) throw BudgetExceeded("no lattice point found in D_" + std::to_string(j + 1));
                auto pts = cone_points(inst, j + 1, h);
                if (!pts.empty()) {
                    link.m0 = pts.front();
                    break;
                }
            }
            link.multiplier = checked_add(g_next, 1);
            link.divisor = point_scale(link.m0, link.multiplier);
            const std::int64_t deg_q = inst.degree(link.divisor);
            Rational bound = 0;
            for (const auto& a : inst.chain[ju + 1].facets) {
                LinearProgram lp = cone_lp(inst.chain[ju].facets, inst.grading);
                lp.a_le.push_back(to_qvector(a));
                lp.b_le.push_back(Rational(point_dot(a, link.divisor)));
                LpResult res = solve_lp(lp);
                if (res.status == LpStatus::unbounded)
                    throw VerificationError("unbounded shift region at link " + std::to_string(j));
                if (res.status == LpStatus::optimal) bound = std::max(bound, res.value);
            }
            link.lp_bound = bound;
            std::int64_t g = checked_add(floor_to_int64(bound), inst.t_degree);
            g = std::max(g, checked_add(g_next, deg_q));
            g = std::max(g, checked_add(g_next, 1));
            link.gamma = g;
            inst.gammas[ju] = g;
        }
    } catch (const std::overflow_error& e) {
        throw BudgetExceeded(std::string("gamma chain overflows int64: ") + e.what());
    }
    return inst;
}

std::vector<BasisMonomial> lambda_basis_slice(const DescentInstance& inst, int j, std::int64_t d) {
    std::vector<BasisMonomial> out;
    if (d < 0) return out;
    const ChainRing& ring = inst.chain.at(static_cast<std::size_t>(j));
    const auto a = cone_points(inst, j, d);
    std::set<Point> lower(a.begin(), a.end());
    if (d >= inst.t_degree)
        for (const auto& y : cone_points(inst, j, d - inst.t_degree)) lower.insert(point_add(inst.t, y));
    for (const auto& m : a) {
        out.push_back({Slot::E11, m, d});
        out.push_back({Slot::DIAG, m, d});
        if (ring.contains(point_add(m, inst.t))) out.push_back({Slot::E12, m, d});
    }
    for (const auto& m : lower) out.push_back({Slot::E21, m, d});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<BasisMonomial, int>> multiply_monomials(const DescentInstance& inst, const BasisMonomial& a,
                                                              const BasisMonomial& b) {
    const Point m = point_add(a.point, b.point);
    const std::int64_t d = checked_add(a.degree, b.degree);
    auto one = [&](Slot s) { return std::vector<std::pair<BasisMonomial, int>>{{{s, m, d}, 1}}; };
    (void)inst;
    if (a.slot == Slot::DIAG) return one(b.slot);
    if (b.slot == Slot::DIAG) return one(a.slot);
    switch (a.slot) {
        case Slot::E11:
            if (b.slot == Slot::E11) return one(Slot::E11);
            if (b.slot == Slot::E12) return one(Slot::E12);
            return {};
        case Slot::E12:
            if (b.slot == Slot::E21) return one(Slot::E11);
            return {};
        case Slot::E21:
            if (b.slot == Slot::E11) return one(Slot::E21);
            if (b.slot == Slot::E12) return {{{Slot::DIAG, m, d}, 1}, {{Slot::E11, m, d}, -1}};
            return {};
        default: return {};
    }
}

RingElement multiply(const DescentInstance& inst, int j, const RingElement& x, const RingElement& y) {
    RingElement out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y)
            for (const auto& [c, sign] : multiply_monomials(inst, a, b)) {
                if (!inst.valid(j, c)) throw VerificationError("product " + c.to_string() + " leaves the ring");
                Rational& slot = out[c];
                slot += ca * cb * sign;
                if (slot == 0) out.erase(c);
            }
    return out;
}

ExceptionalResult exceptional_monomials(const DescentInstance& inst, int j) {
    if (j < 0 || j > inst.n) throw InputError("chain index out of range");
    const ChainRing& ring = inst.chain[static_cast<std::size_t>(j)];
    ExceptionalResult res;
    res.d_branch_clean = true;
    for (const auto& r : ring.cone.rays)
        if (!inst.m_cone.contains(r)) res.d_branch_clean = false;
    for (std::size_t k = 0; k < inst.grading.size(); ++k) {
        ZVector e(inst.grading.size(), Integer(0));
        e[k] = 1;
        if (!lattice_coordinates(inst.m_monoid.lattice, e)) res.d_branch_clean = false;
    }
    if (!res.d_branch_clean) throw VerificationError("D_" + std::to_string(j) + " is not inside cone(M)");

    // t + y, y in D_j, violating a facet g of cone(M)
    std::optional<Rational> best;
    for (const auto& g : inst.m_facets) {
        LinearProgram lp = cone_lp(ring.facets, inst.grading);
        lp.a_le.push_back(to_qvector(g));
        lp.b_le.push_back(Rational(-point_dot(g, inst.t)));
        LpResult r = solve_lp(lp);
        if (r.status == LpStatus::unbounded) throw VerificationError("unbounded exceptional region");
        if (r.status == LpStatus::infeasible) {
            res.facet_bounds.push_back(std::nullopt);
            continue;
        }
        const Rational value = r.value + inst.t_degree;
        res.facet_bounds.push_back(value);
        if (!best || value > *best) best = value;
    }
    res.threshold = best ? floor_to_int64(*best) : -1;
    std::set<BasisMonomial> found;
    for (std::int64_t h = 0; h + inst.t_degree <= res.threshold; ++h)
        for (const auto& y : cone_points(inst, j, h)) {
            const Point m = point_add(inst.t, y);
            if (!inst.m_cone.contains(to_zvector(m))) found.insert(inst.monomial(Slot::E21, m));
        }
    res.monomials.assign(found.begin(), found.end());
    return res;
}

DivisFactor divis_factor(const DescentInstance& inst, int j, const BasisMonomial& b) {
    if (j < 0 || j >= inst.n) throw InputError("divis_factor needs 0 <= j < n");
    if (!inst.valid(j, b)) throw InputError(b.to_string() + " is not a basis monomial of ring " + std::to_string(j));
    const auto ju = static_cast<std::size_t>(j);
    if (b.degree <= inst.gammas[ju]) throw InputError("degree too low for divis_factor");
    const GammaLink& link = inst.links[ju];
    DivisFactor out{inst.monomial(b.slot, point_sub(b.point, link.divisor)), inst.monomial(Slot::DIAG, link.divisor)};
    const std::int64_t g = inst.gammas[ju + 1];
    if (!inst.valid(j + 1, out.prime) || !inst.valid(j + 1, out.central) || out.prime.degree <= g ||
        out.central.degree <= g)
        throw VerificationError("divis factorization of " + b.to_string() + " failed");
    auto prod = multiply_monomials(inst, out.prime, out.central);
    if (prod.size() != 1 || prod[0].first != b || prod[0].second != 1)
        throw VerificationError("divis product mismatch for " + b.to_string());
    return out;
}

std::optional<BasisMonomial> sample_monomial(const DescentInstance& inst, int j, Slot slot, std::int64_t h,
                                             std::mt19937_64& rng) {
    const ChainRing& ring = inst.chain.at(static_cast<std::size_t>(j));
    const std::size_t n = inst.grading.size();
    const std::size_t c = pivot_coordinate(inst.grading);
    std::uniform_int_distribution<int> weight(1, 1000);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int attempt = 0; attempt < 400; ++attempt) {
        bool shifted = slot == Slot::E21 && coin(rng) == 1;
        const std::int64_t base = shifted ? h - inst.t_degree : h;
        if (base < 0) continue;
        std::vector<Rational> w;
        Rational total = 0;
        for (std::size_t k = 0; k < ring.section.vertices.size(); ++k) {
            w.push_back(Rational(weight(rng)));
            total += w.back();
        }
        Point x(n, 0);
        std::int64_t rest = base;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == c) continue;
            Rational coord = 0;
            for (std::size_t v = 0; v < w.size(); ++v) coord += w[v] / total * ring.section.vertices[v][k];
            x[k] = checked_add(floor_to_int64(coord * base), coin(rng));
            rest = checked_sub(rest, checked_mul(inst.grading[k], x[k]));
        }
        if (rest % inst.grading[c] != 0) continue;
        x[c] = rest / inst.grading[c];
        const Point m = shifted ? point_add(inst.t, x) : x;
        BasisMonomial b = inst.monomial(slot, m);
        if (inst.valid(j, b)) return b;
    }
    return std::nullopt;
}

}  // namespace descent
