#include <doctest.h>

#include "descent/geometry.hpp"
#include "descent/lp.hpp"

using namespace descent;

namespace {

QVector q(std::initializer_list<long> xs) {
    QVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Polytope hull(std::initializer_list<QVector> pts) { return convex_hull(std::vector<QVector>(pts)); }

}  // namespace

TEST_CASE("square hull") {
    Polytope p = hull({q({0, 0}), q({2, 0}), q({0, 2}), q({2, 2}), q({1, 1}), q({1, 0})});
    CHECK(p.dim == 2);
    CHECK(p.vertices.size() == 4);
    CHECK(p.facets.size() == 4);
    CHECK(p.contains(q({1, 2})));
    CHECK_FALSE(p.contains(q({3, 1})));
    CHECK(complexity(p).value == 2);
    CHECK_FALSE(is_pyramid(p).has_value());
}

TEST_CASE("triangle in space") {
    Polytope p = hull({q({1, 0, 0}), q({0, 1, 0}), q({0, 0, 1})});
    CHECK(p.dim == 2);
    CHECK(p.equations.size() == 1);
    CHECK(p.facets.size() == 3);
    CHECK(complexity(p).value == 0);
    CHECK(complexity(p).apexes.size() == 2);
}

TEST_CASE("segment and point") {
    CHECK(complexity(hull({q({0}), q({3})})).value == 0);
    Polytope pt = hull({q({1, 1})});
    CHECK(pt.dim == 0);
    CHECK(complexity(pt).value == 0);
}

TEST_CASE("pyramid over square") {
    Polytope p = hull({q({0, 0, 0}), q({2, 0, 0}), q({0, 2, 0}), q({2, 2, 0}), q({1, 1, 1})});
    CHECK(p.facets.size() == 5);
    auto w = is_pyramid(p);
    REQUIRE(w);
    CHECK(w->apex == q({1, 1, 1}));
    auto c = complexity(p);
    CHECK(c.value == 2);
    CHECK(c.apexes.size() == 1);
}

TEST_CASE("combinatorial type") {
    Polytope a = hull({q({0, 0}), q({1, 0}), q({0, 1}), q({1, 1})});
    Polytope b = hull({q({0, 0}), q({3, 0}), q({1, 2}), q({2, 2})});
    Polytope c = hull({q({0, 0}), q({3, 0}), q({1, 2})});
    CHECK(combinatorial_type_equal(a, b).equal);
    CHECK_FALSE(combinatorial_type_equal(a, c).equal);
    Polytope cube = hull({q({0, 0, 0}), q({1, 0, 0}), q({0, 1, 0}), q({1, 1, 0}), q({0, 0, 1}), q({1, 0, 1}),
                          q({0, 1, 1}), q({1, 1, 1})});
    CHECK(cube.facets.size() == 6);
    CHECK(complexity(cube).value == 3);
    CHECK(combinatorial_type_equal(cube, cube).equal);
}

TEST_CASE("cut vertex and extension") {
    Polytope sq = hull({q({0, 0}), q({2, 0}), q({0, 2}), q({2, 2})});
    Hyperplane h{QVector{1, 1}, Rational(3)};
    VertexCut cut = cut_vertex(sq, q({2, 2}), h);
    CHECK(cut.remaining.vertices.size() == 5);
    auto ext = check_pyramidal_extension(cut.remaining, sq);
    REQUIRE(ext);
    CHECK(ext->apex == q({2, 2}));
    CHECK(ext->complexity == 0);
    Hyperplane bad{QVector{1, 1}, Rational(2)};
    CHECK_THROWS_AS(cut_vertex(sq, q({2, 2}), bad), InputError);
    CHECK_FALSE(check_pyramidal_extension(sq, sq));
    Polytope half = hull({q({0, 0}), q({1, 0}), q({0, 2}), q({1, 2})});
    CHECK_FALSE(check_pyramidal_extension(half, sq));
    Polytope tri = hull({q({0, 0}), q({2, 0}), q({0, 2})});
    auto chord_ext = check_pyramidal_extension(tri, sq);
    REQUIRE(chord_ext);
    CHECK(chord_ext->apex == q({2, 2}));
}

TEST_CASE("admissible sequence in the plane") {
    Polytope p = hull({q({0, 0}), q({8, 0}), q({8, 8}), q({0, 8}), q({4, 10})});
    Polytope t = homothety(p, p.centroid(), Rational(1, 5));
    auto seq = build_admissible_sequence(p, t, {}, 1000);
    CHECK_FALSE(seq.budget_exhausted);
    auto v = validate_admissible_sequence(seq);
    CHECK(v.valid);
    CHECK(v.reaches_target);
    auto lifted = build_admissible_sequence(p, t, {q({1, 1})}, 1000);
    CHECK(lifted.origin.dim == 2);
    std::vector<QVector> ap = {QVector{Rational(1), Rational(1), Rational(1)}};
    Polytope p3 = hull({q({0, 0, 0}), q({4, 0, 0}), q({0, 4, 0}), q({4, 4, 0})});
    Polytope t3 = homothety(p3, p3.centroid(), Rational(1, 3));
    auto s3 = build_admissible_sequence(p3, t3, ap, 1000);
    CHECK(s3.origin.dim == 3);
    auto v3 = validate_admissible_sequence(s3);
    CHECK(v3.valid);
    CHECK(v3.reaches_target);
}

TEST_CASE("lp") {
    LinearProgram lp;
    lp.nvars = 2;
    lp.a_le = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    lp.b_le = {Rational(4), Rational(2)};
    lp.a_le.push_back({Rational(-1), Rational(0)});
    lp.b_le.push_back(Rational(0));
    lp.a_le.push_back({Rational(0), Rational(-1)});
    lp.b_le.push_back(Rational(0));
    lp.objective = {Rational(2), Rational(1)};
    auto r = solve_lp(lp);
    CHECK(r.status == LpStatus::optimal);
    CHECK(r.value == 7);
    lp.objective = {Rational(-1), Rational(3)};
    lp.a_le.pop_back();
    lp.b_le.pop_back();
    lp.a_le[0] = {Rational(0), Rational(0)};
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
}
