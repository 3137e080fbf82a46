#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "descent/cone_monoid.hpp"

namespace descent {

// E11, DIAG = E11 + E22, E12 (upper right), E21 (lower left)
enum class Slot : std::uint8_t { E11, DIAG, E12, E21 };

std::string slot_name(Slot s);
Slot parse_slot(const std::string& s);

struct BasisMonomial {
    Slot slot = Slot::E11;
    Point point;
    std::int64_t degree = 0;

    auto operator<=>(const BasisMonomial&) const = default;
    std::string to_string() const;
};

using RingElement = std::map<BasisMonomial, Rational>;

struct InstanceSpec {
    std::vector<ZVector> n_generators;
    std::vector<ZVector> m_generators;
    std::vector<ZVector> d_rays;
    std::vector<ZVector> dprime_rays;
    QVector v;
    ZVector t;
    int i = 1;
    int s = 2;
};

struct ChainRing {
    Polytope section;  // Phi_j in the grading hyperplane
    Cone cone;
    std::vector<Point> facets;  // a . x >= 0
    bool contains(const Point& x) const;
};

// link j -> j+1 of the gamma chain
struct GammaLink {
    Point m0;                   // minimal degree nonzero lattice point of D_{j+1}
    std::int64_t multiplier = 0;  // gamma_{j+1} + 1
    Point divisor;              // multiplier * m0
    Rational lp_bound;          // sup degree of x in D_j with x - divisor outside D_{j+1}
    std::int64_t gamma = 0;     // gamma_j
};

struct DescentInstance {
    InstanceSpec spec;
    AffineMonoid n_monoid;
    AffineMonoid m_monoid;
    Cone m_cone;
    std::vector<Point> m_facets;
    Point grading;
    Point t;
    std::int64_t t_degree = 0;
    int i = 1;
    int s = 2;
    int n = 0;
    std::vector<ChainRing> chain;      // D_0, ..., D_n
    std::vector<std::int64_t> gammas;  // gamma_0 > ... > gamma_n = s
    std::vector<GammaLink> links;      // links[j] certifies gamma_j

    std::int64_t degree(const Point& m) const;
    bool valid(int j, const BasisMonomial& b) const;
    BasisMonomial monomial(Slot s, const Point& m) const;
};

// 2^(2^(i+1)-1) - 2
std::int64_t chain_length(int i);

DescentInstance build_instance(const InstanceSpec& spec);

// lattice points of degree h in the cone of ring j
std::vector<Point> cone_points(const DescentInstance& inst, int j, std::int64_t h);

// candidate count of the enumeration box for degree h (upper bound on cone_points)
Integer cone_points_box(const DescentInstance& inst, int j, std::int64_t h);

std::vector<BasisMonomial> lambda_basis_slice(const DescentInstance& inst, int j, std::int64_t d);

// product of two basis monomials expanded in the basis
std::vector<std::pair<BasisMonomial, int>> multiply_monomials(const DescentInstance& inst, const BasisMonomial& a,
                                                              const BasisMonomial& b);
RingElement multiply(const DescentInstance& inst, int j, const RingElement& x, const RingElement& y);

struct ExceptionalResult {
    std::vector<BasisMonomial> monomials;
    std::int64_t threshold = 0;         // Lambda_{j,d} inside M_2x2(k[M]) for d > threshold
    std::vector<std::optional<Rational>> facet_bounds;  // LP maxima per facet of cone(M)
    bool d_branch_clean = false;         // D_j inside cone(M) and gp(M) = Z^n
};

ExceptionalResult exceptional_monomials(const DescentInstance& inst, int j);

struct DivisFactor {
    BasisMonomial prime;    // same slot as the input
    BasisMonomial central;  // DIAG at the link divisor
};

DivisFactor divis_factor(const DescentInstance& inst, int j, const BasisMonomial& b);

// random basis monomial of ring j with the given slot and degree, if one is found
std::optional<BasisMonomial> sample_monomial(const DescentInstance& inst, int j, Slot slot, std::int64_t h,
                                             std::mt19937_64& rng);

}  // namespace descent
