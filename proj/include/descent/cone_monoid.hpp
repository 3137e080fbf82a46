#pragma once

#include <optional>
#include <string>
#include <vector>

#include "descent/geometry.hpp"

namespace descent {

struct Cone {
    std::size_t ambient = 0;
    int dim = 0;
    std::vector<ZVector> rays;       // primitive, irredundant, sorted
    ZVector functional;              // positive on every ray
    std::vector<ZVector> facets;     // a . x >= 0
    std::vector<ZVector> equations;  // a . x == 0 on the linear span

    bool contains(const QVector& x) const;
    bool contains(const ZVector& x) const;
    // relative interior
    bool contains_interior(const ZVector& x) const;
};

Cone make_cone(const std::vector<ZVector>& rays);

struct CrossSection {
    ZVector functional;
    Polytope polytope;  // vertices ray / functional(ray)
};

CrossSection cross_section(const Cone& c);
CrossSection cross_section(const Cone& c, const ZVector& functional);

// minimal generating set of c cap lattice; lattice given by a row basis, default the
// saturation of the span of c
std::vector<ZVector> hilbert_basis(const Cone& c, const std::optional<ZMatrix>& lattice = std::nullopt);

struct AffineMonoid {
    std::size_t ambient = 0;
    std::vector<ZVector> generators;
    ZMatrix lattice;  // Hermite basis of gp(M)
    std::size_t rank = 0;
};

AffineMonoid make_monoid(const std::vector<ZVector>& generators);
Cone monoid_cone(const AffineMonoid& m);

struct Grading {
    ZVector functional;
};

Grading positive_grading(const AffineMonoid& m);

bool monoid_membership(const AffineMonoid& m, const ZVector& x);

struct NormalityResult {
    bool normal = false;
    std::optional<ZVector> witness;
    std::vector<ZVector> integral_closure;
};

NormalityResult normality(const AffineMonoid& m);

bool interior_membership(const AffineMonoid& m, const ZVector& x);

struct Dilation {
    AffineMonoid monoid;
    Integer factor;
    ZVector map(const ZVector& x) const;
};

Dilation dilate(const AffineMonoid& m, const Integer& c);

struct MonoidExtension {
    std::optional<std::string> failure;  // reason when not a pyramidal extension
    CrossSection phi_m;
    CrossSection phi_n;
    PyramidalExtension extension;
    explicit operator bool() const { return !failure; }
};

MonoidExtension monoid_pyramidal_extension(const AffineMonoid& m, const AffineMonoid& n);

}  // namespace descent
