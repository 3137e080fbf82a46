#pragma once

#include <optional>
#include <string>
#include <vector>

#include "descent/linalg.hpp"

namespace descent {

// normal . x >= offset (facet) or normal . x == offset (equation)
struct Halfspace {
    ZVector normal;
    Rational offset;
    bool operator==(const Halfspace&) const = default;
};

struct Polytope {
    std::size_t ambient = 0;
    int dim = -1;
    std::vector<QVector> vertices;  // lexicographically sorted
    std::vector<Halfspace> facets;
    std::vector<Halfspace> equations;  // affine hull
    std::vector<std::vector<bool>> incidence;  // [vertex][facet]

    bool contains(const QVector& x) const;
    bool contains(const Polytope& other) const;
    bool in_affine_hull(const QVector& x) const;
    std::vector<std::size_t> facet_vertices(std::size_t f) const;
    std::size_t vertex_index(const QVector& v) const;  // vertices.size() if absent
    QVector centroid() const;
};

Polytope convex_hull(const std::vector<QVector>& points);
bool same_polytope(const Polytope& a, const Polytope& b);
int affine_dimension(const std::vector<QVector>& points);

struct TypeMatch {
    bool equal = false;
    std::vector<std::size_t> vertex_map;  // vertex of P -> vertex of Q
};

TypeMatch combinatorial_type_equal(const Polytope& p, const Polytope& q);

struct PyramidWitness {
    QVector apex;
    std::size_t base = 0;  // facet index
};

std::vector<PyramidWitness> pyramid_witnesses(const Polytope& p);
std::optional<PyramidWitness> is_pyramid(const Polytope& p);
Polytope pyramid_base(const Polytope& p, const PyramidWitness& w);

struct ComplexityCertificate {
    int value = 0;
    std::vector<QVector> apexes;  // apex of P_i, P_{i-1}, ..., P_1
};

ComplexityCertificate complexity(const Polytope& p);

Polytope homothety(const Polytope& p, const QVector& center, const Rational& factor);

// rational hyperplane normal . x == offset
struct Hyperplane {
    QVector normal;
    Rational offset;
};

struct VertexCut {
    Polytope remaining;
    Polytope removed;
};

VertexCut cut_vertex(const Polytope& q, const QVector& v, const Hyperplane& chord);

struct PyramidalExtension {
    QVector apex;
    Polytope region;
    int complexity = 0;
};

// P subset Q obtained by cutting a pyramid off Q at one vertex
std::optional<PyramidalExtension> check_pyramidal_extension(const Polytope& p, const Polytope& q);

enum class StepKind { shrink, grow };

struct AdmissibleStep {
    Polytope polytope;
    StepKind kind = StepKind::shrink;
};

struct AdmissibleSequence {
    Polytope origin;
    Polytope target;
    std::vector<AdmissibleStep> steps;
    bool budget_exhausted = false;

    const Polytope& final_polytope() const { return steps.empty() ? origin : steps.back().polytope; }
};

struct SequenceValidation {
    bool valid = true;
    std::size_t step = 0;  // first violating step when !valid
    std::string reason;
    bool reaches_target = false;
};

AdmissibleSequence build_admissible_sequence(const Polytope& p, const Polytope& target,
                                             const std::vector<QVector>& apexes, std::size_t budget);
SequenceValidation validate_admissible_sequence(const AdmissibleSequence& seq);

}  // namespace descent
