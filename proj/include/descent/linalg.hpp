#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "descent/arith.hpp"

namespace descent {

using QMatrix = std::vector<QVector>;
using ZMatrix = std::vector<ZVector>;

struct RowEchelon {
    QMatrix rows;                     // nonzero rows of the reduced echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(QMatrix m, std::size_t ncols);
std::size_t rank(const QMatrix& m, std::size_t ncols);
// basis of {x : m x = 0}
QMatrix nullspace(const QMatrix& m, std::size_t ncols);
// some x with A x = b, if any
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t ncols);

// canonical Hermite normal form of the row lattice spanned by gens (zero rows dropped)
ZMatrix hermite_basis(ZMatrix gens, std::size_t ncols);
// basis of {x in Z^n : A x = 0}
ZMatrix integer_kernel(const ZMatrix& a, std::size_t n);
// basis of the lattice span_Q(gens) cap Z^n
ZMatrix saturation(const ZMatrix& gens, std::size_t n);
// integer coordinates of x in the row basis, if x lies in the lattice
std::optional<ZVector> lattice_coordinates(const ZMatrix& basis, const ZVector& x);

// sparse integer row, sorted by column
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

// incremental fraction-free elimination; rank over Q
class SparseEliminator {
public:
    // returns true if the row was independent of those inserted before
    bool insert(SparseRow row);
    std::size_t rank() const { return pivots_.size(); }

private:
    std::vector<std::pair<std::size_t, SparseRow>> pivots_;  // sorted by pivot column
    SparseRow* find_pivot(std::size_t col);
};

std::size_t sparse_rank(const std::vector<SparseRow>& rows);

}  // namespace descent
