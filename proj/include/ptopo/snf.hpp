#pragma once

#include "ptopo/rational.hpp"

#include <cstdint>
#include <vector>

namespace ptopo {

struct Triplet {
    size_t row, col;
    Int val;
};

/// Invariant factors of an integer matrix. Sparse elimination with
/// unit pivots first, dense tail afterwards; suitable for boundary
/// matrices at desk scale.
struct SmithDiag {
    std::vector<Int> diag; // nontrivial invariant factors, d1 | d2 | ...
    size_t rank = 0;       // number of nonzero invariant factors
};
SmithDiag smith_diagonal(std::vector<Triplet> entries, size_t rows, size_t cols);

/// Dense Smith normal form S = U A V with tracked transforms.
/// Partial pivoting on the smallest nonzero entry.
struct DenseSmith {
    std::vector<std::vector<Int>> s; // diagonalized matrix
    size_t rank = 0;
    std::vector<std::vector<Int>> u, uinv, v, vinv; // unimodular when tracked
};
DenseSmith dense_smith(std::vector<std::vector<Int>> a, bool transforms);

/// Dense elimination over Z_p with tracked transforms: R = U A V where
/// R has unit pivots on the first `rank` diagonal entries and zeros
/// elsewhere.
struct FieldReduce {
    size_t rank = 0;
    std::vector<std::vector<uint64_t>> u, uinv, v, vinv;
};
FieldReduce field_reduce(std::vector<std::vector<uint64_t>> a, uint64_t p, bool transforms);

/// Sparse elimination rank over Z_p (p an odd prime; use Z2ColumnSolver
/// for p = 2).
size_t sparse_field_rank(const std::vector<Triplet>& entries, size_t rows, size_t cols, uint64_t p);

/// Incremental echelon basis of a mod-2 column space; reusable for rank
/// and for many column-space membership queries.
class Z2ColumnSolver {
public:
    explicit Z2ColumnSolver(size_t rows);
    /// Insert a column given by its nonzero row support; returns true
    /// when it enlarged the space.
    bool insert(const std::vector<size_t>& support);
    size_t rank() const { return basis_.size(); }
    bool in_span(const std::vector<size_t>& support) const;

private:
    size_t rows_, words_;
    std::vector<std::vector<uint64_t>> basis_; // echelon, distinct leads
    std::vector<long> lead_;                   // lead bit index per basis vector
};

} // namespace ptopo
