#pragma once

#include <map>
#include <vector>

#include "qmoore/scalar.hpp"

namespace qmoore {

// Sparse rational column vector: (row, coeff) pairs sorted by row, no zeros.
struct SparseVecQ {
    std::vector<std::pair<int, Rat>> e;

    bool empty() const { return e.empty(); }
    int low() const { return e.back().first; }
    const Rat& low_coeff() const { return e.back().second; }
    void push(int row, Rat c) { e.emplace_back(row, std::move(c)); }
    void sort_and_combine();
};

// out = a + f*b
SparseVecQ axpy(const SparseVecQ& a, const Rat& f, const SparseVecQ& b);

// Incremental column reduction keyed on the lowest nonzero row. Deterministic;
// suitable for the boundary-like matrices the truncation windows produce.
class SparseEliminator {
  public:
    // Reduces the column against current pivots. Returns true if a new pivot
    // was created (column independent of those before it).
    bool add(SparseVecQ col);
    // Same, tracking the column's expression in user coordinates; when the
    // column dies, *combination holds a kernel certificate.
    bool add_tracked(SparseVecQ col, SparseVecQ tag, SparseVecQ* combination);

    // Reduces without inserting. Returns true when col lies in the current
    // span; then *combination holds the accumulated tag (col = -combination
    // in the tag coordinates of the stored pivots).
    bool reduce_only(SparseVecQ col, SparseVecQ* combination) const;

    // Full normal form against the current pivots: residual plus the tag that
    // was added along the way (residual = col + combination-of-pivots).
    SparseVecQ reduce_partial(SparseVecQ col, SparseVecQ* tag_out) const;

    int rank() const { return static_cast<int>(pivots_.size()); }

  private:
    std::map<int, std::pair<SparseVecQ, SparseVecQ>> pivots_;  // low row -> (column, tag)
};

int sparse_rank(const std::vector<SparseVecQ>& cols);

// Kernel basis in source coordinates (index = position in cols).
std::vector<SparseVecQ> sparse_kernel(const std::vector<SparseVecQ>& cols);

// dim span(b_cols + extra) - dim span(b_cols); used for window homology:
// rank([B|Z]) - rank(B).
int sparse_rank_gain(const std::vector<SparseVecQ>& b_cols, const std::vector<SparseVecQ>& extra);

}  // namespace qmoore
