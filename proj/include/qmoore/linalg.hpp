#pragma once

#include <vector>

#include "qmoore/errors.hpp"
#include "qmoore/scalar.hpp"

namespace qmoore {

// Dense rational matrix, row-major. Sizes here are desk scale; clarity over speed.
struct QMat {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const;
    bool is_integral() const;
    QMat mul(const QMat& rhs) const;
    bool operator==(const QMat& rhs) const = default;
};

// Dense arbitrary-precision integer matrix.
struct IMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

int rank_q(QMat m);  // exact rank over the rationals

// Basis of the rational kernel, one column vector per basis element.
std::vector<std::vector<Rat>> kernel_q(const QMat& m);

// Requires integral entries; clears nothing, just converts.
IMat to_integer(const QMat& m);

struct SnfResult {
    std::vector<Int> diagonal;  // nonzero invariant factors d1 | d2 | ...
    int rank = 0;
};

// Smith normal form by fraction-free integer elimination, pivoting on minimal
// absolute value. Returns positive invariant factors.
SnfResult smith_normal_form(IMat m);

int rank_gf2(const QMat& m);  // rank of the mod-2 reduction (entries must be integral)

}  // namespace qmoore
