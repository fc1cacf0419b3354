#include "qmoore/linalg.hpp"

#include <algorithm>

namespace qmoore {

bool QMat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

bool QMat::is_integral() const {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return qmoore::is_integral(x); });
}

QMat QMat::mul(const QMat& rhs) const {
    if (cols != rhs.rows) throw InvariantViolation("matrix shape mismatch in mul");
    QMat out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < rhs.cols; ++j) {
                const Rat& y = rhs.at(k, j);
                if (y != 0) out.at(i, j) += x * y;
            }
        }
    return out;
}

int rank_q(QMat m) {
    int rank = 0;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int c = col; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rat inv = m.at(row, col);
        for (int r = row + 1; r < m.rows; ++r) {
            if (m.at(r, col) == 0) continue;
            Rat f = m.at(r, col) / inv;
            for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rat>> kernel_q(const QMat& m) {
    QMat w = m;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < w.cols && row < w.rows; ++col) {
        int piv = -1;
        for (int r = row; r < w.rows; ++r)
            if (w.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int c = 0; c < w.cols; ++c) std::swap(w.at(piv, c), w.at(row, c));
        Rat inv = w.at(row, col);
        for (int c = 0; c < w.cols; ++c) w.at(row, c) /= inv;
        for (int r = 0; r < w.rows; ++r) {
            if (r == row || w.at(r, col) == 0) continue;
            Rat f = w.at(r, col);
            for (int c = 0; c < w.cols; ++c) w.at(r, c) -= f * w.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(w.cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < w.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(w.cols, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -w.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

IMat to_integer(const QMat& m) {
    if (!m.is_integral()) throw InvariantViolation("matrix has non-integral entries");
    IMat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = rat_num(m.a[i]);
    return out;
}

namespace {

// Position of a minimal-absolute-value nonzero entry in the trailing block.
bool find_pivot(const IMat& m, int t, int& pr, int& pc) {
    bool found = false;
    Int best;
    for (int r = t; r < m.rows; ++r)
        for (int c = t; c < m.cols; ++c) {
            const Int& x = m.at(r, c);
            if (x == 0) continue;
            Int ax = int_abs(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pr = r;
                pc = c;
            }
        }
    return found;
}

}  // namespace

SnfResult smith_normal_form(IMat m) {
    SnfResult res;
    int t = 0;
    const int bound = std::min(m.rows, m.cols);
    while (t < bound) {
        int pr = 0, pc = 0;
        if (!find_pivot(m, t, pr, pc)) break;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(t, c));
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, pc), m.at(r, t));

        bool clean = true;
        for (int r = t + 1; r < m.rows; ++r) {
            if (m.at(r, t) == 0) continue;
            Int q = m.at(r, t) / m.at(t, t);
            if (q != 0)
                for (int c = t; c < m.cols; ++c) m.at(r, c) -= q * m.at(t, c);
            if (m.at(r, t) != 0) clean = false;
        }
        for (int c = t + 1; c < m.cols; ++c) {
            if (m.at(t, c) == 0) continue;
            Int q = m.at(t, c) / m.at(t, t);
            if (q != 0)
                for (int r = t; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, t);
            if (m.at(t, c) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; re-pivot this block

        // Ensure the pivot divides the rest of the block.
        bool divides = true;
        for (int r = t + 1; r < m.rows && divides; ++r)
            for (int c = t + 1; c < m.cols; ++c)
                if (m.at(r, c) % m.at(t, t) != 0) {
                    for (int cc = t; cc < m.cols; ++cc) m.at(t, cc) += m.at(r, cc);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        ++t;
    }
    res.rank = t;
    for (int i = 0; i < t; ++i) res.diagonal.push_back(int_abs(m.at(i, i)));
    return res;
}

int rank_gf2(const QMat& m) {
    IMat im = to_integer(m);
    std::vector<std::vector<bool>> rowsv(im.rows, std::vector<bool>(im.cols, false));
    for (int r = 0; r < im.rows; ++r)
        for (int c = 0; c < im.cols; ++c) rowsv[r][c] = (im.at(r, c) % 2) != 0;
    int rank = 0, row = 0;
    for (int col = 0; col < im.cols && row < im.rows; ++col) {
        int piv = -1;
        for (int r = row; r < im.rows; ++r)
            if (rowsv[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rowsv[piv], rowsv[row]);
        for (int r = 0; r < im.rows; ++r)
            if (r != row && rowsv[r][col])
                for (int c = col; c < im.cols; ++c) rowsv[r][c] = rowsv[r][c] ^ rowsv[row][c];
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace qmoore
