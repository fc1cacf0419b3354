#include "qmoore/sparse.hpp"

#include <algorithm>

namespace qmoore {

void SparseVecQ::sort_and_combine() {
    std::sort(e.begin(), e.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rat>> out;
    for (auto& [r, c] : e) {
        if (!out.empty() && out.back().first == r)
            out.back().second += c;
        else
            out.emplace_back(r, std::move(c));
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    e = std::move(out);
}

SparseVecQ axpy(const SparseVecQ& a, const Rat& f, const SparseVecQ& b) {
    SparseVecQ out;
    out.e.reserve(a.e.size() + b.e.size());
    size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) {
            out.e.push_back(a.e[i++]);
        } else if (i == a.e.size() || b.e[j].first < a.e[i].first) {
            Rat c = f * b.e[j].second;
            if (c != 0) out.e.emplace_back(b.e[j].first, std::move(c));
            ++j;
        } else {
            Rat c = a.e[i].second + f * b.e[j].second;
            if (c != 0) out.e.emplace_back(a.e[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

bool SparseEliminator::add(SparseVecQ col) {
    SparseVecQ dummy;
    return add_tracked(std::move(col), SparseVecQ{}, &dummy);
}

bool SparseEliminator::add_tracked(SparseVecQ col, SparseVecQ tag, SparseVecQ* combination) {
    while (!col.empty()) {
        auto it = pivots_.find(col.low());
        if (it == pivots_.end()) break;
        Rat f = -col.low_coeff() / it->second.first.low_coeff();
        col = axpy(col, f, it->second.first);
        tag = axpy(tag, f, it->second.second);
    }
    if (col.empty()) {
        *combination = std::move(tag);
        return false;
    }
    const int low = col.low();
    pivots_.emplace(low, std::make_pair(std::move(col), std::move(tag)));
    return true;
}

bool SparseEliminator::reduce_only(SparseVecQ col, SparseVecQ* combination) const {
    SparseVecQ tag;
    while (!col.empty()) {
        auto it = pivots_.find(col.low());
        if (it == pivots_.end()) break;
        Rat f = -col.low_coeff() / it->second.first.low_coeff();
        col = axpy(col, f, it->second.first);
        tag = axpy(tag, f, it->second.second);
    }
    if (!col.empty()) return false;
    *combination = std::move(tag);
    return true;
}

SparseVecQ SparseEliminator::reduce_partial(SparseVecQ col, SparseVecQ* tag_out) const {
    SparseVecQ tag;
    while (true) {
        // largest row of col that some pivot can clear
        const std::pair<SparseVecQ, SparseVecQ>* hit = nullptr;
        Rat coeff;
        for (auto it = col.e.rbegin(); it != col.e.rend(); ++it) {
            auto p = pivots_.find(it->first);
            if (p != pivots_.end()) {
                hit = &p->second;
                coeff = it->second;
                break;
            }
        }
        if (!hit) break;
        Rat f = -coeff / hit->first.low_coeff();
        col = axpy(col, f, hit->first);
        tag = axpy(tag, f, hit->second);
    }
    *tag_out = std::move(tag);
    return col;
}

int sparse_rank(const std::vector<SparseVecQ>& cols) {
    SparseEliminator el;
    for (const auto& c : cols) el.add(c);
    return el.rank();
}

std::vector<SparseVecQ> sparse_kernel(const std::vector<SparseVecQ>& cols) {
    SparseEliminator el;
    std::vector<SparseVecQ> kernel;
    for (size_t j = 0; j < cols.size(); ++j) {
        SparseVecQ tag;
        tag.push(static_cast<int>(j), Rat(1));
        SparseVecQ combo;
        if (!el.add_tracked(cols[j], std::move(tag), &combo)) kernel.push_back(std::move(combo));
    }
    return kernel;
}

int sparse_rank_gain(const std::vector<SparseVecQ>& b_cols, const std::vector<SparseVecQ>& extra) {
    SparseEliminator el;
    for (const auto& c : b_cols) el.add(c);
    int base = el.rank();
    for (const auto& c : extra) el.add(c);
    return el.rank() - base;
}

}  // namespace qmoore
