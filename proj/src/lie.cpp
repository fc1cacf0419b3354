#include "qmoore/lie.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qmoore {

void GradedGenerators::validate() const {
    if (names.size() != degrees.size()) throw InvariantViolation("generator table mismatch");
    if (names.empty()) throw InputError("need at least one generator");
    for (int d : degrees)
        if (d < 1) throw InputError("generator degrees must be >= 1");
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("generator names must be unique");
}

int GradedGenerators::min_degree() const {
    return *std::min_element(degrees.begin(), degrees.end());
}

std::string GradedGenerators::str() const {
    std::ostringstream os;
    for (int i = 0; i < count(); ++i) {
        if (i) os << ',';
        os << names[i] << ':' << degrees[i];
    }
    return os.str();
}

GradedGenerators GradedGenerators::parse(const std::string& text) {
    GradedGenerators g;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("expected name:degree in '" + item + "'");
        g.names.push_back(item.substr(0, colon));
        g.degrees.push_back(std::stoi(item.substr(colon + 1)));
    }
    g.validate();
    return g;
}

void TensorElement::add(const TensorWord& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TensorElement TensorElement::operator+(const TensorElement& rhs) const {
    TensorElement out = *this;
    for (const auto& [w, c] : rhs.terms_) out.add(w, c);
    return out;
}

TensorElement TensorElement::scaled(const Rat& c) const {
    TensorElement out;
    if (c == 0) return out;
    for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
    return out;
}

TensorElement TensorElement::concat(const TensorElement& rhs) const {
    TensorElement out;
    for (const auto& [w, a] : terms_)
        for (const auto& [v, b] : rhs.terms_) {
            TensorWord wv = w;
            wv.insert(wv.end(), v.begin(), v.end());
            out.add(wv, a * b);
        }
    return out;
}

LieExpr LieExpr::gen(int index) {
    LieExpr e;
    e.generator = index;
    return e;
}

LieExpr LieExpr::bracket(const LieExpr& a, const LieExpr& b) {
    LieExpr e;
    e.generator = -1;
    e.left = std::make_shared<LieExpr>(a);
    e.right = std::make_shared<LieExpr>(b);
    return e;
}

std::string LieExpr::str(const GradedGenerators& gens) const {
    if (is_leaf()) return gens.names[static_cast<size_t>(generator)];
    return "[" + left->str(gens) + "," + right->str(gens) + "]";
}

void LieElement::add(const BasisMono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LieElement LieElement::operator+(const LieElement& rhs) const {
    LieElement out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add(m, c);
    return out;
}

LieElement LieElement::operator-(const LieElement& rhs) const {
    return *this + rhs.scaled(Rat(-1));
}

LieElement LieElement::scaled(const Rat& c) const {
    LieElement out;
    if (c == 0) return out;
    for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
    return out;
}

LieContext::LieContext(GradedGenerators gens, int degree_cap)
    : gens_(std::move(gens)), cap_(degree_cap) {
    gens_.validate();
    if (cap_ < gens_.min_degree()) throw InputError("degree cap below the smallest generator");
}

void LieContext::check_cap(int degree) const {
    if (degree > cap_)
        throw CapsExhausted("insufficient cap: degree " + std::to_string(degree) + " > cap " +
                            std::to_string(cap_));
    if (degree < 0) throw InputError("negative degree");
}

int LieContext::word_degree(const TensorWord& w) const {
    int d = 0;
    for (int g : w) d += gens_.degrees[static_cast<size_t>(g)];
    return d;
}

int LieContext::mono_degree(const BasisMono& m) const {
    int d = word_degree(m.word);
    return m.square ? 2 * d : d;
}

int LieContext::expr_degree(const LieExpr& e) const {
    if (e.is_leaf()) return gens_.degrees[static_cast<size_t>(e.generator)];
    return expr_degree(*e.left) + expr_degree(*e.right);
}

int LieContext::element_degree(const LieElement& e) const {
    int d = -1;
    for (const auto& [m, c] : e.terms()) {
        int md = mono_degree(m);
        if (d >= 0 && md != d) throw InvariantViolation("inhomogeneous lie element");
        d = md;
    }
    return d;
}

const std::vector<TensorWord>& LieContext::words(int degree) const {
    check_cap(degree);
    auto it = words_.find(degree);
    if (it != words_.end()) return it->second;
    std::vector<TensorWord> list;
    if (degree == 0) {
        list.push_back({});
    } else {
        // words ending with each generator
        for (int g = 0; g < gens_.count(); ++g) {
            int rest = degree - gens_.degrees[static_cast<size_t>(g)];
            if (rest < 0) continue;
            for (const auto& w : words(rest)) {
                TensorWord v = w;
                v.push_back(g);
                list.push_back(std::move(v));
            }
        }
        std::sort(list.begin(), list.end());
    }
    auto& slot = words_[degree];
    slot = std::move(list);
    auto& idx = word_index_[degree];
    for (size_t i = 0; i < slot.size(); ++i) idx.emplace(slot[i], static_cast<int>(i));
    return slot;
}

namespace {

bool is_lyndon(const TensorWord& w) {
    const size_t n = w.size();
    if (n == 0) return false;
    for (size_t i = 1; i < n; ++i) {
        // w must be strictly smaller than every proper suffix
        TensorWord suffix(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (!(w < suffix)) return false;
    }
    return true;
}

// All Lyndon words of length <= max_len over k letters, lex order (Duval).
std::vector<TensorWord> lyndon_words(int k, int max_len) {
    std::vector<TensorWord> out;
    if (max_len <= 0 || k <= 0) return out;
    TensorWord w = {0};
    while (true) {
        out.push_back(w);
        TensorWord c;
        for (int i = 0; i < max_len; ++i) c.push_back(w[static_cast<size_t>(i) % w.size()]);
        while (!c.empty() && c.back() == k - 1) c.pop_back();
        if (c.empty()) break;
        ++c.back();
        w = std::move(c);
    }
    return out;
}

}  // namespace

const std::vector<BasisMono>& LieContext::basis(int degree) const {
    check_cap(degree);
    auto it = basis_.find(degree);
    if (it != basis_.end()) return it->second;
    std::vector<BasisMono> list;
    const int max_len = cap_ / gens_.min_degree();
    for (const auto& w : lyndon_words(gens_.count(), max_len)) {
        int d = word_degree(w);
        if (d == degree) list.push_back({w, false});
        // odd-degree Lyndon brackets contribute their self-bracket
        if (d % 2 == 1 && 2 * d == degree) list.push_back({w, true});
    }
    std::sort(list.begin(), list.end());
    return basis_[degree] = std::move(list);
}

int LieContext::dimension(int degree) const {
    return static_cast<int>(basis(degree).size());
}

int LieContext::witt_dimension(int degree) const {
    check_cap(degree);
    // dims of T(V) by degree
    std::vector<Int> t(static_cast<size_t>(cap_) + 1, Int(0));
    t[0] = 1;
    for (int n = 1; n <= cap_; ++n)
        for (int g = 0; g < gens_.count(); ++g) {
            int rest = n - gens_.degrees[static_cast<size_t>(g)];
            if (rest >= 0) t[static_cast<size_t>(n)] += t[static_cast<size_t>(rest)];
        }
    // peel the super-PBW product  prod_m (1-t^m)^{-even_m} (1+t^m)^{odd_m}
    std::vector<Int> series(static_cast<size_t>(cap_) + 1, Int(0));
    series[0] = 1;
    std::vector<Int> dims(static_cast<size_t>(cap_) + 1, Int(0));
    for (int m = 1; m <= degree; ++m) {
        Int l = t[static_cast<size_t>(m)] - series[static_cast<size_t>(m)];
        dims[static_cast<size_t>(m)] = l;
        if (l == 0) continue;
        std::vector<Int> next(series.size(), Int(0));
        if (m % 2 == 0) {
            // multiply by (1 - t^m)^{-l}: coefficients C(l+j-1, j) at t^{mj}
            for (size_t i = 0; i < series.size(); ++i) {
                if (series[i] == 0) continue;
                Int binom = 1;
                for (int j = 0; i + static_cast<size_t>(j) * m < next.size(); ++j) {
                    if (j > 0) binom = binom * (l + j - 1) / j;
                    next[i + static_cast<size_t>(j) * m] += series[i] * binom;
                }
            }
        } else {
            // multiply by (1 + t^m)^{l}: coefficients C(l, j) at t^{mj}
            for (size_t i = 0; i < series.size(); ++i) {
                if (series[i] == 0) continue;
                Int binom = 1;
                for (int j = 0; i + static_cast<size_t>(j) * m < next.size() && j <= l; ++j) {
                    if (j > 0) binom = binom * (l - j + 1) / j;
                    next[i + static_cast<size_t>(j) * m] += series[i] * binom;
                }
            }
        }
        series = std::move(next);
    }
    return static_cast<int>(dims[static_cast<size_t>(degree)]);
}

int LieContext::primitives_dimension(int degree) const {
    check_cap(degree);
    const auto& ws = words(degree);
    if (ws.empty()) return 0;
    // reduced diagonal: rows indexed by (left word, right word) pairs
    std::map<std::pair<TensorWord, TensorWord>, int> row_ids;
    std::vector<SparseVecQ> cols;
    for (const auto& w : ws) {
        std::map<std::pair<TensorWord, TensorWord>, Rat> entries;
        const size_t n = w.size();
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            TensorWord l, r;
            int sign = 1;
            int right_degree = 0;
            for (size_t i = 0; i < n; ++i) {
                int gd = gens_.degrees[static_cast<size_t>(w[i])];
                if (mask & (1u << i)) {
                    // letter goes left, hops over the right part collected so far
                    if ((gd % 2) && (right_degree % 2)) sign = -sign;
                    l.push_back(w[i]);
                } else {
                    r.push_back(w[i]);
                    right_degree += gd;
                }
            }
            auto key = std::make_pair(std::move(l), std::move(r));
            entries[key] += Rat(sign);
        }
        SparseVecQ col;
        for (const auto& [key, c] : entries) {
            if (c == 0) continue;
            auto [it, inserted] = row_ids.emplace(key, static_cast<int>(row_ids.size()));
            col.push(it->second, c);
        }
        col.sort_and_combine();
        cols.push_back(std::move(col));
    }
    return static_cast<int>(ws.size()) - sparse_rank(cols);
}

LieExpr LieContext::bracketing(const BasisMono& m) const {
    if (m.square) {
        LieExpr b = bracketing({m.word, false});
        return LieExpr::bracket(b, b);
    }
    if (m.word.size() == 1) return LieExpr::gen(m.word[0]);
    // standard factorization: the longest proper Lyndon suffix
    for (size_t i = 1; i < m.word.size(); ++i) {
        TensorWord suffix(m.word.begin() + static_cast<std::ptrdiff_t>(i), m.word.end());
        if (is_lyndon(suffix)) {
            TensorWord prefix(m.word.begin(), m.word.begin() + static_cast<std::ptrdiff_t>(i));
            return LieExpr::bracket(bracketing({prefix, false}), bracketing({suffix, false}));
        }
    }
    throw InvariantViolation("basis word without standard factorization");
}

TensorElement LieContext::expand_expr(const LieExpr& e) const {
    if (e.is_leaf()) {
        TensorElement t;
        t.add({e.generator}, Rat(1));
        return t;
    }
    TensorElement a = expand_expr(*e.left);
    TensorElement b = expand_expr(*e.right);
    int da = expr_degree(*e.left), db = expr_degree(*e.right);
    Rat sign = (da % 2 && db % 2) ? Rat(1) : Rat(-1);
    // [a,b] = ab - (-1)^{|a||b|} ba
    return a.concat(b) + b.concat(a).scaled(sign);
}

TensorElement LieContext::expand(const BasisMono& m) const {
    return expand_expr(bracketing(m));
}

TensorElement LieContext::embed_in_tensor(const LieElement& e) const {
    TensorElement out;
    for (const auto& [m, c] : e.terms()) out = out + expand(m).scaled(c);
    return out;
}

SparseVecQ LieContext::tensor_to_vec(const TensorElement& t, int degree) const {
    words(degree);  // ensure index
    const auto& idx = word_index_.at(degree);
    SparseVecQ v;
    for (const auto& [w, c] : t.terms()) {
        auto it = idx.find(w);
        if (it == idx.end()) throw InvariantViolation("tensor term outside the graded piece");
        v.push(it->second, c);
    }
    v.sort_and_combine();
    return v;
}

const SparseEliminator& LieContext::solver(int degree) const {
    auto it = solver_.find(degree);
    if (it != solver_.end()) return it->second;
    SparseEliminator el;
    const auto& b = basis(degree);
    for (size_t i = 0; i < b.size(); ++i) {
        SparseVecQ tag;
        tag.push(static_cast<int>(i), Rat(1));
        SparseVecQ dead;
        if (!el.add_tracked(tensor_to_vec(expand(b[i]), degree), std::move(tag), &dead))
            throw InvariantViolation("lyndon basis expansions are dependent");
    }
    return solver_[degree] = std::move(el);
}

LieElement LieContext::from_tensor(const TensorElement& t) const {
    LieElement out;
    if (t.is_zero()) return out;
    // split by degree
    std::map<int, TensorElement> pieces;
    for (const auto& [w, c] : t.terms()) pieces[word_degree(w)].add(w, c);
    for (const auto& [degree, piece] : pieces) {
        const auto& b = basis(degree);
        SparseVecQ combo;
        if (!solver(degree).reduce_only(tensor_to_vec(piece, degree), &combo))
            throw InvariantViolation("tensor element is not in the Lie subspace");
        for (const auto& [i, c] : combo.e) out.add(b[static_cast<size_t>(i)], -c);
    }
    return out;
}

LieElement LieContext::normalize(const LieExprSum& sum) const {
    TensorElement t;
    for (const auto& [c, e] : sum) {
        check_cap(expr_degree(e));
        t = t + expand_expr(e).scaled(c);
    }
    return from_tensor(t);
}

LieElement LieContext::bracket(const LieElement& a, const LieElement& b) const {
    TensorElement ta = embed_in_tensor(a);
    TensorElement tb = embed_in_tensor(b);
    // graded commutator computed per homogeneous term
    TensorElement out;
    for (const auto& [w, c] : ta.terms()) {
        int dw = word_degree(w);
        for (const auto& [v, e] : tb.terms()) {
            int dv = word_degree(v);
            check_cap(dw + dv);
            TensorWord wv = w;
            wv.insert(wv.end(), v.begin(), v.end());
            out.add(wv, c * e);
            TensorWord vw = v;
            vw.insert(vw.end(), w.begin(), w.end());
            Rat sign = (dw % 2 && dv % 2) ? Rat(1) : Rat(-1);
            out.add(vw, c * e * sign);
        }
    }
    return from_tensor(out);
}

std::string LieContext::str(const LieElement& e) const {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        if (!first) os << " + ";
        os << c << '*' << bracketing(m).str(gens_);
        first = false;
    }
    return os.str();
}

LieElement whitehead_sign(int k, const LieElement& e) {
    return (k % 2 == 0) ? e : e.scaled(Rat(-1));
}

void DGL::validate() const {
    const auto& gens = ctx->gens();
    if (static_cast<int>(differential.size()) != gens.count())
        throw InvariantViolation("differential table size mismatch");
    for (int g = 0; g < gens.count(); ++g) {
        const auto& dg = differential[static_cast<size_t>(g)];
        if (dg.is_zero()) continue;
        int target = ctx->element_degree(dg);
        if (target != gens.degrees[static_cast<size_t>(g)] - 1)
            throw InvariantViolation("differential is not of degree -1");
        // d is a derivation, so dd = 0 on generators implies dd = 0
        if (!d(dg).is_zero()) throw InvariantViolation("dd != 0 on generator " + gens.names[g]);
    }
}

LieElement DGL::d_mono(const BasisMono& m) const {
    // Leibniz over the bracketing tree
    struct Rec {
        const DGL& dgl;
        LieElement apply(const LieExpr& e) const {
            if (e.is_leaf()) return dgl.differential[static_cast<size_t>(e.generator)];
            const LieContext& ctx = *dgl.ctx;
            LieElement a = ctx.normalize(*e.left);
            LieElement b = ctx.normalize(*e.right);
            LieElement da = apply(*e.left);
            LieElement db = apply(*e.right);
            LieElement out = ctx.bracket(da, b);
            int deg_a = ctx.expr_degree(*e.left);
            LieElement second = ctx.bracket(a, db);
            return out + (deg_a % 2 == 0 ? second : second.scaled(Rat(-1)));
        }
    };
    return Rec{*this}.apply(ctx->bracketing(m));
}

LieElement DGL::d(const LieElement& e) const {
    LieElement out;
    for (const auto& [m, c] : e.terms()) out = out + d_mono(m).scaled(c);
    return out;
}

int DGL::homology_dimension(int degree) const {
    if (degree + 1 > ctx->cap())
        throw CapsExhausted("insufficient cap: homology at degree " + std::to_string(degree) +
                            " needs boundaries from one degree up");
    auto matrix_of_d = [&](int n) {
        const auto& src = ctx->basis(n);
        std::vector<SparseVecQ> cols;
        if (n - 1 < 0) return cols;
        const auto& dst = ctx->basis(n - 1);
        std::map<BasisMono, int> dst_index;
        for (size_t i = 0; i < dst.size(); ++i) dst_index.emplace(dst[i], static_cast<int>(i));
        for (const auto& m : src) {
            SparseVecQ col;
            LieElement dm = d_mono(m);
            for (const auto& [bm, c] : dm.terms()) col.push(dst_index.at(bm), c);
            col.sort_and_combine();
            cols.push_back(std::move(col));
        }
        return cols;
    };
    int dim_n = ctx->dimension(degree);
    int rank_dn = degree >= 1 ? sparse_rank(matrix_of_d(degree)) : 0;
    int rank_dn1 = sparse_rank(matrix_of_d(degree + 1));
    return dim_n - rank_dn - rank_dn1;
}

ScalarComplex DGL::hurewicz_complex() const {
    const auto& gens = ctx->gens();
    int lo = gens.degrees[0], hi = gens.degrees[0];
    for (int d : gens.degrees) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    std::map<int, std::vector<int>> by_degree;  // degree -> generator indices
    for (int g = 0; g < gens.count(); ++g) by_degree[gens.degrees[static_cast<size_t>(g)]].push_back(g);
    ScalarComplex out;
    out.lo = lo;
    out.hi = hi;
    for (int n = lo; n <= hi; ++n)
        out.ranks.push_back(static_cast<int>(by_degree.count(n) ? by_degree[n].size() : 0));
    for (int n = lo + 1; n <= hi; ++n) {
        if (!by_degree.count(n) || !by_degree.count(n - 1)) continue;
        const auto& src = by_degree[n];
        const auto& dst = by_degree[n - 1];
        QMat m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (size_t j = 0; j < src.size(); ++j)
            for (const auto& [bm, c] : differential[static_cast<size_t>(src[j])].terms()) {
                if (bm.word.size() != 1 || bm.square) continue;  // brackets die
                auto it = std::find(dst.begin(), dst.end(), bm.word[0]);
                if (it == dst.end()) throw InvariantViolation("linear part outside generators");
                m.at(static_cast<int>(it - dst.begin()), static_cast<int>(j)) += c;
            }
        if (!m.is_zero()) out.boundary.emplace(n, std::move(m));
    }
    return out;
}

bool DGL::hurewicz_chain_map_holds() const {
    // h kills every monomial with a bracket; compare h(d m) with d_cell(h m)
    auto h = [&](const LieElement& e) {
        std::map<int, Rat> lin;
        for (const auto& [m, c] : e.terms())
            if (m.word.size() == 1 && !m.square) lin[m.word[0]] += c;
        return lin;
    };
    ScalarComplex cell = hurewicz_complex();
    const auto& gens = ctx->gens();
    for (int n = gens.min_degree(); n <= ctx->cap(); ++n) {
        for (const auto& m : ctx->basis(n)) {
            auto lhs = h(d_mono(m));
            std::map<int, Rat> rhs;
            if (m.word.size() == 1 && !m.square) {
                // d_cell on the generator
                for (const auto& [bm, c] : differential[static_cast<size_t>(m.word[0])].terms())
                    if (bm.word.size() == 1 && !bm.square) rhs[bm.word[0]] += c;
            }
            for (auto& [k, v] : lhs)
                if (v != 0 && rhs[k] != v) return false;
            for (auto& [k, v] : rhs)
                if (v != 0 && lhs[k] != v) return false;
        }
    }
    return true;
}

DGL wedge_of_spheres(int count, int sphere_dim, int cap) {
    if (sphere_dim < 2) throw InputError("wedge summands must be simply connected spheres");
    GradedGenerators gens;
    for (int i = 0; i < count; ++i) {
        gens.names.push_back("x" + std::to_string(i + 1));
        gens.degrees.push_back(sphere_dim - 1);
    }
    DGL dgl;
    dgl.ctx = std::make_shared<LieContext>(gens, cap);
    dgl.differential.assign(static_cast<size_t>(count), LieElement{});
    return dgl;
}

}  // namespace qmoore
