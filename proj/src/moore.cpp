#include "qmoore/moore.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

int LGMono::gen_degree() const {
    int d = 0;
    for (const auto& k : word) d += k.gen_degree();
    return square ? 2 * d : d;
}

int LGMono::support_radius() const {
    int r = 0;
    for (const auto& k : word) r = std::max(r, k.g.length());
    return r;
}

bool LGMono::operator<(const LGMono& rhs) const {
    if (word != rhs.word) return word < rhs.word;
    return square < rhs.square;
}

void LGElement::add(const LGMono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LGElement LGElement::operator+(const LGElement& rhs) const {
    LGElement out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add(m, c);
    return out;
}

LGElement LGElement::operator-(const LGElement& rhs) const {
    return *this + rhs.scaled(Rat(-1));
}

LGElement LGElement::scaled(const Rat& c) const {
    LGElement out;
    if (c == 0) return out;
    for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
    return out;
}

int LGElement::max_bracket_length() const {
    int len = 0;
    for (const auto& [m, c] : terms_) len = std::max(len, m.bracket_length());
    return len;
}

int LGElement::support_radius() const {
    int r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.support_radius());
    return r;
}

Int LGElement::denominator_lcm() const {
    Int l = 1;
    for (const auto& [m, c] : terms_) l = int_lcm(l, rat_den(c));
    return l;
}

LGExpr LGExpr::gen(const GenKey& k) {
    LGExpr e;
    e.leaf = k;
    return e;
}

LGExpr LGExpr::bracket(const LGExpr& a, const LGExpr& b) {
    LGExpr e;
    e.left = std::make_shared<LGExpr>(a);
    e.right = std::make_shared<LGExpr>(b);
    return e;
}

int LGExpr::gen_degree() const {
    if (is_leaf()) return leaf->gen_degree();
    return left->gen_degree() + right->gen_degree();
}

namespace {

void collect_alphabet(const LGExpr& e, std::vector<GenKey>& out) {
    if (e.is_leaf()) {
        out.push_back(*e.leaf);
        return;
    }
    collect_alphabet(*e.left, out);
    collect_alphabet(*e.right, out);
}

LieExpr to_local(const LGExpr& e, const std::vector<GenKey>& alphabet) {
    if (e.is_leaf()) {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), *e.leaf);
        return LieExpr::gen(static_cast<int>(it - alphabet.begin()));
    }
    return LieExpr::bracket(to_local(*e.left, alphabet), to_local(*e.right, alphabet));
}

bool genkey_word_is_lyndon(const std::vector<GenKey>& w) {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        std::vector<GenKey> suffix(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (!(w < suffix)) return false;
    }
    return true;
}

}  // namespace

LGElement lg_normalize(const LGExprSum& sum) {
    LGElement out;
    if (sum.empty()) return out;
    std::vector<GenKey> alphabet;
    for (const auto& [c, e] : sum) collect_alphabet(e, alphabet);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    GradedGenerators gens;
    int cap = 1;
    for (size_t i = 0; i < alphabet.size(); ++i) {
        gens.names.push_back("g" + std::to_string(i));
        int d = alphabet[i].gen_degree();
        if (d < 1) throw InvariantViolation("cells of degree <= 1 cannot carry Lie generators");
        gens.degrees.push_back(d);
    }
    for (const auto& [c, e] : sum) cap = std::max(cap, e.gen_degree());
    LieContext ctx(gens, cap);
    LieExprSum local;
    for (const auto& [c, e] : sum) local.emplace_back(c, to_local(e, alphabet));
    LieElement normalized = ctx.normalize(local);
    for (const auto& [m, c] : normalized.terms()) {
        LGMono mono;
        mono.square = m.square;
        for (int i : m.word) mono.word.push_back(alphabet[static_cast<size_t>(i)]);
        out.add(mono, c);
    }
    return out;
}

LGElement lg_normalize(const LGExpr& e) { return lg_normalize(LGExprSum{{Rat(1), e}}); }

LGExpr lg_bracketing(const LGMono& m) {
    if (m.square) {
        LGExpr b = lg_bracketing({m.word, false});
        return LGExpr::bracket(b, b);
    }
    if (m.word.size() == 1) return LGExpr::gen(m.word[0]);
    for (size_t i = 1; i < m.word.size(); ++i) {
        std::vector<GenKey> suffix(m.word.begin() + static_cast<std::ptrdiff_t>(i), m.word.end());
        if (genkey_word_is_lyndon(suffix)) {
            std::vector<GenKey> prefix(m.word.begin(),
                                       m.word.begin() + static_cast<std::ptrdiff_t>(i));
            return LGExpr::bracket(lg_bracketing({prefix, false}), lg_bracketing({suffix, false}));
        }
    }
    throw InvariantViolation("monomial word without standard factorization");
}

LGElement lg_bracket(const LGElement& a, const LGElement& b) {
    LGExprSum sum;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            sum.emplace_back(ca * cb, LGExpr::bracket(lg_bracketing(ma), lg_bracketing(mb)));
    return lg_normalize(sum);
}

namespace {

LGExpr translate_expr(const LGExpr& e, const GroupElement& gamma) {
    if (e.is_leaf()) {
        GenKey k = *e.leaf;
        k.g = gamma.mul(k.g);
        return LGExpr::gen(k);
    }
    return LGExpr::bracket(translate_expr(*e.left, gamma), translate_expr(*e.right, gamma));
}

}  // namespace

LGElement lg_translate(const LGElement& e, const GroupElement& gamma) {
    LGExprSum sum;
    for (const auto& [m, c] : e.terms()) sum.emplace_back(c, translate_expr(lg_bracketing(m), gamma));
    return lg_normalize(sum);
}

namespace {

std::string genkey_str(const GenKey& k, const GroupSpec& spec) {
    std::ostringstream os;
    os << 'c' << k.cell_degree << '_' << k.cell << '@' << k.g.str(spec);
    return os.str();
}

std::string expr_str(const LGExpr& e, const GroupSpec& spec) {
    if (e.is_leaf()) return genkey_str(*e.leaf, spec);
    return "[" + expr_str(*e.left, spec) + "," + expr_str(*e.right, spec) + "]";
}

}  // namespace

std::string lg_mono_str(const LGMono& m, const GroupSpec& spec) {
    return expr_str(lg_bracketing(m), spec);
}

std::string lg_str(const LGElement& e, const GroupSpec& spec) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        if (!first) os << " + ";
        os << c << '*' << lg_mono_str(m, spec);
        first = false;
    }
    return os.str();
}

namespace {

struct ExprParser {
    const GroupSpec& spec;
    const std::string& text;
    size_t pos = 0;

    LGExpr parse() {
        LGExpr e = parse_node();
        if (pos != text.size()) throw InputError("trailing characters in '" + text + "'");
        return e;
    }
    LGExpr parse_node() {
        if (pos >= text.size()) throw InputError("unexpected end of monomial '" + text + "'");
        if (text[pos] == '[') {
            ++pos;
            LGExpr a = parse_node();
            expect(',');
            LGExpr b = parse_node();
            expect(']');
            return LGExpr::bracket(a, b);
        }
        return LGExpr::gen(parse_genkey());
    }
    void expect(char c) {
        if (pos >= text.size() || text[pos] != c)
            throw InputError("expected '" + std::string(1, c) + "' in '" + text + "'");
        ++pos;
    }
    GenKey parse_genkey() {
        expect('c');
        size_t us = text.find('_', pos);
        size_t at = text.find('@', pos);
        if (us == std::string::npos || at == std::string::npos || at < us)
            throw InputError("bad generator key in '" + text + "'");
        GenKey k;
        k.cell_degree = std::stoi(text.substr(pos, us - pos));
        k.cell = std::stoi(text.substr(us + 1, at - us - 1));
        size_t end = at + 1;
        while (end < text.size() && text[end] != ',' && text[end] != ']') ++end;
        k.g = GroupElement::parse(spec, text.substr(at + 1, end - at - 1));
        pos = end;
        return k;
    }
};

}  // namespace

LGElement lg_parse(const GroupSpec& spec, const std::string& text) {
    if (text == "0") return LGElement{};
    LGExprSum sum;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(" + ", pos);
        std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
        size_t star = term.find('*');
        if (star == std::string::npos) throw InputError("bad monomial term '" + term + "'");
        Rat c;
        try {
            c = Rat(term.substr(0, star));
        } catch (const std::exception&) {
            throw InputError("bad coefficient in '" + term + "'");
        }
        std::string mono = term.substr(star + 1);
        ExprParser parser{spec, mono, 0};
        sum.emplace_back(c, parser.parse());
        pos = next == std::string::npos ? text.size() : next + 3;
    }
    return lg_normalize(sum);
}

LGElement EquivariantDGLModel::d(const LGElement& e) const {
    LGElement out;
    for (const auto& [m, c] : e.terms()) {
        // Leibniz over the standard bracketing of the monomial
        struct Rec {
            const EquivariantDGLModel& model;
            LGElement apply(const LGExpr& expr) const {
                if (expr.is_leaf()) {
                    const GenKey& k = *expr.leaf;
                    auto it = model.d_orbit.find(k.cell_degree);
                    if (it == model.d_orbit.end())
                        throw InvariantViolation("differential of an unknown cell degree");
                    const LGElement& base = it->second[static_cast<size_t>(k.cell)];
                    return k.g.is_identity() ? base : lg_translate(base, k.g);
                }
                LGElement a = lg_normalize(*expr.left);
                LGElement b = lg_normalize(*expr.right);
                LGElement da = apply(*expr.left);
                LGElement db = apply(*expr.right);
                LGElement out_local = lg_bracket(da, b);
                LGElement second = lg_bracket(a, db);
                int deg_a = expr.left->gen_degree();
                return out_local + (deg_a % 2 == 0 ? second : second.scaled(Rat(-1)));
            }
        };
        out = out + Rec{*this}.apply(lg_bracketing(m)).scaled(c);
    }
    return out;
}

LGElement EquivariantDGLModel::s_of_generator(int degree, int cell, const GroupElement& g) const {
    auto it = s_orbit.find(degree);
    if (it == s_orbit.end()) throw InvariantViolation("section of an unknown cell degree");
    const LGElement& base = it->second[static_cast<size_t>(cell)];
    return g.is_identity() ? base : lg_translate(base, g);
}

LGElement EquivariantDGLModel::s_of_column(int degree, const std::vector<RingElement>& column) const {
    if (static_cast<int>(column.size()) != rank.at(degree))
        throw InvariantViolation("column height mismatch");
    LGElement out;
    for (int i = 0; i < static_cast<int>(column.size()); ++i)
        for (const auto& [g, c] : column[static_cast<size_t>(i)].terms())
            out = out + s_of_generator(degree, i, g).scaled(c);
    return out;
}

std::vector<RingElement> EquivariantDGLModel::bracket_free_part(int degree_of_cells,
                                                                const LGElement& e) const {
    std::vector<RingElement> column(static_cast<size_t>(rank.at(degree_of_cells)),
                                    RingElement::zero(spec));
    for (const auto& [m, c] : e.terms()) {
        if (m.bracket_length() != 1) continue;
        const GenKey& k = m.word[0];
        if (k.cell_degree != degree_of_cells)
            throw InvariantViolation("bracket-free part hit a foreign cell degree");
        column[static_cast<size_t>(k.cell)] =
            column[static_cast<size_t>(k.cell)] + RingElement::monomial(spec, k.g, c);
    }
    return column;
}

RingMatrix EquivariantDGLModel::bracket_free_boundary(int degree) const {
    RingMatrix out(spec, rank.at(degree - 1), rank.at(degree));
    const auto& ds = d_orbit.at(degree);
    for (int j = 0; j < static_cast<int>(ds.size()); ++j) {
        auto column = bracket_free_part(degree - 1, ds[static_cast<size_t>(j)]);
        for (int i = 0; i < static_cast<int>(column.size()); ++i)
            out.set(i, j, column[static_cast<size_t>(i)]);
    }
    return out;
}

FreeComplex EquivariantDGLModel::bracket_free_complex() const {
    FreeComplex out;
    out.spec = spec;
    out.lo = r;
    out.hi = top;
    for (int n = r; n <= top; ++n) out.ranks.push_back(rank.at(n));
    for (int n = r + 1; n <= top; ++n) {
        RingMatrix b = bracket_free_boundary(n);
        if (!b.is_zero()) out.boundary.emplace(n, std::move(b));
    }
    return out;
}

EquivariantDGLModel init_wedge(const GroupSpec& spec, int r, int rank, ModelCaps caps) {
    if (r < 2) throw InputError("the realization needs r >= 2 (simply connected cells)");
    if (rank < 1) throw InputError("wedge needs at least one cell");
    EquivariantDGLModel model;
    model.spec = spec;
    model.r = r;
    model.top = r;
    model.caps = caps;
    model.rank[r] = rank;
    model.scale[r] = 1;
    auto& d = model.d_orbit[r];
    auto& s = model.s_orbit[r];
    GroupElement e = GroupElement::identity(spec);
    for (int i = 0; i < rank; ++i) {
        d.emplace_back();  // wedge: zero differential
        LGElement inc;
        inc.add(LGMono{{GenKey{r, i, e}}, false}, Rat(1));
        s.push_back(std::move(inc));
    }
    return model;
}

namespace {

LGElement column_as_element(int degree, const std::vector<RingElement>& column) {
    LGElement out;
    for (int i = 0; i < static_cast<int>(column.size()); ++i)
        for (const auto& [g, c] : column[static_cast<size_t>(i)].terms())
            out.add(LGMono{{GenKey{degree, i, g}}, false}, c);
    return out;
}

std::vector<RingElement> matrix_column(const RingMatrix& m, int j) {
    std::vector<RingElement> col(static_cast<size_t>(m.rows()),
                                 RingElement::zero(m.spec(), m.kind()));
    for (const auto& [rc, x] : m.entries())
        if (rc.second == j) col[static_cast<size_t>(rc.first)] = x;
    return col;
}

// Window basis monomials of the given Lie degree with 2 <= length <= cap over
// the translated-cell alphabet.
std::vector<LGMono> window_monomials(const std::vector<GenKey>& alphabet, int degree,
                                     int length_cap, long long budget) {
    std::vector<LGMono> out;
    // length 2: pairs k1 < k2, plus squares of odd-degree letters
    for (size_t i = 0; i < alphabet.size(); ++i) {
        int di = alphabet[i].gen_degree();
        if (2 * di == degree && di % 2 == 1) out.push_back({{alphabet[i]}, true});
        for (size_t j = i + 1; j < alphabet.size(); ++j) {
            if (di + alphabet[j].gen_degree() != degree) continue;
            out.push_back({{alphabet[i], alphabet[j]}, false});
        }
        if (static_cast<long long>(out.size()) > budget)
            throw CapsExhausted("bracket window exceeds the solver budget");
    }
    // longer monomials: Lyndon words over the alphabet, grown degree-first
    for (int len = 3; len <= length_cap; ++len) {
        std::vector<GenKey> word;
        struct Grow {
            const std::vector<GenKey>& alphabet;
            int len;
            long long budget;
            std::vector<LGMono>& out;
            std::vector<GenKey>& word;
            void rec(int remaining_degree) {
                if (static_cast<int>(word.size()) == len) {
                    if (remaining_degree == 0 && genkey_word_is_lyndon(word))
                        out.push_back({word, false});
                    return;
                }
                int slots = len - static_cast<int>(word.size());
                for (const auto& k : alphabet) {
                    int d = k.gen_degree();
                    if (d > remaining_degree - (slots - 1)) continue;
                    word.push_back(k);
                    rec(remaining_degree - d);
                    word.pop_back();
                    if (static_cast<long long>(out.size()) > budget)
                        throw CapsExhausted("bracket window exceeds the solver budget");
                }
            }
        };
        Grow{alphabet, len, budget, out, word}.rec(degree);
    }
    // squares of multi-letter odd Lyndon words up to the cap
    for (int len = 2; 2 * len <= length_cap; ++len) {
        std::vector<GenKey> word;
        struct GrowSq {
            const std::vector<GenKey>& alphabet;
            int degree;
            int len;
            std::vector<LGMono>& out;
            std::vector<GenKey>& word;
            void rec(int remaining2) {
                if (static_cast<int>(word.size()) == len) {
                    if (remaining2 == 0 && genkey_word_is_lyndon(word)) {
                        int d = 0;
                        for (const auto& k : word) d += k.gen_degree();
                        if (d % 2 == 1) out.push_back({word, true});
                    }
                    return;
                }
                for (const auto& k : alphabet) {
                    if (k.gen_degree() > remaining2) continue;
                    word.push_back(k);
                    rec(remaining2 - k.gen_degree());
                    word.pop_back();
                }
            }
        };
        if (degree % 2 == 0) GrowSq{alphabet, degree, len, out, word}.rec(degree / 2);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

AttachReport attach_step(EquivariantDGLModel& model, const RingMatrix& f) {
    const int n = model.top;
    const int n1 = n + 1;
    if (f.spec() != model.spec) throw TypeError("attachment matrix over the wrong group");
    if (f.rows() != model.rank.at(n))
        throw InputError("attachment matrix height does not match the top degree");
    if (f.cols() < 1) throw InputError("attachment needs at least one cell");

    // f must land in cycles of the bracket-free part
    if (n > model.r) {
        RingMatrix dF = model.bracket_free_boundary(n);
        if (!dF.compose(f).is_zero())
            throw InputError("attachment matrix does not land in cycles of the bracket-free part");
    }

    AttachReport report;
    report.degree = n1;
    report.cells = f.cols();
    report.support_radius_used = model.caps.support_radius;

    // t_j = s(f(x_j)) and its bracket part
    std::vector<LGElement> t(static_cast<size_t>(f.cols()));
    std::vector<LGElement> bracket_part(static_cast<size_t>(f.cols()));
    for (int j = 0; j < f.cols(); ++j) {
        auto col = matrix_column(f, j);
        t[static_cast<size_t>(j)] = model.s_of_column(n, col);
        // h(s(f x)) must reproduce f x exactly
        auto h = model.bracket_free_part(n, t[static_cast<size_t>(j)]);
        for (int i = 0; i < f.rows(); ++i)
            if (!(h[static_cast<size_t>(i)] == col[static_cast<size_t>(i)].to_kind(ScalarKind::rational)))
                throw InvariantViolation("h(s(f x)) != f x; section state corrupt");
        bracket_part[static_cast<size_t>(j)] =
            t[static_cast<size_t>(j)] - column_as_element(n, col);
        if (bracket_part[static_cast<size_t>(j)].max_bracket_length() > model.caps.bracket_cap)
            throw CapsExhausted("section brackets exceed the bracket-length cap");
    }

    // window monomials of cell degree n+1 and the span of their boundaries;
    // nothing to solve when no bracket corrections appear
    bool any_bracket = false;
    for (const auto& bp : bracket_part)
        if (!bp.is_zero()) any_bracket = true;
    std::vector<GenKey> alphabet;
    if (any_bracket) {
        auto b = ball(model.spec, model.caps.support_radius);
        for (int deg = model.r; deg <= n; ++deg)
            for (int cell = 0; cell < model.rank.at(deg); ++cell)
                for (const auto& g : b) alphabet.push_back(GenKey{deg, cell, g});
        std::sort(alphabet.begin(), alphabet.end());
    }
    auto window = any_bracket ? window_monomials(alphabet, n1 - 1, model.caps.bracket_cap,
                                                 model.caps.solver_budget)
                              : std::vector<LGMono>{};
    report.solver_window_monomials = static_cast<int>(window.size());

    // monomial ids ordered by the tie-break (length, support radius, order);
    // low-pivot elimination then leaves canonical minimal residues
    std::map<LGMono, int> mono_id;
    std::vector<LGMono> id_to_mono;
    std::vector<LGElement> dw(window.size());
    {
        std::vector<LGMono> all;
        for (size_t w = 0; w < window.size(); ++w) {
            LGElement el;
            el.add(window[w], Rat(1));
            dw[w] = model.d(el);
            for (const auto& [m, c] : dw[w].terms()) all.push_back(m);
        }
        for (const auto& bp : bracket_part)
            for (const auto& [m, c] : bp.terms()) all.push_back(m);
        auto tie_break = [](const LGMono& a, const LGMono& b) {
            if (a.bracket_length() != b.bracket_length())
                return a.bracket_length() < b.bracket_length();
            if (a.support_radius() != b.support_radius())
                return a.support_radius() < b.support_radius();
            return a < b;
        };
        std::sort(all.begin(), all.end(), tie_break);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        for (size_t i = 0; i < all.size(); ++i) mono_id.emplace(all[i], static_cast<int>(i));
        id_to_mono = std::move(all);
    }
    auto to_vec = [&](const LGElement& e) {
        SparseVecQ v;
        for (const auto& [m, c] : e.terms()) v.push(mono_id.at(m), c);
        v.sort_and_combine();
        return v;
    };

    SparseEliminator span;
    for (size_t w = 0; w < window.size(); ++w) {
        SparseVecQ tag;
        tag.push(static_cast<int>(w), Rat(1));
        SparseVecQ dead;
        span.add_tracked(to_vec(dw[w]), std::move(tag), &dead);
    }
    report.solver_rank = span.rank();

    // reduce each bracket part; the witness tags give phi
    std::vector<LGElement> b_min(static_cast<size_t>(f.cols()));
    std::vector<LGElement> witness(static_cast<size_t>(f.cols()));
    for (int j = 0; j < f.cols(); ++j) {
        SparseVecQ tag;
        SparseVecQ residual = span.reduce_partial(to_vec(bracket_part[static_cast<size_t>(j)]), &tag);
        LGElement bm;
        for (const auto& [id, c] : residual.e) bm.add(id_to_mono[static_cast<size_t>(id)], c);
        b_min[static_cast<size_t>(j)] = bm;
        // residual = B + sum f_k piv; witness w with d(w) = B - B_min is -tag
        LGElement wj;
        for (const auto& [wi, c] : tag.e) wj.add(window[static_cast<size_t>(wi)], -c);
        witness[static_cast<size_t>(j)] = wj;
        if (!wj.is_zero()) report.phi_nonzero = true;
    }

    // integrality scale: denominators of s(f x) and of the solved phi
    Int scale = 1;
    for (int j = 0; j < f.cols(); ++j) {
        scale = int_lcm(scale, t[static_cast<size_t>(j)].denominator_lcm());
        scale = int_lcm(scale, witness[static_cast<size_t>(j)].denominator_lcm());
        scale = int_lcm(scale, b_min[static_cast<size_t>(j)].denominator_lcm());
    }
    if (scale > model.caps.max_scale)
        throw CapsExhausted("integrality scale N exceeds the configured bound");
    report.scale = scale;

    // extend the model
    model.rank[n1] = f.cols();
    model.scale[n1] = scale;
    auto& ds = model.d_orbit[n1];
    auto& ss = model.s_orbit[n1];
    GroupElement e = GroupElement::identity(model.spec);
    Rat nq(scale);
    for (int j = 0; j < f.cols(); ++j) {
        auto col = matrix_column(f, j);
        LGElement dj =
            column_as_element(n, col).scaled(nq) + b_min[static_cast<size_t>(j)].scaled(nq);
        ds.push_back(dj);
        LGElement sj;
        sj.add(LGMono{{GenKey{n1, j, e}}, false}, Rat(1));
        sj = sj + witness[static_cast<size_t>(j)].scaled(nq);
        ss.push_back(sj);
    }
    model.top = n1;

    // exact verification of the step
    std::ostringstream diag;
    for (int j = 0; j < f.cols(); ++j) {
        const LGElement& dj = ds[static_cast<size_t>(j)];
        const LGElement& sj = ss[static_cast<size_t>(j)];
        if (!model.d(dj).is_zero()) diag << "dd != 0 at cell " << j << "; ";
        // chain map: d(s(x)) = s(dF x) with dF x = N f x
        std::vector<RingElement> scaled_col = matrix_column(f, j);
        for (auto& x : scaled_col) x = x.scaled(nq);
        if (!(model.d(sj) == model.s_of_column(n, scaled_col)))
            diag << "section chain-map law failed at cell " << j << "; ";
        auto h = model.bracket_free_part(n1, sj);
        for (int i = 0; i < f.cols(); ++i) {
            Rat expect = (i == j) ? Rat(1) : Rat(0);
            bool ok = (i == j)
                          ? h[static_cast<size_t>(i)] ==
                                RingElement::monomial(model.spec, e, expect)
                          : h[static_cast<size_t>(i)].is_zero();
            if (!ok) diag << "h s != id at cell " << j << "; ";
        }
    }
    report.verification = diag.str().empty() ? "ok" : diag.str();
    if (report.verification != "ok") throw InvariantViolation("attach step verification: " + report.verification);
    return report;
}

MooreBuild build_moore_model(const GroupSpec& spec, int r, ModelCaps caps) {
    MooreBuild out;
    out.resolution = dualizing_resolution(spec, r);
    out.report.spec = spec;
    out.report.r = r;
    out.report.caps = caps;
    out.model = init_wedge(spec, r, out.resolution.complex.rank(r), caps);
    for (int n1 = r + 1; n1 <= r + out.resolution.d; ++n1) {
        RingMatrix f = out.resolution.complex.boundary.count(n1)
                           ? out.resolution.complex.boundary.at(n1)
                           : RingMatrix(spec, out.resolution.complex.rank(n1 - 1),
                                        out.resolution.complex.rank(n1));
        out.report.steps.push_back(attach_step(out.model, f.to_kind(ScalarKind::rational)));
    }
    return out;
}

std::string MooreBuildReport::str() const {
    std::ostringstream os;
    os << "moore build over " << spec.str() << ", r = " << r << '\n';
    os << "caps: bracket " << caps.bracket_cap << ", support radius " << caps.support_radius
       << ", max scale " << caps.max_scale << '\n';
    for (const auto& s : steps) {
        os << "attach degree " << s.degree << ": cells " << s.cells << ", N " << s.scale
           << ", window " << s.solver_window_monomials << " monomials (rank " << s.solver_rank
           << "), radius " << s.support_radius_used << ", phi "
           << (s.phi_nonzero ? "nonzero" : "zero") << ", verification " << s.verification << '\n';
    }
    return os.str();
}

std::string ModelVerification::str() const {
    std::ostringstream os;
    os << "h s = id: " << (h_section_identity ? "ok" : "FAIL")
       << "; chain map: " << (section_chain_map ? "ok" : "FAIL")
       << "; dd = 0: " << (dd_zero ? "ok" : "FAIL")
       << "; equivariance: " << (equivariance ? "ok" : "FAIL")
       << "; bracket-free = N f: " << (bracket_free_matches ? "ok" : "FAIL") << " ("
       << samples << " samples)";
    return os.str();
}

ModelVerification verify_model(const EquivariantDGLModel& model, const FreeComplex& resolution,
                               int samples, unsigned long long seed) {
    ModelVerification v;
    v.samples = samples;
    v.h_section_identity = true;
    v.section_chain_map = true;
    v.dd_zero = true;
    v.equivariance = true;
    v.bracket_free_matches = true;
    Rng rng(seed);
    GroupElement e = GroupElement::identity(model.spec);

    for (int n = model.r; n <= model.top; ++n) {
        // emitted bracket-free complex equals (F, N f) entrywise
        if (n > model.r) {
            RingMatrix expected =
                resolution.boundary.count(n)
                    ? resolution.boundary.at(n).to_kind(ScalarKind::rational).scaled(Rat(model.scale.at(n)))
                    : RingMatrix(model.spec, model.rank.at(n - 1), model.rank.at(n));
            if (!(model.bracket_free_boundary(n) == expected)) v.bracket_free_matches = false;
        }
        for (int cell = 0; cell < model.rank.at(n); ++cell) {
            for (int trial = 0; trial < samples; ++trial) {
                GroupElement g = trial == 0 ? e : random_element(model.spec, 3, rng);
                LGMono xmono{{GenKey{n, cell, g}}, false};
                LGElement x;
                x.add(xmono, Rat(1));

                LGElement sx = model.s_of_generator(n, cell, g);
                auto h = model.bracket_free_part(n, sx);
                for (int i = 0; i < model.rank.at(n); ++i) {
                    bool ok = (i == cell)
                                  ? h[static_cast<size_t>(i)] ==
                                        RingElement::monomial(model.spec, g, Rat(1))
                                  : h[static_cast<size_t>(i)].is_zero();
                    if (!ok) v.h_section_identity = false;
                }

                // d s(g x) = s(dF (g x)); dF uses the stored bracket-free matrix
                LGElement lhs = model.d(sx);
                LGElement rhs;
                if (n > model.r) {
                    auto col = matrix_column(model.bracket_free_boundary(n), cell);
                    for (auto& entr : col)
                        entr = RingElement::monomial(model.spec, g, Rat(1)) * entr;
                    rhs = model.s_of_column(n - 1, col);
                }
                if (!(lhs == rhs)) v.section_chain_map = false;

                if (!model.d(model.d(x)).is_zero()) v.dd_zero = false;

                // translation commutes with the stored differential
                LGElement via_translate =
                    lg_translate(model.d_orbit.at(n)[static_cast<size_t>(cell)], g);
                if (!(via_translate == model.d(x))) v.equivariance = false;
            }
        }
    }
    return v;
}

void ClassifyingPair::validate() const {
    complex.validate();
    classifying.validate();
    for (int n = complex.lo; n <= complex.hi; ++n) {
        auto it = to_classifying.find(n);
        if (it == to_classifying.end()) {
            if (n <= classifying.hi && complex.rank(n) > 0 && classifying.rank(n) > 0)
                throw InvariantViolation("classifying map missing at degree " + std::to_string(n));
            continue;
        }
        if (it->second.rows() != classifying.rank(n) || it->second.cols() != complex.rank(n))
            throw InvariantViolation("classifying map shape mismatch");
    }
    // chain map law phi d = d phi
    for (int n = complex.lo + 1; n <= complex.hi; ++n) {
        RingMatrix phi_n = to_classifying.count(n)
                               ? to_classifying.at(n)
                               : RingMatrix(complex.spec, classifying.rank(n), complex.rank(n));
        RingMatrix phi_n1 = to_classifying.count(n - 1)
                                ? to_classifying.at(n - 1)
                                : RingMatrix(complex.spec, classifying.rank(n - 1), complex.rank(n - 1));
        RingMatrix dx = complex.boundary.count(n)
                            ? complex.boundary.at(n)
                            : RingMatrix(complex.spec, complex.rank(n - 1), complex.rank(n));
        RingMatrix de = classifying.boundary.count(n)
                            ? classifying.boundary.at(n)
                            : RingMatrix(complex.spec, classifying.rank(n - 1), classifying.rank(n));
        if (classifying.rank(n - 1) == 0) continue;
        if (!(phi_n1.compose(dx) == de.compose(phi_n)))
            throw InvariantViolation("classifying map is not a chain map at degree " +
                                     std::to_string(n));
    }
}

ClassifyingPair classifying_union(const EquivariantDGLModel& model) {
    ClassifyingPair pair;
    pair.classifying = classifying_complex(model.spec);
    FreeComplex fpart = model.bracket_free_complex();
    const FreeComplex& eg = pair.classifying;

    FreeComplex x;
    x.spec = model.spec;
    x.lo = 0;
    x.hi = std::max(eg.hi, fpart.hi);
    for (int m = x.lo; m <= x.hi; ++m) x.ranks.push_back(eg.rank(m) + fpart.rank(m));
    for (int m = x.lo + 1; m <= x.hi; ++m) {
        RingMatrix d(model.spec, x.rank(m - 1), x.rank(m));
        if (eg.boundary.count(m))
            for (const auto& [rc, entry] : eg.boundary.at(m).entries())
                d.set(rc.first, rc.second, entry);
        if (fpart.boundary.count(m))
            for (const auto& [rc, entry] : fpart.boundary.at(m).entries())
                d.set(eg.rank(m - 1) + rc.first, eg.rank(m) + rc.second, entry);
        if (!d.is_zero()) x.boundary.emplace(m, std::move(d));
    }
    pair.complex = std::move(x);
    for (int m = 0; m <= eg.hi; ++m) {
        RingMatrix proj(model.spec, eg.rank(m), pair.complex.rank(m));
        for (int i = 0; i < eg.rank(m); ++i) proj.set(i, i, RingElement::unit(model.spec));
        pair.to_classifying.emplace(m, std::move(proj));
    }
    pair.validate();
    return pair;
}

SelfDualityReport self_duality_check(const ClassifyingPair& pair, int r, int d,
                                     const std::map<int, Int>& scales) {
    SelfDualityReport rep;
    const FreeComplex& eg = pair.classifying;
    const FreeComplex& x = pair.complex;
    rep.rank_palindromic = true;
    for (int j = x.lo; j <= x.hi; ++j) {
        rep.rank_sequence.push_back(x.rank(j));
        if (x.rank(j) != eg.rank(j) + eg.rank(r + d - j)) rep.rank_palindromic = false;
    }
    rep.matrices_dual_up_to_scale = true;
    for (int n = r + 1; n <= r + d; ++n) {
        // extract the F block of the boundary at degree n
        RingMatrix block(x.spec, x.rank(n - 1) - eg.rank(n - 1), x.rank(n) - eg.rank(n));
        if (x.boundary.count(n))
            for (const auto& [rc, entry] : x.boundary.at(n).entries()) {
                if (rc.first < eg.rank(n - 1) || rc.second < eg.rank(n)) continue;
                block.set(rc.first - eg.rank(n - 1), rc.second - eg.rank(n), entry);
            }
        RingMatrix expected(x.spec, block.rows(), block.cols());
        if (eg.boundary.count(r + d - n + 1))
            expected = eg.boundary.at(r + d - n + 1).dual().to_kind(ScalarKind::rational);
        Rat nscale(scales.count(n) ? scales.at(n) : Int(1));
        if (!(block == expected.scaled(nscale))) rep.matrices_dual_up_to_scale = false;
    }
    rep.chi = x.euler_characteristic();
    long long chi_b = eg.euler_characteristic();
    rep.chi_expected = chi_b * (1 + (((r + d) % 2 == 0) ? 1 : -1));
    return rep;
}

std::string SelfDualityReport::str() const {
    std::ostringstream os;
    os << "rank sequence";
    for (int v : rank_sequence) os << ' ' << v;
    os << (rank_palindromic ? " (palindromic)" : " (NOT palindromic)") << "; matrices dual up to N: "
       << (matrices_dual_up_to_scale ? "yes" : "NO") << "; chi " << chi << " expected "
       << chi_expected;
    return os.str();
}

ClassifyingPair suspend(const ClassifyingPair& pair) {
    pair.validate();
    const FreeComplex& eg = pair.classifying;
    const FreeComplex& x = pair.complex;
    ClassifyingPair out;
    out.classifying = eg;

    FreeComplex sx;
    sx.spec = x.spec;
    sx.lo = 0;
    sx.hi = std::max(eg.hi, x.hi + 1);
    auto rank_of = [&](int m) { return 2 * eg.rank(m) + x.rank(m - 1); };
    for (int m = sx.lo; m <= sx.hi; ++m) sx.ranks.push_back(rank_of(m));
    for (int m = sx.lo + 1; m <= sx.hi; ++m) {
        RingMatrix d(x.spec, rank_of(m - 1), rank_of(m));
        int egm = eg.rank(m), egm1 = eg.rank(m - 1);
        if (eg.boundary.count(m))
            for (const auto& [rc, entry] : eg.boundary.at(m).entries()) {
                d.set(rc.first, rc.second, entry);
                d.set(egm1 + rc.first, egm + rc.second, entry);
            }
        // glue along the complex: d(a, b, c) = (da + f c, db - f c, -dc)
        if (pair.to_classifying.count(m - 1))
            for (const auto& [rc, entry] : pair.to_classifying.at(m - 1).entries()) {
                d.set(rc.first, 2 * egm + rc.second, entry);
                d.set(egm1 + rc.first, 2 * egm + rc.second, entry.scaled(Rat(-1)));
            }
        if (x.boundary.count(m - 1))
            for (const auto& [rc, entry] : x.boundary.at(m - 1).entries())
                d.set(2 * egm1 + rc.first, 2 * egm + rc.second, entry.scaled(Rat(-1)));
        if (!d.is_zero()) sx.boundary.emplace(m, std::move(d));
    }
    out.complex = std::move(sx);
    for (int m = 0; m <= eg.hi; ++m) {
        RingMatrix fold(x.spec, eg.rank(m), out.complex.rank(m));
        for (int i = 0; i < eg.rank(m); ++i) {
            fold.set(i, i, RingElement::unit(x.spec));
            fold.set(i, eg.rank(m) + i, RingElement::unit(x.spec));
        }
        out.to_classifying.emplace(m, std::move(fold));
    }
    out.validate();
    return out;
}

std::string write_model(const EquivariantDGLModel& model) {
    std::ostringstream os;
    os << "model v1\n";
    os << "group " << model.spec.str() << '\n';
    os << "r " << model.r << '\n';
    os << "top " << model.top << '\n';
    os << "caps " << model.caps.bracket_cap << ' ' << model.caps.support_radius << ' '
       << model.caps.max_scale << '\n';
    for (int n = model.r; n <= model.top; ++n) os << "rank " << n << ' ' << model.rank.at(n) << '\n';
    for (int n = model.r; n <= model.top; ++n) os << "scale " << n << ' ' << model.scale.at(n) << '\n';
    for (int n = model.r; n <= model.top; ++n)
        for (int j = 0; j < model.rank.at(n); ++j) {
            os << "d " << n << ' ' << j << ' '
               << lg_str(model.d_orbit.at(n)[static_cast<size_t>(j)], model.spec) << '\n';
            os << "s " << n << ' ' << j << ' '
               << lg_str(model.s_orbit.at(n)[static_cast<size_t>(j)], model.spec) << '\n';
        }
    return os.str();
}

EquivariantDGLModel read_model(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "model v1") throw InputError("bad model header");
    EquivariantDGLModel model;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "group") {
            std::string g;
            ls >> g;
            model.spec = GroupSpec::parse(g);
        } else if (tok == "r") {
            ls >> model.r;
        } else if (tok == "top") {
            ls >> model.top;
        } else if (tok == "caps") {
            ls >> model.caps.bracket_cap >> model.caps.support_radius >> model.caps.max_scale;
        } else if (tok == "rank") {
            int n, v;
            ls >> n >> v;
            model.rank[n] = v;
            model.d_orbit[n].resize(static_cast<size_t>(v));
            model.s_orbit[n].resize(static_cast<size_t>(v));
        } else if (tok == "scale") {
            int n;
            std::string v;
            ls >> n >> v;
            model.scale[n] = Int(v);
        } else if (tok == "d" || tok == "s") {
            int n, j;
            ls >> n >> j;
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
            auto& slot = (tok == "d") ? model.d_orbit[n] : model.s_orbit[n];
            slot[static_cast<size_t>(j)] = lg_parse(model.spec, rest);
        } else {
            throw InputError("unknown model line: " + line);
        }
    }
    return model;
}

}  // namespace qmoore
