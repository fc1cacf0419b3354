#include "qmoore/truncation.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

ConvOp ConvOp::right(const RingElement& a) {
    ConvOp op(a.spec());
    GroupElement e = GroupElement::identity(a.spec());
    for (const auto& [g, c] : a.terms()) op.add_term(e, g, c);
    return op;
}

ConvOp ConvOp::left(const RingElement& a) {
    ConvOp op(a.spec());
    GroupElement e = GroupElement::identity(a.spec());
    for (const auto& [g, c] : a.terms()) op.add_term(g, e, c);
    return op;
}

ConvOp ConvOp::two_sided(const GroupSpec& spec, const GroupElement& u, const GroupElement& v,
                         const Rat& c) {
    ConvOp op(spec);
    op.add_term(u, v, c);
    return op;
}

void ConvOp::add_term(const GroupElement& u, const GroupElement& v, const Rat& c) {
    if (c == 0) return;
    auto key = std::make_pair(u, v);
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int ConvOp::radius() const {
    int r = 0;
    for (const auto& [uv, c] : terms_) r = std::max(r, uv.first.length() + uv.second.length());
    return r;
}

ConvOp ConvOp::operator+(const ConvOp& rhs) const {
    if (spec_ != rhs.spec_) throw TypeError("operators over different groups");
    ConvOp out = *this;
    for (const auto& [uv, c] : rhs.terms_) out.add_term(uv.first, uv.second, c);
    return out;
}

ConvOp ConvOp::scaled(const Rat& c) const {
    ConvOp out(spec_);
    if (c == 0) return out;
    for (const auto& [uv, x] : terms_) out.terms_.emplace(uv, x * c);
    return out;
}

ConvOp ConvOp::compose(const ConvOp& rhs) const {
    if (spec_ != rhs.spec_) throw TypeError("operators over different groups");
    ConvOp out(spec_);
    // (u1,v1) after (u2,v2): x -> u1 u2 x v2 v1
    for (const auto& [uv1, c1] : terms_)
        for (const auto& [uv2, c2] : rhs.terms_)
            out.add_term(uv1.first.mul(uv2.first), uv2.second.mul(uv1.second), c1 * c2);
    return out;
}

std::vector<std::pair<GroupElement, Rat>> ConvOp::apply(const GroupElement& x) const {
    std::map<GroupElement, Rat> acc;
    for (const auto& [uv, c] : terms_) {
        GroupElement y = uv.first.mul(x).mul(uv.second);
        auto [it, inserted] = acc.emplace(y, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) acc.erase(it);
        }
    }
    return {acc.begin(), acc.end()};
}

ConvOp OpMatrix::entry(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? ConvOp::zero(spec_) : it->second;
}

void OpMatrix::set(int r, int c, const ConvOp& op) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw InvariantViolation("operator matrix index out of range");
    if (op.is_zero())
        entries_.erase({r, c});
    else
        entries_.insert_or_assign({r, c}, op);
}

int OpMatrix::max_radius() const {
    int r = 0;
    for (const auto& [rc, op] : entries_) r = std::max(r, op.radius());
    return r;
}

OpMatrix OpMatrix::compose(const OpMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvariantViolation("operator matrix shape mismatch");
    OpMatrix out(spec_, rows_, rhs.cols_);
    std::map<std::pair<int, int>, ConvOp> acc;
    for (const auto& [rc_a, a] : entries_)
        for (const auto& [rc_b, b] : rhs.entries_) {
            if (rc_a.second != rc_b.first) continue;
            ConvOp prod = a.compose(b);
            auto key = std::make_pair(rc_a.first, rc_b.second);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, std::move(prod));
            else
                it->second = it->second + prod;
        }
    for (const auto& [rc, op] : acc) out.set(rc.first, rc.second, op);
    return out;
}

int PropagationComplex::rank(int degree) const {
    return in_range(degree) ? ranks[degree - lo] : 0;
}

int PropagationComplex::max_propagation() const {
    int p = 0;
    for (const auto& [n, b] : propagation_bound) p = std::max(p, b);
    return p;
}

void PropagationComplex::validate() const {
    if (hi < lo) throw InvariantViolation("empty complex range");
    if (static_cast<int>(ranks.size()) != hi - lo + 1)
        throw InvariantViolation("rank table does not match degree range");
    for (const auto& [n, d] : boundary) {
        if (n <= lo || n > hi) throw InvariantViolation("boundary outside degree range");
        if (d.rows() != rank(n - 1) || d.cols() != rank(n))
            throw InvariantViolation("boundary shape mismatch at degree " + std::to_string(n));
        auto it = propagation_bound.find(n);
        if (it == propagation_bound.end() || it->second < d.max_radius())
            throw InvariantViolation("declared propagation bound below actual radius");
    }
    for (int n = lo + 2; n <= hi; ++n) {
        auto a = boundary.find(n - 1);
        auto b = boundary.find(n);
        if (a == boundary.end() || b == boundary.end()) continue;
        if (!a->second.compose(b->second).is_zero())
            throw InvariantViolation("dd != 0 at degree " + std::to_string(n));
    }
}

PropagationComplex PropagationComplex::from_free_complex(const FreeComplex& c) {
    PropagationComplex p;
    p.spec = c.spec;
    p.lo = c.lo;
    p.hi = c.hi;
    p.ranks = c.ranks;
    for (const auto& [n, d] : c.boundary) {
        OpMatrix m(c.spec, d.rows(), d.cols());
        for (const auto& [rc, x] : d.entries()) m.set(rc.first, rc.second, ConvOp::right(x));
        p.propagation_bound[n] = m.max_radius();
        p.boundary.emplace(n, std::move(m));
    }
    return p;
}

namespace {

// Coordinate dictionary (cell, group element) -> row id, in graded order so
// the low-pivot elimination sees boundary-like columns.
struct CoordSpace {
    std::vector<GroupElement> elements;  // sorted ball
    std::map<GroupElement, int> index;
    int cells = 0;

    CoordSpace(const GroupSpec& spec, int radius, int cells_) : cells(cells_) {
        if (radius >= 0) elements = ball(spec, radius);
        for (size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));
    }
    int id(int cell, const GroupElement& g) const {
        auto it = index.find(g);
        if (it == index.end()) throw InvariantViolation("coordinate outside the ambient ball");
        return it->second * cells + cell;
    }
    int size() const { return static_cast<int>(elements.size()) * cells; }
};

SparseVecQ apply_matrix_column(const OpMatrix& m, int cell, const GroupElement& g,
                               const CoordSpace& target) {
    SparseVecQ col;
    for (const auto& [rc, op] : m.entries()) {
        if (rc.second != cell) continue;
        for (const auto& [h, c] : op.apply(g)) col.push(target.id(rc.first, h), c);
    }
    col.sort_and_combine();
    return col;
}

}  // namespace

const DegreeEstimate& TruncationReport::at(int degree) const {
    for (const auto& d : degrees)
        if (d.degree == degree) return d;
    throw InputError("degree not covered by the truncation report");
}

std::string TruncationReport::table() const {
    std::ostringstream os;
    os << "truncated homology over " << spec.str() << " (margin " << margin
       << "; numerically stabilized, not certified)\n";
    os << "degree";
    for (int r : radii) os << "  R=" << r;
    os << "  stabilized\n";
    for (const auto& d : degrees) {
        os << "  " << d.degree << "   ";
        for (const auto& [r, v] : d.estimates) os << "  " << v;
        os << "    " << (d.stabilized ? "yes" : "no");
        if (d.monotonicity_violated) os << " (monotonicity violated)";
        os << '\n';
    }
    return os.str();
}

TruncationReport truncated_homology(const PropagationComplex& p, const std::vector<int>& radii,
                                    int margin) {
    p.validate();
    if (radii.empty()) throw InputError("radii list must be nonempty");
    for (size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw InputError("radii must be strictly increasing");
    const int prop = std::max(1, p.max_propagation());
    if (margin < 0) margin = prop;
    if (margin < p.max_propagation())
        throw InputError("window margin below the propagation bound makes estimates meaningless");

    TruncationReport report;
    report.spec = p.spec;
    report.margin = margin;
    report.radii = radii;

    for (int n = p.lo; n <= p.hi; ++n) {
        DegreeEstimate est;
        est.degree = n;
        for (int R : radii) {
            const int window_radius = R - margin;
            CoordSpace window(p.spec, window_radius, p.rank(n));
            CoordSpace ambient(p.spec, R + prop, p.rank(n));

            // cycles supported in the window
            std::vector<SparseVecQ> z_basis;
            auto dn = p.boundary.find(n);
            if (dn == p.boundary.end() || n == p.lo) {
                for (int cell = 0; cell < window.cells; ++cell)
                    for (const auto& g : window.elements) {
                        SparseVecQ v;
                        v.push(ambient.id(cell, g), Rat(1));
                        z_basis.push_back(std::move(v));
                    }
            } else {
                CoordSpace target(p.spec, R + prop, p.rank(n - 1));
                std::vector<SparseVecQ> cols;
                std::vector<SparseVecQ> tags;
                for (int cell = 0; cell < window.cells; ++cell)
                    for (const auto& g : window.elements) {
                        cols.push_back(apply_matrix_column(dn->second, cell, g, target));
                        SparseVecQ tag;
                        tag.push(ambient.id(cell, g), Rat(1));
                        tags.push_back(std::move(tag));
                    }
                SparseEliminator el;
                for (size_t j = 0; j < cols.size(); ++j) {
                    SparseVecQ combo;
                    if (!el.add_tracked(cols[j], tags[j], &combo)) {
                        combo.sort_and_combine();
                        z_basis.push_back(std::move(combo));
                    }
                }
            }

            // boundaries from the full ball
            std::vector<SparseVecQ> b_cols;
            auto dn1 = p.boundary.find(n + 1);
            if (dn1 != p.boundary.end() && n < p.hi) {
                CoordSpace source(p.spec, R, p.rank(n + 1));
                for (int cell = 0; cell < source.cells; ++cell)
                    for (const auto& g : source.elements)
                        b_cols.push_back(apply_matrix_column(dn1->second, cell, g, ambient));
                // dd = 0 rechecked at the truncated level: boundaries of
                // window-supported chains must be cycles of the full matrix.
                if (dn != p.boundary.end()) {
                    CoordSpace deep(p.spec, R + 2 * prop, p.rank(n - 1));
                    for (int cell = 0; cell < p.rank(n + 1); ++cell) {
                        if (window_radius < 0) break;
                        GroupElement e = GroupElement::identity(p.spec);
                        auto mid = apply_matrix_column(dn1->second, cell, e, ambient);
                        SparseVecQ total;
                        for (const auto& [row, c] : mid.e) {
                            int mcell = row % ambient.cells;
                            const GroupElement& mg = ambient.elements[row / ambient.cells];
                            auto down = apply_matrix_column(dn->second, mcell, mg, deep);
                            total = axpy(total, c, down);
                        }
                        if (!total.empty())
                            throw InvariantViolation("truncated dd != 0; restriction scheme broken");
                    }
                }
            }

            int dim = sparse_rank_gain(b_cols, z_basis);
            est.estimates.emplace_back(R, dim);
        }
        for (size_t i = 1; i < est.estimates.size(); ++i) {
            if (est.estimates[i].second == est.estimates[i - 1].second) {
                if (!est.stabilized) {
                    est.stabilized = true;
                    est.value = est.estimates[i].second;
                }
            } else if (est.stabilized) {
                est.monotonicity_violated = true;  // reported, never silently ignored
            }
        }
        if (!est.stabilized) est.value = est.estimates.back().second;
        report.degrees.push_back(std::move(est));
    }
    return report;
}

std::string InvariantsResult::str() const {
    std::ostringstream os;
    os << "invariants dimension " << dimension << " (" << method << "; "
       << (exact ? "exact witness bounds" : "heuristic witness radii") << ", "
       << (stabilized ? "stabilized" : "not stabilized") << ")";
    return os.str();
}

namespace {

// Support-growth lemma: a single relation column whose entries are scalar
// multiples of h_i - 1 for length-one h_i, with at least two distinct h_i,
// satisfies radius(R y) = radius(y) + 1; witnesses are then window-bounded.
bool has_exact_witness_bound(const ModulePresentation& m) {
    if (m.relations.cols() != 1) return false;
    std::vector<GroupElement> letters;
    for (const auto& [rc, x] : m.relations.entries()) {
        if (x.support_size() != 2) return false;
        GroupElement identity = GroupElement::identity(m.spec);
        Rat c_id = x.coeff(identity);
        if (c_id == 0) return false;
        GroupElement h = identity;
        for (const auto& [g, c] : x.terms())
            if (!(g == identity)) {
                if (c != -c_id) return false;
                h = g;
            }
        if (h.length() != 1) return false;
        letters.push_back(h);
    }
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    return letters.size() >= 2;
}

std::vector<GroupElement> group_generators(const GroupSpec& spec) {
    std::vector<GroupElement> gens;
    for (int l = 1; l <= spec.total_generators(); ++l)
        gens.push_back(GroupElement::reduce(spec, {l}));
    return gens;
}

}  // namespace

InvariantsResult invariants_dimension(const ModulePresentation& m, const std::vector<int>& radii,
                                      int witness_margin) {
    m.validate();
    if (radii.empty()) throw InputError("radii list must be nonempty");

    InvariantsResult out;
    int trivial = static_cast<int>(m.trivial_action_generators.size());
    for (int g : m.trivial_action_generators)
        for (const auto& [rc, x] : m.relations.entries())
            if (rc.first == g)
                throw InputError("trivial-action generators must not meet relations");

    std::vector<int> free_gens;
    for (int g = 0; g < m.generators; ++g)
        if (std::find(m.trivial_action_generators.begin(), m.trivial_action_generators.end(), g) ==
            m.trivial_action_generators.end())
            free_gens.push_back(g);

    if (free_gens.empty()) {
        out.dimension = trivial;
        out.exact = true;
        out.stabilized = true;
        out.method = "trivial-action summands only";
        return out;
    }

    if (m.relations.is_zero()) {
        // orbit argument: a nonzero invariant of a free module over an
        // infinite group would have an infinite orbit inside a finite support
        out.dimension = trivial;
        out.exact = true;
        out.stabilized = true;
        out.method = trivial > 0 ? "orbit argument + trivial summands" : "orbit argument";
        return out;
    }

    const bool exact_witness = has_exact_witness_bound(m);
    const int rel_radius = m.relations.max_entry_radius();
    auto gens = group_generators(m.spec);

    std::map<int, int> gen_row;  // module generator -> compact row
    for (size_t i = 0; i < free_gens.size(); ++i) gen_row[free_gens[i]] = static_cast<int>(i);
    const int q = static_cast<int>(free_gens.size());

    std::vector<int> estimates;
    for (int rho : radii) {
        const int witness_rho = exact_witness ? rho : rho + witness_margin;
        const int image_rho = exact_witness ? rho - 1 : rho + witness_margin;
        CoordSpace xspace(m.spec, rho, q);
        CoordSpace block(m.spec, std::max(rho + 1, witness_rho + rel_radius), q);
        const int nblocks = static_cast<int>(gens.size());

        // columns live in the stacked space: one block per group generator
        auto stacked = [&](int blk, const SparseVecQ& v) {
            SparseVecQ out_v;
            for (const auto& [row, c] : v.e) out_v.push(blk * block.size() + row, c);
            return out_v;
        };
        auto relation_column = [&](int rel, const GroupElement& h, const CoordSpace& space) {
            // R(h e_rel) expressed in module-generator coordinates
            SparseVecQ col;
            for (const auto& [rc, x] : m.relations.entries()) {
                if (rc.second != rel) continue;
                for (const auto& [g, c] : x.terms())
                    col.push(space.id(gen_row.at(rc.first), h.mul(g)), c);
            }
            col.sort_and_combine();
            return col;
        };

        std::vector<SparseVecQ> witness_cols;
        auto witness_ball = ball(m.spec, witness_rho);
        for (int blk = 0; blk < nblocks; ++blk)
            for (int rel = 0; rel < m.relations.cols(); ++rel)
                for (const auto& h : witness_ball)
                    witness_cols.push_back(stacked(blk, relation_column(rel, h, block)));

        std::vector<SparseVecQ> x_cols;
        std::vector<SparseVecQ> x_tags;
        for (int j = 0; j < q; ++j)
            for (const auto& g : xspace.elements) {
                SparseVecQ col;
                for (int blk = 0; blk < nblocks; ++blk) {
                    // (gamma - 1) (g e_j)
                    col.push(blk * block.size() + block.id(j, gens[blk].mul(g)), Rat(1));
                    col.push(blk * block.size() + block.id(j, g), Rat(-1));
                }
                col.sort_and_combine();
                x_cols.push_back(std::move(col));
                SparseVecQ tag;
                tag.push(block.id(j, g), Rat(1));
                x_tags.push_back(std::move(tag));
            }

        // kernel of [witness | x] projected to the x part spans V
        SparseEliminator el;
        for (auto& c : witness_cols) el.add(std::move(c));
        std::vector<SparseVecQ> v_basis;
        for (size_t j = 0; j < x_cols.size(); ++j) {
            SparseVecQ combo;
            if (!el.add_tracked(x_cols[j], x_tags[j], &combo)) {
                combo.sort_and_combine();
                v_basis.push_back(std::move(combo));
            }
        }

        // quotient by the image of the relations inside the window
        std::vector<SparseVecQ> image_cols;
        if (image_rho >= 0)
            for (int rel = 0; rel < m.relations.cols(); ++rel)
                for (const auto& h : ball(m.spec, image_rho))
                    image_cols.push_back(relation_column(rel, h, block));
        estimates.push_back(sparse_rank_gain(image_cols, v_basis));
    }

    out.dimension = trivial + estimates.back();
    out.exact = exact_witness;
    for (size_t i = 1; i < estimates.size(); ++i)
        if (estimates[i] == estimates[i - 1]) out.stabilized = true;
    out.method = exact_witness ? "windowed solve, support-growth witness bound"
                               : "windowed solve";
    if (trivial > 0) out.method += " + trivial summands";
    return out;
}

}  // namespace qmoore
