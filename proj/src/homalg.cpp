#include "qmoore/homalg.hpp"

#include <sstream>

namespace qmoore {

CoefficientResolution CoefficientResolution::finite(FreeComplex c, int base, std::string name) {
    CoefficientResolution res;
    res.complex = std::move(c);
    res.base_degree = base;
    res.module_name = std::move(name);
    return res;
}

CoefficientResolution CoefficientResolution::propagation(PropagationComplex c, int base,
                                                         std::string name) {
    CoefficientResolution res;
    res.complex = std::move(c);
    res.base_degree = base;
    res.module_name = std::move(name);
    return res;
}

std::string GroupHomologyResult::str() const {
    std::ostringstream os;
    os << "H_" << degree << ": dim " << dimension << ' '
       << (exact ? "(exact)" : (stabilized ? "(stabilized)" : "(NOT stabilized)"));
    if (!torsion.empty()) {
        os << ", torsion";
        for (const auto& t : torsion) os << ' ' << t;
    }
    return os.str();
}

GroupHomologyResult group_homology(const CoefficientResolution& res, int n,
                                   const std::vector<int>& radii) {
    GroupHomologyResult out;
    out.degree = n;
    if (std::holds_alternative<FreeComplex>(res.complex)) {
        const auto& f = std::get<FreeComplex>(res.complex);
        int degree = res.base_degree + n;
        if (degree < f.lo || degree > f.hi)
            throw InputError("degree outside the resolution range");
        auto h = homology(coinvariants(f));
        out.dimension = h.betti_at(degree);
        out.torsion = h.torsion[static_cast<size_t>(degree - h.lo)];
        out.exact = true;
        out.stabilized = true;
    } else {
        const auto& p = std::get<PropagationComplex>(res.complex);
        int degree = res.base_degree + n;
        if (degree < p.lo || degree > p.hi)
            throw InputError("degree outside the resolution range");
        auto report = truncated_homology(p, radii);
        const auto& est = report.at(degree);
        out.dimension = est.value;
        out.stabilized = est.stabilized && !est.monotonicity_violated;
        out.exact = false;
    }
    return out;
}

FreeComplex dual_fox_resolution(int k) { return dualize(fox_complex(k), 1); }

PropagationComplex dd_complex(int k) {
    GroupSpec spec({k});
    FreeComplex f = dual_fox_resolution(k);
    const RingMatrix& a = f.boundary.at(1);  // k x 1, entries g_i^{-1} - 1

    PropagationComplex p;
    p.spec = spec;
    p.lo = 0;
    p.hi = 2;
    // cell pairs: (F_i tensor F_j) with i + j = n; F_0 has k cells, F_1 one
    p.ranks = {k * k, 2 * k, 1};

    // coordinates are orbit invariants delta = g^{-1} h of the diagonal
    // action: the left factor differential acts by inverse left convolution,
    // the right factor by right convolution, with the Koszul sign on the
    // second factor.
    auto left_op = [&](int row) { return ConvOp::left(a.entry(row, 0).involute()); };
    auto right_op = [&](int row) { return ConvOp::right(a.entry(row, 0)); };

    // P_1 -> P_0: basis of P_1 is (F_1 ten F_0: t = 0..k-1), then
    // (F_0 ten F_1: s = 0..k-1); basis of P_0 is pairs (s, t) row-major.
    OpMatrix d1(spec, k * k, 2 * k);
    for (int t = 0; t < k; ++t)
        for (int sp = 0; sp < k; ++sp) d1.set(sp * k + t, t, left_op(sp));
    for (int s = 0; s < k; ++s)
        for (int tp = 0; tp < k; ++tp) d1.set(s * k + tp, k + s, right_op(tp));
    p.propagation_bound[1] = d1.max_radius();
    p.boundary.emplace(1, std::move(d1));

    // P_2 -> P_1: the single cell e ten e with the sign on the second factor
    OpMatrix d2(spec, 2 * k, 1);
    for (int sp = 0; sp < k; ++sp) d2.set(k + sp, 0, left_op(sp));
    for (int tp = 0; tp < k; ++tp) d2.set(tp, 0, right_op(tp).scaled(Rat(-1)));
    p.propagation_bound[2] = d2.max_radius();
    p.boundary.emplace(2, std::move(d2));

    p.validate();
    return p;
}

std::string Ext1Report::str() const {
    std::ostringstream os;
    os << "Ext^1 for r = " << r << ", d = " << d << ", k = " << k << ": index " << index;
    switch (verdict) {
        case Verdict::vanishes_degree_reasons:
            os << ", vanishes for degree reasons";
            break;
        case Verdict::potentially_nontrivial:
            os << ", potentially nontrivial (identified with H_" << index << ")";
            break;
        case Verdict::boundary_case:
            os << ", boundary case, consult vanishing theorem";
            break;
    }
    os << (window_hypothesis ? "; window d-1 > r > d/2 holds" : "; window d-1 > r > d/2 fails");
    return os.str();
}

Ext1Report ext1_via_duality(int r, int d, int k) {
    if (r < 2) throw InputError("r must be >= 2");
    if (d < 1) throw InputError("d must be >= 1");
    if (!(r < k && k <= r + d)) throw InputError("k must satisfy r < k <= r + d");
    Ext1Report rep;
    rep.r = r;
    rep.d = d;
    rep.k = k;
    rep.index = d + r - (k + 2);
    rep.window_hypothesis = (d - 1 > r) && (2 * r > d);
    if (rep.index < 0 || rep.index > d)
        rep.verdict = Ext1Report::Verdict::vanishes_degree_reasons;
    else if (rep.index == 0)
        rep.verdict = Ext1Report::Verdict::boundary_case;
    else
        rep.verdict = Ext1Report::Verdict::potentially_nontrivial;
    return rep;
}

std::string KernelProfile::str() const {
    std::ostringstream os;
    os << "whitehead kernel degrees for r = " << r << ", d = " << d << ":";
    for (size_t i = 0; i < degrees.size(); ++i)
        os << ' ' << degrees[i] << (in_attachment_range[i] ? "(in range)" : "");
    return os.str();
}

KernelProfile kernel_degrees(int r, int d, int cap) {
    if (r < 2) throw InputError("r must be >= 2");
    KernelProfile out;
    out.r = r;
    out.d = d;
    for (int n = 1; r + n * (r - 1) <= cap; ++n) {
        int degree = r + n * (r - 1);
        out.degrees.push_back(degree);
        out.in_attachment_range.push_back(r < degree && degree <= r + d);
    }
    return out;
}

std::string VanishingNode::str(int indent) const {
    std::ostringstream os;
    os << std::string(static_cast<size_t>(indent) * 2, ' ') << statement;
    if (!justification.empty()) os << "  [" << justification << "]";
    os << '\n';
    for (const auto& c : children) os << c.str(indent + 1);
    return os.str();
}

std::string VanishingReport::str() const {
    std::ostringstream os;
    os << "H_{>0}(B F_2^" << d << "; D ten D): " << (vanishes ? "vanishes" : "does NOT vanish")
       << (base_stabilized ? "" : " (verdict withheld: base not stabilized)") << '\n';
    os << tree.str(1);
    return os.str();
}

VanishingReport vanishing_assembly(int d, const std::vector<int>& radii, int perturb_base) {
    if (d < 1) throw InputError("d must be >= 1");
    VanishingReport rep;
    rep.d = d;

    auto base_complex = dd_complex(2);
    auto oracle = truncated_homology(base_complex, radii);
    int h1 = oracle.at(1).value + perturb_base;
    int h2 = oracle.at(2).value;
    rep.base_stabilized = oracle.at(1).stabilized && oracle.at(2).stabilized &&
                          !oracle.at(1).monotonicity_violated && !oracle.at(2).monotonicity_violated;

    // zero flags per degree; degree 0 is infinite dimensional and never used
    std::vector<bool> base_zero = {false, h1 == 0, h2 == 0};

    VanishingNode base;
    base.statement = "d = 1: H_1 window = " + std::to_string(h1) + ", H_2 window = " +
                     std::to_string(h2) + ", degrees > 2 vanish with the resolution";
    base.justification = perturb_base ? "base perturbed for the negative control"
                                      : "truncation oracle, radii stabilized";

    std::vector<bool> zero = base_zero;  // degree-indexed, current power
    VanishingNode tree = base;
    for (int power = 2; power <= d; ++power) {
        std::vector<bool> next(static_cast<size_t>(power) + 2, true);
        next[0] = false;
        VanishingNode node;
        node.statement = "d = " + std::to_string(power) + ": Kunneth over the factor split";
        node.children.push_back(tree);
        for (int n = 1; n < static_cast<int>(next.size()); ++n) {
            bool all_terms_vanish = true;
            std::ostringstream terms;
            for (int i = 0; i <= std::min(n, 2); ++i) {
                int j = n - i;
                bool left_zero = base_zero[static_cast<size_t>(i)];
                bool right_zero = j < static_cast<int>(zero.size())
                                      ? zero[static_cast<size_t>(j)]
                                      : true;  // beyond the factor dimension
                bool term_zero = left_zero || right_zero;
                if (!term_zero) all_terms_vanish = false;
                terms << (i ? " + " : "") << "H_" << i << " ten H_" << j
                      << (term_zero ? "(=0)" : "(nonzero)");
            }
            next[static_cast<size_t>(n)] = all_terms_vanish;
            VanishingNode degree_node;
            degree_node.statement = "H_" + std::to_string(n) + " = " + terms.str() + " -> " +
                                    (all_terms_vanish ? "0" : "nonzero");
            node.children.push_back(std::move(degree_node));
        }
        zero = std::move(next);
        tree = std::move(node);
    }
    rep.tree = std::move(tree);
    rep.vanishes = true;
    for (size_t n = 1; n < zero.size(); ++n)
        if (!zero[n]) rep.vanishes = false;
    if (!rep.base_stabilized) rep.vanishes = false;
    return rep;
}

}  // namespace qmoore
