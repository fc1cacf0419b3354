#include "qmoore/l2.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

std::string LinForm::str() const {
    std::ostringstream os;
    if (coef != 0) {
        if (coef != 1) os << coef << '*';
        os << "|W/G|";
        if (constant != 0) os << " + " << constant;
    } else {
        os << constant;
    }
    return os.str();
}

void L2Profile::validate() const {
    for (const auto& x : b)
        if (x < 0) throw InvariantViolation("negative L2 Betti number in profile " + label);
    if (closed_manifold && dim_n) {
        for (size_t k = static_cast<size_t>(*dim_n) + 1; k < b.size(); ++k)
            if (b[k] != 0)
                throw InvariantViolation("profile supported above its dimension: " + label);
        for (int k = 0; k <= *dim_n; ++k)
            if (at(static_cast<size_t>(k)) != at(static_cast<size_t>(*dim_n - k)))
                throw InvariantViolation("closed-manifold profile fails Poincare duality: " +
                                         label);
    }
}

namespace {

std::vector<Rat> trim(std::vector<Rat> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

}  // namespace

bool L2Profile::replay_matches() const {
    if (rule == "atom" || rule.empty()) return true;
    for (const auto& in : inputs)
        if (!in->replay_matches()) return false;
    if (rule == "kunneth") {
        if (inputs.size() != 2) return false;
        return trim(kunneth(*inputs[0], *inputs[1]).b) == trim(b);
    }
    if (rule.rfind("cover", 0) == 0) {
        if (inputs.size() != 1) return false;
        Int deg(rule.substr(6));
        return trim(cover_scale(*inputs[0], deg).b) == trim(b);
    }
    if (rule == "disjoint-union") {
        std::vector<L2Profile> ins;
        for (const auto& in : inputs) ins.push_back(*in);
        return trim(disjoint_union(ins).b) == trim(b);
    }
    if (rule.rfind("duality-completion", 0) == 0) {
        if (inputs.size() != 1 || !dim_n) return false;
        return trim(duality_completion(*inputs[0], *dim_n).b) == trim(b);
    }
    return false;
}

std::string L2Profile::str() const {
    std::ostringstream os;
    os << label << ": (";
    for (size_t k = 0; k < b.size(); ++k) os << (k ? ", " : "") << b[k];
    os << ")";
    if (dim_n) os << ", n = " << *dim_n;
    if (closed_manifold) os << ", closed";
    if (rationally_aspherical) os << ", rationally aspherical";
    os << " [" << (rule.empty() ? "atom" : rule) << "]";
    return os.str();
}

L2Profile atom_f2() {
    L2Profile p;
    p.label = "F_2";
    p.b = {Rat(0), Rat(1)};
    p.rule = "atom";
    return p;
}

L2Profile point_profile() {
    L2Profile p;
    p.label = "point";
    p.b = {Rat(1)};
    p.rule = "atom";
    return p;
}

L2Profile kunneth(const L2Profile& p, const L2Profile& q) {
    L2Profile out;
    out.label = p.label + " x " + q.label;
    if (!p.b.empty() && !q.b.empty())
        out.b.assign(p.b.size() + q.b.size() - 1, Rat(0));
    for (size_t i = 0; i < p.b.size(); ++i)
        for (size_t j = 0; j < q.b.size(); ++j) out.b[i + j] += p.b[i] * q.b[j];
    out.rule = "kunneth";
    out.inputs = {std::make_shared<L2Profile>(p), std::make_shared<L2Profile>(q)};
    out.validate();
    return out;
}

Rat euler_characteristic(const L2Profile& p) {
    Rat chi(0);
    for (size_t k = 0; k < p.b.size(); ++k) chi += (k % 2 == 0 ? p.b[k] : -p.b[k]);
    return chi;
}

L2Profile cover_scale(const L2Profile& p, const Int& degree) {
    if (degree < 1) throw InputError("cover degree must be >= 1");
    L2Profile out = p;
    out.label = p.label + " (degree " + degree.str() + " cover)";
    for (auto& x : out.b) x *= Rat(degree);
    out.rule = "cover " + degree.str();
    out.inputs = {std::make_shared<L2Profile>(p)};
    out.validate();
    return out;
}

L2Profile disjoint_union(const std::vector<L2Profile>& ps) {
    L2Profile out;
    out.label = "disjoint union";
    for (const auto& p : ps) {
        if (p.b.size() > out.b.size()) out.b.resize(p.b.size(), Rat(0));
        for (size_t k = 0; k < p.b.size(); ++k) out.b[k] += p.b[k];
        out.inputs.push_back(std::make_shared<L2Profile>(p));
    }
    out.rule = "disjoint-union";
    out.validate();
    return out;
}

L2Profile free_power_profile(int d) {
    if (d < 1) throw InputError("need at least one factor");
    L2Profile out = atom_f2();
    for (int i = 1; i < d; ++i) out = kunneth(out, atom_f2());
    out.label = "F_2^" + std::to_string(d);
    return out;
}

std::string Constraint::str() const {
    std::ostringstream os;
    os << "b_" << k << (rel == Relation::equal ? " = " : " >= ") << value.str();
    if (!origin.empty()) os << "   [" << origin << "]";
    return os.str();
}

std::optional<Constraint> ConstraintSet::find(int k) const {
    for (const auto& c : constraints)
        if (c.k == k) return c;
    return std::nullopt;
}

std::string ConstraintSet::str() const {
    std::ostringstream os;
    os << "constraints for U/G, n = " << n;
    if (closed_manifold) os << ", closed";
    if (rationally_aspherical) os << ", rationally aspherical";
    os << '\n';
    for (const auto& c : constraints) os << "  " << c.str() << '\n';
    return os.str();
}

LinForm symbolic_chambers() { return LinForm(Rat(1), Rat(0)); }

ConstraintSet davis_transfer(const L2Profile& p_m, const LinForm& chambers, int n) {
    ConstraintSet out;
    out.n = n;
    out.closed_manifold = true;
    out.rationally_aspherical = p_m.rationally_aspherical;
    const int middle = (n + 1) / 2;
    for (int k = n; k > middle; --k)
        out.constraints.push_back({k, Relation::equal, chambers.scaled(p_m.at(static_cast<size_t>(k))),
                                   "transfer above the middle"});
    out.constraints.push_back({middle, Relation::at_least,
                               chambers.scaled(p_m.at(static_cast<size_t>(middle))),
                               "transfer inequality at the middle"});
    // Poincare duality completion for the lower half
    for (int k = middle - 1; k >= 0; --k) {
        int mirror = n - k;
        auto partner = out.find(mirror);
        if (!partner) continue;
        out.constraints.push_back({k, partner->rel, partner->value, "duality completion"});
    }
    std::sort(out.constraints.begin(), out.constraints.end(),
              [](const Constraint& a, const Constraint& b) { return a.k < b.k; });
    return out;
}

SingerVerdict singer_verdict(const L2Profile& p, int n) {
    if (!p.closed_manifold || !p.rationally_aspherical) return SingerVerdict::not_applicable;
    for (size_t k = 0; k < p.b.size(); ++k) {
        if (p.b[k] == 0) continue;
        if (n % 2 != 0 || static_cast<int>(k) != n / 2) return SingerVerdict::violates;
    }
    return SingerVerdict::consistent;
}

SingerVerdict singer_verdict(const ConstraintSet& c) {
    if (!c.closed_manifold || !c.rationally_aspherical) return SingerVerdict::not_applicable;
    for (const auto& con : c.constraints) {
        bool off_middle = (c.n % 2 != 0) || (con.k != c.n / 2);
        if (!off_middle) continue;
        // an equality or a lower bound that is positive for every chamber
        // count already contradicts vanishing off the middle dimension
        if (con.value.always_positive()) return SingerVerdict::violates;
    }
    return SingerVerdict::consistent;
}

std::string verdict_str(SingerVerdict v) {
    switch (v) {
        case SingerVerdict::consistent: return "consistent";
        case SingerVerdict::violates: return "violates";
        case SingerVerdict::not_applicable: return "not applicable";
    }
    return "?";
}

Rat chi_gap(const Rat& b4, const Int& chambers) { return b4 - Rat(2) * Rat(chambers); }

L2Profile duality_completion(const L2Profile& p, int n) {
    L2Profile out = p;
    out.dim_n = n;
    out.b.resize(static_cast<size_t>(n) + 1, Rat(0));
    for (int k = 0; k <= n; ++k) {
        Rat m = std::max(p.at(static_cast<size_t>(k)), p.at(static_cast<size_t>(n - k)));
        out.b[static_cast<size_t>(k)] = m;
    }
    out.rule = "duality-completion " + std::to_string(n);
    out.inputs = {std::make_shared<L2Profile>(p)};
    return out;
}

}  // namespace qmoore
