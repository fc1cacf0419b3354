#include "qmoore/ring.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

RingElement RingElement::zero(const GroupSpec& spec, ScalarKind kind) {
    return RingElement(spec, kind);
}

RingElement RingElement::unit(const GroupSpec& spec, ScalarKind kind) {
    return monomial(spec, GroupElement::identity(spec), Rat(1), kind);
}

RingElement RingElement::monomial(const GroupSpec& spec, const GroupElement& g, const Rat& c,
                                  ScalarKind kind) {
    RingElement x(spec, kind);
    x.check_scalar(c);
    x.add_term(g, c);
    return x;
}

RingElement RingElement::fox_generator(const GroupSpec& spec, int generator, ScalarKind kind) {
    RingElement x(spec, kind);
    x.add_term(GroupElement::reduce(spec, {generator}), Rat(1));
    x.add_term(GroupElement::identity(spec), Rat(-1));
    return x;
}

Rat RingElement::coeff(const GroupElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rat(0) : it->second;
}

void RingElement::add_term(const GroupElement& g, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    recompute_radius();
}

void RingElement::recompute_radius() {
    radius_ = 0;
    for (const auto& [g, c] : terms_) radius_ = std::max(radius_, g.length());
}

void RingElement::check_compatible(const RingElement& rhs) const {
    if (spec_ != rhs.spec_) throw TypeError("ring elements over different groups");
    if (kind_ != rhs.kind_) throw TypeError("ring elements of different scalar kinds");
}

void RingElement::check_scalar(const Rat& c) const {
    if (kind_ == ScalarKind::integer && !is_integral(c))
        throw TypeError("non-integral coefficient in an integral group ring");
}

RingElement RingElement::operator+(const RingElement& rhs) const {
    check_compatible(rhs);
    RingElement out(*this);
    for (const auto& [g, c] : rhs.terms_) out.add_term(g, c);
    return out;
}

RingElement RingElement::operator-(const RingElement& rhs) const {
    check_compatible(rhs);
    RingElement out(*this);
    for (const auto& [g, c] : rhs.terms_) out.add_term(g, -c);
    return out;
}

RingElement RingElement::operator-() const { return scaled(Rat(-1)); }

RingElement RingElement::scaled(const Rat& c) const {
    RingElement out(spec_, kind_);
    out.check_scalar(c);
    if (c == 0) return out;
    for (const auto& [g, x] : terms_) out.terms_.emplace(g, x * c);
    out.recompute_radius();
    return out;
}

RingElement RingElement::operator*(const RingElement& rhs) const {
    check_compatible(rhs);
    RingElement out(spec_, kind_);
    for (const auto& [g, a] : terms_)
        for (const auto& [h, b] : rhs.terms_) out.add_term(g.mul(h), a * b);
    return out;
}

bool RingElement::operator==(const RingElement& rhs) const {
    return spec_ == rhs.spec_ && terms_ == rhs.terms_;
}

RingElement RingElement::involute() const {
    RingElement out(spec_, kind_);
    for (const auto& [g, c] : terms_) out.terms_.emplace(g.inverse(), c);
    out.recompute_radius();
    return out;
}

Rat RingElement::augmentation() const {
    Rat s(0);
    for (const auto& [g, c] : terms_) s += c;
    return s;
}

RingElement RingElement::to_kind(ScalarKind kind) const {
    RingElement out(spec_, kind);
    for (const auto& [g, c] : terms_) {
        out.check_scalar(c);
        out.terms_.emplace(g, c);
    }
    out.recompute_radius();
    return out;
}

RingElement RingElement::embed(const GroupSpec& target, int factor_offset) const {
    RingElement out(target, kind_);
    for (const auto& [g, c] : terms_) out.terms_.emplace(g.embed(target, factor_offset), c);
    out.recompute_radius();
    return out;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << " + ";
        os << c << '*' << g.str(spec_);
        first = false;
    }
    return os.str();
}

RingElement RingElement::parse(const GroupSpec& spec, const std::string& text, ScalarKind kind) {
    RingElement out(spec, kind);
    std::string t = text;
    if (t == "0") return out;
    size_t pos = 0;
    while (pos < t.size()) {
        size_t next = t.find(" + ", pos);
        std::string term = t.substr(pos, next == std::string::npos ? next : next - pos);
        size_t star = term.find('*');
        if (star == std::string::npos)
            throw InputError("bad ring element term '" + term + "' (expected coeff*element)");
        Rat c;
        try {
            c = Rat(term.substr(0, star));
        } catch (const std::exception&) {
            throw InputError("bad coefficient in '" + term + "'");
        }
        out.check_scalar(c);
        GroupElement g = GroupElement::parse(spec, term.substr(star + 1));
        out.add_term(g, c);
        pos = next == std::string::npos ? t.size() : next + 3;
    }
    return out;
}

}  // namespace qmoore
