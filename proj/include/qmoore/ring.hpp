#pragma once

#include <map>
#include <string>

#include "qmoore/group.hpp"
#include "qmoore/scalar.hpp"

namespace qmoore {

enum class ScalarKind { integer, rational };

// Finite formal linear combination of group elements with exact coefficients.
// Zero coefficients are never stored; the support radius (max word length in
// the support) is tracked. Values are immutable in spirit: all operations
// return fresh elements.
class RingElement {
  public:
    RingElement(GroupSpec spec, ScalarKind kind) : spec_(std::move(spec)), kind_(kind) {}

    static RingElement zero(const GroupSpec& spec, ScalarKind kind = ScalarKind::rational);
    static RingElement unit(const GroupSpec& spec, ScalarKind kind = ScalarKind::rational);
    static RingElement monomial(const GroupSpec& spec, const GroupElement& g, const Rat& c,
                                ScalarKind kind = ScalarKind::rational);
    // g - 1 for the 1-based global generator index
    static RingElement fox_generator(const GroupSpec& spec, int generator,
                                     ScalarKind kind = ScalarKind::rational);

    const GroupSpec& spec() const { return spec_; }
    ScalarKind kind() const { return kind_; }
    const std::map<GroupElement, Rat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int support_size() const { return static_cast<int>(terms_.size()); }
    // Max word length over the support; 0 for the zero element.
    int radius() const { return radius_; }
    Rat coeff(const GroupElement& g) const;

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator-() const;
    // Convolution product.
    RingElement operator*(const RingElement& rhs) const;
    RingElement scaled(const Rat& c) const;
    bool operator==(const RingElement& rhs) const;

    // sum c_g g  ->  sum c_g g^{-1}
    RingElement involute() const;
    // Augmentation (sum of coefficients), a ring homomorphism onto the scalars.
    Rat augmentation() const;

    RingElement to_kind(ScalarKind kind) const;
    // Extend scalars along a factor-block inclusion into a product group.
    RingElement embed(const GroupSpec& target, int factor_offset) const;

    // Canonical text: terms joined by " + ", each "coeff*element", support order.
    std::string str() const;
    static RingElement parse(const GroupSpec& spec, const std::string& text,
                             ScalarKind kind = ScalarKind::rational);

  private:
    GroupSpec spec_;
    ScalarKind kind_;
    std::map<GroupElement, Rat> terms_;
    int radius_ = 0;

    void add_term(const GroupElement& g, const Rat& c);
    void recompute_radius();
    void check_compatible(const RingElement& rhs) const;
    void check_scalar(const Rat& c) const;
};

}  // namespace qmoore
