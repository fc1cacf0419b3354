#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qmoore/errors.hpp"

namespace qmoore {

// A finite direct product of finitely generated free groups F_{k1} x ... x F_{km}.
struct GroupSpec {
    std::vector<int> factors;  // free-group ranks, one per direct factor

    GroupSpec() = default;
    explicit GroupSpec(std::vector<int> f);

    int factor_count() const { return static_cast<int>(factors.size()); }
    int total_generators() const;
    // 0-based index of the first global letter of a factor.
    int letter_offset(int factor) const;
    // factor containing a 0-based global letter index
    int factor_of_letter(int letter) const;

    bool operator==(const GroupSpec&) const = default;

    // Canonical form, e.g. "f2", "f2^4", "f2^2*f3".
    std::string str() const;
    static GroupSpec parse(const std::string& text);
};

// Group element in per-factor freely reduced normal form. Letters are stored
// per factor as 1-based local indices, negated for inverses. Equality is a
// syntactic check on the normal form.
class GroupElement {
  public:
    using Word = std::vector<std::int16_t>;

    GroupElement() = default;

    static GroupElement identity(const GroupSpec& spec);
    // Free reduction of a raw signed-letter sequence; letters are 1-based
    // global indices, negative for inverses. Confluent regardless of input
    // order. Unknown letters raise InputError.
    static GroupElement reduce(const GroupSpec& spec, const std::vector<int>& raw_letters);

    int factor_count() const { return static_cast<int>(words_.size()); }
    const Word& word(int factor) const { return words_[factor]; }
    // Product word metric: sum of the per-factor reduced lengths.
    int length() const;
    bool is_identity() const { return length() == 0; }

    GroupElement mul(const GroupElement& rhs) const;
    GroupElement inverse() const;

    // Place this element's factors at [offset, offset+factor_count) inside a
    // larger product, identity elsewhere.
    GroupElement embed(const GroupSpec& target, int factor_offset) const;

    // Canonical text form: per-factor words joined by '|', syllables like
    // a^2*B with uppercase meaning inverse, 'e' for an empty word. Letters are
    // global across factors (factor 0 uses a..; factor 1 continues after it).
    std::string str(const GroupSpec& spec) const;
    static GroupElement parse(const GroupSpec& spec, const std::string& text);

    // Graded order: total length first, then factorwise (length, letters).
    bool operator<(const GroupElement& rhs) const;
    bool operator==(const GroupElement& rhs) const { return words_ == rhs.words_; }

  private:
    std::vector<Word> words_;

    static void check_reduced(const Word& w);
    friend struct GroupElementRawAccess;
};

// Elements of word length <= radius, without duplicates, in the canonical
// graded order. Deterministic.
std::vector<GroupElement> ball(const GroupSpec& spec, int radius);

// |{g : |g| = n}|, counted by enumeration of per-factor spheres.
long long sphere_size(const GroupSpec& spec, int n);

}  // namespace qmoore
