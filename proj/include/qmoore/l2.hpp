#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmoore/errors.hpp"
#include "qmoore/scalar.hpp"

namespace qmoore {

// Value linear in the chamber count: coef * chambers + constant. The symbolic
// form lets one verdict cover every finite quotient at once.
struct LinForm {
    Rat coef;
    Rat constant;

    LinForm() : coef(0), constant(0) {}
    explicit LinForm(Rat c) : coef(0), constant(std::move(c)) {}
    LinForm(Rat chamber_coef, Rat c) : coef(std::move(chamber_coef)), constant(std::move(c)) {}

    LinForm operator+(const LinForm& rhs) const { return {coef + rhs.coef, constant + rhs.constant}; }
    LinForm scaled(const Rat& c) const { return {coef * c, constant * c}; }
    bool operator==(const LinForm& rhs) const = default;
    Rat eval(const Int& chambers) const { return coef * Rat(chambers) + constant; }
    bool is_zero() const { return coef == 0 && constant == 0; }
    // positive for every chamber count >= 1
    bool always_positive() const { return coef >= 0 && coef + constant > 0; }
    std::string str() const;
};

// Finitely supported vector of L2 Betti numbers with provenance. Values are
// exact rationals manipulated by ledger rules, never computed analytically.
struct L2Profile {
    std::string label;
    std::optional<int> dim_n;
    std::vector<Rat> b;
    bool closed_manifold = false;
    bool rationally_aspherical = false;
    std::string rule;  // "atom" or the producing rule
    std::vector<std::shared_ptr<const L2Profile>> inputs;

    Rat at(size_t k) const { return k < b.size() ? b[k] : Rat(0); }
    void validate() const;  // nonnegative entries; closed duality when flagged

    // recompute this profile from its recorded rule chain and compare
    bool replay_matches() const;

    std::string str() const;
};

// The single seeded atom: b(F_2) = (0, 1).
L2Profile atom_f2();
L2Profile point_profile();

L2Profile kunneth(const L2Profile& p, const L2Profile& q);
Rat euler_characteristic(const L2Profile& p);
L2Profile cover_scale(const L2Profile& p, const Int& degree);
L2Profile disjoint_union(const std::vector<L2Profile>& ps);
// b(F_2^d) by iterated kunneth from the atom
L2Profile free_power_profile(int d);

enum class Relation { equal, at_least };

struct Constraint {
    int k = 0;
    Relation rel = Relation::equal;
    LinForm value;
    std::string origin;

    std::string str() const;
};

struct ConstraintSet {
    int n = 0;  // manifold dimension
    bool closed_manifold = true;
    bool rationally_aspherical = false;
    std::vector<Constraint> constraints;

    std::optional<Constraint> find(int k) const;
    std::string str() const;
};

// The transfer of the reflection-group argument: equalities
// b_k(U/G) = chambers * b_k(M) above floor((n+1)/2), the inequality at the
// middle index, and the closed-manifold duality completion below it.
// A negative chambers count means "symbolic 2^m, any m >= 0".
ConstraintSet davis_transfer(const L2Profile& p_m, const LinForm& chambers, int n);
LinForm symbolic_chambers();

enum class SingerVerdict { consistent, violates, not_applicable };

// The vanishing statement off the middle dimension, checked on a profile or
// on a constraint set; a positive lower bound off-middle already violates.
SingerVerdict singer_verdict(const L2Profile& p, int n);
SingerVerdict singer_verdict(const ConstraintSet& c);
std::string verdict_str(SingerVerdict v);

// chi = b_4(U/G) - 2 |W/G| for an 8-dimensional reflection quotient.
Rat chi_gap(const Rat& b4, const Int& chambers);

// Idempotent palindromic completion b_k = max(b_k, b_{n-k}); never decreases.
L2Profile duality_completion(const L2Profile& p, int n);

}  // namespace qmoore
