#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmoore/complex.hpp"
#include "qmoore/sparse.hpp"

namespace qmoore {

// Finite-propagation operator on the coordinate space Q[Gamma]: a finite
// Q-combination of two-sided translations x -> u x v. Plain module maps of
// free left modules act by right convolution (u = identity); the diagonal
// tensor-square complexes of the homology computations also need the left
// side.
class ConvOp {
  public:
    explicit ConvOp(GroupSpec spec) : spec_(std::move(spec)) {}

    static ConvOp zero(const GroupSpec& spec) { return ConvOp(spec); }
    // x -> x * a
    static ConvOp right(const RingElement& a);
    // x -> a * x
    static ConvOp left(const RingElement& a);
    static ConvOp two_sided(const GroupSpec& spec, const GroupElement& u, const GroupElement& v,
                            const Rat& c);

    const GroupSpec& spec() const { return spec_; }
    bool is_zero() const { return terms_.empty(); }
    // max over terms of len(u) + len(v)
    int radius() const;

    ConvOp operator+(const ConvOp& rhs) const;
    ConvOp scaled(const Rat& c) const;
    // this after rhs
    ConvOp compose(const ConvOp& rhs) const;
    bool operator==(const ConvOp& rhs) const { return terms_ == rhs.terms_; }

    std::vector<std::pair<GroupElement, Rat>> apply(const GroupElement& x) const;

  private:
    GroupSpec spec_;
    std::map<std::pair<GroupElement, GroupElement>, Rat> terms_;

    void add_term(const GroupElement& u, const GroupElement& v, const Rat& c);
};

class OpMatrix {
  public:
    OpMatrix() = default;
    OpMatrix(GroupSpec spec, int rows, int cols)
        : spec_(std::move(spec)), rows_(rows), cols_(cols) {}

    const GroupSpec& spec() const { return spec_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<std::pair<int, int>, ConvOp>& entries() const { return entries_; }

    ConvOp entry(int r, int c) const;
    void set(int r, int c, const ConvOp& op);
    bool is_zero() const { return entries_.empty(); }
    int max_radius() const;
    OpMatrix compose(const OpMatrix& rhs) const;

  private:
    GroupSpec spec_;
    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, ConvOp> entries_;
};

// Chain complex of infinite-rank spaces (Q[Gamma])^{rank per degree} whose
// boundary operators have finite propagation.
struct PropagationComplex {
    GroupSpec spec;
    int lo = 0;
    int hi = -1;
    std::vector<int> ranks;
    std::map<int, OpMatrix> boundary;       // boundary[n]: degree n -> n-1
    std::map<int, int> propagation_bound;   // declared, per boundary degree

    int rank(int degree) const;
    bool in_range(int degree) const { return degree >= lo && degree <= hi; }
    int max_propagation() const;
    // shapes, dd = 0 as operators, declared bounds >= actual radii
    void validate() const;

    static PropagationComplex from_free_complex(const FreeComplex& c);
};

struct DegreeEstimate {
    int degree = 0;
    std::vector<std::pair<int, int>> estimates;  // (outer radius, window dimension)
    bool stabilized = false;
    int value = 0;  // last estimate
    bool monotonicity_violated = false;
};

struct TruncationReport {
    GroupSpec spec;
    int margin = 0;
    std::vector<int> radii;
    std::vector<DegreeEstimate> degrees;

    const DegreeEstimate& at(int degree) const;
    // per-radius tables; results are numerically stabilized, not certified
    std::string table() const;
};

// For each outer radius R, counts homology classes represented by cycles
// supported in ball(R - margin) that survive against boundaries from ball(R).
// All arithmetic is exact; "stabilized" means two consecutive radii agree.
// margin < max propagation bound is a precondition error; margin < 0 picks
// the smallest valid margin.
TruncationReport truncated_homology(const PropagationComplex& p, const std::vector<int>& radii,
                                    int margin = -1);

struct InvariantsResult {
    int dimension = 0;
    bool exact = false;       // witness radii are provably sufficient
    bool stabilized = false;  // two consecutive window radii agree
    std::string method;

    std::string str() const;
};

// Dimension of the Gamma-invariant classes of coker(relations) that admit a
// finitely supported representative in the tested windows. Free presentations
// are resolved by the orbit argument; flagged trivial-action generators each
// contribute one; dual-Fox-shaped single-column presentations get exact
// witness bounds from the support-growth lemma, everything else stabilizes
// heuristically with a wider witness margin.
InvariantsResult invariants_dimension(const ModulePresentation& m,
                                      const std::vector<int>& radii = {2, 3, 4, 5},
                                      int witness_margin = 2);

}  // namespace qmoore
