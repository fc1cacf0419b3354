#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmoore/linalg.hpp"
#include "qmoore/ring.hpp"

namespace qmoore {

// Sparse matrix over a group ring. Columns index the source basis, rows the
// target basis of a map of free left modules: f(e_j) = sum_i A(i,j) e_i.
class RingMatrix {
  public:
    RingMatrix() = default;
    RingMatrix(GroupSpec spec, int rows, int cols, ScalarKind kind = ScalarKind::rational)
        : spec_(std::move(spec)), kind_(kind), rows_(rows), cols_(cols) {}

    const GroupSpec& spec() const { return spec_; }
    ScalarKind kind() const { return kind_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<std::pair<int, int>, RingElement>& entries() const { return entries_; }

    RingElement entry(int r, int c) const;
    void set(int r, int c, const RingElement& x);

    bool is_zero() const { return entries_.empty(); }
    bool operator==(const RingMatrix& rhs) const;
    int max_entry_radius() const;

    RingMatrix add(const RingMatrix& rhs) const;
    RingMatrix scaled(const Rat& c) const;
    // Composition "this after rhs" for left-module maps; entry order of the
    // noncommutative products follows from f(e_j) = sum A(i,j) e_i.
    RingMatrix compose(const RingMatrix& rhs) const;
    // Matrix of the dual map Hom(-, QGamma): involuted transpose.
    RingMatrix dual() const;
    RingMatrix embed(const GroupSpec& target, int factor_offset) const;
    RingMatrix to_kind(ScalarKind kind) const;
    // Entrywise augmentation.
    QMat augmented() const;

  private:
    GroupSpec spec_;
    ScalarKind kind_ = ScalarKind::rational;
    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, RingElement> entries_;  // nonzero only

    void check_index(int r, int c) const;
};

// Chain complex of finitely generated free modules over a group ring, with
// absolute (integer) degree indexing. boundary(n) maps degree n to n-1 and is
// present for lo < n <= hi.
struct FreeComplex {
    GroupSpec spec;
    int lo = 0;
    int hi = -1;
    std::vector<int> ranks;  // ranks[n - lo]
    std::map<int, RingMatrix> boundary;

    int rank(int degree) const;
    bool in_range(int degree) const { return degree >= lo && degree <= hi; }
    // checks shapes and dd = 0 exactly
    void validate() const;
    long long euler_characteristic() const;  // sum (-1)^degree rank
};

// Chain complex of finite dimensional rational vector spaces.
struct ScalarComplex {
    int lo = 0;
    int hi = -1;
    std::vector<int> ranks;
    std::map<int, QMat> boundary;

    int rank(int degree) const;
    bool in_range(int degree) const { return degree >= lo && degree <= hi; }
    void validate() const;
    long long euler_characteristic() const;
};

struct HomologySummary {
    int lo = 0;
    int hi = -1;
    std::vector<int> betti;                  // over Q, per degree
    std::vector<std::vector<Int>> torsion;   // nontrivial SNF entries of d_{n+1}, when integral

    int betti_at(int degree) const;
    std::string str() const;
};

// Betti_n = rank_n - rank d_n - rank d_{n+1}; torsion from Smith normal form.
HomologySummary homology(const ScalarComplex& s);
HomologySummary homology_gf2(const ScalarComplex& s);  // Betti over F_2, no torsion

// The standard free resolution of Z over ZF_k realized by the wedge of k
// circles: degrees {0,1}, d(e_i) = g_i - 1.
FreeComplex fox_complex(int k);

// Product classifying complex: the tensor of one Fox complex per free factor.
FreeComplex classifying_complex(const GroupSpec& spec);

// Total complex with the Koszul sign (-1)^{deg first factor} on the second
// differential. Specs concatenate. Degree-n basis: pairs (p, i, j) ordered by
// first-factor degree p, then i, then j.
FreeComplex tensor(const FreeComplex& c, const FreeComplex& cprime);

// Degree n of the output corresponds to degree top-n of the input; boundaries
// are involuted transposes: d^dual_n = dual(d_{top-n+1}).
FreeComplex dualize(const FreeComplex& c, int top);

ScalarComplex coinvariants(const FreeComplex& c);

// Module given as the cokernel of relations: F^{cols} -> F^{generators}.
// Generators listed in trivial_action_generators carry the trivial action
// (they contribute scalar summands), all others generate free orbits.
struct ModulePresentation {
    GroupSpec spec;
    int generators = 0;
    RingMatrix relations;  // rows = generators
    std::vector<int> trivial_action_generators;

    void validate() const;
};

struct DualizingResolution {
    int r = 0;
    int d = 0;            // degrees r .. r+d
    FreeComplex complex;  // F_* = dual of the classifying complex, top = r+d
    ModulePresentation dualizing_module;  // D = coker(F_{r+1} -> F_r)
};

// Requires r >= 2 (the realization theorem needs it).
DualizingResolution dualizing_resolution(const GroupSpec& spec, int r);

// Structured-text round trip for complexes.
std::string write_complex(const FreeComplex& c);
FreeComplex read_complex(const std::string& text);

}  // namespace qmoore
