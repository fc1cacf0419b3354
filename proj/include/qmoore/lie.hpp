#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qmoore/complex.hpp"
#include "qmoore/sparse.hpp"

namespace qmoore {

struct GradedGenerators {
    std::vector<std::string> names;
    std::vector<int> degrees;

    int count() const { return static_cast<int>(names.size()); }
    void validate() const;  // unique names, positive degrees
    int min_degree() const;
    std::string str() const;
    static GradedGenerators parse(const std::string& text);  // "x:1,y:2"
};

using TensorWord = std::vector<int>;  // generator indices

// Element of the tensor algebra T(V), graded by generator degrees.
class TensorElement {
  public:
    const std::map<TensorWord, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const TensorWord& w, const Rat& c);
    TensorElement operator+(const TensorElement& rhs) const;
    TensorElement scaled(const Rat& c) const;
    // concatenation product
    TensorElement concat(const TensorElement& rhs) const;
    bool operator==(const TensorElement& rhs) const { return terms_ == rhs.terms_; }

  private:
    std::map<TensorWord, Rat> terms_;
};

// Formal bracket expression, the input format of the normalizer.
struct LieExpr {
    int generator = -1;  // leaf when >= 0
    std::shared_ptr<const LieExpr> left, right;

    static LieExpr gen(int index);
    static LieExpr bracket(const LieExpr& a, const LieExpr& b);
    bool is_leaf() const { return generator >= 0; }
    std::string str(const GradedGenerators& gens) const;  // e.g. [[x1,x2],x1]
};

using LieExprSum = std::vector<std::pair<Rat, LieExpr>>;

// Basis monomial of the free graded Lie algebra: the standard bracketing of a
// Lyndon word, or the self-bracket [b_w, b_w] of an odd-degree Lyndon word.
struct BasisMono {
    TensorWord word;
    bool square = false;

    auto operator<=>(const BasisMono&) const = default;
};

// Normalized element: coordinates over the graded Lyndon basis.
class LieElement {
  public:
    const std::map<BasisMono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const BasisMono& m, const Rat& c);
    LieElement operator+(const LieElement& rhs) const;
    LieElement operator-(const LieElement& rhs) const;
    LieElement scaled(const Rat& c) const;
    bool operator==(const LieElement& rhs) const { return terms_ == rhs.terms_; }

  private:
    std::map<BasisMono, Rat> terms_;
};

// Free graded Lie algebra over Q on graded generators, truncated at an
// explicit degree cap. Every query beyond the cap is a hard error.
class LieContext {
  public:
    LieContext(GradedGenerators gens, int degree_cap);

    const GradedGenerators& gens() const { return gens_; }
    int cap() const { return cap_; }

    int word_degree(const TensorWord& w) const;
    int mono_degree(const BasisMono& m) const;
    int expr_degree(const LieExpr& e) const;
    int element_degree(const LieElement& e) const;  // -1 for 0, error if mixed

    const std::vector<TensorWord>& words(int degree) const;
    const std::vector<BasisMono>& basis(int degree) const;

    // Hall/Lyndon basis count in the given degree.
    int dimension(int degree) const;
    // Witt-type count from the Poincare series of T(V) = U(L).
    int witt_dimension(int degree) const;
    // Kernel rank of the reduced diagonal on T(V) in the given degree.
    int primitives_dimension(int degree) const;

    TensorElement expand(const BasisMono& m) const;
    TensorElement embed_in_tensor(const LieElement& e) const;
    TensorElement expand_expr(const LieExpr& e) const;

    // Rewrites into the graded Lyndon basis; independent of expression shape.
    LieElement normalize(const LieExprSum& sum) const;
    LieElement normalize(const LieExpr& e) const { return normalize(LieExprSum{{Rat(1), e}}); }
    // Inverse of embed_in_tensor on the Lie subspace; throws if the tensor
    // element is not a combination of basis expansions.
    LieElement from_tensor(const TensorElement& t) const;

    LieElement bracket(const LieElement& a, const LieElement& b) const;

    LieExpr bracketing(const BasisMono& m) const;

    std::string str(const LieElement& e) const;

  private:
    GradedGenerators gens_;
    int cap_;
    mutable std::map<int, std::vector<TensorWord>> words_;
    mutable std::map<int, std::map<TensorWord, int>> word_index_;
    mutable std::map<int, std::vector<BasisMono>> basis_;
    mutable std::map<int, SparseEliminator> solver_;  // basis expansions, tags = basis ids

    void check_cap(int degree) const;
    const SparseEliminator& solver(int degree) const;
    SparseVecQ tensor_to_vec(const TensorElement& t, int degree) const;
};

// (-1)^k bookkeeping between Whitehead products and Lie brackets.
LieElement whitehead_sign(int k, const LieElement& e);

// Differential graded Lie algebra: the differential is defined on generators
// (degree -1) and extended by the graded Leibniz rule.
struct DGL {
    std::shared_ptr<const LieContext> ctx;
    std::vector<LieElement> differential;  // per generator

    void validate() const;  // degree -1, dd = 0 on generators up to cap
    LieElement d(const LieElement& e) const;
    LieElement d_mono(const BasisMono& m) const;

    // dim ker d_n - dim im d_{n+1}; needs degree+1 <= cap.
    int homology_dimension(int degree) const;

    // Generators span the complex; d drops to its bracket-free part.
    ScalarComplex hurewicz_complex() const;
    bool hurewicz_chain_map_holds() const;
};

DGL wedge_of_spheres(int count, int sphere_dim, int cap);  // zero differential, gens in degree r-1

}  // namespace qmoore
