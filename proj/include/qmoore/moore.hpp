#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmoore/complex.hpp"
#include "qmoore/lie.hpp"
#include "qmoore/sampling.hpp"

namespace qmoore {

// A translated orbit cell of the equivariant model. The cell lives in chain
// degree cell_degree; as a Lie generator it sits one degree lower.
struct GenKey {
    int cell_degree = 0;
    int cell = 0;
    GroupElement g;

    int gen_degree() const { return cell_degree - 1; }
    bool operator==(const GenKey& rhs) const {
        return cell_degree == rhs.cell_degree && cell == rhs.cell && g == rhs.g;
    }
    bool operator<(const GenKey& rhs) const {
        if (cell_degree != rhs.cell_degree) return cell_degree < rhs.cell_degree;
        if (cell != rhs.cell) return cell < rhs.cell;
        return g < rhs.g;
    }
};

// Basis monomial over the translated-cell alphabet: the standard bracketing
// of a Lyndon word in GenKeys, or the self-bracket of an odd-degree one.
struct LGMono {
    std::vector<GenKey> word;
    bool square = false;

    int gen_degree() const;
    int bracket_length() const { return static_cast<int>(word.size()) * (square ? 2 : 1); }
    int support_radius() const;
    bool operator==(const LGMono& rhs) const { return square == rhs.square && word == rhs.word; }
    bool operator<(const LGMono& rhs) const;
};

class LGElement {
  public:
    const std::map<LGMono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const LGMono& m, const Rat& c);
    LGElement operator+(const LGElement& rhs) const;
    LGElement operator-(const LGElement& rhs) const;
    LGElement scaled(const Rat& c) const;
    bool operator==(const LGElement& rhs) const { return terms_ == rhs.terms_; }

    int max_bracket_length() const;
    int support_radius() const;
    // lcm of coefficient denominators
    Int denominator_lcm() const;

  private:
    std::map<LGMono, Rat> terms_;
};

// Bracket expression over translated cells, the input of the normalizer.
struct LGExpr {
    std::optional<GenKey> leaf;
    std::shared_ptr<const LGExpr> left, right;

    static LGExpr gen(const GenKey& k);
    static LGExpr bracket(const LGExpr& a, const LGExpr& b);
    bool is_leaf() const { return leaf.has_value(); }
    int gen_degree() const;
};

using LGExprSum = std::vector<std::pair<Rat, LGExpr>>;

// Rewrites into the Lyndon basis over the (dynamically collected) alphabet of
// translated cells. Normal forms agree across alphabets: Lyndon structure
// only depends on the relative order of the letters.
LGElement lg_normalize(const LGExprSum& sum);
LGElement lg_normalize(const LGExpr& e);
LGExpr lg_bracketing(const LGMono& m);
LGElement lg_bracket(const LGElement& a, const LGElement& b);
// Left translation of every letter, then renormalization.
LGElement lg_translate(const LGElement& e, const GroupElement& gamma);

std::string lg_str(const LGElement& e, const GroupSpec& spec);
std::string lg_mono_str(const LGMono& m, const GroupSpec& spec);
LGElement lg_parse(const GroupSpec& spec, const std::string& text);

struct ModelCaps {
    int bracket_cap = 2;
    int support_radius = 3;
    long long max_scale = 1000000;     // guard on the integrality scale N
    long long solver_budget = 2000000;  // max window monomials per solve
};

// The equivariant rational Moore space model: free QGamma-cells in degrees
// r..top, a degree -1 differential into the Lie algebra of translated cells,
// and a section s of the bracket-killing projection h. Everything is defined
// on orbit generators and extended equivariantly.
struct EquivariantDGLModel {
    GroupSpec spec;
    int r = 0;
    int top = -1;
    std::map<int, int> rank;                       // orbit cells per degree
    std::map<int, std::vector<LGElement>> d_orbit;  // differential per orbit cell
    std::map<int, std::vector<LGElement>> s_orbit;  // section value per orbit cell
    std::map<int, Int> scale;                      // N_n for attached degrees
    ModelCaps caps;

    // Leibniz extension; leaves look up d_orbit and translate.
    LGElement d(const LGElement& e) const;
    // s extended QGamma-linearly over a cell column of the given degree.
    LGElement s_of_column(int degree, const std::vector<RingElement>& column) const;
    LGElement s_of_generator(int degree, int cell, const GroupElement& g) const;

    // h: kill brackets; the cell column of an element.
    std::vector<RingElement> bracket_free_part(int degree_of_cells, const LGElement& e) const;
    RingMatrix bracket_free_boundary(int degree) const;
    FreeComplex bracket_free_complex() const;
};

struct AttachReport {
    int degree = 0;                 // degree of the attached cells
    int cells = 0;
    Int scale = 1;
    int solver_window_monomials = 0;
    int solver_rank = 0;
    int support_radius_used = 0;
    bool phi_nonzero = false;
    std::string verification;  // "ok" or a diagnosis
};

struct MooreBuildReport {
    GroupSpec spec;
    int r = 0;
    ModelCaps caps;
    std::vector<AttachReport> steps;

    std::string str() const;
};

struct ModelVerification {
    bool h_section_identity = false;
    bool section_chain_map = false;
    bool dd_zero = false;
    bool equivariance = false;
    bool bracket_free_matches = false;  // equals (F, N f) entrywise
    int samples = 0;

    bool all() const {
        return h_section_identity && section_chain_map && dd_zero && equivariance &&
               bracket_free_matches;
    }
    std::string str() const;
};

// Wedge of rank many r-spheres: zero differential, s = inclusion. r >= 2.
EquivariantDGLModel init_wedge(const GroupSpec& spec, int r, int rank, ModelCaps caps = {});

// One step of the section-splitting procedure: attach cells along f (columns
// = new orbit cells, entries over QGamma landing in cycles of the bracket-free
// part). Chooses d(x) = N(f(x) + B_min(x)) with B_min the canonical reduction
// of the bracket part of s(f(x)) modulo boundaries of window monomials, and
// s(x) = x + phi(x) with phi the reduction witness.
AttachReport attach_step(EquivariantDGLModel& model, const RingMatrix& f);

struct MooreBuild {
    EquivariantDGLModel model;
    MooreBuildReport report;
    DualizingResolution resolution;
};

MooreBuild build_moore_model(const GroupSpec& spec, int r, ModelCaps caps = {});

// Exact re-verification of all model invariants; equivariance and the section
// laws are checked on `samples` random group elements per orbit cell.
ModelVerification verify_model(const EquivariantDGLModel& model,
                               const FreeComplex& resolution, int samples = 20,
                               unsigned long long seed = 1);

// A complex with a chain map to the classifying complex of the group.
struct ClassifyingPair {
    FreeComplex complex;
    FreeComplex classifying;
    std::map<int, RingMatrix> to_classifying;  // per degree of `complex`

    void validate() const;  // shapes + chain-map law
};

// C(EGamma) + the model's bracket-free complex, mapped by projection.
ClassifyingPair classifying_union(const EquivariantDGLModel& model);

struct SelfDualityReport {
    bool rank_palindromic = false;
    std::vector<int> rank_sequence;
    bool matrices_dual_up_to_scale = false;
    long long chi = 0;
    long long chi_expected = 0;  // chi(BGamma) (1 + (-1)^{r+d})

    bool all() const { return rank_palindromic && matrices_dual_up_to_scale && chi == chi_expected; }
    std::string str() const;
};

SelfDualityReport self_duality_check(const ClassifyingPair& pair, int r, int d,
                                     const std::map<int, Int>& scales);

// Algebraic double mapping cylinder of complex -> classifying: two copies of
// C(EGamma) glued along the complex, with the folded classifying map.
ClassifyingPair suspend(const ClassifyingPair& pair);

std::string write_model(const EquivariantDGLModel& model);
EquivariantDGLModel read_model(const std::string& text);

}  // namespace qmoore
