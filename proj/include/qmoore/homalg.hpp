#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmoore/lie.hpp"
#include "qmoore/truncation.hpp"

namespace qmoore {

// A free resolution of a coefficient module, either of finite rank over the
// group ring or an infinite-rank finite-propagation complex. base_degree is
// the resolution degree computing H_0.
struct CoefficientResolution {
    std::variant<FreeComplex, PropagationComplex> complex;
    int base_degree = 0;
    std::string module_name;

    static CoefficientResolution finite(FreeComplex c, int base, std::string name);
    static CoefficientResolution propagation(PropagationComplex c, int base, std::string name);
};

struct GroupHomologyResult {
    int degree = 0;
    int dimension = 0;
    bool exact = false;       // finite-rank path
    bool stabilized = false;  // truncation path
    std::vector<Int> torsion;  // finite-rank integral case only

    std::string str() const;
};

// H_n(Gamma; module) from the resolution: coinvariants + SNF in the finite
// rank case, the window oracle otherwise.
GroupHomologyResult group_homology(const CoefficientResolution& res, int n,
                                   const std::vector<int>& radii = {2, 3, 4, 5, 6});

// The resolution of D tensor D over the diagonal group action, realized as a
// finite-propagation complex on Q[Gamma]-coordinates: coordinates are the
// orbit invariants delta = g^{-1} h, the left tensor factor acts by right
// convolution, the right factor by inverse left convolution.
PropagationComplex dd_complex(int k);
// the dual Fox resolution of the dualizing module of F_k, in degrees 1,0
FreeComplex dual_fox_resolution(int k);

struct Ext1Report {
    int r = 0, d = 0, k = 0;
    int index = 0;  // d + r - (k + 2)
    bool window_hypothesis = false;  // d - 1 > r > d/2
    enum class Verdict { vanishes_degree_reasons, potentially_nontrivial, boundary_case } verdict;

    std::string str() const;
};

// Ext^1(H_k, K_k) identified with H_{d+r-(k+2)}(BGamma; K_k); negative or
// above-d indices vanish for degree reasons, index 0 is the boundary case of
// the vanishing theorem.
Ext1Report ext1_via_duality(int r, int d, int k);

struct KernelProfile {
    int r = 0, d = 0;
    std::vector<int> degrees;              // r + n(r-1), n >= 1, up to the cap
    std::vector<bool> in_attachment_range;  // r < k <= r+d

    std::string str() const;
};

// Homotopy degrees carrying Whitehead-product kernel, cross-checkable against
// the free graded Lie algebra on generators of degree r-1.
KernelProfile kernel_degrees(int r, int d, int cap);

struct VanishingNode {
    std::string statement;
    std::string justification;
    std::vector<VanishingNode> children;

    std::string str(int indent = 0) const;
};

struct VanishingReport {
    int d = 0;
    bool vanishes = false;
    bool base_stabilized = false;
    VanishingNode tree;

    std::string str() const;
};

// H_{>0}(B F_2^d; D tensor D) = 0, assembled from the oracle-corroborated
// d = 1 base case and the Kunneth induction. perturb_base injects a fake
// nonzero base dimension for the negative-control test.
VanishingReport vanishing_assembly(int d, const std::vector<int>& radii = {2, 3, 4, 5, 6},
                                   int perturb_base = 0);

}  // namespace qmoore
