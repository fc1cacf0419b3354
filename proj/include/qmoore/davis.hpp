#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmoore/complex.hpp"

namespace qmoore {

// Finite abstract simplicial complex; simplices are sorted vertex tuples.
struct SimplicialComplex {
    int vertices = 0;
    std::vector<std::vector<int>> simplices;  // all faces, downward closed, sorted

    static SimplicialComplex from_top_faces(int vertices, std::vector<std::vector<int>> faces);
    void validate() const;  // sortedness, range, downward closure
    int dim() const;
    bool has_simplex(const std::vector<int>& s) const;
    std::vector<std::vector<int>> cells_of_dim(int d) const;
    // chain complex with the sorted-vertex orientation
    ScalarComplex chain_complex() const;
    // chain complex of the pair (this, sub): cells outside the subcomplex
    ScalarComplex relative_chain_complex(const SimplicialComplex& sub) const;
};

struct FlagCheckResult {
    bool flag = false;
    std::vector<int> witness;  // a minimal non-spanning clique when not flag
};

// A complex is flag when every pairwise-adjacent vertex set spans a simplex.
FlagCheckResult flag_check(const SimplicialComplex& k);

// Right-angled Coxeter presentation read off a flag complex: one involution
// per vertex, commuting along edges.
struct CoxeterSpec {
    int vertices = 0;
    std::vector<std::pair<int, int>> commuting_pairs;

    static CoxeterSpec from_flag_complex(const SimplicialComplex& l);
    std::string presentation() const;
};

struct BarycentricSubdivision {
    SimplicialComplex complex;
    std::vector<std::vector<int>> vertex_labels;  // bsd vertex -> simplex of L
};

BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& l);

// M with its boundary piece identified with bsd(L); the mirror over an
// L-vertex v is the closed star of v in the subdivision, pushed into M.
struct MirroredSpace {
    SimplicialComplex m;
    SimplicialComplex l;
    std::vector<int> bsd_vertex_in_m;  // bsd(L) vertex -> M vertex
    // overrides the bsd-derived mirrors when nonempty (negative controls)
    std::vector<std::vector<int>> explicit_mirror_sets;

    void validate() const;
    // per L-vertex: the M-simplices of its mirror St_v
    std::vector<std::vector<std::vector<int>>> mirrors() const;
    // mirror set of an M-simplex: the L-vertices whose mirror contains it
    std::vector<int> mirror_set(const std::vector<int>& simplex) const;

    // Hand-built mirror structure (for negative controls and custom inputs).
    static MirroredSpace from_explicit_mirrors(SimplicialComplex m, int l_vertices,
                                               std::vector<std::vector<int>> mirror_vertex_sets);
};

struct BasicConstruction {
    int chambers = 0;  // 2^{|V|}
    std::vector<long long> cells_per_dim;
    ScalarComplex complex;  // integral cellular chain complex of U/G
    // cell bookkeeping: per dim, (simplex index in M, chamber representative)
    std::vector<std::vector<std::pair<int, unsigned>>> cell_reps;

    long long total_cells() const;
};

// The identification space (M x Q)/~ over Q = (Z/2)^V, where (x,u) ~ (x,v)
// iff u v^{-1} lies in the subgroup spanned by the mirrors through x. The
// equivalence is rebuilt by union-find closure and cross-checked against the
// coset description.
BasicConstruction basic_construction(const MirroredSpace& s);

struct DecompositionReport {
    std::vector<int> left_q, right_q;    // Betti of U/G vs the subset sum, over Q
    std::vector<int> left_f2, right_f2;  // same over F_2
    bool agree = false;
    long long chi_left = 0, chi_right = 0;

    std::string str() const;
};

// Davis's decomposition in its finite-quotient form:
// H_*(U/G) ~ sum over subsets T of V of H_*(M, M^T), M^T the union of mirrors.
DecompositionReport decomposition_check(const MirroredSpace& s);

struct DualityReport {
    bool pure = false;                  // every cell is a face of a top cell
    bool closed_pseudo_manifold = false;  // every (n-1)-cell meets exactly 2 n-cells
    std::optional<std::pair<int, unsigned>> witness;  // offending cell if broken
    std::vector<int> betti_f2;
    bool palindromic = false;

    std::string str() const;
};

DualityReport duality_check(const BasicConstruction& b, int n);

// File format: vertex counts, top faces of L and M, bsd embedding.
std::string write_mirrored_space(const MirroredSpace& s);
MirroredSpace read_mirrored_space(const std::string& text);

// Shipped examples.
MirroredSpace example_interval();          // M = interval, L = S^0; U/G = circle
MirroredSpace example_disk_square();       // M = disk over the 4-cycle; U/G = torus
MirroredSpace example_annulus();           // one boundary circle mirrored, one free
// disk over an m-cycle, m >= 4; U/G is a closed surface of chi = 2^m (1 - m/4)
MirroredSpace example_disk_polygon(int m);

}  // namespace qmoore
