#include "qmoore/davis.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

SimplicialComplex SimplicialComplex::from_top_faces(int vertices,
                                                    std::vector<std::vector<int>> faces) {
    SimplicialComplex k;
    k.vertices = vertices;
    std::vector<std::vector<int>> queue = std::move(faces);
    while (!queue.empty()) {
        auto s = queue.back();
        queue.pop_back();
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) continue;
        if (std::find(k.simplices.begin(), k.simplices.end(), s) != k.simplices.end()) continue;
        k.simplices.push_back(s);
        if (s.size() > 1)
            for (size_t i = 0; i < s.size(); ++i) {
                auto t = s;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
                queue.push_back(t);
            }
    }
    std::sort(k.simplices.begin(), k.simplices.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    k.validate();
    return k;
}

void SimplicialComplex::validate() const {
    for (const auto& s : simplices) {
        if (s.empty()) throw InvariantViolation("empty simplex stored");
        if (!std::is_sorted(s.begin(), s.end())) throw InvariantViolation("unsorted simplex");
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InvariantViolation("repeated vertex in simplex");
        if (s.front() < 0 || s.back() >= vertices)
            throw InvariantViolation("simplex vertex out of range");
        if (s.size() > 1)
            for (size_t i = 0; i < s.size(); ++i) {
                auto t = s;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
                if (!has_simplex(t)) throw InvariantViolation("complex is not downward closed");
            }
    }
}

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

bool SimplicialComplex::has_simplex(const std::vector<int>& s) const {
    return std::find(simplices.begin(), simplices.end(), s) != simplices.end();
}

std::vector<std::vector<int>> SimplicialComplex::cells_of_dim(int d) const {
    std::vector<std::vector<int>> out;
    for (const auto& s : simplices)
        if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

ScalarComplex chain_complex_of_cells(const std::vector<std::vector<std::vector<int>>>& cells) {
    ScalarComplex out;
    out.lo = 0;
    out.hi = static_cast<int>(cells.size()) - 1;
    for (const auto& list : cells) out.ranks.push_back(static_cast<int>(list.size()));
    for (int n = 1; n <= out.hi; ++n) {
        QMat d(out.rank(n - 1), out.rank(n));
        for (int j = 0; j < out.rank(n); ++j) {
            const auto& s = cells[static_cast<size_t>(n)][static_cast<size_t>(j)];
            for (size_t i = 0; i < s.size(); ++i) {
                auto t = s;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = std::find(cells[static_cast<size_t>(n - 1)].begin(),
                                    cells[static_cast<size_t>(n - 1)].end(), t);
                if (it == cells[static_cast<size_t>(n - 1)].end()) continue;  // relative complex
                int row = static_cast<int>(it - cells[static_cast<size_t>(n - 1)].begin());
                d.at(row, j) += (i % 2 == 0) ? Rat(1) : Rat(-1);
            }
        }
        if (!d.is_zero()) out.boundary.emplace(n, std::move(d));
    }
    return out;
}

}  // namespace

ScalarComplex SimplicialComplex::chain_complex() const {
    std::vector<std::vector<std::vector<int>>> cells;
    for (int d = 0; d <= dim(); ++d) cells.push_back(cells_of_dim(d));
    return chain_complex_of_cells(cells);
}

ScalarComplex SimplicialComplex::relative_chain_complex(const SimplicialComplex& sub) const {
    std::vector<std::vector<std::vector<int>>> cells;
    for (int d = 0; d <= dim(); ++d) {
        std::vector<std::vector<int>> keep;
        for (const auto& s : cells_of_dim(d))
            if (!sub.has_simplex(s)) keep.push_back(s);
        cells.push_back(std::move(keep));
    }
    while (!cells.empty() && cells.back().empty()) cells.pop_back();
    if (cells.empty()) {
        ScalarComplex zero;
        zero.lo = 0;
        zero.hi = 0;
        zero.ranks = {0};
        return zero;
    }
    return chain_complex_of_cells(cells);
}

FlagCheckResult flag_check(const SimplicialComplex& k) {
    k.validate();
    std::vector<std::vector<bool>> adj(static_cast<size_t>(k.vertices),
                                       std::vector<bool>(static_cast<size_t>(k.vertices), false));
    for (const auto& s : k.simplices)
        if (s.size() == 2) {
            adj[static_cast<size_t>(s[0])][static_cast<size_t>(s[1])] = true;
            adj[static_cast<size_t>(s[1])][static_cast<size_t>(s[0])] = true;
        }
    // enumerate cliques by size; the first non-spanning one is minimal
    std::vector<std::vector<int>> cliques;
    for (int v = 0; v < k.vertices; ++v) cliques.push_back({v});
    for (int size = 2; size <= k.vertices; ++size) {
        std::vector<std::vector<int>> next;
        for (const auto& c : cliques)
            for (int v = c.back() + 1; v < k.vertices; ++v) {
                bool ok = true;
                for (int u : c)
                    if (!adj[static_cast<size_t>(u)][static_cast<size_t>(v)]) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                auto ext = c;
                ext.push_back(v);
                next.push_back(ext);
            }
        std::sort(next.begin(), next.end());
        for (const auto& c : next)
            if (!k.has_simplex(c)) return {false, c};
        cliques = std::move(next);
        if (cliques.empty()) break;
    }
    return {true, {}};
}

CoxeterSpec CoxeterSpec::from_flag_complex(const SimplicialComplex& l) {
    auto check = flag_check(l);
    if (!check.flag) throw InputError("nerve must be a flag complex");
    CoxeterSpec w;
    w.vertices = l.vertices;
    for (const auto& s : l.simplices)
        if (s.size() == 2) w.commuting_pairs.emplace_back(s[0], s[1]);
    return w;
}

std::string CoxeterSpec::presentation() const {
    std::ostringstream os;
    os << "<";
    for (int v = 0; v < vertices; ++v) os << (v ? ", " : " ") << 's' << v;
    os << " | ";
    for (int v = 0; v < vertices; ++v) os << 's' << v << "^2 = 1" << (v + 1 < vertices ? ", " : "");
    for (const auto& [u, v] : commuting_pairs)
        os << ", s" << u << " s" << v << " = s" << v << " s" << u;
    os << " >";
    return os.str();
}

BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& l) {
    l.validate();
    BarycentricSubdivision out;
    out.vertex_labels = l.simplices;  // one vertex per nonempty simplex
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < out.vertex_labels.size(); ++i)
        index.emplace(out.vertex_labels[i], static_cast<int>(i));

    // chains in the face poset
    std::vector<std::vector<int>> chains;
    std::vector<int> current;
    struct Grow {
        const std::vector<std::vector<int>>& labels;
        std::vector<std::vector<int>>& chains;
        std::vector<int>& current;
        static bool is_face(const std::vector<int>& a, const std::vector<int>& b) {
            return std::includes(b.begin(), b.end(), a.begin(), a.end()) && a.size() < b.size();
        }
        void rec(int last) {
            chains.push_back(current);
            for (int next = 0; next < static_cast<int>(labels.size()); ++next) {
                if (last >= 0 && !is_face(labels[static_cast<size_t>(last)],
                                          labels[static_cast<size_t>(next)]))
                    continue;
                current.push_back(next);
                rec(next);
                current.pop_back();
            }
        }
    };
    for (int start = 0; start < static_cast<int>(out.vertex_labels.size()); ++start) {
        current = {start};
        Grow{out.vertex_labels, chains, current}.rec(start);
    }
    SimplicialComplex bsd;
    bsd.vertices = static_cast<int>(out.vertex_labels.size());
    for (auto& chain : chains) {
        std::sort(chain.begin(), chain.end());
        bsd.simplices.push_back(chain);
    }
    std::sort(bsd.simplices.begin(), bsd.simplices.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    bsd.simplices.erase(std::unique(bsd.simplices.begin(), bsd.simplices.end()),
                        bsd.simplices.end());
    bsd.validate();
    out.complex = std::move(bsd);
    return out;
}

void MirroredSpace::validate() const {
    m.validate();
    if (!bsd_vertex_in_m.empty()) {
        auto bsd = barycentric_subdivision(l);
        if (bsd_vertex_in_m.size() != bsd.vertex_labels.size())
            throw InputError("bsd embedding has the wrong number of vertices");
        auto sorted = bsd_vertex_in_m;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("bsd embedding is not injective");
        for (const auto& s : bsd.complex.simplices) {
            std::vector<int> image;
            for (int v : s) image.push_back(bsd_vertex_in_m[static_cast<size_t>(v)]);
            std::sort(image.begin(), image.end());
            if (!m.has_simplex(image))
                throw InputError("bsd of the nerve is not a subcomplex of M");
        }
    }
}

std::vector<std::vector<std::vector<int>>> MirroredSpace::mirrors() const {
    // mirror vertex sets in M, one per L-vertex
    std::vector<std::vector<int>> vertex_sets(static_cast<size_t>(l.vertices));
    if (!explicit_mirror_sets.empty()) {
        vertex_sets = explicit_mirror_sets;
    } else {
        auto bsd = barycentric_subdivision(l);
        for (size_t i = 0; i < bsd.vertex_labels.size(); ++i)
            for (int v : bsd.vertex_labels[i])
                vertex_sets[static_cast<size_t>(v)].push_back(bsd_vertex_in_m[i]);
        for (auto& set : vertex_sets) std::sort(set.begin(), set.end());
    }
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& set : vertex_sets) {
        std::vector<std::vector<int>> simplices;
        for (const auto& s : m.simplices)
            if (std::includes(set.begin(), set.end(), s.begin(), s.end())) simplices.push_back(s);
        out.push_back(std::move(simplices));
    }
    return out;
}

std::vector<int> MirroredSpace::mirror_set(const std::vector<int>& simplex) const {
    auto all = mirrors();
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(all.size()); ++v)
        if (std::find(all[static_cast<size_t>(v)].begin(), all[static_cast<size_t>(v)].end(),
                      simplex) != all[static_cast<size_t>(v)].end())
            out.push_back(v);
    return out;
}

MirroredSpace MirroredSpace::from_explicit_mirrors(SimplicialComplex m_, int l_vertices,
                                                   std::vector<std::vector<int>> mirror_vertex_sets) {
    MirroredSpace s;
    s.m = std::move(m_);
    s.l.vertices = l_vertices;
    s.explicit_mirror_sets = std::move(mirror_vertex_sets);
    for (auto& set : s.explicit_mirror_sets) std::sort(set.begin(), set.end());
    if (static_cast<int>(s.explicit_mirror_sets.size()) != l_vertices)
        throw InputError("one mirror vertex set per nerve vertex required");
    s.validate();
    return s;
}

long long BasicConstruction::total_cells() const {
    long long t = 0;
    for (long long c : cells_per_dim) t += c;
    return t;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

BasicConstruction basic_construction(const MirroredSpace& s) {
    s.validate();
    const int nv = s.l.vertices;
    if (nv > 20) throw InputError("too many mirrors for the finite quotient (2^V chambers)");
    const unsigned chambers = 1u << nv;

    auto mirror_simplices = s.mirrors();
    // mirror mask per M-simplex
    std::vector<unsigned> mask(s.m.simplices.size(), 0);
    for (int v = 0; v < nv; ++v)
        for (const auto& simplex : mirror_simplices[static_cast<size_t>(v)]) {
            auto it = std::find(s.m.simplices.begin(), s.m.simplices.end(), simplex);
            mask[static_cast<size_t>(it - s.m.simplices.begin())] |= 1u << v;
        }

    // mirrors must be proper: top cells belong to no mirror
    const int n = s.m.dim();
    for (size_t i = 0; i < s.m.simplices.size(); ++i)
        if (static_cast<int>(s.m.simplices[i].size()) == n + 1 && mask[i] != 0)
            throw InputError("a top cell of M lies inside a mirror");

    // union-find closure over (simplex, chamber), folding one mirror at a time
    const size_t total = s.m.simplices.size() * chambers;
    UnionFind uf(total);
    auto node = [&](size_t simplex, unsigned u) { return static_cast<int>(simplex * chambers + u); };
    for (size_t i = 0; i < s.m.simplices.size(); ++i)
        for (unsigned u = 0; u < chambers; ++u)
            for (int v = 0; v < nv; ++v)
                if (mask[i] & (1u << v)) uf.unite(node(i, u), node(i, u ^ (1u << v)));
    // the closure must agree with the coset description u -> u & ~mask
    for (size_t i = 0; i < s.m.simplices.size(); ++i)
        for (unsigned u = 0; u < chambers; ++u) {
            if (uf.find(node(i, u)) != uf.find(node(i, u & ~mask[i])))
                throw InvariantViolation("identification closure disagrees with cosets");
            if ((u & ~mask[i]) == 0 && u != 0 && (u | mask[i]) != mask[i])
                throw InvariantViolation("coset representative bookkeeping broken");
        }

    BasicConstruction out;
    out.chambers = static_cast<int>(chambers);

    // cells by dimension: (simplex index, canonical chamber)
    std::vector<std::vector<std::pair<int, unsigned>>> cells(static_cast<size_t>(n + 1));
    std::map<std::pair<int, unsigned>, int> cell_index;
    for (size_t i = 0; i < s.m.simplices.size(); ++i) {
        int d = static_cast<int>(s.m.simplices[i].size()) - 1;
        for (unsigned u = 0; u < chambers; ++u) {
            if ((u & mask[i]) != 0) continue;  // not the coset representative
            cell_index.emplace(std::make_pair(static_cast<int>(i), u),
                               static_cast<int>(cells[static_cast<size_t>(d)].size()));
            cells[static_cast<size_t>(d)].emplace_back(static_cast<int>(i), u);
        }
    }

    ScalarComplex complex;
    complex.lo = 0;
    complex.hi = n;
    for (const auto& list : cells) complex.ranks.push_back(static_cast<int>(list.size()));
    for (int d = 1; d <= n; ++d) {
        QMat mtx(complex.rank(d - 1), complex.rank(d));
        for (int j = 0; j < complex.rank(d); ++j) {
            auto [si, u] = cells[static_cast<size_t>(d)][static_cast<size_t>(j)];
            const auto& simplex = s.m.simplices[static_cast<size_t>(si)];
            for (size_t f = 0; f < simplex.size(); ++f) {
                auto face = simplex;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(f));
                auto it = std::find(s.m.simplices.begin(), s.m.simplices.end(), face);
                size_t fi = static_cast<size_t>(it - s.m.simplices.begin());
                unsigned rep = u & ~mask[fi];
                int row = cell_index.at({static_cast<int>(fi), rep});
                mtx.at(row, j) += (f % 2 == 0) ? Rat(1) : Rat(-1);
            }
        }
        if (!mtx.is_zero()) complex.boundary.emplace(d, std::move(mtx));
    }
    complex.validate();

    // chamber count sanity: top cells come in full orbits
    long long top_expected = static_cast<long long>(chambers) *
                             static_cast<long long>(s.m.cells_of_dim(n).size());
    if (static_cast<long long>(cells[static_cast<size_t>(n)].size()) != top_expected)
        throw InvariantViolation("top-cell count is not |Q| times the chambers of M");

    for (const auto& list : cells) out.cells_per_dim.push_back(static_cast<long long>(list.size()));
    out.complex = std::move(complex);
    out.cell_reps = std::move(cells);
    return out;
}

DecompositionReport decomposition_check(const MirroredSpace& s) {
    DecompositionReport rep;
    auto construction = basic_construction(s);
    auto hq = homology(construction.complex);
    auto hf = homology_gf2(construction.complex);
    rep.left_q = hq.betti;
    rep.left_f2 = hf.betti;
    rep.chi_left = construction.complex.euler_characteristic();

    const int nv = s.l.vertices;
    auto mirror_simplices = s.mirrors();
    int maxdim = s.m.dim();
    rep.right_q.assign(static_cast<size_t>(maxdim + 1), 0);
    rep.right_f2.assign(static_cast<size_t>(maxdim + 1), 0);
    for (unsigned t = 0; t < (1u << nv); ++t) {
        SimplicialComplex mt;  // union of the mirrors in T
        mt.vertices = s.m.vertices;
        for (int v = 0; v < nv; ++v)
            if (t & (1u << v))
                for (const auto& simplex : mirror_simplices[static_cast<size_t>(v)])
                    if (!mt.has_simplex(simplex)) mt.simplices.push_back(simplex);
        std::sort(mt.simplices.begin(), mt.simplices.end(),
                  [](const auto& a, const auto& b) {
                      if (a.size() != b.size()) return a.size() < b.size();
                      return a < b;
                  });
        auto relative = s.m.relative_chain_complex(mt);
        auto hrq = homology(relative);
        auto hrf = homology_gf2(relative);
        rep.chi_right += relative.euler_characteristic();
        for (int d = 0; d <= maxdim; ++d) {
            rep.right_q[static_cast<size_t>(d)] += hrq.betti_at(d);
            rep.right_f2[static_cast<size_t>(d)] += hrf.betti_at(d);
        }
    }
    while (rep.left_q.size() < rep.right_q.size()) rep.left_q.push_back(0);
    while (rep.right_q.size() < rep.left_q.size()) rep.right_q.push_back(0);
    while (rep.left_f2.size() < rep.right_f2.size()) rep.left_f2.push_back(0);
    while (rep.right_f2.size() < rep.left_f2.size()) rep.right_f2.push_back(0);
    rep.agree = rep.left_q == rep.right_q && rep.left_f2 == rep.right_f2 &&
                rep.chi_left == rep.chi_right;
    return rep;
}

std::string DecompositionReport::str() const {
    std::ostringstream os;
    auto dump = [&os](const char* label, const std::vector<int>& v) {
        os << label;
        for (int x : v) os << ' ' << x;
        os << '\n';
    };
    dump("U/G Betti over Q:    ", left_q);
    dump("subset sum over Q:   ", right_q);
    dump("U/G Betti over F_2:  ", left_f2);
    dump("subset sum over F_2: ", right_f2);
    os << "chi " << chi_left << " vs " << chi_right << " -> "
       << (agree ? "agree" : "DISAGREE") << '\n';
    return os.str();
}

DualityReport duality_check(const BasicConstruction& b, int n) {
    DualityReport rep;
    if (b.complex.hi != n) throw InputError("complex dimension does not match n");

    // purity: every cell below the top is a face of a cell one dimension up
    rep.pure = true;
    for (int d = 0; d < n; ++d) {
        auto it = b.complex.boundary.find(d + 1);
        for (int row = 0; row < b.complex.rank(d); ++row) {
            bool covered = false;
            if (it != b.complex.boundary.end())
                for (int col = 0; col < b.complex.rank(d + 1) && !covered; ++col)
                    if (it->second.at(row, col) != 0) covered = true;
            if (!covered) {
                rep.pure = false;
                if (!rep.witness) rep.witness = b.cell_reps[static_cast<size_t>(d)][static_cast<size_t>(row)];
            }
        }
    }

    // closedness: every (n-1)-cell bounds exactly two n-cells
    rep.closed_pseudo_manifold = true;
    {
        auto it = b.complex.boundary.find(n);
        for (int row = 0; row < b.complex.rank(n - 1); ++row) {
            int incident = 0;
            if (it != b.complex.boundary.end())
                for (int col = 0; col < b.complex.rank(n); ++col)
                    if (it->second.at(row, col) != 0)
                        incident += static_cast<int>(boost::multiprecision::abs(
                            rat_num(it->second.at(row, col))).convert_to<long long>());
            if (incident != 2) {
                rep.closed_pseudo_manifold = false;
                if (!rep.witness)
                    rep.witness = b.cell_reps[static_cast<size_t>(n - 1)][static_cast<size_t>(row)];
            }
        }
    }

    auto hf = homology_gf2(b.complex);
    rep.betti_f2 = hf.betti;
    rep.palindromic = true;
    for (int k = 0; k <= n; ++k)
        if (hf.betti_at(k) != hf.betti_at(n - k)) rep.palindromic = false;
    return rep;
}

std::string DualityReport::str() const {
    std::ostringstream os;
    os << "pure: " << (pure ? "yes" : "no") << "; closed pseudo-manifold: "
       << (closed_pseudo_manifold ? "yes" : "no");
    if (witness) os << " (witness cell: simplex " << witness->first << ", chamber " << witness->second << ")";
    os << "; F_2 Betti:";
    for (int x : betti_f2) os << ' ' << x;
    os << (palindromic ? " (palindromic)" : " (NOT palindromic)");
    return os.str();
}

std::string write_mirrored_space(const MirroredSpace& s) {
    std::ostringstream os;
    os << "mirrored v1\n";
    os << "l-vertices " << s.l.vertices << '\n';
    for (const auto& f : s.l.simplices) {
        os << "l-face";
        for (int v : f) os << ' ' << v;
        os << '\n';
    }
    os << "m-vertices " << s.m.vertices << '\n';
    for (const auto& f : s.m.simplices) {
        os << "m-face";
        for (int v : f) os << ' ' << v;
        os << '\n';
    }
    for (size_t i = 0; i < s.bsd_vertex_in_m.size(); ++i)
        os << "bsd-map " << i << ' ' << s.bsd_vertex_in_m[i] << '\n';
    for (size_t v = 0; v < s.explicit_mirror_sets.size(); ++v) {
        os << "mirror " << v;
        for (int x : s.explicit_mirror_sets[v]) os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

MirroredSpace read_mirrored_space(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "mirrored v1")
        throw InputError("bad mirrored-space header");
    MirroredSpace s;
    std::map<int, int> bsd_map;
    std::map<int, std::vector<int>> mirror_map;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "l-vertices") {
            ls >> s.l.vertices;
        } else if (tok == "m-vertices") {
            ls >> s.m.vertices;
        } else if (tok == "l-face" || tok == "m-face") {
            std::vector<int> f;
            int v;
            while (ls >> v) f.push_back(v);
            (tok == "l-face" ? s.l : s.m).simplices.push_back(f);
        } else if (tok == "bsd-map") {
            int from, to;
            ls >> from >> to;
            bsd_map[from] = to;
        } else if (tok == "mirror") {
            int v;
            ls >> v;
            int x;
            std::vector<int> set;
            while (ls >> x) set.push_back(x);
            mirror_map[v] = set;
        } else {
            throw InputError("unknown mirrored-space line: " + line);
        }
    }
    auto sort_faces = [](SimplicialComplex& k) {
        std::sort(k.simplices.begin(), k.simplices.end(),
                  [](const auto& a, const auto& b) {
                      if (a.size() != b.size()) return a.size() < b.size();
                      return a < b;
                  });
    };
    sort_faces(s.l);
    sort_faces(s.m);
    if (!mirror_map.empty()) {
        s.explicit_mirror_sets.resize(static_cast<size_t>(s.l.vertices));
        for (const auto& [v, set] : mirror_map) s.explicit_mirror_sets[static_cast<size_t>(v)] = set;
    } else {
        s.bsd_vertex_in_m.resize(bsd_map.size());
        for (const auto& [from, to] : bsd_map) s.bsd_vertex_in_m[static_cast<size_t>(from)] = to;
    }
    s.validate();
    return s;
}

MirroredSpace example_interval() {
    MirroredSpace s;
    s.l.vertices = 2;
    s.l.simplices = {{0}, {1}};
    s.m = SimplicialComplex::from_top_faces(2, {{0, 1}});
    s.bsd_vertex_in_m = {0, 1};
    s.validate();
    return s;
}

MirroredSpace example_disk_polygon(int m) {
    if (m < 4) throw InputError("the polygon nerve needs m >= 4 to be flag");
    // L: the m-cycle; bsd(L) is a 2m-cycle; M is the cone over it
    MirroredSpace s;
    std::vector<std::vector<int>> cycle_edges;
    for (int i = 0; i < m; ++i) cycle_edges.push_back({i, (i + 1) % m});
    s.l = SimplicialComplex::from_top_faces(m, cycle_edges);
    auto bsd = barycentric_subdivision(s.l);
    const int rim = bsd.complex.vertices;
    std::vector<std::vector<int>> faces;
    for (const auto& edge : bsd.complex.cells_of_dim(1)) faces.push_back({edge[0], edge[1], rim});
    s.m = SimplicialComplex::from_top_faces(rim + 1, faces);
    s.bsd_vertex_in_m.resize(static_cast<size_t>(rim));
    for (int i = 0; i < rim; ++i) s.bsd_vertex_in_m[static_cast<size_t>(i)] = i;
    s.validate();
    return s;
}

MirroredSpace example_disk_square() { return example_disk_polygon(4); }

MirroredSpace example_annulus() {
    // mirrored boundary: bsd of the 4-cycle (an 8-cycle); free boundary: a
    // parallel 8-cycle; triangulated band between them
    MirroredSpace s;
    s.l = SimplicialComplex::from_top_faces(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto bsd = barycentric_subdivision(s.l);
    const int rim = bsd.complex.vertices;  // 8
    std::vector<std::vector<int>> faces;
    // the bsd 8-cycle is not numbered cyclically; walk its edges
    std::vector<std::vector<int>> edges = bsd.complex.cells_of_dim(1);
    std::vector<int> cycle = {0};
    std::vector<bool> used(edges.size(), false);
    while (cycle.size() < static_cast<size_t>(rim)) {
        for (size_t e = 0; e < edges.size(); ++e) {
            if (used[e]) continue;
            if (edges[e][0] == cycle.back() || edges[e][1] == cycle.back()) {
                int other = edges[e][0] == cycle.back() ? edges[e][1] : edges[e][0];
                if (cycle.size() > 1 && other == cycle[cycle.size() - 2]) continue;
                used[e] = true;
                cycle.push_back(other);
                break;
            }
        }
    }
    for (int i = 0; i < rim; ++i) {
        int a = cycle[static_cast<size_t>(i)];
        int b = cycle[static_cast<size_t>((i + 1) % rim)];
        int a2 = rim + a;
        int b2 = rim + b;
        faces.push_back({a, b, a2});
        faces.push_back({b, a2, b2});
    }
    s.m = SimplicialComplex::from_top_faces(2 * rim, faces);
    s.bsd_vertex_in_m.resize(static_cast<size_t>(rim));
    for (int i = 0; i < rim; ++i) s.bsd_vertex_in_m[static_cast<size_t>(i)] = i;
    s.validate();
    return s;
}

}  // namespace qmoore
