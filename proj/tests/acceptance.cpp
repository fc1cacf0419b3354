// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. The whole suite is exact arithmetic; every tolerance is equality.

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmoore/cli.hpp"
#include "qmoore/davis.hpp"
#include "qmoore/homalg.hpp"
#include "qmoore/l2.hpp"
#include "qmoore/moore.hpp"

using namespace qmoore;

namespace {

void report_line(int criterion, const char* what, bool pass) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what);
    std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("criterion 1: moore builder end to end") {
    bool pass = true;
    for (const char* group : {"f2", "f2^2"}) {
        auto t0 = std::chrono::steady_clock::now();
        ModelCaps caps;
        caps.bracket_cap = 2;
        caps.support_radius = 3;
        auto build = build_moore_model(GroupSpec::parse(group), 3, caps);
        auto v = verify_model(build.model, build.resolution.complex, 20, 1);
        double elapsed = seconds_since(t0);
        bool this_pass = v.all() && elapsed < 300.0;
        CHECK(v.h_section_identity);
        CHECK(v.section_chain_map);
        CHECK(v.dd_zero);
        CHECK(v.equivariance);
        CHECK(v.bracket_free_matches);
        CHECK(elapsed < 300.0);
        pass = pass && this_pass;
    }
    report_line(1, "moore builds for F_2 and F_2^2 at r = 3, all section invariants exact", pass);
    CHECK(pass);
}

TEST_CASE("criterion 2: rational homotopy of spheres") {
    bool pass = true;
    for (int r = 2; r <= 5; ++r) {
        DGL sphere = wedge_of_spheres(1, r, 4 * (r - 1) + 1);
        for (int n = r - 1; n <= 4 * (r - 1); ++n) {
            int expected = 0;
            if (n == r - 1) expected = 1;
            if (r % 2 == 0 && n == 2 * r - 2) expected = 1;
            if (sphere.homology_dimension(n) != expected) pass = false;
        }
    }
    report_line(2, "dgl homology reproduces pi_*(S^r) ten Q for r <= 5", pass);
    CHECK(pass);
}

TEST_CASE("criterion 3: tensor algebra dimensions and three-way agreement") {
    bool pass = true;
    for (int k = 1; k <= 3; ++k)
        for (int r : {2, 3, 4, 5}) {
            GradedGenerators gens;
            for (int i = 0; i < k; ++i) {
                gens.names.push_back("x" + std::to_string(i));
                gens.degrees.push_back(r - 1);
            }
            LieContext ctx(gens, 4 * (r - 1));
            long long words = 1;
            for (int n = 1; n <= 4; ++n) {
                words *= k;
                if (static_cast<long long>(ctx.words(n * (r - 1)).size()) != words) pass = false;
            }
            for (int n = 1; n <= 4 * (r - 1); ++n) {
                int lyndon = ctx.dimension(n);
                if (lyndon != ctx.witt_dimension(n)) pass = false;
                if (lyndon != ctx.primitives_dimension(n)) pass = false;
            }
        }
    report_line(3, "k^n word counts and lyndon = witt = primitives, exactly", pass);
    CHECK(pass);
}

TEST_CASE("criterion 4: vanishing computation") {
    auto p = dd_complex(2);
    auto oracle = truncated_homology(p, {2, 3, 4, 5, 6});
    bool h1_zero = true;
    for (const auto& [radius, dim] : oracle.at(1).estimates)
        if (dim != 0) h1_zero = false;
    bool stab = oracle.at(1).stabilized && !oracle.at(1).monotonicity_violated;
    CHECK(h1_zero);
    CHECK(stab);

    auto res = dualizing_resolution(GroupSpec({2}), 3);
    auto inv = invariants_dimension(res.dualizing_module, {2, 3, 4});
    CHECK(inv.dimension == 0);
    CHECK(inv.exact);

    auto vanish = vanishing_assembly(4, {2, 3, 4, 5, 6});
    CHECK(vanish.vanishes);
    CHECK(vanish.base_stabilized);
    bool tree_complete = true;
    for (int n = 1; n <= 4; ++n)
        if (vanish.str().find("H_" + std::to_string(n)) == std::string::npos)
            tree_complete = false;
    CHECK(tree_complete);

    auto control = vanishing_assembly(4, {2, 3, 4, 5, 6}, 1);
    CHECK_FALSE(control.vanishes);

    bool pass = h1_zero && stab && inv.dimension == 0 && inv.exact && vanish.vanishes &&
                tree_complete && !control.vanishes;
    report_line(4, "H_1(BF_2; D ten D) window 0 at radii 2..6, D^{F_2} = 0 exact, "
                   "vanishing assembly with negative control", pass);
    CHECK(pass);
}

TEST_CASE("criterion 5: davis construction") {
    bool pass = true;

    auto interval = example_interval();
    auto bi = basic_construction(interval);
    auto hi = homology(bi.complex);
    if (hi.betti != std::vector<int>{1, 1}) pass = false;
    if (bi.chambers != 4) pass = false;

    auto disk = example_disk_square();
    auto bd = basic_construction(disk);
    auto hd = homology(bd.complex);
    if (hd.betti != std::vector<int>{1, 2, 1}) pass = false;
    if (bd.chambers != 16) pass = false;

    for (auto s : {example_interval(), example_disk_square(), example_annulus()}) {
        auto rep = decomposition_check(s);
        if (!rep.agree) pass = false;
        if (rep.chi_left != rep.chi_right) pass = false;
        auto b = basic_construction(s);
        if (b.chambers != (1 << s.l.vertices)) pass = false;
    }
    report_line(5, "interval -> circle, disk -> torus, decomposition equality over Q and F_2, "
                   "chi and chamber counts", pass);
    CHECK(pass);
}

TEST_CASE("criterion 6: L2 ledger") {
    bool pass = true;
    auto f24 = free_power_profile(4);
    if (f24.at(4) != 1) pass = false;
    for (size_t k = 0; k < f24.b.size(); ++k)
        if (k != 4 && f24.b[k] != 0) pass = false;
    if (!f24.replay_matches()) pass = false;

    for (int d = 1; d <= 6; ++d)
        if (euler_characteristic(free_power_profile(d)) != (d % 2 == 0 ? 1 : -1)) pass = false;

    // the n = 7 pipeline violates the rational vanishing statement for every
    // chamber count 2^m
    auto profile = free_power_profile(4);
    profile.rationally_aspherical = true;
    auto symbolic = davis_transfer(profile, symbolic_chambers(), 7);
    if (singer_verdict(symbolic) != SingerVerdict::violates) pass = false;
    for (int m = 0; m <= 12; ++m) {
        auto numeric = davis_transfer(profile, LinForm(Rat(Int(1) << m)), 7);
        if (singer_verdict(numeric) != SingerVerdict::violates) pass = false;
    }

    if (chi_gap(Rat(0), 16) != -32) pass = false;
    if (chi_gap(Rat(32), 16) != 0) pass = false;
    if (chi_gap(Rat(40), 16) != 8) pass = false;

    report_line(6, "b_4(F_2^4) = 1 from the atom, chi signs, transfer verdict for every 2^m, "
                   "chi gap arithmetic", pass);
    CHECK(pass);
}

TEST_CASE("criterion 7: exactness infrastructure") {
    bool pass = true;

    // every constructed complex passes dd = 0 (validate throws otherwise)
    std::vector<FreeComplex> constructed = {
        fox_complex(1), fox_complex(2), fox_complex(3),
        classifying_complex(GroupSpec({2, 2})), classifying_complex(GroupSpec({2, 2, 2})),
        dualize(classifying_complex(GroupSpec({2, 2})), 5),
        dualizing_resolution(GroupSpec({2}), 2).complex,
        dualizing_resolution(GroupSpec({2, 2}), 3).complex,
        build_moore_model(GroupSpec({2, 2}), 3).model.bracket_free_complex(),
    };
    try {
        for (const auto& c : constructed) c.validate();
    } catch (const std::exception&) {
        pass = false;
    }

    // double dual and kunneth across the pool, total rank <= 64
    std::vector<FreeComplex> pool = {fox_complex(1), fox_complex(2), fox_complex(3),
                                     classifying_complex(GroupSpec({2, 2})),
                                     dualize(fox_complex(2), 1)};
    for (const auto& a : pool) {
        auto dd = dualize(dualize(a, a.hi + 2), a.hi + 2);
        if (!(dd.ranks == a.ranks)) pass = false;
        for (const auto& [n, d] : a.boundary)
            if (!(dd.boundary.at(n) == d)) pass = false;
        for (const auto& b : pool) {
            long long total = 0;
            for (int n = a.lo; n <= a.hi; ++n) total += a.rank(n);
            for (int n = b.lo; n <= b.hi; ++n) total += b.rank(n);
            if (total > 64) continue;
            auto t = tensor(a, b);
            t.validate();
            auto ha = homology(coinvariants(a));
            auto hb = homology(coinvariants(b));
            auto ht = homology(coinvariants(t));
            for (int n = t.lo; n <= t.hi; ++n) {
                int conv = 0;
                for (int p = a.lo; p <= a.hi; ++p) conv += ha.betti_at(p) * hb.betti_at(n - p);
                if (ht.betti_at(n) != conv) pass = false;
            }
        }
    }

    // classical values: circle, torus, projective plane
    auto circle = SimplicialComplex::from_top_faces(3, {{0, 1}, {0, 2}, {1, 2}});
    auto hc = homology(circle.chain_complex());
    if (hc.betti != std::vector<int>{1, 1}) pass = false;

    auto torus = basic_construction(example_disk_square());
    auto ht2 = homology(torus.complex);
    if (ht2.betti != std::vector<int>{1, 2, 1}) pass = false;
    for (const auto& t : ht2.torsion)
        if (!t.empty()) pass = false;

    auto rp2 = SimplicialComplex::from_top_faces(
        6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
    auto hp = homology(rp2.chain_complex());
    if (hp.betti != std::vector<int>{1, 0, 0}) pass = false;
    if (hp.torsion[1] != std::vector<Int>{Int(2)}) pass = false;

    report_line(7, "dd = 0 suite, double dual, kunneth to rank 64, SNF classics", pass);
    CHECK(pass);
}

TEST_CASE("criterion 8: determinism and golden files") {
    bool pass = true;
    std::vector<std::vector<std::string>> commands = {
        {"complex", "--group", "f2^2", "--r", "3"},
        {"lie", "--gens", "x:1,y:1,z:2", "--max-degree", "6"},
        {"moore", "build", "--group", "f2^2", "--r", "3", "--seed", "7"},
        {"davis", "build", "--example", "disk"},
        {"davis", "build", "--example", "annulus", "--check", "decomposition"},
        {"l2", "derive", "--pipeline", "f2^4,davis:n=7,chambers=2^m", "--verdict"},
        {"homalg", "vanishing", "--d", "4", "--radii", "2,3,4"},
        {"truncate", "dd", "--k", "2", "--radii", "2,3,4"},
    };
    std::string first_bundle;
    for (int repeat = 0; repeat < 3; ++repeat) {
        std::ostringstream bundle;
        for (const auto& cmd : commands) {
            std::ostringstream out, err;
            int code = run_cli(cmd, out, err);
            if (code != 0) pass = false;
            bundle << out.str() << "----\n";
        }
        if (repeat == 0)
            first_bundle = bundle.str();
        else if (bundle.str() != first_bundle)
            pass = false;
    }

    // the archived model and report for (F_2^2, r = 3) are reproduced byte
    // for byte
    auto build = build_moore_model(GroupSpec({2, 2}), 3);
    auto check_golden = [&pass](const std::string& name, const std::string& got) {
        std::ifstream golden(std::string(QMOORE_GOLDEN_DIR) + "/" + name);
        if (!golden.good()) {
            pass = false;
            return;
        }
        std::ostringstream want;
        want << golden.rdbuf();
        if (got != want.str()) pass = false;
    };
    check_golden("moore_f2x2_r3_model.txt", write_model(build.model));
    check_golden("moore_f2x2_r3_report.txt", build.report.str());

    report_line(8, "byte-identical reports across three repeated runs, golden model file", pass);
    CHECK(pass);
}
