#include <doctest.h>

#include <random>

#include "qmoore/lie.hpp"

using namespace qmoore;

namespace {

LieExpr random_expr(const GradedGenerators& gens, int max_depth, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> which(0, gens.count() - 1);
    std::uniform_int_distribution<int> branch(0, 2);
    if (max_depth == 0 || branch(rng) == 0) return LieExpr::gen(which(rng));
    return LieExpr::bracket(random_expr(gens, max_depth - 1, rng),
                            random_expr(gens, max_depth - 1, rng));
}

}  // namespace

TEST_CASE("normalize kills even self-brackets and jacobi combinations") {
    GradedGenerators gens{{"x", "y", "z"}, {2, 2, 2}};
    LieContext ctx(gens, 8);
    auto x = LieExpr::gen(0), y = LieExpr::gen(1), z = LieExpr::gen(2);

    CHECK(ctx.normalize(LieExpr::bracket(x, x)).is_zero());

    // graded jacobi: (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]
    LieExprSum jacobi = {{Rat(1), LieExpr::bracket(x, LieExpr::bracket(y, z))},
                         {Rat(1), LieExpr::bracket(y, LieExpr::bracket(z, x))},
                         {Rat(1), LieExpr::bracket(z, LieExpr::bracket(x, y))}};
    CHECK(ctx.normalize(jacobi).is_zero());
}

TEST_CASE("odd self-bracket embeds as twice the square") {
    GradedGenerators gens{{"x"}, {3}};
    LieContext ctx(gens, 12);
    auto sq = ctx.normalize(LieExpr::bracket(LieExpr::gen(0), LieExpr::gen(0)));
    CHECK_FALSE(sq.is_zero());
    TensorElement expected;
    expected.add({0, 0}, Rat(2));
    CHECK(ctx.embed_in_tensor(sq) == expected);
}

TEST_CASE("embedding sends generators to words and brackets to commutators") {
    GradedGenerators gens{{"x", "y"}, {2, 2}};
    LieContext ctx(gens, 8);
    LieElement gx = ctx.normalize(LieExpr::gen(0));
    TensorElement wx;
    wx.add({0}, Rat(1));
    CHECK(ctx.embed_in_tensor(gx) == wx);

    auto br = ctx.normalize(LieExpr::bracket(LieExpr::gen(0), LieExpr::gen(1)));
    TensorElement expected;  // x ten y - y ten x for even-even
    expected.add({0, 1}, Rat(1));
    expected.add({1, 0}, Rat(-1));
    CHECK(ctx.embed_in_tensor(br) == expected);
}

TEST_CASE("graded antisymmetry on random pairs") {
    GradedGenerators gens{{"x", "y", "z"}, {1, 2, 3}};
    LieContext ctx(gens, 10);
    std::mt19937_64 rng(37);
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 25; ++trial) {
        auto a = random_expr(gens, 2, rng);
        auto b = random_expr(gens, 2, rng);
        int da = ctx.expr_degree(a), db = ctx.expr_degree(b);
        if (da + db > ctx.cap()) continue;
        Rat sign = (da % 2 && db % 2) ? Rat(1) : Rat(-1);
        // [a,b] + (-1)^{|a||b|}[b,a] = 0
        LieExprSum sum = {{Rat(1), LieExpr::bracket(a, b)},
                          {-sign, LieExpr::bracket(b, a)}};
        CHECK(ctx.normalize(sum).is_zero());
        ++checked;
    }
    CHECK(checked == 25);
}

TEST_CASE("graded jacobi on random triples") {
    GradedGenerators gens{{"x", "y"}, {1, 2}};
    LieContext ctx(gens, 9);
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int trial = 0; trial < 100 && checked < 20; ++trial) {
        auto x = random_expr(gens, 1, rng);
        auto y = random_expr(gens, 1, rng);
        auto z = random_expr(gens, 1, rng);
        int dx = ctx.expr_degree(x), dy = ctx.expr_degree(y), dz = ctx.expr_degree(z);
        if (dx + dy + dz > ctx.cap()) continue;
        auto sgn = [](int a, int b) { return (a % 2 && b % 2) ? Rat(-1) : Rat(1); };
        LieExprSum sum = {{sgn(dx, dz), LieExpr::bracket(x, LieExpr::bracket(y, z))},
                          {sgn(dy, dx), LieExpr::bracket(y, LieExpr::bracket(z, x))},
                          {sgn(dz, dy), LieExpr::bracket(z, LieExpr::bracket(x, y))}};
        CHECK(ctx.normalize(sum).is_zero());
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("dimension formulas in degree 2u") {
    for (int k = 1; k <= 3; ++k) {
        // even degree u = 2: dimension k(k-1)/2 at 2u
        GradedGenerators even;
        for (int i = 0; i < k; ++i) {
            even.names.push_back("x" + std::to_string(i));
            even.degrees.push_back(2);
        }
        LieContext ce(even, 8);
        CHECK(ce.dimension(4) == k * (k - 1) / 2);
        CHECK(ce.primitives_dimension(4) == k * (k - 1) / 2);

        // odd degree u = 1: dimension k(k+1)/2 at 2u
        GradedGenerators odd;
        for (int i = 0; i < k; ++i) {
            odd.names.push_back("y" + std::to_string(i));
            odd.degrees.push_back(1);
        }
        LieContext co(odd, 8);
        CHECK(co.dimension(2) == k * (k + 1) / 2);
        CHECK(co.primitives_dimension(2) == k * (k + 1) / 2);
    }
}

TEST_CASE("three independent dimension computations agree") {
    std::vector<GradedGenerators> tables = {
        {{"x"}, {1}},
        {{"x"}, {2}},
        {{"x", "y"}, {1, 1}},
        {{"x", "y"}, {1, 2}},
        {{"x", "y", "z"}, {1, 1, 1}},
        {{"x", "y", "z"}, {2, 2, 2}},
        {{"x", "y", "z"}, {1, 2, 3}},
    };
    for (const auto& gens : tables) {
        int cap = 4 * gens.min_degree();
        LieContext ctx(gens, cap);
        for (int n = 1; n <= cap; ++n) {
            CHECK(ctx.dimension(n) == ctx.witt_dimension(n));
            CHECK(ctx.dimension(n) == ctx.primitives_dimension(n));
        }
    }
}

TEST_CASE("tensor algebra word counts") {
    // k generators in degree r-1: k^n words in degree n(r-1)
    for (int k = 1; k <= 3; ++k)
        for (int r : {3, 5}) {
            GradedGenerators gens;
            for (int i = 0; i < k; ++i) {
                gens.names.push_back("x" + std::to_string(i));
                gens.degrees.push_back(r - 1);
            }
            LieContext ctx(gens, 4 * (r - 1));
            long long expect = 1;
            for (int n = 1; n <= 4; ++n) {
                expect *= k;
                CHECK(static_cast<long long>(ctx.words(n * (r - 1)).size()) == expect);
            }
        }
}

TEST_CASE("queries beyond the cap are hard errors") {
    GradedGenerators gens{{"x"}, {2}};
    LieContext ctx(gens, 6);
    CHECK_THROWS_AS(ctx.dimension(7), CapsExhausted);
    auto xx = LieExpr::bracket(LieExpr::gen(0), LieExpr::gen(0));
    CHECK_THROWS_AS(ctx.normalize(LieExpr::bracket(xx, xx)), CapsExhausted);  // degree 8 > 6
}

TEST_CASE("whitehead sign bookkeeping") {
    GradedGenerators gens{{"x", "y"}, {2, 3}};
    LieContext ctx(gens, 8);
    auto br = ctx.normalize(LieExpr::bracket(LieExpr::gen(0), LieExpr::gen(1)));
    CHECK(whitehead_sign(2, br) == br);
    CHECK(whitehead_sign(3, br) == br.scaled(Rat(-1)));
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        auto e = ctx.normalize(random_expr(gens, 1, rng));
        int k = static_cast<int>(rng() % 7);
        CHECK(whitehead_sign(k, whitehead_sign(k, e)) == e);
    }
}

TEST_CASE("sphere homotopy via the lie model") {
    // S^r for even r: pi_r and pi_{2r-1}; for odd r: only pi_r.
    for (int r = 2; r <= 5; ++r) {
        DGL sphere = wedge_of_spheres(1, r, 4 * (r - 1) + 1);
        sphere.validate();
        for (int n = r - 1; n <= 4 * (r - 1); ++n) {
            int expected = 0;
            if (n == r - 1) expected = 1;
            if (r % 2 == 0 && n == 2 * r - 2) expected = 1;
            CHECK(sphere.homology_dimension(n) == expected);
        }
    }
}

TEST_CASE("acyclic cone") {
    // d(c) = x: all homology vanishes up to the cap
    GradedGenerators gens{{"x", "c"}, {2, 3}};
    auto ctx = std::make_shared<LieContext>(gens, 7);
    DGL cone;
    cone.ctx = ctx;
    cone.differential.resize(2);
    cone.differential[1] = ctx->normalize(LieExpr::gen(0));
    cone.validate();
    for (int n = 2; n <= 6; ++n) CHECK(cone.homology_dimension(n) == 0);
}

TEST_CASE("rational hurewicz range") {
    // no generators below degree k-1 (cells below k): homology equals the
    // generator count in homotopy degrees <= 2k-2, i.e. lie degrees <= 2k-3
    const int k = 4;
    GradedGenerators gens{{"u", "v", "w"}, {k - 1, k - 1, k}};
    auto ctx = std::make_shared<LieContext>(gens, 2 * k);
    DGL dgl;
    dgl.ctx = ctx;
    dgl.differential.resize(3);
    dgl.differential[2] = ctx->normalize(LieExpr::gen(0));  // one cell kills one class
    dgl.validate();
    for (int n = k - 1; n <= 2 * k - 3; ++n) {
        int gen_count = 0;
        for (int i = 0; i < gens.count(); ++i)
            if (gens.degrees[i] == n) ++gen_count;
        ScalarComplex cells = dgl.hurewicz_complex();
        auto h = homology(cells);
        CHECK(dgl.homology_dimension(n) == h.betti_at(n));
        CHECK(ctx->dimension(n) == gen_count);  // no brackets in the range
    }
}

TEST_CASE("hurewicz projection") {
    GradedGenerators gens{{"x", "y", "c"}, {2, 2, 3}};
    auto ctx = std::make_shared<LieContext>(gens, 7);
    DGL dgl;
    dgl.ctx = ctx;
    dgl.differential.resize(3);
    dgl.differential[2] =
        ctx->normalize({{Rat(2), LieExpr::gen(0)}, {Rat(-3), LieExpr::gen(1)}});
    dgl.validate();

    auto cells = dgl.hurewicz_complex();
    CHECK(cells.rank(2) == 2);
    CHECK(cells.rank(3) == 1);
    CHECK(cells.boundary.at(3).at(0, 0) == Rat(2));
    CHECK(cells.boundary.at(3).at(1, 0) == Rat(-3));
    CHECK(dgl.hurewicz_chain_map_holds());

    // a differential consisting only of brackets projects to zero
    DGL bronly;
    bronly.ctx = std::make_shared<LieContext>(GradedGenerators{{"x", "c"}, {2, 5}}, 8);
    bronly.differential.resize(2);
    bronly.differential[1] =
        bronly.ctx->normalize(LieExpr::bracket(LieExpr::gen(0), LieExpr::gen(0)));
    bronly.validate();
    CHECK(bronly.hurewicz_complex().boundary.empty());
    CHECK(bronly.hurewicz_chain_map_holds());

    // zero differential: zero complex differential
    DGL zero = wedge_of_spheres(3, 4, 9);
    CHECK(zero.hurewicz_complex().boundary.empty());
}

TEST_CASE("embedding is injective on the basis (rank check)") {
    GradedGenerators gens{{"x", "y", "z"}, {1, 1, 1}};
    LieContext ctx(gens, 4);
    for (int n = 1; n <= 4; ++n) {
        const auto& b = ctx.basis(n);
        // re-eliminate the expansions from scratch
        std::map<TensorWord, int> rows;
        std::vector<SparseVecQ> cols;
        for (const auto& m : b) {
            SparseVecQ col;
            TensorElement expansion = ctx.expand(m);
            for (const auto& [w, c] : expansion.terms()) {
                auto [it, ok] = rows.emplace(w, static_cast<int>(rows.size()));
                col.push(it->second, c);
            }
            col.sort_and_combine();
            cols.push_back(std::move(col));
        }
        CHECK(sparse_rank(cols) == static_cast<int>(b.size()));
    }
}

TEST_CASE("normalize is independent of expression shape") {
    GradedGenerators gens{{"x", "y"}, {1, 2}};
    LieContext ctx(gens, 8);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_expr(gens, 2, rng);
        auto b = random_expr(gens, 1, rng);
        if (ctx.expr_degree(a) + ctx.expr_degree(b) > ctx.cap()) continue;
        // normalize([a,b]) == bracket(normalize(a), normalize(b))
        auto direct = ctx.normalize(LieExpr::bracket(a, b));
        auto via_elements = ctx.bracket(ctx.normalize(a), ctx.normalize(b));
        CHECK(direct == via_elements);
    }
}
