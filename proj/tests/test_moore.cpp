#include <doctest.h>

#include "qmoore/moore.hpp"
#include "qmoore/truncation.hpp"
#include "qmoore/homalg.hpp"

using namespace qmoore;

namespace {

// Hand-built valid model over F_2: wedge cells u1, u2 in degree 2 plus two
// 3-cells c, c' with d(c) = d(c') = u1 and a section that carries a bracket
// correction on c. All model laws hold; attaching along f = c - c' then forces
// a nontrivial phi.
EquivariantDGLModel seeded_section_model(const Rat& correction) {
    GroupSpec f2({2});
    EquivariantDGLModel m = init_wedge(f2, 2, 2);
    GroupElement e = GroupElement::identity(f2);
    GenKey u1{2, 0, e}, u2{2, 1, e}, c{3, 0, e}, cp{3, 1, e};

    LGElement du;  // u1 as an element
    du.add(LGMono{{u1}, false}, Rat(1));
    m.rank[3] = 2;
    m.scale[3] = 1;
    m.d_orbit[3] = {du, du};
    LGElement sc;
    sc.add(LGMono{{c}, false}, Rat(1));
    sc = sc + lg_normalize(LGExpr::bracket(LGExpr::gen(u1), LGExpr::gen(u2))).scaled(correction);
    LGElement scp;
    scp.add(LGMono{{cp}, false}, Rat(1));
    m.s_orbit[3] = {sc, scp};
    m.top = 3;
    return m;
}

}  // namespace

TEST_CASE("lie-over-group normalization") {
    GroupSpec f2({2});
    GroupElement e = GroupElement::identity(f2);
    GroupElement a = GroupElement::parse(f2, "a");
    GenKey x{3, 0, e}, y{3, 0, a};

    // even generators: [x,x] = 0, [y,x] = -[x,y]
    CHECK(lg_normalize(LGExpr::bracket(LGExpr::gen(x), LGExpr::gen(x))).is_zero());
    auto xy = lg_normalize(LGExpr::bracket(LGExpr::gen(x), LGExpr::gen(y)));
    auto yx = lg_normalize(LGExpr::bracket(LGExpr::gen(y), LGExpr::gen(x)));
    CHECK(yx == xy.scaled(Rat(-1)));
    CHECK(xy.max_bracket_length() == 2);
    CHECK(xy.support_radius() == 1);

    // odd generators square
    GenKey u{2, 0, e};
    auto sq = lg_normalize(LGExpr::bracket(LGExpr::gen(u), LGExpr::gen(u)));
    CHECK_FALSE(sq.is_zero());
    CHECK(sq.terms().begin()->first.square);

    // translation is a Lie map: translate([x,y]) = [gx, gy]
    GroupElement b = GroupElement::parse(f2, "b");
    GenKey xb{3, 0, b}, yb{3, 0, b.mul(a)};
    auto translated = lg_translate(xy, b);
    auto direct = lg_normalize(LGExpr::bracket(LGExpr::gen(xb), LGExpr::gen(yb)));
    CHECK(translated == direct);
}

TEST_CASE("lg element text form round trips") {
    GroupSpec f2({2});
    GroupElement e = GroupElement::identity(f2);
    GroupElement a = GroupElement::parse(f2, "a*B");
    LGElement el;
    el.add(LGMono{{GenKey{3, 1, a}}, false}, Rat(-2, 3));
    el = el + lg_normalize(
                  LGExpr::bracket(LGExpr::gen(GenKey{3, 0, e}), LGExpr::gen(GenKey{3, 1, a})));
    std::string text = lg_str(el, f2);
    CHECK(lg_parse(f2, text) == el);
    CHECK(lg_str(lg_parse(f2, text), f2) == text);
    CHECK(lg_parse(f2, "0").is_zero());
}

TEST_CASE("wedge model") {
    GroupSpec f2({2});
    auto model = init_wedge(f2, 3, 2);
    CHECK(model.rank.at(3) == 2);
    CHECK(model.d_orbit.at(3)[0].is_zero());
    auto res = dualizing_resolution(f2, 3);
    auto v = verify_model(model, res.complex, 5, 1);
    CHECK(v.all());
    CHECK_THROWS_AS(init_wedge(f2, 1, 2), InputError);
}

TEST_CASE("two-term dualizing resolution attaches in one step") {
    GroupSpec f2({2});
    auto build = build_moore_model(f2, 3);
    CHECK(build.model.top == 4);
    CHECK(build.model.rank.at(3) == 2);
    CHECK(build.model.rank.at(4) == 1);
    CHECK(build.report.steps.size() == 1);
    CHECK(build.report.steps[0].scale == 1);
    CHECK(build.report.steps[0].verification == "ok");
    CHECK_FALSE(build.report.steps[0].phi_nonzero);  // below 2r-1 there are no brackets

    auto v = verify_model(build.model, build.resolution.complex, 20, 7);
    CHECK(v.all());

    // bracket-free homology is D concentrated in degree 3 (window check)
    auto p = PropagationComplex::from_free_complex(build.model.bracket_free_complex());
    auto report = truncated_homology(p, {2, 3, 4});
    CHECK(report.at(4).stabilized);
    CHECK(report.at(4).value == 0);
    CHECK(report.at(3).value > 0);
}

TEST_CASE("three-degree build over F_2 x F_2") {
    GroupSpec f22({2, 2});
    auto build = build_moore_model(f22, 3);
    CHECK(build.model.top == 5);
    CHECK(build.model.rank.at(3) == 4);
    CHECK(build.model.rank.at(4) == 4);
    CHECK(build.model.rank.at(5) == 1);
    auto v = verify_model(build.model, build.resolution.complex, 20, 11);
    CHECK(v.all());
    for (const auto& s : build.report.steps) CHECK(s.verification == "ok");
}

TEST_CASE("r = 2 build over F_2") {
    auto build = build_moore_model(GroupSpec({2}), 2);
    CHECK(build.model.top == 3);
    auto v = verify_model(build.model, build.resolution.complex, 20, 13);
    CHECK(v.all());
}

TEST_CASE("attachment must land in cycles") {
    GroupSpec f2({2});
    auto build = build_moore_model(f2, 3);
    // a random non-cycle column against the top boundary
    RingMatrix bad(f2, 1, 1);
    bad.set(0, 0, RingElement::unit(f2));
    CHECK_THROWS_AS(attach_step(build.model, bad), InputError);
}

TEST_CASE("seeded section forces a nontrivial phi") {
    auto model = seeded_section_model(Rat(1));
    GroupSpec f2({2});
    // f(v) = c - c' lands in cycles of the bracket-free part
    RingMatrix f(f2, 2, 1);
    f.set(0, 0, RingElement::unit(f2));
    f.set(1, 0, RingElement::unit(f2).scaled(Rat(-1)));
    auto report = attach_step(model, f);
    CHECK(report.phi_nonzero);
    CHECK(report.scale == 1);
    CHECK(report.verification == "ok");
    CHECK(report.solver_window_monomials > 0);
    // the section of the new cell carries the witness
    CHECK(model.s_orbit.at(4)[0].max_bracket_length() == 2);
    // minimal differential: the bracket part of s(f x) was reducible to zero
    CHECK(model.d_orbit.at(4)[0].max_bracket_length() == 1);
}

TEST_CASE("irreducible bracket corrections stay in the differential") {
    // cells u1, u2 (degree 2, d = 0) and a 3-cycle c with s(c) = c + [u1,u2];
    // nothing bounds [u1,u2], so the attached cell keeps the bracket term
    GroupSpec f2({2});
    EquivariantDGLModel m = init_wedge(f2, 2, 2);
    GroupElement e = GroupElement::identity(f2);
    GenKey u1{2, 0, e}, u2{2, 1, e}, c{3, 0, e};
    m.rank[3] = 1;
    m.scale[3] = 1;
    m.d_orbit[3] = {LGElement{}};
    LGElement sc;
    sc.add(LGMono{{c}, false}, Rat(1));
    sc = sc + lg_normalize(LGExpr::bracket(LGExpr::gen(u1), LGExpr::gen(u2)));
    m.s_orbit[3] = {sc};
    m.top = 3;

    RingMatrix f(f2, 1, 1);
    f.set(0, 0, RingElement::unit(f2));  // f(v) = c, a cycle since d(c) = 0
    auto report = attach_step(m, f);
    CHECK(report.verification == "ok");
    CHECK_FALSE(report.phi_nonzero);
    // d(v) = c + [u1, u2]: bracket-free part is f, the bracket survives
    CHECK(m.d_orbit.at(4)[0].max_bracket_length() == 2);
    auto h = m.bracket_free_part(3, m.d_orbit.at(4)[0]);
    CHECK(h[0] == RingElement::unit(f2));
    CHECK(m.d(m.d_orbit.at(4)[0]).is_zero());
}

TEST_CASE("window homology of the F_2 x F_2 build is concentrated in degree r") {
    auto build = build_moore_model(GroupSpec({2, 2}), 3);
    auto p = PropagationComplex::from_free_complex(build.model.bracket_free_complex());
    auto report = truncated_homology(p, {2, 3});
    CHECK(report.at(4).value == 0);
    CHECK(report.at(5).value == 0);
    CHECK(report.at(3).value > 0);
}

TEST_CASE("fractional sections scale by N") {
    auto model = seeded_section_model(Rat(1, 2));
    GroupSpec f2({2});
    RingMatrix f(f2, 2, 1);
    f.set(0, 0, RingElement::unit(f2));
    f.set(1, 0, RingElement::unit(f2).scaled(Rat(-1)));
    auto report = attach_step(model, f);
    CHECK(report.scale == 2);
    // emitted bracket-free part is N f
    auto d4 = model.bracket_free_boundary(4);
    CHECK(d4.entry(0, 0) == RingElement::unit(f2).scaled(Rat(2)));
    CHECK(d4.entry(1, 0) == RingElement::unit(f2).scaled(Rat(-2)));

    auto guarded = seeded_section_model(Rat(1, 2));
    guarded.caps.max_scale = 1;
    CHECK_THROWS_AS(attach_step(guarded, f), CapsExhausted);
}

TEST_CASE("classifying union ranks and chi") {
    auto build = build_moore_model(GroupSpec({2, 2}), 3);
    auto pair = classifying_union(build.model);
    std::vector<int> expected = {1, 4, 4, 4, 4, 1};
    CHECK(pair.complex.ranks == expected);
    pair.complex.validate();

    // chi(X coinvariants) = chi(BGamma) + (-1)^r chi(resolution)
    long long chi_b = coinvariants(pair.classifying).euler_characteristic();
    long long chi_res = 0;
    for (int n = 3; n <= 5; ++n)
        chi_res += ((n - 3) % 2 == 0 ? 1 : -1) * build.resolution.complex.rank(n);
    long long sign_r = -1;  // (-1)^3
    CHECK(coinvariants(pair.complex).euler_characteristic() == chi_b + sign_r * chi_res);

    auto dual = self_duality_check(pair, 3, 2, build.model.scale);
    CHECK(dual.rank_palindromic);
    CHECK(dual.matrices_dual_up_to_scale);
    CHECK(dual.chi == dual.chi_expected);
    CHECK(dual.chi == 0);  // r + d odd

    // coinvariant homology in degree r equals dim(D ten_Gamma Q), the
    // coinvariants of the dualizing module
    auto h = homology(coinvariants(pair.complex));
    auto coeff = CoefficientResolution::finite(build.resolution.complex, 3, "D");
    CHECK(h.betti_at(3) == group_homology(coeff, 0).dimension);
}

TEST_CASE("suspension shifts window homology up by one") {
    auto build = build_moore_model(GroupSpec({2}), 3);
    auto pair = classifying_union(build.model);
    auto sx = suspend(pair);

    // chi(suspension coinvariants) = 2 chi(BGamma) - chi(X coinvariants)
    long long chi_x = coinvariants(pair.complex).euler_characteristic();
    long long chi_b = coinvariants(pair.classifying).euler_characteristic();
    CHECK(coinvariants(sx.complex).euler_characteristic() == 2 * chi_b - chi_x);

    auto px = PropagationComplex::from_free_complex(pair.complex);
    auto psx = PropagationComplex::from_free_complex(sx.complex);
    auto hx = truncated_homology(px, {2, 3, 4});
    auto hsx = truncated_homology(psx, {2, 3, 4});
    // X carries its classes in degree 3, the suspension in degree 4
    CHECK(hx.at(3).value > 0);
    CHECK(hx.at(4).stabilized);
    CHECK(hx.at(4).value == 0);
    CHECK(hsx.at(3).stabilized);
    CHECK(hsx.at(3).value == 0);
    CHECK(hsx.at(4).value > 0);
    // connectedness is preserved
    CHECK(hx.at(0).value == 1);
    CHECK(hsx.at(0).value == 1);
    CHECK(hsx.at(1).stabilized);
    CHECK(hsx.at(1).value == 0);

    // double suspension shifts by two
    auto ssx = suspend(sx);
    auto hssx = truncated_homology(PropagationComplex::from_free_complex(ssx.complex), {2, 3, 4});
    CHECK(hssx.at(4).stabilized);
    CHECK(hssx.at(4).value == 0);
    CHECK(hssx.at(5).value > 0);
}

TEST_CASE("model file round trips") {
    auto build = build_moore_model(GroupSpec({2, 2}), 3);
    std::string text = write_model(build.model);
    auto back = read_model(text);
    CHECK(back.spec == build.model.spec);
    CHECK(back.r == build.model.r);
    CHECK(back.top == build.model.top);
    CHECK(back.rank == build.model.rank);
    CHECK(back.scale == build.model.scale);
    for (int n = back.r; n <= back.top; ++n)
        for (int j = 0; j < back.rank.at(n); ++j) {
            CHECK(back.d_orbit.at(n)[j] == build.model.d_orbit.at(n)[j]);
            CHECK(back.s_orbit.at(n)[j] == build.model.s_orbit.at(n)[j]);
        }
    CHECK(write_model(back) == text);
}

TEST_CASE("build determinism") {
    auto a = build_moore_model(GroupSpec({2, 2}), 3);
    auto b = build_moore_model(GroupSpec({2, 2}), 3);
    CHECK(write_model(a.model) == write_model(b.model));
    CHECK(a.report.str() == b.report.str());
}
