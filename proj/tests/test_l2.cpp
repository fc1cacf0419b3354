#include <doctest.h>

#include "qmoore/l2.hpp"

using namespace qmoore;

TEST_CASE("kunneth powers of the atom") {
    auto f2 = atom_f2();
    CHECK(f2.b == std::vector<Rat>{Rat(0), Rat(1)});

    auto f22 = kunneth(f2, f2);
    CHECK(f22.at(2) == 1);
    for (size_t k = 0; k < f22.b.size(); ++k)
        if (k != 2) CHECK(f22.b[k] == 0);

    auto f24 = free_power_profile(4);
    CHECK(f24.at(4) == 1);
    Rat total(0);
    for (const auto& x : f24.b) total += x;
    CHECK(total == 1);

    // the one-point profile is the kunneth identity
    auto p = point_profile();
    CHECK(kunneth(f24, p).b == f24.b);
    CHECK(kunneth(p, f24).b == f24.b);
}

TEST_CASE("kunneth is commutative and associative") {
    L2Profile a;
    a.label = "a";
    a.b = {Rat(1), Rat(2), Rat(1, 3)};
    L2Profile b;
    b.label = "b";
    b.b = {Rat(0), Rat(1), Rat(5)};
    L2Profile c;
    c.label = "c";
    c.b = {Rat(2)};
    CHECK(kunneth(a, b).b == kunneth(b, a).b);
    CHECK(kunneth(kunneth(a, b), c).b == kunneth(a, kunneth(b, c)).b);
}

TEST_CASE("euler characteristic is a ring map") {
    auto f2 = atom_f2();
    CHECK(euler_characteristic(f2) == -1);
    for (int d = 1; d <= 5; ++d) {
        auto p = free_power_profile(d);
        CHECK(euler_characteristic(p) == (d % 2 == 0 ? 1 : -1));
    }
    L2Profile zero;
    CHECK(euler_characteristic(zero) == 0);

    L2Profile a;
    a.b = {Rat(1), Rat(3), Rat(2)};
    L2Profile b;
    b.b = {Rat(2), Rat(1)};
    CHECK(euler_characteristic(kunneth(a, b)) ==
          euler_characteristic(a) * euler_characteristic(b));
    CHECK(euler_characteristic(disjoint_union({a, b})) ==
          euler_characteristic(a) + euler_characteristic(b));
}

TEST_CASE("cover scaling") {
    auto f2 = atom_f2();
    CHECK(cover_scale(f2, 1).b == f2.b);
    CHECK(cover_scale(f2, 2).b == std::vector<Rat>{Rat(0), Rat(2)});
    CHECK(euler_characteristic(cover_scale(f2, 5)) == 5 * euler_characteristic(f2));
    CHECK_THROWS_AS(cover_scale(f2, 0), InputError);

    // 2^m disjoint copies = cover scaling by 2^m
    std::vector<L2Profile> copies(8, f2);
    CHECK(disjoint_union(copies).b == cover_scale(f2, 8).b);
}

TEST_CASE("provenance replay") {
    auto p = cover_scale(kunneth(atom_f2(), atom_f2()), 3);
    CHECK(p.replay_matches());
    CHECK(p.rule == "cover 3");
    CHECK(p.inputs.size() == 1);
    p.b[2] += 1;  // tamper
    CHECK_FALSE(p.replay_matches());
}

TEST_CASE("davis transfer constraints for the n = 7 pipeline") {
    auto m_profile = free_power_profile(4);
    m_profile.rationally_aspherical = true;
    auto constraints = davis_transfer(m_profile, symbolic_chambers(), 7);
    CHECK(constraints.n == 7);

    // b_5 = b_6 = b_7 = 0, b_4 >= |W/G|, duality completion b_3 = b_4
    for (int k : {5, 6, 7}) {
        auto c = constraints.find(k);
        REQUIRE(c.has_value());
        CHECK(c->rel == Relation::equal);
        CHECK(c->value.is_zero());
    }
    auto middle = constraints.find(4);
    REQUIRE(middle.has_value());
    CHECK(middle->rel == Relation::at_least);
    CHECK(middle->value == symbolic_chambers());
    auto below = constraints.find(3);
    REQUIRE(below.has_value());
    CHECK(below->value == symbolic_chambers());

    // verdict: violates, for every number of chambers
    CHECK(singer_verdict(constraints) == SingerVerdict::violates);

    // numeric chamber counts agree with the symbolic verdict
    for (int m = 0; m <= 10; m += 2) {
        auto numeric = davis_transfer(m_profile, LinForm(Rat(Int(1) << m)), 7);
        CHECK(singer_verdict(numeric) == SingerVerdict::violates);
    }

    // zero profile forces zero above the middle and stays consistent
    L2Profile zero;
    zero.rationally_aspherical = true;
    auto zc = davis_transfer(zero, symbolic_chambers(), 7);
    for (const auto& c : zc.constraints) CHECK(c.value.is_zero());
    CHECK(singer_verdict(zc) == SingerVerdict::consistent);
}

TEST_CASE("singer verdict on profiles") {
    L2Profile p;
    p.b = {Rat(0), Rat(0), Rat(1)};
    p.closed_manifold = true;
    p.rationally_aspherical = true;
    p.dim_n = 4;
    // supported only in the middle of an even dimension: consistent
    CHECK(singer_verdict(p, 4) == SingerVerdict::consistent);

    // flat torus style: all zeros
    L2Profile torus;
    torus.closed_manifold = true;
    torus.rationally_aspherical = true;
    CHECK(singer_verdict(torus, 4) == SingerVerdict::consistent);

    // odd dimension with any nonzero entry violates
    L2Profile odd = p;
    odd.dim_n = 5;
    odd.b = {Rat(0), Rat(0), Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)};
    CHECK(singer_verdict(odd, 5) == SingerVerdict::violates);

    // flags absent: not applicable
    L2Profile unflagged;
    unflagged.b = {Rat(1)};
    CHECK(singer_verdict(unflagged, 4) == SingerVerdict::not_applicable);
}

TEST_CASE("chi gap arithmetic") {
    CHECK(chi_gap(Rat(0), 16) == -32);
    CHECK(chi_gap(Rat(32), 16) == 0);
    CHECK(chi_gap(Rat(40), 16) == 8);
}

TEST_CASE("duality completion is monotone and idempotent") {
    L2Profile p;
    p.b = {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    auto c = duality_completion(p, 7);
    for (size_t k = 0; k < p.b.size(); ++k) CHECK(c.at(k) >= p.at(k));
    CHECK(c.at(3) == 1);
    CHECK(c.at(4) == 1);
    auto cc = duality_completion(c, 7);
    CHECK(cc.b == c.b);
    CHECK(c.replay_matches());
}
