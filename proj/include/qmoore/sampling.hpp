#pragma once

#include <random>

#include "qmoore/ring.hpp"

namespace qmoore {

using Rng = std::mt19937_64;

// Random freely reduced element of word length <= max_len.
inline GroupElement random_element(const GroupSpec& spec, int max_len, Rng& rng) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    int len = len_dist(rng);
    std::vector<int> letters;
    std::uniform_int_distribution<int> gen_dist(1, spec.total_generators());
    std::uniform_int_distribution<int> sign_dist(0, 1);
    for (int i = 0; i < len; ++i) {
        int l = gen_dist(rng);
        letters.push_back(sign_dist(rng) ? l : -l);
    }
    return GroupElement::reduce(spec, letters);
}

inline RingElement random_ring_element(const GroupSpec& spec, int terms, int max_len, Rng& rng,
                                       ScalarKind kind = ScalarKind::rational) {
    RingElement x = RingElement::zero(spec, kind);
    std::uniform_int_distribution<int> num_dist(-5, 5);
    std::uniform_int_distribution<int> den_dist(1, 4);
    for (int i = 0; i < terms; ++i) {
        Rat c = kind == ScalarKind::rational ? Rat(num_dist(rng), den_dist(rng)) : Rat(num_dist(rng));
        x = x + RingElement::monomial(spec, random_element(spec, max_len, rng), c, kind);
    }
    return x;
}

}  // namespace qmoore
