#include <doctest.h>

#include "sumex/bitvector.hpp"
#include "sumex/rng.hpp"

using namespace sumex;

namespace {

BitVector random_bits(Rng& rng, std::size_t n, double density) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.unit() < density) v.set(i);
    }
    return v;
}

std::size_t naive_count_and(const BitVector& a, const BitVector& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.test(i) && b.test(i)) ++c;
    }
    return c;
}

} // namespace

TEST_CASE("bitvector basics") {
    BitVector v(70);
    CHECK(v.none());
    v.set(0);
    v.set(69);
    CHECK(v.count() == 2);
    CHECK(v.test(69));
    v.set(69, false);
    CHECK(v.count() == 1);

    BitVector full(70, true);
    CHECK(full.count() == 70);
    CHECK(full.size() == 70);
}

TEST_CASE("fused counts match naive loops") {
    Rng rng(42);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + rng.below(200);
        const BitVector a = random_bits(rng, n, 0.5);
        const BitVector b = random_bits(rng, n, 0.3);
        const BitVector c = random_bits(rng, n, 0.7);

        CHECK(a.count_and(b) == naive_count_and(a, b));
        CHECK(a.intersects(b) == (naive_count_and(a, b) > 0));

        std::size_t and3 = 0, andnot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a.test(i) && b.test(i) && c.test(i)) ++and3;
            if (a.test(i) && b.test(i) && !c.test(i)) ++andnot;
        }
        CHECK(a.count_and(b, c) == and3);
        CHECK(a.count_and_andnot(b, c) == andnot);
        CHECK(a.intersects_andnot(b, c) == (andnot > 0));

        BitVector nc;
        nc.assign_not(c);
        CHECK(nc.count() == n - c.count());

        BitVector ab;
        ab.assign_and(a, b);
        CHECK(ab.count() == naive_count_and(a, b));
        CHECK(ab.is_subset_of(a));

        const auto idx = ab.to_indices();
        CHECK(idx.size() == ab.count());
        for (const int i : idx) CHECK(ab.test(static_cast<std::size_t>(i)));
    }
}

TEST_CASE("complement keeps tail bits clear") {
    BitVector v(65);
    BitVector nv;
    nv.assign_not(v);
    CHECK(nv.count() == 65);
    nv |= v;
    CHECK(nv.count() == 65);
}
