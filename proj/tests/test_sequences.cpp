#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "extfactor/errors.hpp"
#include "extfactor/sequences.hpp"

using namespace extfactor;

TEST_SUITE("sequences") {
    TEST_CASE("radical inverse examples") {
        CHECK(van_der_corput(1, 2) == 0.5);
        CHECK(van_der_corput(3, 2) == 0.75);
        CHECK(van_der_corput(4, 2) == 0.125);
        // 5 = 12 in base 3 -> 0.21 = 2/3 + 1/9
        CHECK(van_der_corput(5, 3) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
        CHECK_THROWS_AS(van_der_corput(1, 1), DomainError);
        CHECK_THROWS_AS(PointSequence::van_der_corput(0), DomainError);
    }

    TEST_CASE("base-2 van der Corput is stratified at every power of two") {
        const auto seq = PointSequence::van_der_corput(2);
        for (int k = 0; k <= 12; ++k) {
            const std::uint64_t n = std::uint64_t{1} << k;
            std::vector<int> hits(n, 0);
            for (std::uint64_t i = 1; i <= n; ++i) {
                hits[static_cast<std::size_t>(seq.point(i)[0] * static_cast<double>(n))]++;
            }
            for (int h : hits) CHECK(h == 1);
        }
    }

    TEST_CASE("scrambled sequence keeps the dyadic net property") {
        for (std::uint64_t seed : {1ULL, 42ULL, 7777ULL, 0xDEADBEEFULL}) {
            for (int k = 0; k <= 8; ++k) {
                const std::uint64_t n = std::uint64_t{1} << k;
                std::vector<int> hits(n, 0);
                for (std::uint64_t i = 1; i <= n; ++i) {
                    hits[static_cast<std::size_t>(scrambled_van_der_corput(i, seed) *
                                                  static_cast<double>(n))]++;
                }
                for (int h : hits) CHECK(h == 1);
            }
        }
    }

    TEST_CASE("scrambled points are marginally uniform") {
        // Chi-square over 16 bins for a fixed index across 16000 seeds.
        // 15 degrees of freedom; 37.70 is the 0.999 quantile.
        constexpr int kBins = 16;
        constexpr int kSeeds = 16000;
        for (std::uint64_t index : {1ULL, 2ULL, 5ULL, 1000ULL}) {
            std::vector<int> counts(kBins, 0);
            for (int s = 0; s < kSeeds; ++s) {
                counts[static_cast<std::size_t>(scrambled_van_der_corput(index, s) * kBins)]++;
            }
            const double expected = static_cast<double>(kSeeds) / kBins;
            double chi2 = 0.0;
            for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
            CAPTURE(index);
            CHECK(chi2 < 37.70);
        }
    }

    TEST_CASE("randomized kinds reproduce per seed, deterministic kinds per index") {
        const auto a = PointSequence::scrambled_base2(9);
        const auto b = PointSequence::scrambled_base2(9);
        const auto c = PointSequence::scrambled_base2(10);
        int differing = 0;
        for (std::uint64_t i = 1; i <= 64; ++i) {
            CHECK(a.point(i) == b.point(i));
            if (a.point(i) != c.point(i)) ++differing;
        }
        CHECK(differing > 32);

        const auto iid1 = PointSequence::iid_uniform(5, 2);
        const auto iid2 = PointSequence::iid_uniform(5, 2);
        for (std::uint64_t i = 1; i <= 64; ++i) CHECK(iid1.point(i) == iid2.point(i));

        const auto h = PointSequence::halton(2);
        CHECK(h.point(17) == h.point(17));
        CHECK_FALSE(h.randomized());
        CHECK(iid1.randomized());
        CHECK(a.randomized());
    }

    TEST_CASE("halton uses consecutive prime bases") {
        CHECK(first_primes(6) == std::vector<unsigned>{2, 3, 5, 7, 11, 13});
        const auto h = PointSequence::halton(3);
        for (std::uint64_t i = 1; i <= 50; ++i) {
            const auto x = h.point(i);
            CHECK(x[0] == van_der_corput(i, 2));
            CHECK(x[1] == van_der_corput(i, 3));
            CHECK(x[2] == van_der_corput(i, 5));
        }
    }

    TEST_CASE("zero shift is the identity") {
        const auto base = PointSequence::halton(2);
        const auto same = PointSequence::shifted(base, {0.0, 0.0});
        for (std::uint64_t i = 1; i <= 100; ++i) CHECK(same.point(i) == base.point(i));
        CHECK_THROWS_AS(PointSequence::shifted(base, {0.1}), DomainError);
        CHECK_THROWS_AS(PointSequence::shifted(base, {0.1, 1.0}), DomainError);
    }

    TEST_CASE("every coordinate lies in [0,1)") {
        const auto vdc2 = PointSequence::van_der_corput(2);
        const std::vector<PointSequence> all = {
            vdc2,
            PointSequence::van_der_corput(7),
            PointSequence::halton(4),
            PointSequence::iid_uniform(3, 3),
            PointSequence::random_shift(vdc2, 11),
            PointSequence::shifted(vdc2, {0.5}),
            PointSequence::scrambled_base2(12),
        };
        for (const auto& seq : all) {
            for (std::uint64_t i = 1; i <= 4096; ++i) {
                for (double x : seq.point(i)) {
                    CAPTURE(seq.name());
                    REQUIRE(x >= 0.0);
                    REQUIRE(x < 1.0);
                }
            }
        }
        // shift that lands exactly on 1 wraps to 0
        const auto wrap = PointSequence::shifted(vdc2, {0.5});
        CHECK(wrap.point(1)[0] == 0.0);
    }

    TEST_CASE("index bounds") {
        const auto seq = PointSequence::van_der_corput(2);
        CHECK_THROWS_AS(seq.point(0), DomainError);
        CHECK_THROWS_AS(scrambled_van_der_corput(std::uint64_t{1} << 32, 1), DomainError);
        CHECK_NOTHROW(scrambled_van_der_corput((std::uint64_t{1} << 32) - 1, 1));
        std::vector<double> wrong(2);
        CHECK_THROWS_AS(seq.point(1, wrong), DomainError);
    }
}
