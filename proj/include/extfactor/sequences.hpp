#pragma once

// Point sequences on [0,1)^d, indexed from 1. Every generator is stateless given
// (index, seed): point i can be produced without generating points 1..i-1.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace extfactor {

/// Radical inverse of `index` in `base`. Throws DomainError for base < 2.
double van_der_corput(std::uint64_t index, unsigned base);

/// Nested uniform (Owen) scramble of the base-2 radical inverse of `index`,
/// 32 digits deep. Requires index < 2^32.
double scrambled_van_der_corput(std::uint64_t index, std::uint64_t seed);

/// First `count` primes, used as Halton bases.
std::vector<unsigned> first_primes(unsigned count);

class PointSequence {
public:
    struct VanDerCorput {
        unsigned base;
    };
    struct Halton {
        std::vector<unsigned> bases;
    };
    struct IidUniform {
        std::uint64_t seed;
        unsigned dims;
    };
    struct Shifted {
        std::shared_ptr<const PointSequence> base;
        std::vector<double> shift;
    };
    struct ScrambledBase2 {
        std::uint64_t seed;
    };
    using Kind = std::variant<VanDerCorput, Halton, IidUniform, Shifted, ScrambledBase2>;

    static PointSequence van_der_corput(unsigned base);
    static PointSequence halton(unsigned dims);
    static PointSequence iid_uniform(std::uint64_t seed, unsigned dims = 1);
    /// Cranley-Patterson rotation by an explicit shift vector in [0,1)^d.
    static PointSequence shifted(const PointSequence& base, std::vector<double> shift);
    /// Rotation by a uniform shift drawn from `seed`.
    static PointSequence random_shift(const PointSequence& base, std::uint64_t seed);
    static PointSequence scrambled_base2(std::uint64_t seed);

    unsigned dimension() const noexcept { return dimension_; }
    /// True when the points depend on a seed.
    bool randomized() const noexcept;
    std::string name() const;
    const Kind& kind() const noexcept { return kind_; }

    /// Writes point `index` (>= 1) into `out`, which must hold dimension() values.
    void point(std::uint64_t index, std::span<double> out) const;
    std::vector<double> point(std::uint64_t index) const;

private:
    PointSequence(Kind kind, unsigned dimension) : kind_(std::move(kind)), dimension_(dimension) {}

    Kind kind_;
    unsigned dimension_;
};

}  // namespace extfactor
