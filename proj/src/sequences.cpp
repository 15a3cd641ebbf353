#include "extfactor/sequences.hpp"

#include <bit>
#include <string>

#include "extfactor/errors.hpp"
#include "extfactor/rng.hpp"

namespace extfactor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint32_t reverse_bits32(std::uint32_t v) {
    v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
    v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
    v = ((v >> 4) & 0x0F0F0F0Fu) | ((v & 0x0F0F0F0Fu) << 4);
    v = ((v >> 8) & 0x00FF00FFu) | ((v & 0x00FF00FFu) << 8);
    return (v >> 16) | (v << 16);
}

double wrap_unit(double x) {
    // x in [0, 2): one subtraction suffices, and rounding up to exactly 1.0 maps to 0.
    if (x >= 1.0) x -= 1.0;
    return x;
}

}  // namespace

double van_der_corput(std::uint64_t index, unsigned base) {
    if (base < 2) throw DomainError("van_der_corput: base must be >= 2");
    double result = 0.0;
    double scale = 1.0;
    const double inv_base = 1.0 / base;
    while (index > 0) {
        scale *= inv_base;
        result += scale * static_cast<double>(index % base);
        index /= base;
    }
    return result;
}

double scrambled_van_der_corput(std::uint64_t index, std::uint64_t seed) {
    if (index >= (std::uint64_t{1} << 32)) {
        throw DomainError("scrambled_van_der_corput: index must be below 2^32");
    }
    const std::uint32_t digits = reverse_bits32(static_cast<std::uint32_t>(index));
    const std::uint64_t key = mix64(seed);
    std::uint32_t out = 0;
    // Prefix carries a leading 1 so that prefixes of different depth never collide.
    std::uint64_t prefix = 1;
    for (int k = 0; k < 32; ++k) {
        const std::uint32_t bit = (digits >> (31 - k)) & 1u;
        const auto flip = static_cast<std::uint32_t>(counter_hash(key, prefix) >> 63);
        out |= (bit ^ flip) << (31 - k);
        prefix = (prefix << 1) | bit;
    }
    return static_cast<double>(out) * 0x1.0p-32;
}

std::vector<unsigned> first_primes(unsigned count) {
    std::vector<unsigned> primes;
    for (unsigned candidate = 2; primes.size() < count; ++candidate) {
        bool prime = true;
        for (unsigned p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(candidate);
    }
    return primes;
}

PointSequence PointSequence::van_der_corput(unsigned base) {
    if (base < 2) throw DomainError("van_der_corput: base must be >= 2");
    return PointSequence(VanDerCorput{base}, 1);
}

PointSequence PointSequence::halton(unsigned dims) {
    if (dims < 1) throw DomainError("halton: dims must be >= 1");
    return PointSequence(Halton{first_primes(dims)}, dims);
}

PointSequence PointSequence::iid_uniform(std::uint64_t seed, unsigned dims) {
    if (dims < 1) throw DomainError("iid_uniform: dims must be >= 1");
    return PointSequence(IidUniform{seed, dims}, dims);
}

PointSequence PointSequence::shifted(const PointSequence& base, std::vector<double> shift) {
    if (shift.size() != base.dimension()) {
        throw DomainError("shifted: shift vector dimension mismatch");
    }
    for (double s : shift) {
        if (!(s >= 0.0 && s < 1.0)) throw DomainError("shifted: shift must lie in [0,1)");
    }
    const unsigned dims = base.dimension();
    return PointSequence(Shifted{std::make_shared<const PointSequence>(base), std::move(shift)},
                         dims);
}

PointSequence PointSequence::random_shift(const PointSequence& base, std::uint64_t seed) {
    std::vector<double> shift(base.dimension());
    const std::uint64_t key = mix64(seed ^ 0x5348494654ULL);
    for (unsigned j = 0; j < shift.size(); ++j) shift[j] = to_unit_interval(counter_hash(key, j));
    return shifted(base, std::move(shift));
}

PointSequence PointSequence::scrambled_base2(std::uint64_t seed) {
    return PointSequence(ScrambledBase2{seed}, 1);
}

bool PointSequence::randomized() const noexcept {
    return std::visit(overloaded{
                          [](const VanDerCorput&) { return false; },
                          [](const Halton&) { return false; },
                          [](const IidUniform&) { return true; },
                          [](const Shifted&) { return true; },
                          [](const ScrambledBase2&) { return true; },
                      },
                      kind_);
}

std::string PointSequence::name() const {
    return std::visit(
        overloaded{
            [](const VanDerCorput& k) { return "vdc" + std::to_string(k.base); },
            [this](const Halton&) { return "halton" + std::to_string(dimension_) + "d"; },
            [](const IidUniform& k) { return "iid" + std::to_string(k.dims) + "d"; },
            [](const Shifted& k) { return "shifted_" + k.base->name(); },
            [](const ScrambledBase2&) { return std::string("scrambled_vdc2"); },
        },
        kind_);
}

void PointSequence::point(std::uint64_t index, std::span<double> out) const {
    if (index < 1) throw DomainError("point: index must be >= 1");
    if (out.size() != dimension_) throw DomainError("point: output span has wrong dimension");
    std::visit(overloaded{
                   [&](const VanDerCorput& k) { out[0] = extfactor::van_der_corput(index, k.base); },
                   [&](const Halton& k) {
                       for (std::size_t j = 0; j < k.bases.size(); ++j) {
                           out[j] = extfactor::van_der_corput(index, k.bases[j]);
                       }
                   },
                   [&](const IidUniform& k) {
                       const std::uint64_t key = mix64(k.seed);
                       for (unsigned j = 0; j < k.dims; ++j) {
                           out[j] = to_unit_interval(counter_hash(key, index * k.dims + j));
                       }
                   },
                   [&](const Shifted& k) {
                       k.base->point(index, out);
                       for (std::size_t j = 0; j < out.size(); ++j) {
                           out[j] = wrap_unit(out[j] + k.shift[j]);
                       }
                   },
                   [&](const ScrambledBase2& k) {
                       out[0] = scrambled_van_der_corput(index, k.seed);
                   },
               },
               kind_);
}

std::vector<double> PointSequence::point(std::uint64_t index) const {
    std::vector<double> x(dimension_);
    point(index, x);
    return x;
}

}  // namespace extfactor
