#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace finder {

// Coefficient laws available for synthetic sampling.  All three are
// zero-mean with unit variance.
enum class CoefficientLaw { StandardGaussian, Rademacher, UniformSym };

// Deterministic random stream.  std::mt19937_64 has a portable, fully
// specified output sequence; the distributions in <random> do not.  Every
// mapping from raw 64-bit words to doubles therefore lives here, written
// out explicitly, so that a given seed produces the same samples on every
// platform and standard library.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1): top 53 bits scaled by 2^-53.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]: never returns zero, safe under log().
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.  Consumes exactly two words per call
    // and deliberately discards the sine branch: caching it would make the
    // draw count depend on call history.
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // +1 or -1 with equal probability.
    double rademacher() { return uniform() < 0.5 ? 1.0 : -1.0; }

    // Uniform on [-sqrt(3), sqrt(3)], so the variance is exactly one.
    double uniform_sym() {
        return std::sqrt(3.0) * (2.0 * uniform() - 1.0);
    }

    double draw(CoefficientLaw law) {
        switch (law) {
            case CoefficientLaw::StandardGaussian: return gaussian();
            case CoefficientLaw::Rademacher: return rademacher();
            case CoefficientLaw::UniformSym: return uniform_sym();
        }
        return 0.0; // unreachable
    }

private:
    std::mt19937_64 engine_;
};

} // namespace finder
