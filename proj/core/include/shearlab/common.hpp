#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace shearlab {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SHEARLAB_ERROR_TYPE(NAME)                                  \
    class NAME : public Error {                                    \
    public:                                                        \
        explicit NAME(const std::string& msg) : Error(msg) {}      \
    }

SHEARLAB_ERROR_TYPE(BadParameter);
SHEARLAB_ERROR_TYPE(NyquistViolation);
SHEARLAB_ERROR_TYPE(EmbeddingFailure);
SHEARLAB_ERROR_TYPE(UnderResolved);
SHEARLAB_ERROR_TYPE(TooFewPoints);
SHEARLAB_ERROR_TYPE(ResolutionExceeded);
SHEARLAB_ERROR_TYPE(DomainExceeded);
SHEARLAB_ERROR_TYPE(BundleMismatch);
SHEARLAB_ERROR_TYPE(StepTooLarge);
SHEARLAB_ERROR_TYPE(NonPositiveOrdinate);
SHEARLAB_ERROR_TYPE(ZeroModePresent);
SHEARLAB_ERROR_TYPE(ZeroField);

#undef SHEARLAB_ERROR_TYPE

/// Seed plus substream index; equal pairs reproduce identical samples
/// bit-for-bit on one platform.
struct RandomSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Deterministic Gaussian stream (xoshiro256++ state expanded from the
/// seed pair via splitmix64, Box-Muller transform). Self-contained so
/// samples do not depend on the standard library's distribution choices.
class GaussianStream {
public:
    explicit GaussianStream(RandomSeed rs);

    double normal();                       ///< one N(0,1) draw
    double uniform();                      ///< one U(0,1) draw, 53-bit
    void fill_normal(std::span<double> out);

private:
    std::uint64_t next_u64();
    std::uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Sum with a fixed pairwise reduction tree; deterministic regardless of
/// chunking and accurate to O(log n) rounding.
double pairwise_sum(std::span<const double> xs);

/// Run fn(begin, end) over [0, n) split across up to max_threads() workers.
/// Chunk boundaries are deterministic; fn must not touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

int max_threads();
void set_max_threads(int n);

}  // namespace shearlab
