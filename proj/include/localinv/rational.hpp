#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace localinv {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);
std::string to_string(const Integer& value);

/// Deterministic 64-bit generator (splitmix64). Used instead of
/// <random> distributions so a seed replays identically on every stdlib.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// Small rational k/2^e with k in [-3,3], e in {0,1}.
    Scalar small_rational();
    /// Nonzero-biased variant used for sample points.
    Scalar small_rational_nonzero();

private:
    std::uint64_t state_;
};

/// Independent stream index -> seed; used so sample i is the same point no
/// matter how many samples are drawn.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace localinv
