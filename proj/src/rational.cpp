#include "localinv/rational.hpp"

#include <stdexcept>

namespace localinv {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    const auto den_text = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num_text) || !is_integer_literal(den_text) || den_text[0] == '-' ||
        den_text[0] == '+') {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    std::string num(num_text);
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num, 10);
    Integer d(std::string(den_text), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::uint64_t SeededRng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t SeededRng::uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
}

Scalar SeededRng::small_rational() {
    const auto k = uniform(-3, 3);
    const auto e = uniform(0, 1);
    Scalar q(static_cast<long>(k), static_cast<unsigned long>(1UL << e));
    q.canonicalize();
    return q;
}

Scalar SeededRng::small_rational_nonzero() {
    Scalar q = small_rational();
    while (q == 0) q = small_rational();
    return q;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SeededRng rng(seed ^ (index * 0xd1b54a32d192ed03ULL));
    rng.next();
    return rng.next();
}

}  // namespace localinv
