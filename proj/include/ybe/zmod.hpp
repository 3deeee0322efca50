#pragma once

#include <cstdint>
#include <optional>
#include <tuple>

namespace ybe {

inline int mod_norm(long long v, int n) {
    long long r = v % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

inline std::optional<int> mod_inverse(int a, int n) {
    // extended gcd
    long long r0 = n, r1 = mod_norm(a, n), s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        std::tie(r0, r1) = std::tuple{r1, r0 - q * r1};
        std::tie(s0, s1) = std::tuple{s1, s0 - q * s1};
    }
    if (r0 != 1) return std::nullopt;
    return mod_norm(s0, n);
}

inline bool is_unit(int a, int n) { return mod_inverse(a, n).has_value(); }

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Returns the prime p if n = p^a with a >= 1, otherwise nullopt.
inline std::optional<int> prime_power_base(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    for (int p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
        if (n % static_cast<std::uint64_t>(p) == 0) {
            while (n % static_cast<std::uint64_t>(p) == 0) n /= static_cast<std::uint64_t>(p);
            return n == 1 ? std::optional<int>(p) : std::nullopt;
        }
    }
    return static_cast<int>(n);  // n itself prime
}

} // namespace ybe
