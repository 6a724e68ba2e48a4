#pragma once

#include <cstdint>

// Default resource caps. Every expensive operation takes one of these as a
// defaulted argument so experiments can raise or lower them explicitly.
namespace uniadd::caps {

inline constexpr std::uint64_t kFactorizeMax = 1'000'000'000'000ull;  // trial division
inline constexpr std::uint32_t kSpfLimitMax = 200'000'000u;           // 32-bit entries
inline constexpr std::uint64_t kExpSumModulus = 10'000'000ull;        // direct summation
inline constexpr std::uint64_t kValueDistModulus = 1'000'000ull;
inline constexpr std::uint64_t kVsetExactModulus = 100'000ull;        // per prime power
inline constexpr std::uint64_t kCharSumModulus = 10'000ull;           // r-loop times v-loop
inline constexpr std::uint64_t kConstancyModulus = 1'000'000ull;      // D_l scans
inline constexpr std::uint64_t kXiModulus = 1'000'000ull;
inline constexpr unsigned kJMax = 32;
inline constexpr std::uint64_t kBruteForceTuples = 10'000'000ull;
inline constexpr std::uint64_t kSieveMaxX = 200'000'000ull;
inline constexpr std::uint64_t kSieveMaxQ = 1'000'000ull;
inline constexpr std::uint64_t kScanQMax = 100'000ull;
inline constexpr std::uint64_t kEll0Max = 100'000'000ull;             // eta/l0 prime scans

}  // namespace uniadd::caps
