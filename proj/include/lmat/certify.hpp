#pragma once

#include "lmat/construction.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lmat {

enum class CertMode { exact, modular, bound };

CertMode parse_cert_mode(const std::string& s);
std::string to_string(CertMode m);

/// Rank of a matrix on F_q^d whose entry (y, x) depends only on x - y, over a
/// field of characteristic 0. Diagonalising by the characters of F_q^d gives
/// rank = #{a : the sums G_a(c) = sum_{a.z = c} g(z) are not all equal}.
/// Needs K and Q(zeta_q) to meet only in Q; nullopt when that cannot be
/// guaranteed (prime fields, number fields of degree > 2). Throws if the
/// matrix is not translation invariant.
std::optional<std::size_t> translation_invariant_rank(const PaletteMatrix& m, std::uint32_t q, std::size_t d);

/// Largest matrix size for which exact elimination is attempted by default.
inline constexpr std::size_t kExactEliminationMaxSize = 400;

struct RankCertificate {
  std::optional<std::size_t> lower;
  std::optional<std::size_t> exact;
  std::string method;
  std::vector<std::string> notices;
};

/// exact: Bareiss when small enough, else the character-sum rank when the
/// matrix is translation invariant, else falls back to modular. modular:
/// max rank over the given primes (a lower bound). bound: nothing computed.
RankCertificate certify_rank(const PaletteMatrix& m, CertMode mode, std::span<const std::uint64_t> primes,
                             std::uint32_t q = 0, std::size_t d = 0);

/// Certifies the report's matrix and records the result in it. Returns false
/// (with a notice) if a certified rank exceeds rank_upper.
bool certify_report(ConstructionReport& r, CertMode mode, std::span<const std::uint64_t> primes,
                    std::vector<std::string>* notices = nullptr);

inline const std::vector<std::uint64_t> kDefaultPrimes{1000003, 1000033};

}  // namespace lmat
