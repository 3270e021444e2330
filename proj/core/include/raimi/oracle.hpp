#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raimi/box_set.hpp"
#include "raimi/circle_set.hpp"
#include "raimi/geometric_partition.hpp"
#include "raimi/raimi_circle.hpp"
#include "raimi/torus.hpp"

namespace raimi::oracle {

/// Largest lattice the oracle will enumerate for one measure.
inline constexpr std::int64_t kMaxLatticePoints = std::int64_t{1} << 31;
/// Largest candidate set exhaustive_witness will evaluate.
inline constexpr std::size_t kMaxCandidates = 1'000'000;

/// The instance is too fine for lattice counting. Reported, not failed.
class LatticeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Mismatch {
  std::string field;  // "measures", "transfer_bounds", "circle.measures", "selector"
  std::size_t index = 0;  // 1-based
  std::string stored;
  std::string recomputed;
};

struct OracleReport {
  std::string digest;
  std::optional<int> best_m;
  std::optional<Rational> best_theta;
  std::optional<Rational> best_min_measure;
  std::optional<Rational> solver_theta;
  std::optional<Rational> solver_min_measure;
  std::size_t candidates = 0;
  std::vector<std::int64_t> grid;  // lattice resolution per axis used by cross_validate
  std::vector<Mismatch> mismatches;
  std::string note;
  bool agreement = false;
};

/// Counts lattice points j/Q in S and divides by Q. Throws InvalidInput when
/// Q is not a common multiple of the endpoint denominators.
Rational grid_measure(const CircleSet& s, std::int64_t q);
Rational grid_measure(const BoxSet& s, std::int64_t q);
/// Per-axis resolutions q[d].
Rational grid_measure(const BoxSet& s, std::span<const std::int64_t> q);

/// max over m and theta of min_i |R_theta(F_m) ∩ E_i|, searched over every
/// breakpoint, arc midpoint, and pairwise crossing of the affine pieces.
/// When `solver` is given, its stored measures are recomputed and compared.
OracleReport exhaustive_witness(const GeometricPartition& partition, const CircleCover& cover,
                                const RaimiCertificate* solver = nullptr);

/// Recomputes every measure in the certificate by lattice counting at
/// Q = lcm of all denominators involved, requiring exact equality.
OracleReport cross_validate(const RaimiCertificate& cert, const CircleCover& cover);
OracleReport cross_validate(const TorusCertificate& cert, const TorusCover& cover);

/// Stable 64-bit FNV-1a digest of a textual instance description, in hex.
std::string digest(std::string_view text);

}  // namespace raimi::oracle
