#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "raimi/circle_set.hpp"
#include "raimi/correlation.hpp"
#include "raimi/geometric_partition.hpp"
#include "raimi/oracle.hpp"
#include "raimi/raimi_circle.hpp"
#include "raimi/torus.hpp"

// JSON and CSV surfaces. Rationals are written as "p/q" strings ("p" for
// integers). Output is deterministic: keys sorted, two-space indent, LF
// line endings, trailing newline. Parse failures throw InvalidInput.
namespace raimi::io {

using AnyCover = std::variant<CircleCover, TorusCover>;
using AnyCertificate = std::variant<RaimiCertificate, TorusCertificate>;

/// {"dim": n, "cover": [{"name": s, "boxes": [[["lo","hi"], ...], ...]}, ...]}.
/// dim 1 yields a CircleCover (pairs with lo > hi wrap); dim >= 2 a
/// TorusCover. The covering condition is checked.
AnyCover parse_cover(std::string_view json);
std::string cover_to_json(const CircleCover& cover);
std::string cover_to_json(const TorusCover& cover);

/// JSON array of ["lo","hi"] pairs.
CircleSet parse_circle_set(std::string_view json);
std::string circle_set_to_json(const CircleSet& s);

std::string partition_to_json(const GeometricPartition& p);

/// `with_masses` adds the k per-piece masses to every step record.
std::string certificate_to_json(const RaimiCertificate& cert, bool with_masses);
std::string certificate_to_json(const TorusCertificate& cert, bool with_masses);
/// Torus certificates are recognised by their "dim" key.
AnyCertificate parse_certificate(std::string_view json);

/// "theta,f" header then one row per breakpoint.
std::string profile_csv(const CorrelationProfile& profile);

std::string report_to_json(const oracle::OracleReport& report);

}  // namespace raimi::io
