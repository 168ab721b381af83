#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "skewdim/attractor.hpp"
#include "skewdim/dimension.hpp"
#include "skewdim/measure.hpp"
#include "skewdim/symbolic.hpp"

namespace skewdim {

struct json_parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest representation that round-trips the exact double value.
[[nodiscard]] std::string format_double(double v);

/// JSON schema: {a, b, c, d, branches: [{kind, lo, hi, images, samples?}]}.
[[nodiscard]] IntervalMap interval_map_from_json(const std::string& text);
[[nodiscard]] std::string interval_map_to_json(const IntervalMap& map);

/// JSON schema: {base: <interval map>, lambda,
///               fiber: {kind: "exact"|"upper"|"lower",
///                       phi_samples? | q? | gamma?}}.
[[nodiscard]] SkewSystem skew_system_from_json(const std::string& text);
[[nodiscard]] std::string skew_system_to_json(const SkewSystem& sys);

/// CSV bodies are RFC-4180 style: header row, CRLF line endings, no
/// quoting (fields are numbers and symbol words).
[[nodiscard]] std::string cover_csv(const AttractorCover& cover);
[[nodiscard]] std::string interval_cover_csv(std::span<const AddressedInterval> cover);
[[nodiscard]] std::string measure_csv(const EmpiricalMeasure& em);
[[nodiscard]] std::string scales_csv(const DimensionFit& fit);

/// Static SVG 1.1 rendering of a band cover: one polyline pair (lower
/// and upper edge) per band, long edges decimated to at most 257 nodes.
[[nodiscard]] std::string cover_svg(const AttractorCover& cover);

/// Writes through a temp file in the same directory, then renames, so
/// readers never observe a partial file.
void atomic_write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace skewdim
