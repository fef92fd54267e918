#ifndef GWLAB_IO_HPP
#define GWLAB_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "gwlab/bps.hpp"
#include "gwlab/gorenstein.hpp"
#include "gwlab/point_solver.hpp"
#include "gwlab/series.hpp"
#include "gwlab/target.hpp"

namespace gwlab {

using Json = nlohmann::json;

/// Rationals travel as strings "p/q" (or "p"); plain JSON integers are
/// accepted on input. `field` names the location for error messages.
Rational rational_from_json(const Json& j, const std::string& field);
Json rational_to_json(const Rational& r);

/// Reads and parses a JSON file; InputError names the path on failure.
Json read_json_file(const std::string& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

struct TargetFile {
  TargetGeometry geometry;
  std::optional<ThreefoldData> threefold;
};

TargetFile target_from_json(const Json& j);
Json target_to_json(const TargetGeometry& geometry, const ThreefoldData* threefold = nullptr);
TargetFile load_target(const std::string& path);

/// Invariant tables name insertions by basis class and give classes over
/// the threefold's curve generators, which must match `generators`.
InvariantTable invariant_table_from_json(const Json& j, const ThreefoldData& data);
Json invariant_table_to_json(const InvariantTable& table, const ThreefoldData& data);

IntersectionTable intersection_table_from_json(const Json& j);
Json intersection_table_to_json(const IntersectionTable& table);

GradedAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const GradedAlgebra& alg);

Json series_to_json(const DescendentSeries& s);
DescendentSeries series_from_json(const Json& j);

}  // namespace gwlab

#endif  // GWLAB_IO_HPP
