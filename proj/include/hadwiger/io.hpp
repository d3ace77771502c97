#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "hadwiger/function_space.hpp"
#include "hadwiger/intrinsic_volumes.hpp"
#include "hadwiger/valuations.hpp"

namespace hadwiger::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using InputObject = std::variant<GridRegion, ConstructibleFunction,
                                 SimplicialSet, PLFunction>;

/// Parses one input document (JSON, top-level "kind" selects the type).
/// Grid-function values are a flat array over all cells in mixed-radix
/// order of the per-axis parity index, axis 0 fastest.
InputObject parse_input(const std::string& path);
InputObject parse_input_text(const std::string& text, const std::string& name);

/// Serializers for the same formats (used by the `dual` command and tests).
std::string serialize_grid_function(const ConstructibleFunction& h);

/// PGM (P2/P5) ingestion: pixel (i, j) with sample p becomes value p/maxval
/// on the open unit square (i, i+1) x (j, j+1), with i the column index and
/// j the row index counted from the top row. Lower-dimensional cells take
/// the max (upper semicontinuous) or min of the adjacent open cells.
enum class Skeleton { kMax, kMin };
ConstructibleFunction ingest_image(const std::string& path, Skeleton skeleton);

HadwigerValuation parse_valuation(const std::string& path, Bound bound);
CoefficientProfile parse_profile(const std::string& path);
RigidMotion parse_motion(const std::string& path);

CroftonConstants load_calibration(const std::string& path);
void save_calibration(const CroftonConstants& c, const std::string& path);

}  // namespace hadwiger::io
