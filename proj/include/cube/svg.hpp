#pragma once

// Deterministic SVG drawings of groves and networks. Lattice points are
// placed by (x, y) = ((j - k) / 2, -i * sqrt(3) / 2) in units of one edge.

#include <stdexcept>
#include <string>
#include <vector>

#include "cube/groves.hpp"
#include "cube/networks.hpp"

namespace cube {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The forests side by side: red/green/blue vertices, lozenge outlines, green
/// diagonals in green and red-blue diagonals in blue.
std::string groves_svg(const GroveRegion& region, const std::vector<Forest>& forests);

/// Lattice vertices as colored dots, lozenge centers as small squares, edges
/// as arrows. Strip edges that cross a period are drawn to the shifted copy.
std::string network_svg(const Network& net);

/// Writes text to path; throws IoError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace cube
