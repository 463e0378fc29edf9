#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "graphdiscord/density.hpp"

namespace gd {

/// Matrix document (JSON): {"dim": d, "entries": [[re, im], ...]} with d*d
/// row-major entries. An optional "partition": [p, q] records the qubit split.
struct MatrixDocument {
    ComplexMatrix matrix;
    std::optional<Partition> partition;
};

/// Throws ParseError on malformed documents or non-finite numbers.
[[nodiscard]] MatrixDocument parse_matrix(std::string_view text);

/// One row per line, numbers with 17 significant digits.
[[nodiscard]] std::string serialize_matrix(const ComplexMatrix &m, std::optional<Partition> partition = std::nullopt);

} // namespace gd
