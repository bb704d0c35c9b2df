#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"n_darts": int, "sigma": [int], "alpha": [int], "root": int|null, "weights": [float]|null}
struct MapDocument {
    Map map;
    std::optional<Dart> root;
    std::optional<std::vector<double>> weights;
};

std::string to_json(const Map &map, std::optional<Dart> root = std::nullopt,
                    std::optional<std::span<const double>> weights = std::nullopt);
MapDocument map_from_json(std::string_view text);

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

/// Writes one CSV row; fields are pre-formatted strings.
void write_csv_row(std::ostream &out, std::span<const std::string> fields);

} // namespace mapforge
