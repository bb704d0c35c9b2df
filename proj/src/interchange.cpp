#include "mapforge/interchange.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mapforge {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

std::string to_json(const Map &map, std::optional<Dart> root,
                    std::optional<std::span<const double>> weights) {
    std::ostringstream out;
    auto ints = [&](std::span<const Dart> values) {
        out << '[';
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (i ? "," : "") << values[i];
        out << ']';
    };
    out << "{\"n_darts\":" << map.num_darts() << ",\"sigma\":";
    ints(map.sigma_array());
    out << ",\"alpha\":";
    ints(map.alpha_array());
    out << ",\"root\":";
    if (root)
        out << *root;
    else
        out << "null";
    out << ",\"weights\":";
    if (weights) {
        out << '[';
        for (std::size_t i = 0; i < weights->size(); ++i)
            out << (i ? "," : "") << format_double((*weights)[i]);
        out << ']';
    } else {
        out << "null";
    }
    out << '}';
    return out.str();
}

MapDocument map_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &err) {
        throw FormatError(std::string("map JSON does not parse: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("sigma"))
        throw FormatError("map JSON needs an object with a \"sigma\" array");
    auto read_darts = [&](const char *key) {
        std::vector<Dart> out;
        const auto &arr = doc.at(key);
        if (!arr.is_array())
            throw FormatError(std::string("\"") + key + "\" must be an array");
        out.reserve(arr.size());
        for (const auto &v : arr) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw FormatError(std::string("\"") + key + "\" must hold non-negative integers");
            out.push_back(static_cast<Dart>(v.get<long long>()));
        }
        return out;
    };
    std::vector<Dart> sigma = read_darts("sigma");
    std::vector<Dart> alpha;
    if (doc.contains("alpha") && !doc["alpha"].is_null()) {
        alpha = read_darts("alpha");
    } else {
        alpha.resize(sigma.size());
        for (std::size_t d = 0; d < alpha.size(); ++d)
            alpha[d] = static_cast<Dart>(d ^ 1u);
    }
    if (doc.contains("n_darts") && doc["n_darts"].is_number_integer() &&
        doc["n_darts"].get<long long>() != static_cast<long long>(sigma.size()))
        throw FormatError("\"n_darts\" disagrees with the length of \"sigma\"");
    MapDocument out;
    out.map = sigma.empty() ? Map::single_vertex() : Map::build(std::move(sigma), std::move(alpha));
    if (doc.contains("root") && !doc["root"].is_null())
        out.root = static_cast<Dart>(doc["root"].get<long long>());
    if (doc.contains("weights") && !doc["weights"].is_null()) {
        std::vector<double> w;
        for (const auto &v : doc["weights"])
            w.push_back(v.get<double>());
        if (w.size() != out.map.num_edges())
            throw FormatError("\"weights\" must have one entry per edge");
        out.weights = std::move(w);
    }
    return out;
}

namespace {
constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(std::string_view bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                                (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                                static_cast<unsigned char>(bytes[i + 2]);
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(kAlphabet[(v >> 6) & 63]);
        out.push_back(kAlphabet[v & 63]);
    }
    const std::size_t rest = bytes.size() - i;
    if (rest > 0) {
        std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
        if (rest == 2)
            v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(rest == 2 ? kAlphabet[(v >> 6) & 63] : '=');
        out.push_back('=');
    }
    return out;
}

std::string base64_decode(std::string_view text) {
    std::string out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=')
            break;
        const auto pos = kAlphabet.find(c);
        if (pos == std::string_view::npos)
            throw FormatError("invalid base64 character");
        acc = (acc << 6) | static_cast<std::uint32_t>(pos);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<char>((acc >> bits) & 0xFF));
        }
    }
    return out;
}

void write_csv_row(std::ostream &out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out << ',';
        out << fields[i];
    }
    out << '\n';
}

} // namespace mapforge
