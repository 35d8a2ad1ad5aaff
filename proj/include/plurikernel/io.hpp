#pragma once

// Text and JSON input: complex scalars, points, domain specs, map specs, and
// the error object written by the command-line tool.

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/holomorphic_map.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace plurikernel {

using Json = nlohmann::json;

namespace detail {

inline std::string trim(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline double parse_real(std::string_view s, std::string_view whole)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        fail(ErrorKind::invalid_argument, "malformed number '" + std::string(whole) + "'");
    return v;
}

}  // namespace detail

/// Parses "0.3", "-2i", "i", "0.3+0.2i", "1e-3-4e-2i".
inline Complex parse_complex(std::string_view text)
{
    const std::string s = detail::trim(text);
    if (s.empty()) fail(ErrorKind::invalid_argument, "empty complex number");
    if (s.back() != 'i') return {detail::parse_real(s, text), 0.0};

    const std::string_view body(s.data(), s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view re = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
    std::string_view im = split == std::string_view::npos ? body : body.substr(split);
    double imv = 0.0;
    if (im.empty() || im == "+") imv = 1.0;
    else if (im == "-") imv = -1.0;
    else imv = detail::parse_real(im, text);
    return {re.empty() ? 0.0 : detail::parse_real(re, text), imv};
}

/// Parses "e<j>", "0" (origin), or n comma-separated complex components.
inline CVec parse_point(std::string_view text, int n)
{
    const std::string s = detail::trim(text);
    if (s.size() >= 2 && s[0] == 'e' && std::isdigit(static_cast<unsigned char>(s[1]))) {
        int j = 0;
        const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), j);
        if (ec != std::errc() || ptr != s.data() + s.size() || j < 1 || j > n)
            fail(ErrorKind::invalid_argument, "basis vector '" + s + "' out of range for dimension " + std::to_string(n));
        return basis_vector(n, j - 1);
    }
    std::vector<Complex> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(parse_complex(std::string_view(s).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() == 1 && n > 1 && parts[0] == Complex(0.0)) return CVec::Zero(n);
    if (static_cast<int>(parts.size()) != n)
        fail(ErrorKind::invalid_argument,
             "point '" + s + "' has " + std::to_string(parts.size()) + " components, expected " + std::to_string(n));
    CVec z(n);
    for (int j = 0; j < n; ++j) z(j) = parts[j];
    return z;
}

// ---------------------------------------------------------------------------
// JSON helpers

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json vector_to_json(const CVec& v)
{
    Json a = Json::array();
    for (int j = 0; j < v.size(); ++j) a.push_back(complex_to_json(v(j)));
    return a;
}

/// Non-finite reals become null.
inline Json real_to_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

/// A number, a [re, im] pair, or a string such as "0.3+0.2i".
inline Complex complex_from_json(const Json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(ErrorKind::invalid_argument, "expected a complex number, got " + j.dump());
}

inline CVec vector_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) fail(ErrorKind::invalid_argument, "expected a non-empty array, got " + j.dump());
    CVec v(static_cast<int>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<int>(k)) = complex_from_json(j[k]);
    return v;
}

inline void require_fields(const Json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                           const std::string& what)
{
    if (!j.is_object()) fail(ErrorKind::invalid_argument, what + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!required.count(key) && !optional.count(key))
            fail(ErrorKind::invalid_argument, "unknown field '" + key + "' in " + what);
    for (const auto& key : required)
        if (!j.contains(key)) fail(ErrorKind::invalid_argument, "missing field '" + key + "' in " + what);
}

inline int positive_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 64)
        fail(ErrorKind::invalid_argument, what + " must be a positive integer");
    return j.get<int>();
}

inline Json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::invalid_argument, "malformed JSON in " + what, e.what());
    }
}

// ---------------------------------------------------------------------------
// Domains

inline DomainSpec domain_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(ErrorKind::invalid_argument, "domain spec needs a string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "disc") {
        require_fields(j, {"kind"}, {}, "disc spec");
        return DomainSpec::disc();
    }
    if (kind == "unit_ball") {
        require_fields(j, {"kind", "n"}, {}, "unit_ball spec");
        const int n = positive_int(j["n"], "n");
        return n == 1 ? DomainSpec::disc() : DomainSpec::unit_ball(n);
    }
    if (kind == "ball") {
        require_fields(j, {"kind", "center", "radius"}, {}, "ball spec");
        if (!j["radius"].is_number()) fail(ErrorKind::invalid_argument, "radius must be a number");
        return DomainSpec::ball(vector_from_json(j["center"]), j["radius"].get<double>());
    }
    if (kind == "ellipsoid") {
        require_fields(j, {"kind", "a"}, {}, "ellipsoid spec");
        if (!j["a"].is_array() || j["a"].empty()) fail(ErrorKind::invalid_argument, "'a' must be a non-empty array");
        RVec a(static_cast<int>(j["a"].size()));
        for (std::size_t k = 0; k < j["a"].size(); ++k) {
            if (!j["a"][k].is_number()) fail(ErrorKind::invalid_argument, "'a' entries must be numbers");
            a(static_cast<int>(k)) = j["a"][k].get<double>();
        }
        return DomainSpec::ellipsoid(a);
    }
    if (kind == "custom") {
        require_fields(j, {"kind", "psi", "n"}, {"reference"}, "custom spec");
        if (!j["psi"].is_string()) fail(ErrorKind::invalid_argument, "'psi' must be an expression string");
        const int n = positive_int(j["n"], "n");
        const CVec ref = j.contains("reference") ? vector_from_json(j["reference"]) : CVec(CVec::Zero(n));
        if (ref.size() != n) fail(ErrorKind::invalid_argument, "reference point has the wrong dimension");
        return DomainSpec::custom_expression(n, j["psi"].get<std::string>(), ref);
    }
    fail(ErrorKind::invalid_argument, "unknown domain kind '" + kind + "'");
}

/// Inline JSON, a path to a JSON file, or a shorthand: "disc", "unit_ball:N", "ellipsoid:a1,a2,...".
inline DomainSpec parse_domain(const std::string& text)
{
    const std::string s = detail::trim(text);
    if (!s.empty() && s.front() == '{') return domain_from_json(parse_json_text(s, "domain spec"));
    if (s == "disc") return DomainSpec::disc();
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
        if (head == "unit_ball") {
            int n = 0;
            const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
            if (ec != std::errc() || ptr != tail.data() + tail.size() || n < 1)
                fail(ErrorKind::invalid_argument, "unit_ball shorthand needs a positive dimension");
            return n == 1 ? DomainSpec::disc() : DomainSpec::unit_ball(n);
        }
        if (head == "ellipsoid") {
            const CVec a = parse_point(tail, static_cast<int>(std::count(tail.begin(), tail.end(), ',')) + 1);
            if (a.imag().norm() != 0.0) fail(ErrorKind::invalid_argument, "ellipsoid weights must be real");
            return DomainSpec::ellipsoid(a.real());
        }
    }
    if (std::filesystem::is_regular_file(s)) {
        std::ifstream in(s);
        std::stringstream buf;
        buf << in.rdbuf();
        return domain_from_json(parse_json_text(buf.str(), s));
    }
    fail(ErrorKind::invalid_argument, "domain '" + s + "' is neither JSON, a known shorthand, nor a readable file");
}

// ---------------------------------------------------------------------------
// Maps

/// Composition tree of primitives, each a single-key object:
/// {"identity": n}, {"blaschke": {"a": a}}, {"power": k}, {"diag": [d...]},
/// {"ball_auto": {"anchor": [...]}}, {"constant": {"value": [...], "source_dim": n}},
/// {"compose": [outer, ..., inner]}, {"product": [f, g, ...]}.
inline HolomorphicMap map_from_json(const Json& j)
{
    if (!j.is_object() || j.size() != 1) fail(ErrorKind::invalid_argument, "map spec must be an object with one key");
    const auto& [key, v] = *j.items().begin();
    if (key == "identity") return HolomorphicMap::identity(positive_int(v, "identity dimension"));
    if (key == "blaschke") {
        require_fields(v, {"a"}, {}, "blaschke spec");
        return HolomorphicMap::blaschke(complex_from_json(v["a"]));
    }
    if (key == "power") {
        if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1000)
            fail(ErrorKind::invalid_argument, "power must be a positive integer");
        return HolomorphicMap::power(v.get<int>());
    }
    if (key == "diag") return HolomorphicMap::diag(vector_from_json(v));
    if (key == "ball_auto") {
        require_fields(v, {"anchor"}, {}, "ball_auto spec");
        return HolomorphicMap::ball_automorphism(vector_from_json(v["anchor"]));
    }
    if (key == "constant") {
        require_fields(v, {"value", "source_dim"}, {}, "constant spec");
        return HolomorphicMap::constant(positive_int(v["source_dim"], "source_dim"), vector_from_json(v["value"]));
    }
    if (key == "compose" || key == "product") {
        if (!v.is_array() || v.empty()) fail(ErrorKind::invalid_argument, key + " needs a non-empty array of maps");
        std::vector<HolomorphicMap> maps;
        for (const auto& m : v) maps.push_back(map_from_json(m));
        return key == "compose" ? HolomorphicMap::compose(maps) : HolomorphicMap::product(maps);
    }
    fail(ErrorKind::invalid_argument, "unknown map primitive '" + key + "'");
}

inline HolomorphicMap parse_map(const std::string& text) { return map_from_json(parse_json_text(text, "map spec")); }

// ---------------------------------------------------------------------------
// Errors

inline Json error_to_json(const Error& e)
{
    return Json{{"code", to_string(e.kind())}, {"message", e.what()}, {"context", e.context()}};
}

}  // namespace plurikernel
