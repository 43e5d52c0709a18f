#pragma once

#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcbloch {

// Angle literals: "0.7", "pi", "2pi", "-pi/4", "3pi/8", "0.5pi".
inline double parse_angle(const std::string& text) {
    auto full_double = [](const std::string& s) {
        if (s.empty())
            throw std::invalid_argument("empty numeric field");
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size())
            throw std::invalid_argument("bad numeric field: '" + s + "'");
        return v;
    };

    auto pos = text.find("pi");
    if (pos == std::string::npos)
        return full_double(text);

    std::string coef = text.substr(0, pos);
    std::string rest = text.substr(pos + 2);
    double c = coef.empty() ? 1.0 : coef == "-" ? -1.0 : full_double(coef);
    double div = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/')
            throw std::invalid_argument("bad angle: '" + text + "'");
        div = full_double(rest.substr(1));
        if (div == 0.0)
            throw std::invalid_argument("bad angle: '" + text + "' divides by zero");
    }
    return c * std::numbers::pi / div;
}

struct GridSpec {
    double start = 0;
    double stop = 0;
    int steps = 1; // number of points, endpoints inclusive
};

// "start:stop:steps", angles in the syntax above.
inline GridSpec parse_grid(const std::string& text) {
    auto p1 = text.find(':');
    auto p2 = text.rfind(':');
    if (p1 == std::string::npos || p2 == p1)
        throw std::invalid_argument("grid must be start:stop:steps, got '" + text + "'");
    GridSpec g;
    g.start = parse_angle(text.substr(0, p1));
    g.stop = parse_angle(text.substr(p1 + 1, p2 - p1 - 1));
    std::string steps = text.substr(p2 + 1);
    char* end = nullptr;
    long n = std::strtol(steps.c_str(), &end, 10);
    if (end != steps.c_str() + steps.size() || n < 1 || n > 100000000)
        throw std::invalid_argument("grid steps must be a positive integer, got '" + steps + "'");
    g.steps = static_cast<int>(n);
    return g;
}

inline std::vector<double> linspace(const GridSpec& g) {
    std::vector<double> out;
    out.reserve(g.steps);
    if (g.steps == 1) {
        out.push_back(g.start);
        return out;
    }
    for (int i = 0; i < g.steps; ++i)
        out.push_back(g.start + (g.stop - g.start) * i / (g.steps - 1));
    return out;
}

} // namespace tcbloch
