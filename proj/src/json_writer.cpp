#include "wmb/json_writer.hpp"

#include <cmath>
#include <cstdio>

#include "wmb/frame.hpp"

namespace wmb {
namespace {

void write(const nlohmann::ordered_json& v, int decimals, int depth, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case nlohmann::json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + nlohmann::json(it.key()).dump() + ": ";
            write(it.value(), decimals, depth + 1, out);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += pad;
            write(v[i], decimals, depth + 1, out);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case nlohmann::json::value_t::number_float:
        out += format_fixed(v.get<double>(), decimals);
        return;
    default:
        out += v.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
        return;
    }
}

}  // namespace

std::string format_fixed(double value, int decimals)
{
    if (!std::isfinite(value)) {
        throw Error("cannot serialize a non-finite number");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string write_fixed_json(const nlohmann::ordered_json& value, int decimals)
{
    std::string out;
    write(value, decimals, 0, out);
    out += '\n';
    return out;
}

}  // namespace wmb
