#include "wmb/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wmb {
namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    std::string out(s.substr(b, e - b + 1));
    if (out.size() >= 2 && (out.front() == '"' || out.front() == '\'') && out.back() == out.front()) {
        out = out.substr(1, out.size() - 2);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d)) {
        throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
    }
    return d;
}

int to_int(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size()) {
        throw UsageError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
    return static_cast<int>(n);
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw UsageError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

using Setter = std::function<void(BenchConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    auto real = [](double BenchConfig::*outer) {
        return [outer](BenchConfig& c, const std::string& k, const std::string& v) { c.*outer = to_double(k, v); };
    };
    static const std::map<std::string, Setter, std::less<>> table = {
        {"lambda", [](BenchConfig& c, auto& k, auto& v) { c.visual.lambda = to_double(k, v); }},
        {"alpha", [](BenchConfig& c, auto& k, auto& v) { c.visual.alpha = to_double(k, v); }},
        {"beta", [](BenchConfig& c, auto& k, auto& v) { c.visual.beta = to_double(k, v); }},
        {"k",
         [](BenchConfig& c, auto& k, auto& v) {
             c.visual.k = to_double(k, v);
             c.trajectory.k = c.visual.k;
         }},
        {"dark_max", [](BenchConfig& c, auto& k, auto& v) { c.visual.dark_max = to_int(k, v); }},
        {"bright_min", [](BenchConfig& c, auto& k, auto& v) { c.visual.bright_min = to_int(k, v); }},
        {"noise_tau", [](BenchConfig& c, auto& k, auto& v) { c.visual.noise_tau = to_double(k, v); }},
        {"noise_scale", real(&BenchConfig::noise_scale)},
        {"breaker_window", [](BenchConfig& c, auto& k, auto& v) { c.visual.breaker_window = to_int(k, v); }},
        {"breaker_latching", [](BenchConfig& c, auto& k, auto& v) { c.visual.breaker_latching = to_bool(k, v); }},
        {"quality_min", [](BenchConfig& c, auto& k, auto& v) { c.visual.quality_min = to_double(k, v); }},
        {"quality_max", [](BenchConfig& c, auto& k, auto& v) { c.visual.quality_max = to_double(k, v); }},
        {"percentile_rule",
         [](BenchConfig& c, auto& k, auto& v) {
             if (v == "nearest_rank") {
                 c.percentile_rule = PercentileRule::NearestRank;
             } else if (v == "linear") {
                 c.percentile_rule = PercentileRule::Linear;
             } else {
                 throw UsageError("config key '" + k + "': expected nearest_rank or linear");
             }
             c.filter.percentile_rule = c.percentile_rule;
         }},
        {"smooth_w_ssim", [](BenchConfig& c, auto& k, auto& v) { c.smoothness.w_ssim = to_double(k, v); }},
        {"smooth_w_mse", [](BenchConfig& c, auto& k, auto& v) { c.smoothness.w_mse = to_double(k, v); }},
        {"smooth_w_perceptual",
         [](BenchConfig& c, auto& k, auto& v) { c.smoothness.w_perceptual = to_double(k, v); }},
        {"sigma_mse", [](BenchConfig& c, auto& k, auto& v) { c.smoothness.sigma_mse = to_double(k, v); }},
        {"signed_cosine", [](BenchConfig& c, auto& k, auto& v) { c.trajectory.signed_cosine = to_bool(k, v); }},
        {"memory_a", [](BenchConfig& c, auto& k, auto& v) { c.memory.a = to_double(k, v); }},
        {"memory_k_val", [](BenchConfig& c, auto& k, auto& v) { c.memory.k_val = to_double(k, v); }},
        {"memory_k_exp", [](BenchConfig& c, auto& k, auto& v) { c.memory.k_exp = to_double(k, v); }},
        {"gamma", [](BenchConfig& c, auto& k, auto& v) { c.memory.gamma = to_double(k, v); }},
        {"memory_weight_mode",
         [](BenchConfig& c, auto& k, auto& v) {
             if (v == "prose") {
                 c.memory_weights = WeightSelection::Prose;
             } else if (v == "formula") {
                 c.memory_weights = WeightSelection::Formula;
             } else if (v == "both") {
                 c.memory_weights = WeightSelection::Both;
             } else {
                 throw UsageError("config key '" + k + "': expected prose, formula or both");
             }
             c.memory.weight_mode =
                 c.memory_weights == WeightSelection::Formula ? MemoryWeightMode::Formula : MemoryWeightMode::Prose;
         }},
        {"brightness_k_sigma", [](BenchConfig& c, auto& k, auto& v) { c.filter.brightness_k_sigma = to_double(k, v); }},
        {"brightness_floor", [](BenchConfig& c, auto& k, auto& v) { c.filter.brightness_floor = to_double(k, v); }},
        {"residual_window", [](BenchConfig& c, auto& k, auto& v) { c.filter.residual_window = to_int(k, v); }},
        {"mse_z_threshold", [](BenchConfig& c, auto& k, auto& v) { c.filter.mse_z_threshold = to_double(k, v); }},
        {"mse_window", [](BenchConfig& c, auto& k, auto& v) { c.filter.mse_window = to_int(k, v); }},
        {"density_window", [](BenchConfig& c, auto& k, auto& v) { c.filter.density_window = to_int(k, v); }},
        {"density_tau", [](BenchConfig& c, auto& k, auto& v) { c.filter.density_tau = to_double(k, v); }},
        {"merge_gap", [](BenchConfig& c, auto& k, auto& v) { c.filter.merge_gap = to_int(k, v); }},
        {"min_len", [](BenchConfig& c, auto& k, auto& v) { c.filter.min_len = to_int(k, v); }},
        {"step_translation", real(&BenchConfig::step_translation)},
        {"step_rotation", real(&BenchConfig::step_rotation)},
        {"memory_split", [](BenchConfig& c, auto& k, auto& v) { c.memory_split = to_int(k, v); }},
        {"handedness",
         [](BenchConfig& c, auto& k, auto& v) {
             if (v == "warn") {
                 c.handedness = HandednessPolicy::Warn;
             } else if (v == "negate_x") {
                 c.handedness = HandednessPolicy::NegateX;
             } else {
                 throw UsageError("config key '" + k + "': expected warn or negate_x");
             }
         }},
    };
    return table;
}

void validate(const BenchConfig& cfg)
{
    try {
        validate(cfg.visual);
        validate(cfg.memory);
        validate(cfg.filter);
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError(std::string("invalid config: ") + e.what());
    }
    if (!(cfg.noise_scale > 0.0) || !(cfg.step_translation > 0.0) || !(cfg.step_rotation > 0.0)) {
        throw UsageError("invalid config: noise_scale and step sizes must be positive");
    }
    if (cfg.memory_split < 1) {
        throw UsageError("invalid config: memory_split must be at least 1");
    }
    const auto& s = cfg.smoothness;
    if (s.w_ssim < 0.0 || s.w_mse < 0.0 || s.w_perceptual < 0.0 || !(s.sigma_mse > 0.0)) {
        throw UsageError("invalid config: smoothness weights must be non-negative and sigma_mse positive");
    }
}

}  // namespace

BenchConfig parse_config(std::string_view text)
{
    BenchConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cut = line.find_first_of("#;");
        const std::string body = trim(cut == std::string::npos ? line : line.substr(0, cut));
        if (body.empty() || body.front() == '[') {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        it->second(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

BenchConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

BenchConfig resolve_config(const std::optional<std::string>& explicit_path)
{
    if (explicit_path && !explicit_path->empty()) {
        return load_config(*explicit_path);
    }
    if (const char* env = std::getenv("IWORLD_CONFIG"); env && *env) {
        return load_config(env);
    }
    return BenchConfig{};
}

nlohmann::ordered_json to_json(const FilterConfig& f)
{
    nlohmann::ordered_json j;
    j["brightness_k_sigma"] = f.brightness_k_sigma;
    j["brightness_floor"] = f.brightness_floor;
    j["residual_window"] = f.residual_window;
    j["mse_z_threshold"] = f.mse_z_threshold;
    j["mse_window"] = f.mse_window;
    j["density_window"] = f.density_window;
    j["density_tau"] = f.density_tau;
    j["merge_gap"] = f.merge_gap;
    j["min_len"] = f.min_len;
    j["percentile_rule"] = f.percentile_rule == PercentileRule::NearestRank ? "nearest_rank" : "linear";
    return j;
}

nlohmann::ordered_json to_json(const BenchConfig& c)
{
    nlohmann::ordered_json j;
    j["lambda"] = c.visual.lambda;
    j["alpha"] = c.visual.alpha;
    j["beta"] = c.visual.beta;
    j["k"] = c.visual.k;
    j["dark_max"] = c.visual.dark_max;
    j["bright_min"] = c.visual.bright_min;
    j["noise_tau"] = c.visual.noise_tau;
    j["noise_scale"] = c.noise_scale;
    j["breaker_window"] = c.visual.breaker_window;
    j["breaker_latching"] = c.visual.breaker_latching;
    j["quality_min"] = c.visual.quality_min;
    j["quality_max"] = c.visual.quality_max;
    j["smooth_w_ssim"] = c.smoothness.w_ssim;
    j["smooth_w_mse"] = c.smoothness.w_mse;
    j["smooth_w_perceptual"] = c.smoothness.w_perceptual;
    j["sigma_mse"] = c.smoothness.sigma_mse;
    j["signed_cosine"] = c.trajectory.signed_cosine;
    j["memory_a"] = c.memory.a;
    j["memory_k_val"] = c.memory.k_val;
    j["memory_k_exp"] = c.memory.k_exp;
    j["gamma"] = c.memory.gamma;
    j["memory_weight_mode"] = c.memory_weights == WeightSelection::Prose     ? "prose"
                              : c.memory_weights == WeightSelection::Formula ? "formula"
                                                                             : "both";
    j["step_translation"] = c.step_translation;
    j["step_rotation"] = c.step_rotation;
    j["memory_split"] = c.memory_split;
    j["handedness"] = c.handedness == HandednessPolicy::Warn ? "warn" : "negate_x";
    j["filter"] = to_json(c.filter);
    return j;
}

}  // namespace wmb
