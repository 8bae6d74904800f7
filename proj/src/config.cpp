#include "citenet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "citenet/error.hpp"

namespace citenet {

namespace {

std::string trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, s.find_last_not_of(ws) - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(',', start);
        auto item = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

class KeyContext {
public:
    KeyContext(std::string section, std::string key, std::size_t line)
        : name_(section + "." + key), line_(line) {}

    [[noreturn]] void fail(const std::string& reason) const {
        throw ValidationError(name_ + " (line " + std::to_string(line_) + "): " + reason);
    }

    double number(const std::string& v) const {
        char* end = nullptr;
        const double d = std::strtod(v.c_str(), &end);
        if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d))
            fail("expected a number, got '" + v + "'");
        return d;
    }

    long long integer(const std::string& v) const {
        const double d = number(v);
        if (d != std::floor(d)) fail("expected an integer, got '" + v + "'");
        return static_cast<long long>(d);
    }

private:
    std::string name_;
    std::size_t line_;
};

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string section;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("line " + std::to_string(no) + ": unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section != "growth" && section != "model" && section != "analysis" &&
                section != "output")
                throw ValidationError("line " + std::to_string(no) + ": unknown section [" +
                                      section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("line " + std::to_string(no) + ": expected key = value");
        if (section.empty())
            throw ValidationError("line " + std::to_string(no) + ": key outside of a section");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const KeyContext ctx(section, key, no);

        if (section == "growth") {
            if (key == "n0") cfg.growth.n0 = ctx.number(value);
            else if (key == "r0") cfg.growth.r0 = ctx.number(value);
            else if (key == "g_n") cfg.growth.g_n = ctx.number(value);
            else if (key == "g_r") cfg.growth.g_r = ctx.number(value);
            else if (key == "T") cfg.growth.T = static_cast<int>(ctx.integer(value));
            else if (key == "perturb") {
                std::string body = value;
                if (!body.empty() && body.front() == '(' && body.back() == ')')
                    body = body.substr(1, body.size() - 2);
                const auto parts = split_list(body);
                if (parts.size() != 3) ctx.fail("expected (t_star, target, value)");
                const auto target = perturb_target_from_string(parts[1]);
                if (!target) ctx.fail("unknown target '" + parts[1] + "', expected beta, g_r or g_n");
                cfg.perturbations.push_back(
                    {static_cast<int>(ctx.integer(parts[0])), *target, ctx.number(parts[2])});
            } else ctx.fail("unknown key");
        } else if (section == "model") {
            if (key == "c_cross") cfg.model.c_cross = ctx.number(value);
            else if (key == "alpha") cfg.model.alpha = ctx.number(value);
            else if (key == "beta") {
                cfg.model.beta = ctx.number(value);
                if (!(cfg.model.beta >= 0.0 && cfg.model.beta < 1.0))
                    ctx.fail("beta must lie in [0, 1)");
            } else ctx.fail("unknown key");
        } else if (section == "analysis") {
            if (key == "window") cfg.analysis.window = static_cast<int>(ctx.integer(value));
            else if (key == "thresholds") {
                cfg.analysis.thresholds.clear();
                for (const auto& p : split_list(value)) cfg.analysis.thresholds.push_back(ctx.number(p));
            } else if (key == "percentiles") {
                cfg.analysis.percentiles.clear();
                for (const auto& p : split_list(value)) {
                    const double q = ctx.number(p);
                    if (!(q > 0.0 && q < 1.0)) ctx.fail("percentiles must lie in (0, 1)");
                    cfg.analysis.percentiles.push_back(q);
                }
            } else if (key == "top_q") cfg.analysis.top_q = ctx.number(value);
            else if (key == "tau") cfg.analysis.tau = static_cast<int>(ctx.integer(value));
            else if (key == "snapshots") {
                cfg.analysis.snapshots.clear();
                for (const auto& p : split_list(value))
                    cfg.analysis.snapshots.push_back(static_cast<int>(ctx.integer(p)));
            } else if (key == "snapshot_pool")
                cfg.analysis.snapshot_pool = static_cast<int>(ctx.integer(value));
            else if (key == "lifecycle_span")
                cfg.analysis.lifecycle_span = static_cast<int>(ctx.integer(value));
            else if (key == "delta") cfg.analysis.delta = static_cast<int>(ctx.integer(value));
            else ctx.fail("unknown key");
        } else {
            if (key == "dir") {
                if (value.empty()) ctx.fail("empty output directory");
                cfg.output_dir = value;
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (const auto& p : split_list(value)) {
                    const auto s = ctx.integer(p);
                    if (s < 0) ctx.fail("seeds must be non-negative");
                    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
                }
                if (cfg.seeds.empty()) ctx.fail("empty seed list");
            } else ctx.fail("unknown key");
        }
    }
    if (in.bad()) throw std::runtime_error("error reading config");
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    return parse_config(in);
}

void validate(const ScenarioConfig& cfg) {
    auto wrap = [](const char* section, auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(section) + ": " + e.what());
        }
    };
    wrap("growth", [&] { (void)cfg.schedule(); });
    wrap("model", [&] { validate(cfg.model); });
    const auto& a = cfg.analysis;
    if (a.window < 0) throw ValidationError("analysis.window: must be >= 0");
    if (!(a.top_q > 0.0 && a.top_q < 1.0)) throw ValidationError("analysis.top_q: must lie in (0, 1)");
    if (a.snapshot_pool < 1) throw ValidationError("analysis.snapshot_pool: must be >= 1");
    if (a.lifecycle_span < 2) throw ValidationError("analysis.lifecycle_span: must be >= 2");
    if (a.delta < 0) throw ValidationError("analysis.delta: must be >= 0");
    if (a.percentiles.empty()) throw ValidationError("analysis.percentiles: empty list");
}

void validate_periods(const ScenarioConfig& cfg) {
    const auto& a = cfg.analysis;
    const int T = cfg.growth.T;
    if (a.tau && (*a.tau < 0 || *a.tau > T)) throw ValidationError("analysis.tau: must lie in [0, T]");
    for (int s : a.snapshots)
        if (s - a.snapshot_pool + 1 < 1 || s > T)
            throw ValidationError("analysis.snapshots: " + std::to_string(s) +
                                  " needs its pooled window inside [1, T]");
}

std::vector<int> default_snapshots(int first_period, int last_period, int pool) {
    std::vector<int> out;
    for (int k = 10; k >= 0; --k) {
        const int s = last_period - 10 * k;
        if (s - pool + 1 >= first_period + 1) out.push_back(s);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace citenet
