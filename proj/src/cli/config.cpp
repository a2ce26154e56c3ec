// SPDX-License-Identifier: Apache-2.0
#include "dstm/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace dstm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    // "pi/16" style angles are common enough in direction lists to accept
    const auto slash = value.find('/');
    if (value.rfind("pi", 0) == 0) {
        const double div = slash == std::string::npos ? 1.0 : parse_real(key, value.substr(slash + 1));
        return std::numbers::pi / div;
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(key, "'" + value + "' is not a number");
    }
    if (used != value.size() || !std::isfinite(x)) throw ConfigError(key, "'" + value + "' is not a number");
    return x;
}

long long parse_integer(const std::string& key, const std::string& value) {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(key, "'" + value + "' is not an integer");
    }
    return x;
}

int parse_int(const std::string& key, const std::string& value) {
    const long long x = parse_integer(key, value);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw ConfigError(key, "out of range");
    }
    return static_cast<int>(x);
}

AdaptationPolicy parse_policy(const std::string& value) {
    if (value == "HTA") return AdaptationPolicy::hta(std::numeric_limits<double>::infinity());
    if (value == "OptM") return AdaptationPolicy::optm();
    if (value == "Fixed") return AdaptationPolicy::fixed(1);
    throw ConfigError("policy", "expected Fixed, OptM or HTA, got '" + value + "'");
}

template <typename T>
std::string join(const std::vector<T>& xs, const std::function<std::string(const T&)>& fmt) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

void apply(RunConfig& rc, const std::string& key, const std::string& value) {
    SystemConfig& s = rc.system;
    auto real = [&] { return parse_real(key, value); };
    auto integer = [&] { return parse_int(key, value); };

    if (key == "n_tx") s.n_tx = integer();
    else if (key == "n_rx") s.n_rx = integer();
    else if (key == "codeword_len") s.codeword_len = integer();
    else if (key == "tx_power") s.tx_power = real();
    else if (key == "snr_db") rc.snr_db = rc.snr_min = rc.snr_max = real();
    else if (key == "symbol_duration") s.symbol_duration = real();
    else if (key == "carrier_freq") s.carrier_freq = real();
    else if (key == "antenna_spacing") s.antenna_spacing = real();
    else if (key == "scatter_decay") s.scatter_decay = real();
    else if (key == "block_len") s.block_len = integer();
    else if (key == "k_card") rc.k_card = integer();
    else if (key == "exponents") {
        rc.exponents.clear();
        for (const auto& item : split_list(value)) rc.exponents.push_back(parse_int(key, item));
    } else if (key == "v_min") rc.v_min = real();
    else if (key == "v_max") rc.v_max = real();
    else if (key == "v_step") rc.v_step = real();
    else if (key == "speed") rc.v_min = rc.v_max = real();
    else if (key == "theta") {
        rc.theta.clear();
        for (const auto& item : split_list(value)) rc.theta.push_back(parse_real(key, item));
    } else if (key == "snr_min") rc.snr_min = real();
    else if (key == "snr_max") rc.snr_max = real();
    else if (key == "snr_step") rc.snr_step = real();
    else if (key == "schemes") {
        rc.schemes.clear();
        for (const auto& item : split_list(value)) rc.schemes.push_back(parse_scheme(item));
    } else if (key == "policy") rc.policy = parse_policy(value);
    else if (key == "m_max") rc.policy.m_max = integer();
    else if (key == "v0") rc.policy.v0 = real();
    else if (key == "spacings") {
        rc.spacings.clear();
        for (const auto& item : split_list(value)) rc.spacings.push_back(parse_real(key, item));
    } else if (key == "decisions") rc.decisions = parse_integer(key, value);
    else if (key == "decisions_per_chain") rc.decisions_per_chain = integer();
    else if (key == "seed") {
        std::uint64_t x = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (ec != std::errc() || ptr != value.data() + value.size()) throw ConfigError(key, "not a 64-bit unsigned");
        rc.seed = x;
    } else if (key == "workers") rc.workers = integer();
    else throw ConfigError(key, "unknown key");
}

void validate(RunConfig& rc) {
    rc.system.set_snr_db(rc.snr_db);
    rc.system.validate();
    if (rc.policy.kind == PolicyKind::Fixed) rc.policy.m = rc.system.block_len;
    if (rc.v_min < 0.0) throw ConfigError("v_min", "must be >= 0");
    if (rc.v_max < rc.v_min) throw ConfigError("v_max", "must be >= v_min");
    if (!(rc.v_step > 0.0)) throw ConfigError("v_step", "must be > 0");
    if (rc.snr_max < rc.snr_min) throw ConfigError("snr_max", "must be >= snr_min");
    if (!(rc.snr_step > 0.0)) throw ConfigError("snr_step", "must be > 0");
    if (rc.theta.empty()) throw ConfigError("theta", "needs at least one direction");
    for (double t : rc.theta) MobilityState{0.0, t}.validate();
    if (rc.schemes.empty()) throw ConfigError("schemes", "needs at least one scheme");
    if (rc.decisions < 1) throw ConfigError("decisions", "must be >= 1");
    if (rc.decisions_per_chain < 1) throw ConfigError("decisions_per_chain", "must be >= 1");
    if (rc.workers < 0) throw ConfigError("workers", "must be >= 0");
    for (double d : rc.spacings) {
        SystemConfig s = rc.system;
        s.antenna_spacing = d;
        s.validate();
    }
    if (rc.policy.kind == PolicyKind::OptM && rc.policy.m_max < 1) throw ConfigError("m_max", "must be >= 1");
    try {
        (void)rc.codebook();
    } catch (const std::exception& e) {
        throw ConfigError("exponents", e.what());
    }
}

// inclusive arithmetic grid, robust to accumulated rounding at the end point
std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + i * step);
    return out;
}

}  // namespace

std::vector<double> RunConfig::speeds() const { return grid(v_min, v_max, v_step); }

std::vector<double> RunConfig::snr_points() const { return grid(snr_min, snr_max, snr_step); }

Codebook RunConfig::codebook() const { return make_cyclic_codebook(system.n_tx, k_card, exponents); }

TrialPlan RunConfig::plan_template() const {
    TrialPlan p;
    p.cfg = system;
    p.n_decisions = decisions;
    p.decisions_per_chain = decisions_per_chain;
    p.base_seed = seed;
    p.policy = policy;
    p.workers = 1;
    return p;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig rc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where, "empty key or value");
        try {
            apply(rc, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(key, where + ": " + e.what());
        }
    }
    validate(rc);
    return rc;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return parse_config("");
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::map<std::string, std::string> config_snapshot(const RunConfig& rc) {
    const SystemConfig& s = rc.system;
    // 17 digits so that re-reading the snapshot reproduces every double exactly
    const auto fd = [](const double& x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::map<std::string, std::string> m;
    m["n_tx"] = std::to_string(s.n_tx);
    m["n_rx"] = std::to_string(s.n_rx);
    m["codeword_len"] = std::to_string(s.codeword_len);
    m["tx_power"] = fd(s.tx_power);
    m["snr_db"] = fd(rc.snr_db);
    m["symbol_duration"] = fd(s.symbol_duration);
    m["carrier_freq"] = fd(s.carrier_freq);
    m["antenna_spacing"] = fd(s.antenna_spacing);
    m["scatter_decay"] = fd(s.scatter_decay);
    m["block_len"] = std::to_string(s.block_len);
    m["k_card"] = std::to_string(rc.k_card);
    m["exponents"] = join<int>(rc.exponents, [](const int& x) { return std::to_string(x); });
    m["v_min"] = fd(rc.v_min);
    m["v_max"] = fd(rc.v_max);
    m["v_step"] = fd(rc.v_step);
    m["theta"] = join<double>(rc.theta, fd);
    m["snr_min"] = fd(rc.snr_min);
    m["snr_max"] = fd(rc.snr_max);
    m["snr_step"] = fd(rc.snr_step);
    m["schemes"] = join<Scheme>(rc.schemes, [](const Scheme& x) { return std::string(to_string(x)); });
    m["policy"] = rc.policy.kind == PolicyKind::Fixed ? "Fixed" : rc.policy.kind == PolicyKind::OptM ? "OptM" : "HTA";
    m["m_max"] = std::to_string(rc.policy.m_max);
    if (rc.policy.kind == PolicyKind::HTA && std::isfinite(rc.policy.v0)) m["v0"] = fd(rc.policy.v0);
    if (!rc.spacings.empty()) m["spacings"] = join<double>(rc.spacings, fd);
    m["decisions"] = std::to_string(rc.decisions);
    m["decisions_per_chain"] = std::to_string(rc.decisions_per_chain);
    m["seed"] = std::to_string(rc.seed);
    m["workers"] = std::to_string(rc.workers);
    return m;
}

}  // namespace dstm::cli
