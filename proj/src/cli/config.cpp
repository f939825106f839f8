#include "twinbeam/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace twinbeam::cli {

namespace {

const Json& empty_object() {
    static const Json empty = Json::object();
    return empty;
}

}  // namespace

Json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("--config", "top level must be a JSON object");
    return j;
}

Block::Block(const Json* json, std::string path) : json_(json ? json : &empty_object()), path_(std::move(path)) {
    if (!json_->is_object()) throw ConfigError(path_, "expected a JSON object");
}

std::string Block::field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool Block::has(const std::string& key) const { return json_->contains(key); }

bool Block::is_array(const std::string& key) const { return has(key) && json_->at(key).is_array(); }

const Json& Block::at(const std::string& key) const {
    used_.insert(key);
    return json_->at(key);
}

double Block::number(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "required field is missing");
    const Json& v = at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
    return x;
}

double Block::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::uint64_t Block::count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (x >= 0.0 && x == std::floor(x) && x < 1.8e19) return static_cast<std::uint64_t>(x);
    }
    throw ConfigError(field(key), "expected a non-negative integer");
}

bool Block::flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
}

std::string Block::text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
}

std::vector<double> Block::numbers(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a number");
        }
        out.push_back(v[i].get<double>());
        if (!std::isfinite(out.back())) {
            throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "must be finite");
        }
    }
    return out;
}

Block Block::child(const std::string& key) const {
    if (!has(key)) return Block(nullptr, field(key));
    return Block(&at(key), field(key));
}

std::vector<Block> Block::children(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of objects");
    std::vector<Block> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.emplace_back(&v[i], field(key) + "[" + std::to_string(i) + "]");
    }
    return out;
}

void Block::finish() const {
    for (const auto& [key, value] : json_->items()) {
        if (!used_.count(key)) throw ConfigError(field(key), "unknown field");
    }
}

namespace {

GridScale read_scale(const Block& b) {
    const std::string scale = b.text("scale", "linear");
    if (scale == "linear") return GridScale::linear;
    if (scale == "log") return GridScale::log;
    throw ConfigError(b.field("scale"), "must be 'linear' or 'log'");
}

std::vector<double> grid_values(const GridSpec& spec, const std::string& field) {
    try {
        return spec.values();
    } catch (const ConfigError& e) {
        throw ConfigError(field, e.what());
    }
}

}  // namespace

std::vector<double> read_grid(const Block& block, const std::string& key) {
    if (!block.has(key)) throw ConfigError(block.field(key), "required grid is missing");
    return read_grid(block, key, GridSpec{});
}

std::vector<double> read_grid(const Block& block, const std::string& key, const GridSpec& fallback) {
    if (!block.has(key)) return grid_values(fallback, block.field(key));
    // Arrays are taken verbatim; objects go through GridSpec.
    if (block.is_array(key)) {
        std::vector<double> values = block.numbers(key);
        if (values.empty()) throw ConfigError(block.field(key), "grid is empty");
        return values;
    }
    const Block g = block.child(key);
    GridSpec spec;
    spec.min = g.number("min");
    spec.max = g.number("max");
    const std::uint64_t points = g.count("points", 0);
    if (points == 0) throw ConfigError(g.field("points"), "grid is empty (points must be >= 1)");
    spec.points = static_cast<std::size_t>(points);
    spec.scale = read_scale(g);
    g.finish();
    return grid_values(spec, block.field(key));
}

TwinBeamSource read_source(const Block& b, const TwinBeamSource& fallback) {
    TwinBeamSource s;
    s.mean_photons = b.number("mean_photons", fallback.mean_photons);
    s.fano = b.number("fano", fallback.fano);
    b.finish();
    validate_as_config(s, b.path());
    return s;
}

ChannelNoiseModel read_noise(const Block& b, double eta1, double eta2, double fano) {
    static const char* const kShort[] = {"rho", "fano_rho", "d", "fano_d"};
    static const char* const kPerChannel[] = {"rho1", "rho2", "fano_rho1", "fano_rho2",
                                              "d1",   "d2",   "fano_d1",   "fano_d2"};
    bool shorthand = false;
    bool per_channel = false;
    for (const char* k : kShort) shorthand = shorthand || b.has(k);
    for (const char* k : kPerChannel) per_channel = per_channel || b.has(k);
    if (shorthand && per_channel) {
        throw ConfigError(b.path(), "use either rho/fano_rho/d/fano_d or the per-channel keys, not both");
    }
    const bool linked = b.flag("linked_fano_rho", false);
    if (linked && (b.has("fano_rho") || b.has("fano_rho1") || b.has("fano_rho2"))) {
        throw ConfigError(b.field("linked_fano_rho"), "cannot be combined with an explicit optical Fano factor");
    }

    ChannelNoiseModel m;
    if (per_channel) {
        m.eta1 = eta1;
        m.eta2 = eta2;
        m.rho1 = b.number("rho1", 0.0);
        m.rho2 = b.number("rho2", 0.0);
        m.fano_rho1 = b.number("fano_rho1", 1.0);
        m.fano_rho2 = b.number("fano_rho2", 1.0);
        m.d1 = b.number("d1", 0.0);
        m.d2 = b.number("d2", 0.0);
        m.fano_d1 = b.number("fano_d1", 1.0);
        m.fano_d2 = b.number("fano_d2", 1.0);
    } else {
        const double rho = b.number("rho", 0.0);
        m = ChannelNoiseModel::single_channel(eta1, eta2, rho, b.number("fano_rho", 1.0), b.number("d", 0.0),
                                              b.number("fano_d", 1.0));
    }
    if (linked) {
        m.fano_rho1 = linked_optical_fano(fano, m.rho1);
        m.fano_rho2 = linked_optical_fano(fano, m.rho2);
    }
    b.finish();
    validate_as_config(m, b.path());
    return m;
}

PumpScenario read_scenario(const Block& b) {
    PumpScenario s = PumpScenario::reference();
    for (int i = 1; i <= 10; ++i) {
        const std::string key = "lambda" + std::to_string(i);
        s.lambda(i) = b.number(key, s.lambda(i));
    }
    s.w = b.number("w", s.w);
    s.eta1 = b.number("eta1", s.eta1);
    s.eta2 = b.number("eta2", s.eta2);
    validate_as_config(s, b.path());
    return s;
}

}  // namespace twinbeam::cli
