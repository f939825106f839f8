#pragma once

// JSON configuration access with field-path diagnostics. Every accessor
// throws ConfigError naming the full dotted path of the offending field, and
// finish() rejects keys that no accessor asked for.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "twinbeam/errors.hpp"
#include "twinbeam/fwm_scenario.hpp"
#include "twinbeam/grid.hpp"
#include "twinbeam/noise_model.hpp"

namespace twinbeam::cli {

using Json = nlohmann::json;

Json load_config_file(const std::string& path);

class Block {
  public:
    // An absent block behaves like an empty object.
    Block(const Json* json, std::string path);

    const std::string& path() const { return path_; }
    std::string field(const std::string& key) const;
    bool has(const std::string& key) const;
    bool is_array(const std::string& key) const;

    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    Block child(const std::string& key) const;
    std::vector<Block> children(const std::string& key) const;

    // Throws on any key not consumed by an accessor.
    void finish() const;

  private:
    const Json& at(const std::string& key) const;

    const Json* json_;
    std::string path_;
    mutable std::set<std::string> used_;
};

// Either {"min", "max", "points", "scale"} or an explicit array of values.
std::vector<double> read_grid(const Block& block, const std::string& key);
std::vector<double> read_grid(const Block& block, const std::string& key, const GridSpec& fallback);

TwinBeamSource read_source(const Block& block, const TwinBeamSource& fallback);

// Noise block keys. Shorthand (optical noise on channel 2, identical detector
// noise on both): rho, fano_rho, d, fano_d. Per channel: rho1, rho2,
// fano_rho1, fano_rho2, d1, d2, fano_d1, fano_d2. The two styles cannot be
// mixed. With "linked_fano_rho": true the optical Fano factors follow the
// source, F_rho - 1 = rho (F - 1), and must not be given explicitly.
ChannelNoiseModel read_noise(const Block& block, double eta1, double eta2, double fano);

// lambda1..lambda10, w, eta1, eta2 on top of the reference scenario.
PumpScenario read_scenario(const Block& block);

// Runs a module validate() and rethrows DomainError as ConfigError(field).
template <typename T>
void validate_as_config(const T& value, const std::string& field) {
    try {
        value.validate();
    } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
    }
}

}  // namespace twinbeam::cli
