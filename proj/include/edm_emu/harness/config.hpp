#pragma once

// Scenario configuration: built-in defaults, a JSON file, and dotted-key
// command-line overrides, merged in that order of increasing precedence.

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../dirac_params.hpp"
#include "../errors.hpp"
#include "../ion_emulator.hpp"
#include "../linalg.hpp"
#include "../units.hpp"

namespace edm_emu::harness {

using json = nlohmann::json;

inline const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"spectrum-sweep",      "mass-sweep",         "mdm-sweep",
                                                "precession-analytic", "precession-numeric", "precession-ion",
                                                "mapping-check",       "estimates"};
    return names;
}

inline bool is_scenario(const std::string& name)
{
    const auto& n = scenario_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

inline json default_config()
{
    const double r = 1.0 / std::sqrt(2.0);
    const IonParams ion{};
    return json{
        {"scenario", "spectrum-sweep"},
        {"description", ""},
        {"workers", 1},
        {"units", {{"mode", "natural"}, {"energy_scale", 1.0}, {"speed_scale", 1.0}, {"field_scale", 1.0}}},
        {"dirac",
         {{"mass_energy", 1.0},
          {"c_sim", 1.0},
          {"edm", 0.01},
          {"mdm", 0.0},
          {"e_field", {1.0, 0.0, 0.0}},
          {"momentum", {1.0, 0.0, 0.0}}}},
        {"ion",
         {{"eta", ion.eta},
          {"delta_spread", ion.delta_spread},
          {"omega_tilde", ion.omega_tilde},
          {"detuning", 2.5},
          {"omega1", 0.25},
          {"omega2", 0.0},
          {"phi_r", ion.phi_r},
          {"phi_b", ion.phi_b},
          {"phi_edm_ab", ion.phi_edm_ab},
          {"phi_edm_cd", ion.phi_edm_cd},
          {"phi_mdm", ion.phi_mdm},
          {"trap_freq", ion.trap_freq},
          {"ion_mass", ion.ion_mass}}},
        {"fock", {{"n_max", 64}, {"convergence_check", false}}},
        {"grids",
         {{"spectrum", {{"quantity", "e_field"}, {"start", 0.0}, {"stop", 1.0}, {"count", 11}}},
          {"mass", {{"start", 0.0}, {"stop", 10.0}, {"count", 21}}},
          {"mdm", {{"start", 0.0}, {"stop", 0.01}, {"count", 11}}}}},
        {"taylor_threshold", 1e-2},
        {"precession",
         {{"b_up", {r, 0.0}}, {"b_down", {r, 0.0}}, {"channel", "S_z"}, {"ion_momentum", 1.0}, {"field", 1.0}}},
        {"time", {{"start", 0.0}, {"periods", 10.0}, {"samples_per_period", 64}, {"stop", 0.0}, {"count", 0}}},
        {"estimates",
         {{"field_mv_per_cm", 10.0},
          {"edm_upper_ecm", 1e-26},
          {"edm_sm_ecm", 1e-32},
          {"target_omega", 1e5},
          {"eta", 0.1},
          {"omega_tilde", 2.0 * kPi * 2e5},
          {"detuning", 2.0 * kPi * 1e5},
          {"trap_freq", 2.0 * kPi * 1e6},
          {"ion_mass_amu", 40.0}}},
        {"output", {{"format", "csv"}, {"path", ""}}},
    };
}

namespace detail {

// Overlays `patch` onto `base`. Every key in `patch` must already exist in
// `base`; objects merge recursively, everything else is replaced.
inline void overlay(json& base, const json& patch, const std::string& where)
{
    if (!patch.is_object()) {
        throw ConfigError("config" + where + ": expected an object");
    }
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string key = where + "." + it.key();
        if (!base.contains(it.key())) {
            throw ConfigError("unknown config key '" + key.substr(1) + "'");
        }
        json& slot = base[it.key()];
        if (slot.is_object()) {
            overlay(slot, it.value(), key);
        } else {
            slot = it.value();
        }
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline constexpr const char* kMetadataPrefix = "# metadata: ";

/// Parses a config file. Result files written by the harness are accepted too:
/// their embedded resolved config is returned.
inline json parse_config_text(const std::string& text)
{
    try {
        if (text.rfind(kMetadataPrefix, 0) == 0) {
            const std::size_t start = std::string(kMetadataPrefix).size();
            const std::size_t end = text.find('\n');
            const json meta = json::parse(text.substr(start, end == std::string::npos ? end : end - start));
            return meta.at("config");
        }
        json j = json::parse(text);
        if (j.contains("metadata") && j["metadata"].contains("config")) {
            return j["metadata"]["config"];
        }
        return j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

inline json load_config_file(const std::string& path) { return parse_config_text(detail::read_file(path)); }

/// `key=value` with a dotted key. The value is read as JSON when it parses,
/// otherwise as a bare string.
inline void apply_override(json& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) {
        value = raw;
    }
    json* slot = &cfg;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (!slot->is_object() || !slot->contains(part)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        slot = &(*slot)[part];
        if (dot == std::string::npos) {
            break;
        }
        pos = dot + 1;
    }
    if (slot->is_object()) {
        throw ConfigError("override '" + key + "' names a section, not a value");
    }
    *slot = value;
}

/// defaults < file < overrides.
inline json resolve_config(const json& file, const std::vector<std::string>& overrides)
{
    json cfg = default_config();
    if (!file.is_null()) {
        detail::overlay(cfg, file, "");
    }
    for (const auto& o : overrides) {
        apply_override(cfg, o);
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Typed views

template <typename T>
T get(const json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

inline double get_finite(const json& j, const char* key)
{
    const double v = get<double>(j, key);
    if (!std::isfinite(v)) {
        throw ConfigError(std::string("config key '") + key + "' must be finite");
    }
    return v;
}

inline Vec3 get_vec3(const json& j, const char* key)
{
    const auto v = get<std::vector<double>>(j, key);
    if (v.size() != 3) {
        throw ConfigError(std::string("config key '") + key + "' must have three components");
    }
    return {v[0], v[1], v[2]};
}

inline cplx get_complex(const json& j, const char* key)
{
    const json& v = j.at(key);
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    const auto parts = get<std::vector<double>>(j, key);
    if (parts.size() != 2) {
        throw ConfigError(std::string("config key '") + key + "' must be a number or [re, im]");
    }
    return {parts[0], parts[1]};
}

inline UnitSystem unit_system(const json& cfg)
{
    const json& u = cfg.at("units");
    const std::string mode = get<std::string>(u, "mode");
    UnitSystem out;
    if (mode == "physical") {
        out.mode = UnitMode::physical;
    } else if (mode == "natural") {
        out.mode = UnitMode::natural;
    } else {
        throw ConfigError("units.mode must be 'physical' or 'natural'");
    }
    out.energy_scale = get_finite(u, "energy_scale");
    out.speed_scale = get_finite(u, "speed_scale");
    out.field_scale = get_finite(u, "field_scale");
    validate(out);
    return out;
}

/// Dirac parameters in natural units. In physical mode the `dirac` block is
/// read in laboratory units (see UnitSystem) and converted.
inline DiracParams dirac_params(const json& cfg)
{
    const json& d = cfg.at("dirac");
    DiracParams p;
    p.mass_energy = get_finite(d, "mass_energy");
    p.c_sim = get_finite(d, "c_sim");
    p.edm = get_finite(d, "edm");
    p.mdm = get_finite(d, "mdm");
    p.e_field = get_vec3(d, "e_field");
    p.momentum = get_vec3(d, "momentum");
    const UnitSystem u = unit_system(cfg);
    if (u.mode == UnitMode::physical) {
        return to_natural(p, u);
    }
    validate(p);
    return p;
}

inline IonParams ion_params(const json& cfg)
{
    const json& j = cfg.at("ion");
    IonParams ion;
    ion.eta = get_finite(j, "eta");
    ion.delta_spread = get_finite(j, "delta_spread");
    ion.omega_tilde = get_finite(j, "omega_tilde");
    ion.detuning = get_finite(j, "detuning");
    ion.omega1 = get_finite(j, "omega1");
    ion.omega2 = get_finite(j, "omega2");
    ion.phi_r = get_finite(j, "phi_r");
    ion.phi_b = get_finite(j, "phi_b");
    ion.phi_edm_ab = get_finite(j, "phi_edm_ab");
    ion.phi_edm_cd = get_finite(j, "phi_edm_cd");
    ion.phi_mdm = get_finite(j, "phi_mdm");
    ion.trap_freq = get_finite(j, "trap_freq");
    ion.ion_mass = get_finite(j, "ion_mass");
    validate(ion);
    return ion;
}

inline FockConfig fock_config(const json& cfg)
{
    FockConfig f;
    f.n_max = get<int>(cfg.at("fock"), "n_max");
    f.delta_spread = ion_params(cfg).delta_spread;
    validate(f);
    return f;
}

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    [[nodiscard]] std::vector<double> values() const { return linear_grid(start, stop, count); }
};

inline Grid grid(const json& cfg, const char* name)
{
    const json& g = cfg.at("grids").at(name);
    const long long count = get<long long>(g, "count");
    if (count < 1) {
        throw ConfigError(std::string("grids.") + name + ".count must be >= 1");
    }
    return {get_finite(g, "start"), get_finite(g, "stop"), static_cast<std::size_t>(count)};
}

/// Time grid: explicit `stop`/`count` when both are positive, otherwise
/// `periods` of the expected precession period at `samples_per_period`.
inline std::vector<double> time_grid(const json& cfg, double expected_omega)
{
    const json& t = cfg.at("time");
    const double start = get_finite(t, "start");
    const double stop = get_finite(t, "stop");
    const long long count = get<long long>(t, "count");
    std::vector<double> times;
    if (stop > 0.0 && count > 0) {
        if (count < 2 || !(stop > start)) {
            throw ConfigError("time grid must have count >= 2 and stop > start");
        }
        times = linear_grid(start, stop, static_cast<std::size_t>(count));
    } else {
        const double periods = get_finite(t, "periods");
        const long long spp = get<long long>(t, "samples_per_period");
        if (!(periods > 0.0) || spp < 2) {
            throw ConfigError("time.periods must be > 0 and time.samples_per_period >= 2");
        }
        if (!(expected_omega > 0.0) || !std::isfinite(expected_omega)) {
            throw ConfigError("automatic time grid needs a nonzero expected precession frequency; set time.stop and "
                              "time.count explicitly");
        }
        const double span = periods * 2.0 * kPi / expected_omega;
        const auto n = static_cast<std::size_t>(std::llround(periods * static_cast<double>(spp))) + 1;
        times = linear_grid(start, start + span, n);
    }
    try {
        validate_time_grid(times);
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    return times;
}

inline int workers(const json& cfg)
{
    const int w = get<int>(cfg, "workers");
    if (w < 1) {
        throw ConfigError("workers must be >= 1");
    }
    return w;
}

} // namespace edm_emu::harness
