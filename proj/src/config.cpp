#include "radfriction/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "radfriction/csv.hpp"

namespace radfriction {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

class KeyMap {
public:
    explicit KeyMap(const std::string& text) {
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected 'section.key = value'");
            const std::string key = trim(line.substr(0, eq));
            if (key.find('.') == std::string::npos)
                throw ConfigError("config key '" + key + "' is missing a section prefix");
            if (values_.count(key))
                throw ConfigError("config key '" + key + "' given twice");
            values_[key] = trim(line.substr(eq + 1));
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string raw(const std::string& key) {
        used_.insert(key);
        return values_.at(key);
    }

    double number(const std::string& key) {
        const std::string v = raw(key);
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
        }
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const double d = number(key);
        if (d != std::floor(d))
            throw ConfigError("config key '" + key + "': expected an integer");
        return static_cast<int>(d);
    }

    double required_number(const std::string& key) {
        if (!has(key)) throw ConfigError("missing required config key '" + key + "'");
        return number(key);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values_) {
            (void)value;
            if (!used_.count(key)) throw ConfigError("unknown config key '" + key + "'");
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

} // namespace

double RunConfig::gamma0() const { return derive_gamma0(atom); }

FrequencyWindow RunConfig::window() const {
    if (!grid.auto_window) return {grid.omega_min, grid.omega_max};
    const double g0 = gamma0();
    if (g0 <= 0.0) throw ConfigError("grid.window = auto requires a nonzero coupling");
    double beta_max = pack.beta;
    for (double b : run.betas) beta_max = std::max(beta_max, b);
    // Line core plus Lorentzian tails, plus a Doppler guard of 2 k v.
    const double half = 40.0 * g0 + 2.0 * atom.omega0 * beta_max;
    if (half >= atom.omega0)
        throw ConfigError("auto window extends below omega = 0; give grid.omega_min/omega_max");
    return {atom.omega0 - half, atom.omega0 + half};
}

RunConfig parse_config(const std::string& text) {
    KeyMap keys(text);
    RunConfig cfg;

    cfg.atom.omega0 = keys.required_number("atom.omega0");
    cfg.atom.mass = keys.required_number("atom.mass");
    cfg.atom.c_light = keys.number_or("atom.c_light", 1.0);
    cfg.atom.cutoff_omega = keys.number_or("atom.cutoff_omega", 100.0 * cfg.atom.omega0);

    const bool has_dipole = keys.has("atom.dipole_mag");
    const bool has_gamma = keys.has("atom.gamma0");
    if (has_dipole && has_gamma) throw ConfigError("overdetermined coupling: give exactly one of "
                                                   "atom.dipole_mag and atom.gamma0");
    if (!has_dipole && !has_gamma)
        throw ConfigError("missing required config key 'atom.dipole_mag' (or 'atom.gamma0')");
    if (has_dipole) {
        cfg.atom.dipole_mag = keys.number("atom.dipole_mag");
    } else {
        cfg.atom.dipole_mag = dipole_from_gamma0(cfg.atom, keys.number("atom.gamma0"));
    }

    if (keys.has("grid.window")) {
        const std::string mode = keys.raw("grid.window");
        if (mode == "auto") {
            cfg.grid.auto_window = true;
        } else if (mode == "explicit") {
            cfg.grid.auto_window = false;
        } else {
            throw ConfigError("config key 'grid.window': expected auto or explicit");
        }
    }
    if (!cfg.grid.auto_window) {
        cfg.grid.omega_min = keys.required_number("grid.omega_min");
        cfg.grid.omega_max = keys.required_number("grid.omega_max");
    } else {
        if (keys.has("grid.omega_min") || keys.has("grid.omega_max"))
            throw ConfigError("grid.omega_min/omega_max require grid.window = explicit");
    }
    cfg.grid.n_omega = keys.integer("grid.n_omega", cfg.grid.n_omega);
    cfg.grid.n_theta = keys.integer("grid.n_theta", cfg.grid.n_theta);
    cfg.grid.n_phi = keys.integer("grid.n_phi", cfg.grid.n_phi);

    cfg.pack.beta = keys.number_or("pack.beta", cfg.pack.beta);
    cfg.pack.rel_width = keys.number_or("pack.rel_width", cfg.pack.rel_width);
    cfg.pack.n_samples = keys.integer("pack.n_samples", cfg.pack.n_samples);

    cfg.run.t_final = keys.number_or("run.t_final", cfg.run.t_final);
    cfg.run.out_stride = keys.number_or("run.out_stride", cfg.run.out_stride);
    cfg.run.t_star = keys.number_or("run.t_star", cfg.run.t_star);
    if (keys.has("run.shift_mode")) {
        const std::string mode = keys.raw("run.shift_mode");
        if (mode == "with_shift") {
            cfg.run.shift_mode = ShiftMode::with_shift;
        } else if (mode == "zero_shift") {
            cfg.run.shift_mode = ShiftMode::zero_shift;
        } else {
            throw ConfigError("config key 'run.shift_mode': expected with_shift or zero_shift");
        }
    }
    if (keys.has("run.betas")) {
        cfg.run.betas.clear();
        for (const auto& item : split(keys.raw("run.betas"), ',')) {
            try {
                cfg.run.betas.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError("config key 'run.betas': expected a comma-separated number list");
            }
        }
    }
    if (keys.has("run.ladder")) {
        cfg.run.ladder.clear();
        for (const auto& step : split(keys.raw("run.ladder"), ';')) {
            const auto parts = split(step, ',');
            if (parts.size() != 3)
                throw ConfigError("config key 'run.ladder': expected 'nw,nt,np;nw,nt,np;...'");
            try {
                cfg.run.ladder.push_back(
                    {std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])});
            } catch (const std::exception&) {
                throw ConfigError("config key 'run.ladder': expected integer triples");
            }
        }
    }
    if (keys.has("run.metric")) {
        cfg.run.metric = keys.raw("run.metric");
        if (cfg.run.metric != "rate_error" && cfg.run.metric != "force_error")
            throw ConfigError("config key 'run.metric': expected rate_error or force_error");
    }

    keys.reject_unknown();

    const auto raise = [](const ValidationReport& report) {
        if (report.ok()) return;
        std::string msg = "invalid parameters:";
        for (const auto& e : report.errors) msg += " " + e + ";";
        throw ConfigError(msg);
    };
    raise(validate_params(cfg.atom, {}));
    const auto scales =
        dimensionless_groups(cfg.atom, cfg.pack.beta * cfg.atom.mass * cfg.atom.c_light);
    raise(validate_params(cfg.atom, scales));
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    auto kv = [&](const std::string& key, const std::string& value) {
        out << key << " = " << value << "\n";
    };
    kv("atom.omega0", format_double(cfg.atom.omega0));
    kv("atom.mass", format_double(cfg.atom.mass));
    kv("atom.dipole_mag", format_double(cfg.atom.dipole_mag));
    kv("atom.cutoff_omega", format_double(cfg.atom.cutoff_omega));
    kv("atom.c_light", format_double(cfg.atom.c_light));
    kv("grid.window", cfg.grid.auto_window ? "auto" : "explicit");
    if (!cfg.grid.auto_window) {
        kv("grid.omega_min", format_double(cfg.grid.omega_min));
        kv("grid.omega_max", format_double(cfg.grid.omega_max));
    }
    kv("grid.n_omega", std::to_string(cfg.grid.n_omega));
    kv("grid.n_theta", std::to_string(cfg.grid.n_theta));
    kv("grid.n_phi", std::to_string(cfg.grid.n_phi));
    kv("pack.beta", format_double(cfg.pack.beta));
    kv("pack.rel_width", format_double(cfg.pack.rel_width));
    kv("pack.n_samples", std::to_string(cfg.pack.n_samples));
    kv("run.t_final", format_double(cfg.run.t_final));
    kv("run.out_stride", format_double(cfg.run.out_stride));
    kv("run.t_star", format_double(cfg.run.t_star));
    kv("run.shift_mode",
       cfg.run.shift_mode == ShiftMode::with_shift ? "with_shift" : "zero_shift");
    std::string betas;
    for (std::size_t i = 0; i < cfg.run.betas.size(); ++i)
        betas += (i ? "," : "") + format_double(cfg.run.betas[i]);
    kv("run.betas", betas);
    std::string ladder;
    for (std::size_t i = 0; i < cfg.run.ladder.size(); ++i) {
        const auto& r = cfg.run.ladder[i];
        ladder += (i ? ";" : "") + std::to_string(r.n_omega) + "," + std::to_string(r.n_theta) +
                  "," + std::to_string(r.n_phi);
    }
    kv("run.ladder", ladder);
    kv("run.metric", cfg.run.metric);
    return out.str();
}

} // namespace radfriction
