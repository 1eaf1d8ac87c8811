#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hml/experiments.hpp"

namespace {

double to_double(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(val, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != val.size())
        throw std::invalid_argument("bad numeric value for '" + key + "': '" + val + "'");
    return v;
}

int to_int(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(val, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != val.size())
        throw std::invalid_argument("bad integer value for '" + key + "': '" + val + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// key=value file mirroring the long options; values already given on the
/// command line (or through the environment) win over the file.
void apply_config_file(const std::string& path, CLI::App* active,
                       hml::ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const bool known =
            key == "measure" || key == "family" || key == "p" || key == "jmin" ||
            key == "jmax" || key == "degree" || key == "tol" || key == "out" ||
            key == "plot" || key == "threads";
        if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
        const bool on_cli = active->count("--" + key) > 0;
        if (key == "measure") {
            if (!on_cli) cfg.measure = val;
        } else if (key == "family") {
            if (!on_cli) cfg.family = val;
        } else if (key == "p") {
            if (!on_cli) {
                cfg.p = to_double(key, val);
                cfg.p_set = true;
            }
        } else if (key == "jmin") {
            if (!on_cli) {
                cfg.jmin = to_int(key, val);
                cfg.jmin_set = true;
            }
        } else if (key == "jmax") {
            if (!on_cli) {
                cfg.jmax = to_int(key, val);
                cfg.jmax_set = true;
            }
        } else if (key == "degree") {
            if (!on_cli) cfg.degree = to_int(key, val);
        } else if (key == "tol") {
            if (!on_cli) cfg.tol = to_double(key, val);
        } else if (key == "out") {
            if (!on_cli) cfg.out = val;
        } else if (key == "plot") {
            if (!on_cli) cfg.plot = val;
        } else if (key == "threads") {
            if (!on_cli) cfg.threads = to_int(key, val);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moment-kernel operator experiments"};
    app.require_subcommand(1);

    hml::ExperimentConfig cfg;
    std::string config_path;
    const std::pair<const char*, const char*> commands[] = {
        {"sweep-h1", "weighted-sum norm growth along a dyadic b-grid"},
        {"sweep-hp", "power-mean norm growth along a dyadic b-grid"},
        {"sweep-besov", "area-mean norm growth along a dyadic b-grid"},
        {"hinf-check", "boundedness on bounded analytic functions (3 indicators)"},
        {"qs-check", "log-weighted window statistic and quadrature identity"},
        {"agreement", "matrix vs integral evaluation cross-check"},
        {"carleson", "box-mass profile of the measure"},
        {"moments", "moment table of the measure"},
        {"bench", "timing comparison of the two application paths"},
    };
    for (const auto& [name, blurb] : commands) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("--measure", cfg.measure,
                        "lebesgue | atoms:t:w[,..] | powlog:c=,alpha=,gamma= | table:path");
        sub->add_option("--family", cfg.family,
                        "fb1:b= | fbp:b=,p= | gb:b=,p= | Flog | one");
        sub->add_option("--p", cfg.p, "exponent (or box-profile power s)");
        sub->add_option("--jmin", cfg.jmin, "first dyadic grid index");
        sub->add_option("--jmax", cfg.jmax, "last dyadic grid index");
        sub->add_option("--degree", cfg.degree, "fixed truncation degree (default: auto)");
        sub->add_option("--tol", cfg.tol, "tolerance for identity checks");
        sub->add_option("--out", cfg.out, "CSV output path");
        sub->add_option("--plot", cfg.plot, "SVG plot path");
        sub->add_option("--threads", cfg.threads, "worker threads")
            ->envname("HML_THREADS");
        sub->add_option("--config", config_path,
                        "configuration file (key=value, flags override)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    cfg.p_set = active->count("--p") > 0;
    cfg.jmin_set = active->count("--jmin") > 0;
    cfg.jmax_set = active->count("--jmax") > 0;

    try {
        if (!config_path.empty()) apply_config_file(config_path, active, cfg);
        const hml::CommandResult res = hml::run_command(cfg);
        for (const std::string& line : res.summary) std::cout << line << "\n";
        return res.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
