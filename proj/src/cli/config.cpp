#include "gabornc/cli/config.hpp"

#include "gabornc/errors.hpp"
#include "gabornc/signal.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace gabornc::cli
{

SolverOptions ExperimentConfig::solver() const
{
    SolverOptions options;
    options.cg_tolerance = cg_tol;
    options.max_iterations = max_iter;
    options.positivity_threshold = positivity_threshold;
    return options;
}

bool ExperimentConfig::wants(const std::string& format) const
{
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

nlohmann::ordered_json to_json(const ExperimentConfig& c)
{
    nlohmann::ordered_json doc;
    doc["grid"] = {{"s", c.s}, {"P", c.period}};
    doc["window"] = {{"kind", c.window}, {"scale", c.window_scale}};
    doc["lattice"] = {{"p", c.lattice_p}, {"q", c.lattice_q}};
    doc["solver"] = {{"cg_tol", c.cg_tol}, {"max_iter", c.max_iter}, {"positivity_threshold", c.positivity_threshold}};
    doc["truncation"] = {{"R", c.radius}, {"N_max", c.n_max}, {"coefficient_floor", c.coefficient_floor}};
    doc["tolerances"] = {{"leibniz", c.leibniz_tol},
                         {"hermitian", c.hermitian_tol},
                         {"hermitian_R", c.hermitian_radius},
                         {"curvature", c.curvature_tol},
                         {"wexler_raz", c.wexler_raz_tol}};
    doc["sweep"] = {{"thetas", c.thetas}, {"s", c.sweep_s},        {"P", c.sweep_period},
                    {"s_list", c.s_list}, {"battle_radius", c.battle_radius}, {"log_plot", c.log_plot}};
    doc["output"] = {{"directory", c.output_directory}, {"formats", c.formats}};
    doc["tighten"] = c.tighten;
    return doc;
}

namespace
{

template <typename T>
void read(const nlohmann::json& section, const std::string& path, const char* key, T& target,
          std::set<std::string>& seen)
{
    seen.insert(key);
    if (!section.contains(key)) return;
    try
    {
        target = section.at(key).get<T>();
    }
    catch (const nlohmann::json::exception&)
    {
        throw ParameterError("config key '" + path + "." + key + "' has the wrong type");
    }
}

void reject_unknown(const nlohmann::json& section, const std::string& path, const std::set<std::string>& seen)
{
    for (const auto& item : section.items())
    {
        if (!seen.contains(item.key()))
        {
            throw ParameterError("unknown config key '" + (path.empty() ? "" : path + ".") + item.key() + "'");
        }
    }
}

const nlohmann::json* section(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key)) return nullptr;
    const auto& s = doc.at(key);
    if (!s.is_object()) throw ParameterError(std::string("config section '") + key + "' must be an object");
    return &s;
}

}  // namespace

ExperimentConfig merge_json(ExperimentConfig c, const nlohmann::json& doc)
{
    if (!doc.is_object()) throw ParameterError("config must be a JSON object");
    std::set<std::string> top;

    auto visit = [&](const char* name, auto&& body) {
        top.insert(name);
        if (const auto* s = section(doc, name))
        {
            std::set<std::string> seen;
            body(*s, seen);
            reject_unknown(*s, name, seen);
        }
    };

    visit("grid", [&](const nlohmann::json& s, auto& seen) {
        read(s, "grid", "s", c.s, seen);
        read(s, "grid", "P", c.period, seen);
    });
    visit("window", [&](const nlohmann::json& s, auto& seen) {
        read(s, "window", "kind", c.window, seen);
        read(s, "window", "scale", c.window_scale, seen);
    });
    visit("lattice", [&](const nlohmann::json& s, auto& seen) {
        read(s, "lattice", "p", c.lattice_p, seen);
        read(s, "lattice", "q", c.lattice_q, seen);
    });
    visit("solver", [&](const nlohmann::json& s, auto& seen) {
        read(s, "solver", "cg_tol", c.cg_tol, seen);
        read(s, "solver", "max_iter", c.max_iter, seen);
        read(s, "solver", "positivity_threshold", c.positivity_threshold, seen);
    });
    visit("truncation", [&](const nlohmann::json& s, auto& seen) {
        read(s, "truncation", "R", c.radius, seen);
        read(s, "truncation", "N_max", c.n_max, seen);
        read(s, "truncation", "coefficient_floor", c.coefficient_floor, seen);
    });
    visit("tolerances", [&](const nlohmann::json& s, auto& seen) {
        read(s, "tolerances", "leibniz", c.leibniz_tol, seen);
        read(s, "tolerances", "hermitian", c.hermitian_tol, seen);
        read(s, "tolerances", "hermitian_R", c.hermitian_radius, seen);
        read(s, "tolerances", "curvature", c.curvature_tol, seen);
        read(s, "tolerances", "wexler_raz", c.wexler_raz_tol, seen);
    });
    visit("sweep", [&](const nlohmann::json& s, auto& seen) {
        read(s, "sweep", "thetas", c.thetas, seen);
        read(s, "sweep", "s", c.sweep_s, seen);
        read(s, "sweep", "P", c.sweep_period, seen);
        read(s, "sweep", "s_list", c.s_list, seen);
        read(s, "sweep", "battle_radius", c.battle_radius, seen);
        read(s, "sweep", "log_plot", c.log_plot, seen);
    });
    visit("output", [&](const nlohmann::json& s, auto& seen) {
        read(s, "output", "directory", c.output_directory, seen);
        read(s, "output", "formats", c.formats, seen);
    });
    read(doc, "", "tighten", c.tighten, top);
    reject_unknown(doc, "", top);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file '" + path + "'");
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return merge_json(ExperimentConfig{}, doc);
}

void validate(const ExperimentConfig& c)
{
    const GridSpec grid(c.s, c.period);
    c.window_spec();
    if (c.lattice_q == 0) throw ParameterError("lattice.q must be nonzero");
    const LatticeSpec lattice(c.theta(), grid);
    (void)lattice;
    if (!(c.cg_tol > 0.0)) throw ParameterError("solver.cg_tol must be positive");
    if (c.max_iter < 1) throw ParameterError("solver.max_iter must be at least 1");
    if (!(c.positivity_threshold > 0.0)) throw ParameterError("solver.positivity_threshold must be positive");
    if (c.radius < 0) throw ParameterError("truncation.R must be nonnegative");
    if (c.n_max < 0) throw ParameterError("truncation.N_max must be nonnegative");
    if (c.battle_radius < 0) throw ParameterError("sweep.battle_radius must be nonnegative");
    for (const auto& f : c.formats)
    {
        if (f != "csv" && f != "json" && f != "svg") throw ParameterError("unknown output format '" + f + "'");
    }
    for (const auto& t : c.thetas) Rational::parse(t);
    for (const int s : c.s_list)
        if (s < 1) throw ParameterError("sweep.s_list entries must be positive");
}

}  // namespace gabornc::cli
